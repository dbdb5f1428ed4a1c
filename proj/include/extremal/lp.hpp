#pragma once

#include <cstddef>
#include <vector>

#include "extremal/scalar.hpp"

namespace extremal {

enum class Rel { Le, Ge, Eq };

struct Constraint {
    Vector coef;
    Rel rel;
    Scalar rhs;
};

/// Linear program over exact rationals. Variables are free unless flagged
/// nonnegative. The objective is maximized unless `maximize` is false.
struct LinearProgram {
    explicit LinearProgram(std::size_t n) : nvars(n), nonneg(n, false), objective(zeros(n)) {}

    std::size_t nvars;
    std::vector<bool> nonneg;
    Vector objective;
    bool maximize = true;
    std::vector<Constraint> rows;

    void add(Vector coef, Rel rel, Scalar rhs);
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
    LpStatus status = LpStatus::Infeasible;
    Vector x;
    Scalar value;
};

/// Two-phase tableau simplex with Bland's rule, so it always terminates.
LpResult solve(const LinearProgram& lp);

/// Feasibility of { x : rows } where `strict[i]` turns row i into a strict
/// inequality (Le -> <, Ge -> >). Strictness is handled by maximizing a
/// common slack s <= 1; returns a point when the system is feasible.
struct StrictResult {
    bool feasible = false;
    Vector x;
};
StrictResult solve_strict(std::size_t nvars, const std::vector<Constraint>& rows, const std::vector<bool>& strict);

}  // namespace extremal
