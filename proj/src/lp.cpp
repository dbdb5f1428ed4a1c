#include "extremal/lp.hpp"

#include <limits>

#include "extremal/errors.hpp"

namespace extremal {

void LinearProgram::add(Vector coef, Rel rel, Scalar rhs) {
    if (coef.size() != nvars) throw DimensionError("LinearProgram::add: coefficient length mismatch");
    rows.push_back({std::move(coef), rel, std::move(rhs)});
}

namespace {

constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

// Dense tableau for  min c.x  s.t.  T x = rhs, x >= 0, kept in canonical form
// with respect to `basis`.
class Tableau {
public:
    Tableau(std::vector<Vector> rows, Vector rhs, std::vector<std::size_t> basis, std::size_t ncols)
        : t_(std::move(rows)), rhs_(std::move(rhs)), basis_(std::move(basis)), ncols_(ncols), forbidden_(ncols, false) {}

    void forbid(std::size_t j) { forbidden_[j] = true; }

    // Returns false when the objective is unbounded below.
    bool optimize(const Vector& cost) {
        Vector r = cost;
        r.resize(ncols_, 0);
        for (std::size_t i = 0; i < t_.size(); ++i) {
            const Scalar& cb = cost.size() > basis_[i] ? cost[basis_[i]] : zero_;
            if (cb == 0) continue;
            for (std::size_t j = 0; j < ncols_; ++j) {
                if (t_[i][j] != 0) r[j] -= cb * t_[i][j];
            }
        }
        for (;;) {
            std::size_t enter = npos;
            for (std::size_t j = 0; j < ncols_; ++j) {
                if (!forbidden_[j] && r[j] < 0) {
                    enter = j;
                    break;
                }
            }
            if (enter == npos) return true;
            std::size_t leave = npos;
            Scalar best;
            for (std::size_t i = 0; i < t_.size(); ++i) {
                if (t_[i][enter] <= 0) continue;
                Scalar ratio = rhs_[i] / t_[i][enter];
                if (leave == npos || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave == npos) return false;
            pivot(leave, enter, r);
        }
    }

    void pivot(std::size_t i, std::size_t j, Vector& r) {
        Scalar p = t_[i][j];
        if (p != 1) {
            for (auto& v : t_[i]) {
                if (v != 0) v /= p;
            }
            rhs_[i] /= p;
        }
        for (std::size_t k = 0; k < t_.size(); ++k) {
            if (k == i || t_[k][j] == 0) continue;
            Scalar f = t_[k][j];
            for (std::size_t c = 0; c < ncols_; ++c) {
                if (t_[i][c] != 0) t_[k][c] -= f * t_[i][c];
            }
            rhs_[k] -= f * rhs_[i];
        }
        if (!r.empty() && r[j] != 0) {
            Scalar f = r[j];
            for (std::size_t c = 0; c < ncols_; ++c) {
                if (t_[i][c] != 0) r[c] -= f * t_[i][c];
            }
        }
        basis_[i] = j;
    }

    // Pivots basic columns >= first_art out of the basis; drops rows where that
    // is impossible (they are redundant).
    void expel(std::size_t first_art) {
        Vector none;
        for (std::size_t i = 0; i < t_.size();) {
            if (basis_[i] < first_art) {
                ++i;
                continue;
            }
            std::size_t col = npos;
            for (std::size_t j = 0; j < first_art; ++j) {
                if (t_[i][j] != 0) {
                    col = j;
                    break;
                }
            }
            if (col == npos) {
                t_.erase(t_.begin() + static_cast<std::ptrdiff_t>(i));
                rhs_.erase(rhs_.begin() + static_cast<std::ptrdiff_t>(i));
                basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
                continue;
            }
            pivot(i, col, none);
            ++i;
        }
    }

    Vector solution() const {
        Vector x = zeros(ncols_);
        for (std::size_t i = 0; i < t_.size(); ++i) x[basis_[i]] = rhs_[i];
        return x;
    }

private:
    std::vector<Vector> t_;
    Vector rhs_;
    std::vector<std::size_t> basis_;
    std::size_t ncols_;
    std::vector<bool> forbidden_;
    Scalar zero_ = 0;
};

}  // namespace

LpResult solve(const LinearProgram& lp) {
    // Column layout: structural (free vars split into +/-), slacks, artificials.
    std::vector<std::size_t> pos_col(lp.nvars), neg_col(lp.nvars, npos);
    std::size_t ncols = 0;
    for (std::size_t j = 0; j < lp.nvars; ++j) {
        pos_col[j] = ncols++;
        if (!lp.nonneg[j]) neg_col[j] = ncols++;
    }
    const std::size_t nstruct = ncols;
    const std::size_t m = lp.rows.size();
    std::vector<std::size_t> slack_col(m, npos);
    for (std::size_t i = 0; i < m; ++i) {
        if (lp.rows[i].rel != Rel::Eq) slack_col[i] = ncols++;
    }
    std::vector<Vector> rows(m);
    Vector rhs(m);
    std::vector<std::size_t> basis(m, npos);
    for (std::size_t i = 0; i < m; ++i) {
        const Constraint& c = lp.rows[i];
        if (c.coef.size() != lp.nvars) throw DimensionError("solve: row length mismatch");
        Vector row = zeros(ncols);
        for (std::size_t j = 0; j < lp.nvars; ++j) {
            if (c.coef[j] == 0) continue;
            row[pos_col[j]] = c.coef[j];
            if (neg_col[j] != npos) row[neg_col[j]] = -c.coef[j];
        }
        if (c.rel == Rel::Le) row[slack_col[i]] = 1;
        if (c.rel == Rel::Ge) row[slack_col[i]] = -1;
        Scalar b = c.rhs;
        if (b < 0) {
            for (auto& v : row) v = -v;
            b = -b;
        }
        if (slack_col[i] != npos && row[slack_col[i]] == 1) basis[i] = slack_col[i];
        rows[i] = std::move(row);
        rhs[i] = b;
    }
    const std::size_t first_art = ncols;
    for (std::size_t i = 0; i < m; ++i) {
        if (basis[i] == npos) basis[i] = ncols++;
    }
    for (auto& row : rows) row.resize(ncols, 0);
    for (std::size_t i = 0; i < m; ++i) {
        if (basis[i] >= first_art) rows[i][basis[i]] = 1;
    }

    Tableau tab(std::move(rows), std::move(rhs), basis, ncols);
    LpResult out;
    if (ncols > first_art) {
        Vector phase1 = zeros(ncols);
        for (std::size_t j = first_art; j < ncols; ++j) phase1[j] = 1;
        tab.optimize(phase1);
        Vector x = tab.solution();
        for (std::size_t j = first_art; j < ncols; ++j) {
            if (x[j] != 0) {
                out.status = LpStatus::Infeasible;
                return out;
            }
        }
        tab.expel(first_art);
        for (std::size_t j = first_art; j < ncols; ++j) tab.forbid(j);
    }
    Vector cost = zeros(ncols);
    for (std::size_t j = 0; j < lp.nvars; ++j) {
        Scalar c = lp.maximize ? Scalar(-lp.objective[j]) : lp.objective[j];
        cost[pos_col[j]] = c;
        if (neg_col[j] != npos) cost[neg_col[j]] = -c;
    }
    if (!tab.optimize(cost)) {
        out.status = LpStatus::Unbounded;
        return out;
    }
    Vector raw = tab.solution();
    out.status = LpStatus::Optimal;
    out.x = zeros(lp.nvars);
    for (std::size_t j = 0; j < lp.nvars; ++j) {
        out.x[j] = raw[pos_col[j]];
        if (neg_col[j] != npos) out.x[j] -= raw[neg_col[j]];
    }
    out.value = dot(lp.objective, out.x);
    (void)nstruct;
    return out;
}

StrictResult solve_strict(std::size_t nvars, const std::vector<Constraint>& rows, const std::vector<bool>& strict) {
    bool any_strict = false;
    for (bool s : strict) any_strict = any_strict || s;
    StrictResult out;
    if (!any_strict) {
        LinearProgram lp(nvars);
        for (const auto& r : rows) lp.add(r.coef, r.rel, r.rhs);
        LpResult res = solve(lp);
        if (res.status == LpStatus::Infeasible) return out;
        out.feasible = true;
        out.x = res.x;
        return out;
    }
    // Variables (x, s): maximize s with strict rows tightened by s.
    LinearProgram lp(nvars + 1);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        Vector c = rows[i].coef;
        c.push_back(0);
        if (strict[i]) {
            if (rows[i].rel == Rel::Le) c.back() = 1;
            if (rows[i].rel == Rel::Ge) c.back() = -1;
            if (rows[i].rel == Rel::Eq) throw PreconditionError("solve_strict: strict equality");
        }
        lp.add(std::move(c), rows[i].rel, rows[i].rhs);
    }
    Vector cap = zeros(nvars + 1);
    cap.back() = 1;
    lp.add(cap, Rel::Le, 1);
    lp.objective = cap;
    LpResult res = solve(lp);
    if (res.status != LpStatus::Optimal || res.value <= 0) return out;
    out.feasible = true;
    out.x.assign(res.x.begin(), res.x.end() - 1);
    return out;
}

}  // namespace extremal
