#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "extremal/lp.hpp"
#include "extremal/scalar.hpp"

namespace extremal {

/// <normal, x> <= rhs
struct Row {
    Vector normal;
    Scalar rhs;
};

/// Nonnegative multipliers, one per row, combining the rows into 0 <= -1.
struct EmptinessCertificate {
    std::vector<Scalar> multipliers;
};

/// Exact row combination check: y >= 0, sum y_i n_i = 0, sum y_i r_i < 0.
bool verify_certificate(const std::vector<Row>& rows, const EmptinessCertificate& cert);

/// Farkas multipliers for an infeasible system, normalized so sum y_i r_i = -1.
/// Returns nothing when the system is feasible.
std::optional<EmptinessCertificate> farkas(const std::vector<Row>& rows, std::size_t dim);

class Polyhedron {
public:
    Polyhedron() = default;
    Polyhedron(std::size_t dim, std::vector<Row> rows);

    static Polyhedron whole(std::size_t dim) { return Polyhedron(dim, {}); }
    static Polyhedron point(const Vector& p);
    static Polyhedron box(const Vector& lo, const Vector& hi);

    std::size_t dim() const { return dim_; }
    const std::vector<Row>& rows() const { return rows_; }

    bool contains(const Vector& x) const;
    /// Row indices tight at x.
    std::vector<std::size_t> active(const Vector& x) const;

    bool empty() const;
    /// Farkas certificate when empty.
    const std::optional<EmptinessCertificate>& certificate() const;
    /// Some member point when nonempty.
    std::optional<Vector> some_point() const;

    Polyhedron translate(const Vector& t) const;      // P + t
    Polyhedron intersect(const Polyhedron& o) const;  // row concatenation

    /// Constraints for use in an LP whose variables are x, placed at `offset`
    /// within a vector of `nvars` variables.
    void append_to(LinearProgram& lp, std::size_t offset) const;

private:
    struct Cache {
        bool done = false;
        bool empty = false;
        std::optional<EmptinessCertificate> cert;
        std::optional<Vector> point;
    };
    void decide() const;

    std::size_t dim_ = 0;
    std::vector<Row> rows_;
    std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

/// Membership-oracle region with a bounding box and grid step.
struct OracleSpec {
    std::string name;
    std::function<bool(const Vector&)> member;
    Vector lo;
    Vector hi;
    Scalar step;
};

class Region {
public:
    Region() = default;
    /// Drops empty pieces.
    static Region exact(std::size_t dim, std::vector<Polyhedron> pieces);
    static Region oracle(OracleSpec spec);

    bool is_exact() const { return !oracle_; }
    std::size_t dim() const { return dim_; }
    const std::vector<Polyhedron>& pieces() const { return pieces_; }
    const OracleSpec& oracle() const { return *oracle_; }

    bool empty() const;
    bool contains(const Vector& x) const;

    /// Translate by t. Oracle regions get a shifted predicate and box.
    Region translate(const Vector& t) const;

    /// Grid points of the bounding box (oracle backend).
    std::vector<Vector> grid() const;

private:
    std::size_t dim_ = 0;
    std::vector<Polyhedron> pieces_;
    std::shared_ptr<OracleSpec> oracle_;
};

}  // namespace extremal
