#pragma once

#include <optional>
#include <vector>

#include "extremal/lp.hpp"
#include "extremal/norm.hpp"
#include "extremal/polyhedron.hpp"
#include "extremal/scalar.hpp"

namespace extremal {

Scalar norm_eval(const Vector& v, const PolyhedralNorm& n);

/// Exact unless the region is an oracle, in which case `value` is the
/// minimum over grid members and `resolution` is the grid step.
struct PointDistance {
    Scalar value;
    Vector witness;
    bool exact = true;
    Scalar resolution;
};

PointDistance dist_point_polyhedron(const Vector& x, const Polyhedron& P, const PolyhedralNorm& n);
PointDistance dist_point_region(const Vector& x, const Region& R, const PolyhedralNorm& n);

struct PairDistance {
    Scalar value;
    Vector a;
    Vector b;
    bool exact = true;
    Scalar resolution;
};

PairDistance dist_region_region(const Region& A, const Region& B, const PolyhedralNorm& n);

/// Outcome of testing a conjunction of polyhedra for a common point.
struct IntersectionVerdict {
    bool empty = false;
    std::vector<Row> rows;  // the tested system
    std::optional<EmptinessCertificate> certificate;
    std::optional<Vector> point;
};

IntersectionVerdict intersect_empty(const std::vector<Polyhedron>& pieces);

/// Emptiness of R_1 ∩ ... ∩ R_k ∩ extra for exact unions: one certified
/// verdict per combination of pieces when empty, else a common point.
struct UnionIntersection {
    bool empty = false;
    std::vector<IntersectionVerdict> parts;
    std::optional<Vector> point;
};

UnionIntersection regions_intersect_empty(const std::vector<Region>& regions, const std::vector<Polyhedron>& extra = {});

/// Re-checks every certificate of an empty verdict by direct row combination.
bool verify_union_intersection(const UnionIntersection& u);

/// Drops rows implied by the others (exact LP per row) and duplicates.
Polyhedron remove_redundant(const Polyhedron& P);

/// Projection onto the first `keep` coordinates by Fourier–Motzkin.
Polyhedron project(const Polyhedron& P, std::size_t keep);

/// {x - y : x in P, y in Q}.
Polyhedron difference(const Polyhedron& P, const Polyhedron& Q);

Region minkowski_difference(const Region& A, const Region& B);

/// Closed ball of radius r around c.
Polyhedron ball(const Vector& c, const Scalar& r, const PolyhedralNorm& n);

Region localize(const Region& R, const Vector& center, const Scalar& rho, const PolyhedralNorm& n);

/// A point of `base` (rows with per-row strictness) lying outside every
/// closed piece, or nothing when the pieces cover the base.
std::optional<Vector> find_uncovered(const std::vector<Constraint>& base, const std::vector<bool>& base_strict,
                                     const std::vector<std::vector<Row>>& pieces, std::size_t dim);

/// Whether the cones {y : <h, y> <= 0 for h in rows_k} cover R^dim; if
/// not, a nonzero direction outside all of them.
std::optional<Vector> uncovered_direction(const std::vector<std::vector<Vector>>& cones, std::size_t dim);

/// Local conic structure of an exact region at a member point x: the
/// tangent cones (H-rows) of the pieces containing x and a radius r such
/// that R ∩ B_r(x) = (x + union of cones) ∩ B_r(x) for the open ball.
struct LocalCone {
    std::vector<std::vector<Vector>> cones;
    Scalar radius;
};

LocalCone local_cone(const Region& R, const Vector& x, const PolyhedralNorm& n);

/// x in the interior of an exact region.
bool in_interior(const Region& R, const Vector& x);
bool on_boundary(const Region& R, const Vector& x);

}  // namespace extremal
