#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "extremal/norm.hpp"
#include "extremal/polyhedron.hpp"
#include "extremal/scalar.hpp"

namespace extremal {

/// Largest dimension in which generators are recovered from H-rows.
inline constexpr std::size_t kConeDimCap = 4;

/// Polyhedral cone held in both forms: cone(generators) = {y : <h, y> <= 0}.
class Cone {
public:
    static Cone from_generators(std::size_t dim, std::vector<Vector> gens);
    static Cone from_hrows(std::size_t dim, std::vector<Vector> hrows);
    static Cone zero(std::size_t dim);
    static Cone whole(std::size_t dim);

    std::size_t dim() const { return dim_; }
    const std::vector<Vector>& generators() const { return gens_; }
    const std::vector<Vector>& hrows() const { return hrows_; }

    bool contains(const Vector& y) const;
    bool trivial() const { return gens_.empty(); }
    Cone intersect(const Cone& o) const;
    bool equals(const Cone& o) const;

    /// Both representations describe the same set (exact LP per H-generator).
    bool consistent() const;

private:
    Cone(std::size_t dim, std::vector<Vector> gens, std::vector<Vector> hrows)
        : dim_(dim), gens_(std::move(gens)), hrows_(std::move(hrows)) {}

    std::size_t dim_ = 0;
    std::vector<Vector> gens_;
    std::vector<Vector> hrows_;
};

/// y = sum lambda_i g_i with lambda >= 0, if any.
std::optional<Vector> conic_coefficients(const std::vector<Vector>& gens, const Vector& y);

Cone tangent_cone(const Polyhedron& P, const Vector& a);

/// Fréchet normal cone of an exact union: the intersection of the
/// per-piece normal cones over the pieces containing a.
Cone normal_cone(const Region& R, const Vector& a);

/// <x*, v> <= eps ||v|| for every v tangent to R at a.
bool eps_normal_member(const Vector& xstar, const Vector& a, const Region& R, const Scalar& eps,
                       const PolyhedralNorm& n);

struct ConeDistance {
    Scalar value;
    Vector witness;
};

/// min over y in K of ||x* - y|| in the norm dn.
ConeDistance dist_to_cone(const Vector& xstar, const Cone& K, const PolyhedralNorm& dn);

struct FacePoint {
    std::size_t piece_index = 0;
    std::vector<std::size_t> active_rows;
    Vector representative;
};

/// A cell of the hyperplane arrangement of a union near a center: the
/// normal cone is constant on it.
struct FaceCell {
    FacePoint face;
    Cone normal;
    Scalar distance;  // from the center to the closure of the cell
};

/// Cells of R meeting the open ball B_radius(center), or, without a radius,
/// the cells whose closure contains the center. Cells with equal normal
/// cones are merged, keeping the one nearest to the center. Throws
/// CapExceeded past `cap` cells.
std::vector<FaceCell> face_cells(const Region& R, const Vector& center, const std::optional<Scalar>& radius,
                                 const PolyhedralNorm& n, std::size_t cap = 10000);

}  // namespace extremal
