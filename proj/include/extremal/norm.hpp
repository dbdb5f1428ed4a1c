#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "extremal/scalar.hpp"

namespace extremal {

enum class NormKind { Max, Sum, PolytopeBall };

/// Half-space <normal, x> <= rhs of a unit-ball description.
struct Facet {
    Vector normal;
    Scalar rhs;
};

/// A norm whose unit ball is a symmetric polytope. Max and Sum work in any
/// dimension; PolytopeBall is tied to the dimension of its facets.
class PolyhedralNorm {
public:
    static PolyhedralNorm max_norm();
    static PolyhedralNorm sum_norm();
    /// Validates symmetry, boundedness and 0 in the interior.
    static PolyhedralNorm polytope(std::vector<Facet> facets);

    NormKind kind() const { return kind_; }
    std::string name() const;

    Scalar eval(const Vector& v) const;

    /// Facets scaled to rhs 1, so that ||v|| <= t iff <f, v> <= t for all f.
    std::vector<Vector> unit_facets(std::size_t dim) const;

    /// Vertices of the unit ball; ||y||_* = max over these of <y, w>.
    std::vector<Vector> ball_vertices(std::size_t dim) const;

    PolyhedralNorm dual(std::size_t dim) const;

    /// Same unit ball in dimension dim.
    bool same_ball(const PolyhedralNorm& other, std::size_t dim) const;

    const std::vector<Vector>& facets() const { return facets_; }

private:
    PolyhedralNorm(NormKind k, std::vector<Vector> f) : kind_(k), facets_(std::move(f)) {}

    NormKind kind_;
    std::vector<Vector> facets_;  // PolytopeBall only, rhs normalized to 1
};

/// Max-combination of `blocks` copies of a base norm on R^dim, i.e. the
/// product space norm ||(x_1,...,x_k)|| = max_i ||x_i||.
PolyhedralNorm product_norm(const PolyhedralNorm& base, std::size_t dim, std::size_t blocks);

/// Dual of product_norm: the sum of the base dual norms.
PolyhedralNorm product_dual_norm(const PolyhedralNorm& base, std::size_t dim, std::size_t blocks);

}  // namespace extremal
