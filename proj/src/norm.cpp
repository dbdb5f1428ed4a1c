#include "extremal/norm.hpp"

#include <algorithm>
#include <set>

#include "extremal/dd.hpp"
#include "extremal/errors.hpp"
#include "extremal/lp.hpp"

namespace extremal {

namespace {

std::size_t rank(std::vector<Vector> rows, std::size_t dim) {
    std::size_t r = 0;
    for (std::size_t c = 0; c < dim && r < rows.size(); ++c) {
        std::size_t piv = r;
        while (piv < rows.size() && rows[piv][c] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[r], rows[piv]);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c] == 0) continue;
            rows[i] = sub(rows[i], scale(rows[i][c] / rows[r][c], rows[r]));
        }
        ++r;
    }
    return r;
}

std::vector<Vector> sign_vectors(std::size_t dim) {
    std::vector<Vector> out;
    for (std::size_t mask = 0; mask < (std::size_t{1} << dim); ++mask) {
        Vector s(dim);
        for (std::size_t i = 0; i < dim; ++i) s[i] = (mask >> i) & 1 ? -1 : 1;
        out.push_back(std::move(s));
    }
    return out;
}

std::vector<Vector> signed_units(std::size_t dim) {
    std::vector<Vector> out;
    for (std::size_t i = 0; i < dim; ++i) {
        out.push_back(unit(dim, i));
        out.push_back(neg(unit(dim, i)));
    }
    return out;
}

}  // namespace

PolyhedralNorm PolyhedralNorm::max_norm() { return PolyhedralNorm(NormKind::Max, {}); }

PolyhedralNorm PolyhedralNorm::sum_norm() { return PolyhedralNorm(NormKind::Sum, {}); }

PolyhedralNorm PolyhedralNorm::polytope(std::vector<Facet> facets) {
    if (facets.empty()) throw PreconditionError("polytope norm: no facets");
    const std::size_t dim = facets.front().normal.size();
    std::vector<Vector> unitf;
    for (const auto& f : facets) {
        if (f.normal.size() != dim) throw DimensionError("polytope norm: facet dimension mismatch");
        if (f.rhs <= 0) throw PreconditionError("polytope norm: 0 must be interior (rhs > 0)");
        if (is_zero(f.normal)) throw PreconditionError("polytope norm: zero facet normal");
        unitf.push_back(scale(1 / f.rhs, f.normal));
    }
    std::set<Vector> all(unitf.begin(), unitf.end());
    for (const auto& f : unitf) {
        if (!all.count(neg(f))) throw PreconditionError("polytope norm: ball is not symmetric");
    }
    if (rank(unitf, dim) != dim) throw PreconditionError("polytope norm: ball is unbounded");
    return PolyhedralNorm(NormKind::PolytopeBall, std::vector<Vector>(all.begin(), all.end()));
}

std::string PolyhedralNorm::name() const {
    switch (kind_) {
        case NormKind::Max: return "max";
        case NormKind::Sum: return "sum";
        default: return "polytope";
    }
}

Scalar PolyhedralNorm::eval(const Vector& v) const {
    Scalar best = 0;
    switch (kind_) {
        case NormKind::Max:
            for (const auto& c : v) best = std::max(best, abs(c));
            return best;
        case NormKind::Sum:
            for (const auto& c : v) best += abs(c);
            return best;
        default:
            if (v.size() != facets_.front().size()) throw DimensionError("norm_eval: dimension mismatch");
            for (const auto& f : facets_) best = std::max(best, dot(f, v));
            return best;
    }
}

std::vector<Vector> PolyhedralNorm::unit_facets(std::size_t dim) const {
    switch (kind_) {
        case NormKind::Max: return signed_units(dim);
        case NormKind::Sum: return sign_vectors(dim);
        default:
            if (dim != facets_.front().size()) throw DimensionError("unit_facets: dimension mismatch");
            return facets_;
    }
}

std::vector<Vector> PolyhedralNorm::ball_vertices(std::size_t dim) const {
    switch (kind_) {
        case NormKind::Max: return sign_vectors(dim);
        case NormKind::Sum: return signed_units(dim);
        default: break;
    }
    if (dim != facets_.front().size()) throw DimensionError("ball_vertices: dimension mismatch");
    // Homogenize: rays (x, t) with t > 0 of {<f,x> - t <= 0, -t <= 0}.
    std::vector<Vector> h;
    for (const auto& f : facets_) {
        Vector row = f;
        row.push_back(-1);
        h.push_back(std::move(row));
    }
    Vector tneg = zeros(dim + 1);
    tneg.back() = -1;
    h.push_back(tneg);
    DdResult dd = double_description(h, dim + 1);
    std::vector<Vector> out;
    for (const auto& r : dd.rays) {
        if (r.back() <= 0) continue;
        Vector x(r.begin(), r.end() - 1);
        out.push_back(scale(1 / r.back(), x));
    }
    std::sort(out.begin(), out.end());
    return out;
}

PolyhedralNorm PolyhedralNorm::dual(std::size_t dim) const {
    switch (kind_) {
        case NormKind::Max: return sum_norm();
        case NormKind::Sum: return max_norm();
        default: break;
    }
    std::vector<Facet> f;
    for (auto& v : ball_vertices(dim)) f.push_back({v, 1});
    return polytope(std::move(f));
}

bool PolyhedralNorm::same_ball(const PolyhedralNorm& other, std::size_t dim) const {
    // Balls agree iff every vertex of each has norm exactly 1 in the other.
    for (const auto& v : ball_vertices(dim)) {
        if (other.eval(v) != 1) return false;
    }
    for (const auto& v : other.ball_vertices(dim)) {
        if (eval(v) != 1) return false;
    }
    return true;
}

PolyhedralNorm product_norm(const PolyhedralNorm& base, std::size_t dim, std::size_t blocks) {
    if (blocks == 1) return base;
    if (base.kind() == NormKind::Max) return PolyhedralNorm::max_norm();
    std::vector<Facet> facets;
    for (std::size_t b = 0; b < blocks; ++b) {
        for (const auto& f : base.unit_facets(dim)) {
            Vector row = zeros(dim * blocks);
            std::copy(f.begin(), f.end(), row.begin() + static_cast<std::ptrdiff_t>(b * dim));
            facets.push_back({row, 1});
        }
    }
    return PolyhedralNorm::polytope(std::move(facets));
}

PolyhedralNorm product_dual_norm(const PolyhedralNorm& base, std::size_t dim, std::size_t blocks) {
    PolyhedralNorm bd = base.dual(dim);
    if (blocks == 1) return bd;
    if (bd.kind() == NormKind::Sum) return PolyhedralNorm::sum_norm();
    // Facets of {sum_i ||y_i||_* <= 1}: one base dual facet per block, summed.
    std::vector<Vector> bf = bd.unit_facets(dim);
    std::vector<Facet> facets;
    std::vector<std::size_t> idx(blocks, 0);
    for (;;) {
        Vector row;
        for (std::size_t b = 0; b < blocks; ++b) row = concat(row, bf[idx[b]]);
        facets.push_back({row, 1});
        std::size_t b = 0;
        while (b < blocks && ++idx[b] == bf.size()) idx[b++] = 0;
        if (b == blocks) break;
    }
    return PolyhedralNorm::polytope(std::move(facets));
}

}  // namespace extremal
