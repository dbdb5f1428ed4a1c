#include "extremal/system.hpp"

#include "extremal/errors.hpp"

namespace extremal {

SetSystem::SetSystem(Region A, Region B, Vector a, Vector b, PolyhedralNorm norm)
    : SetSystem(A, B, a, b, norm, norm.dual(a.size())) {}

SetSystem::SetSystem(Region A, Region B, Vector a, Vector b, PolyhedralNorm norm, PolyhedralNorm dual_norm)
    : A_(std::move(A)), B_(std::move(B)), a_(std::move(a)), b_(std::move(b)), norm_(std::move(norm)),
      dual_(std::move(dual_norm)) {
    require_same_dim(a_, b_, "SetSystem");
    if (A_.dim() != a_.size() || B_.dim() != b_.size()) throw DimensionError("SetSystem: region dimension mismatch");
    if (!A_.contains(a_)) throw PreconditionError("SetSystem: a is not in A");
    if (!B_.contains(b_)) throw PreconditionError("SetSystem: b is not in B");
    if (!dual_.same_ball(norm_.dual(a_.size()), a_.size())) {
        throw PreconditionError("SetSystem: dual norm is not the dual of the primal norm");
    }
}

bool SetSystem::convex() const { return exact() && A_.pieces().size() == 1 && B_.pieces().size() == 1; }

SetSystem SetSystem::translated(const Vector& u, const Vector& v) const {
    return SetSystem(A_.translate(neg(u)), B_.translate(neg(v)), sub(a_, u), sub(b_, v), norm_, dual_);
}

SetSystem SetSystem::with_points(const Vector& a, const Vector& b) const {
    return SetSystem(A_, B_, a, b, norm_, dual_);
}

SetSystem reduce_n_sets(const std::vector<Region>& regions, const std::vector<Vector>& points,
                        const PolyhedralNorm& base) {
    if (regions.size() < 2) throw PreconditionError("reduce_n_sets: need at least two regions");
    if (points.size() != regions.size()) throw PreconditionError("reduce_n_sets: one reference point per region");
    const std::size_t d = regions.front().dim();
    for (const auto& r : regions) {
        if (r.dim() != d) throw DimensionError("reduce_n_sets: dimension mismatch");
        if (!r.is_exact()) throw UnsupportedBackend("reduce_n_sets: oracle region");
    }
    const std::size_t k = regions.size() - 1;
    if (k == 1) return SetSystem(regions[0], regions[1], points[0], points[1], base);
    const std::size_t D = d * k;

    auto lift = [&](const Row& r, std::size_t block) {
        Vector n = zeros(D);
        for (std::size_t j = 0; j < d; ++j) n[block * d + j] = r.normal[j];
        return Row{n, r.rhs};
    };

    std::vector<Polyhedron> prod;
    std::vector<std::size_t> idx(k, 0);
    bool any = true;
    for (std::size_t i = 0; i < k; ++i) any = any && !regions[i].pieces().empty();
    while (any) {
        std::vector<Row> rows;
        for (std::size_t i = 0; i < k; ++i) {
            for (const auto& r : regions[i].pieces()[idx[i]].rows()) rows.push_back(lift(r, i));
        }
        prod.push_back(Polyhedron(D, std::move(rows)));
        std::size_t i = 0;
        for (; i < k; ++i) {
            if (++idx[i] < regions[i].pieces().size()) break;
            idx[i] = 0;
        }
        if (i == k) break;
    }

    std::vector<Polyhedron> diag;
    for (const auto& P : regions.back().pieces()) {
        std::vector<Row> rows;
        for (const auto& r : P.rows()) rows.push_back(lift(r, 0));
        for (std::size_t i = 1; i < k; ++i) {
            for (std::size_t j = 0; j < d; ++j) {
                Vector n = zeros(D);
                n[j] = 1;
                n[i * d + j] = -1;
                rows.push_back({n, 0});
                rows.push_back({neg(n), 0});
            }
        }
        diag.push_back(Polyhedron(D, std::move(rows)));
    }

    Vector a, b;
    for (std::size_t i = 0; i < k; ++i) {
        a = concat(a, points[i]);
        b = concat(b, points.back());
    }
    return SetSystem(Region::exact(D, std::move(prod)), Region::exact(D, std::move(diag)), a, b,
                     product_norm(base, d, k), product_dual_norm(base, d, k));
}

std::string level_name(Level l) {
    switch (l) {
        case Level::Extremal: return "extremal";
        case Level::LocallyExtremal: return "locally-extremal";
        case Level::Stationary: return "stationary";
        case Level::ApproxStationary: return "approx-stationary";
    }
    return "";
}

std::string status_name(Status s) {
    switch (s) {
        case Status::Proved: return "proved";
        case Status::Refuted: return "refuted";
        case Status::Likely: return "likely";
        case Status::Unknown: return "unknown";
    }
    return "";
}

}  // namespace extremal
