#include "extremal/mappings.hpp"

#include <algorithm>

#include "extremal/cones.hpp"
#include "extremal/dual.hpp"
#include "extremal/errors.hpp"
#include "extremal/geometry.hpp"
#include "extremal/lp.hpp"
#include "extremal/primal.hpp"

namespace extremal {

namespace {

constexpr std::size_t kProductDimCap = 8;

Vector head(const Vector& p, std::size_t n) { return Vector(p.begin(), p.begin() + n); }
Vector tail(const Vector& p, std::size_t n) { return Vector(p.begin() + n, p.end()); }

Scalar pnorm(const Vector& y, const Vector& z, const PolyhedralNorm& n) {
    Scalar p = n.eval(y), q = n.eval(z);
    return p < q ? q : p;
}

// Distance from w to (A - y) ∩ (B - z); nothing when the set is empty.
std::optional<PointDistance> dist_to_S(const Region& A, const Region& B, const Vector& w, const Vector& y,
                                       const Vector& z, const PolyhedralNorm& n) {
    std::optional<PointDistance> best;
    for (const auto& P : A.pieces()) {
        for (const auto& Q : B.pieces()) {
            Polyhedron I = P.translate(neg(y)).intersect(Q.translate(neg(z)));
            if (I.empty()) continue;
            PointDistance d = dist_point_polyhedron(w, I, n);
            if (!best || d.value < best->value) best = d;
        }
    }
    return best;
}

Region near_pieces(const Region& R, const Vector& c, const Scalar& r, const PolyhedralNorm& n) {
    std::vector<Polyhedron> keep;
    for (const auto& P : R.pieces()) {
        if (dist_point_polyhedron(c, P, n).value < r) keep.push_back(P);
    }
    return Region::exact(R.dim(), std::move(keep));
}

std::vector<Scalar> radii(const Scalar& delta, std::size_t grid) {
    std::vector<Scalar> out;
    Scalar p(1);
    for (std::size_t j = 1; j <= grid; ++j) {
        p /= 2;
        out.push_back(Scalar(static_cast<long>(j)) / static_cast<long>(grid));
        out.push_back(p);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    out.erase(std::remove_if(out.begin(), out.end(), [&](const Scalar& r) { return r >= delta; }), out.end());
    return out;
}

// Unit directions (product max norm) in the (y, z) space.
std::vector<Vector> directions(const SetSystem& S) {
    const std::size_t n = S.dim();
    const PolyhedralNorm& nm = S.norm();
    std::vector<Vector> out;
    auto push = [&](const Vector& y, const Vector& z) {
        Scalar s = pnorm(y, z, nm);
        if (s == 0) return;
        Vector d = scale(1 / s, concat(y, z));
        if (std::find(out.begin(), out.end(), d) == out.end()) out.push_back(d);
    };
    for (std::size_t i = 0; i < n; ++i) {
        for (int sg : {1, -1}) {
            Vector e = scale(Scalar(sg), unit(n, i));
            push(e, zeros(n));
            push(zeros(n), e);
            push(e, e);
        }
    }
    for (const auto& P : S.A().pieces()) {
        for (const auto& r : P.rows()) {
            push(r.normal, zeros(n));
            push(neg(r.normal), zeros(n));
        }
    }
    for (const auto& Q : S.B().pieces()) {
        for (const auto& r : Q.rows()) {
            push(zeros(n), r.normal);
            push(zeros(n), neg(r.normal));
        }
    }
    return out;
}

// Exact check that S(base + r d) misses the closed c-ball around `center`
// for every r in (0, r0]. The translation is linear in r, so each piece
// pair is one strict feasibility problem in (x, r).
bool ray_stays_away(const SetSystem& S, const Vector& base, const Vector& d, const Vector& center, const Scalar& c,
                    const Scalar& r0) {
    const std::size_t n = S.dim();
    const Vector y0 = head(base, n), z0 = tail(base, n), dy = head(d, n), dz = tail(d, n);
    const Polyhedron ballc = ball(center, c, S.norm());
    auto lift = [&](const Vector& normal, const Scalar& t) {
        Vector v = normal;
        v.push_back(t);
        return v;
    };
    for (const auto& P : S.A().pieces()) {
        for (const auto& Q : S.B().pieces()) {
            std::vector<Constraint> rows;
            std::vector<bool> strict;
            for (const auto& r : P.rows()) rows.push_back({lift(r.normal, dot(r.normal, dy)), Rel::Le, r.rhs - dot(r.normal, y0)});
            for (const auto& r : Q.rows()) rows.push_back({lift(r.normal, dot(r.normal, dz)), Rel::Le, r.rhs - dot(r.normal, z0)});
            for (const auto& r : ballc.rows()) rows.push_back({lift(r.normal, 0), Rel::Le, r.rhs});
            strict.assign(rows.size(), false);
            rows.push_back({lift(zeros(n), 1), Rel::Le, r0});
            strict.push_back(false);
            rows.push_back({lift(zeros(n), 1), Rel::Ge, 0});
            strict.push_back(true);
            if (solve_strict(n + 1, rows, strict).feasible) return false;
        }
    }
    return true;
}

// A sampled ray whose ratio at the smallest radius is positive only
// because that radius is positive: if S stays away from the center along
// the whole initial segment, the ratio is at most r ||d|| / c there and the
// infimum along the ray is 0.
struct RayCandidate {
    Vector base;
    Vector direction;
    Vector center;
    Scalar ratio;
    Scalar away;  // distance of S from the center at the smallest radius
};

// Replaces the sampled minimum by an exact 0 when one of the best rays
// certifies it.
void certify_zero(RateEstimate& est, const SetSystem& S, std::vector<RayCandidate> cands, const Scalar& r0) {
    if (est.samples.empty() || cands.empty()) return;
    std::stable_sort(cands.begin(), cands.end(),
                     [](const RayCandidate& x, const RayCandidate& y) { return x.ratio < y.ratio; });
    const std::size_t tries = std::min<std::size_t>(cands.size(), 8);
    for (std::size_t i = 0; i < tries; ++i) {
        const RayCandidate& k = cands[i];
        if (ray_stays_away(S, k.base, k.direction, k.center, k.away / 2, r0)) {
            est.samples.push_back({concat(k.base, add(k.base, scale(r0, k.direction))), 0});
            return;
        }
    }
}

// (a, b) and the limit-cell pairs with exactly opposite normals, pulled
// into the window.
std::vector<Vector> bases(const SetSystem& S, const Scalar& delta) {
    const PolyhedralNorm& nm = S.norm();
    std::vector<Vector> out{concat(S.a(), S.b())};
    auto ca = face_cells(S.A(), S.a(), std::nullopt, nm);
    auto cb = face_cells(S.B(), S.b(), std::nullopt, nm);
    auto pull = [&](const Vector& c, const Vector& r) {
        Scalar d = nm.eval(sub(r, c));
        if (d * 2 < delta) return r;
        return add(c, scale(delta / (4 * d), sub(r, c)));
    };
    for (const auto& A : ca) {
        for (const auto& B : cb) {
            if (A.normal.trivial() || B.normal.trivial()) continue;
            auto ps = pair_separation(A.normal, B.normal, S.dual_norm());
            if (!ps || ps->value != 0) continue;
            Vector p = concat(pull(S.a(), A.face.representative), pull(S.b(), B.face.representative));
            if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
        }
    }
    return out;
}

Verdict boundary_verdict(const Region& R, const Vector& x, const PolyhedralNorm& n) {
    Verdict v;
    if (!R.contains(x)) throw SoundnessError("boundary test: point outside the set");
    LocalCone lc = local_cone(R, x, n);
    auto y = uncovered_direction(lc.cones, x.size());
    if (!y) {
        v.status = Status::Refuted;
        v.certificate.cover = CoverCertificate{lc.cones, lc.radius};
        v.certificate.interior_radius = lc.radius / 2;
        return v;
    }
    v.status = Status::Proved;
    v.certificate.ray = RayCertificate{*y, lc.radius / (2 * n.eval(*y))};
    return v;
}

}  // namespace

bool MappingImage::contains(const Vector& p) const {
    if (factors.size() == 1) return factors[0].contains(p);
    const std::size_t n = factors[0].dim();
    if (p.size() != 2 * n) throw DimensionError("MappingImage::contains: dimension mismatch");
    return factors[0].contains(head(p, n)) && factors[1].contains(tail(p, n));
}

MappingImage evaluate(const MappingView& M, const Vector& input) {
    const SetSystem& S = M.system;
    const std::size_t n = S.dim();
    MappingImage img;
    if (M.which == MappingView::Which::F) {
        if (input.size() != n) throw DimensionError("evaluate: F takes a point of X");
        img.factors = {S.A().translate(neg(input)), S.B().translate(neg(input))};
        return img;
    }
    if (input.size() != 2 * n) throw DimensionError("evaluate: S takes a pair (y, z)");
    if (!S.exact()) throw UnsupportedBackend("evaluate: S of an oracle region");
    const Region Ay = S.A().translate(neg(head(input, n)));
    const Region Bz = S.B().translate(neg(tail(input, n)));
    std::vector<Polyhedron> pieces;
    for (const auto& P : Ay.pieces()) {
        for (const auto& Q : Bz.pieces()) pieces.push_back(P.intersect(Q));
    }
    img.factors = {Region::exact(n, std::move(pieces))};
    return img;
}

bool graph_consistent(const SetSystem& S, const Vector& x, const Vector& y, const Vector& z) {
    const bool inF = evaluate({S, MappingView::Which::F}, x).contains(concat(y, z));
    const bool inS = evaluate({S, MappingView::Which::S}, concat(y, z)).contains(x);
    return inF == inS;
}

std::string rate_property_name(RateProperty p) {
    switch (p) {
        case RateProperty::Covering: return "covering";
        case RateProperty::Semiregularity: return "semiregularity";
        case RateProperty::LipschitzLsc: return "lipschitz_lsc";
        case RateProperty::MetricRegularity: return "metric_regularity";
        case RateProperty::Aubin: return "aubin";
    }
    return "";
}

RateEstimate estimate_rate(const MappingView& M, RateProperty property, const Scalar& delta, std::size_t grid) {
    if (delta <= 0) throw PreconditionError("estimate_rate: delta must be positive");
    if (grid == 0) throw PreconditionError("estimate_rate: grid must be positive");
    const SetSystem& S = M.system;
    if (!S.exact()) throw UnsupportedBackend("estimate_rate: oracle region");
    const std::size_t n = S.dim();
    const PolyhedralNorm& nm = S.norm();
    // Pieces farther than 2 delta from the base points are dropped; the
    // properties are local and far pieces only blur the sampled ratios.
    // Kept pieces stay whole so that small shifts never empty S artificially.
    const Region A = near_pieces(S.A(), S.a(), 2 * delta, nm);
    const Region B = near_pieces(S.B(), S.b(), 2 * delta, nm);
    const Vector ab = concat(S.a(), S.b());
    const auto rs = radii(delta, grid);
    const auto dirs = directions(S);

    RateEstimate est;
    est.property = property;
    auto record = [&](Vector in, Scalar ratio) { est.samples.push_back({std::move(in), std::move(ratio)}); };
    std::vector<RayCandidate> cands;
    auto has_zero = [&] {
        return std::any_of(est.samples.begin(), est.samples.end(), [](const RateSample& x) { return x.ratio == 0; });
    };
    auto window = [&](const Vector& p) { return pnorm(sub(head(p, n), S.a()), sub(tail(p, n), S.b()), nm) < delta; };

    switch (property) {
        case RateProperty::Covering:
        case RateProperty::Semiregularity:
        case RateProperty::LipschitzLsc:
            for (const auto& d : dirs) {
                for (const auto& r : rs) {
                    Vector p = add(ab, scale(r, d));
                    auto ds = dist_to_S(A, B, zeros(n), head(p, n), tail(p, n), nm);
                    if (property == RateProperty::Covering) {
                        // p lies outside F(X), so the ball of radius alpha rho
                        // fails to be covered once alpha rho > r, for rho near delta
                        if (!ds) record(p, r / delta);
                        continue;
                    }
                    if (!ds) {
                        record(p, 0);
                    } else if (ds->value > 0) {
                        record(p, r / ds->value);
                    }
                }
            }
            // (a, b) on the boundary of dom S = F(X): uncovered points at every
            // distance, so the covering rate is exactly 0
            if (property == RateProperty::Covering && 2 * n <= kProductDimCap && on_boundary(domain_of_S(S), ab)) {
                record(ab, 0);
            }
            break;
        case RateProperty::MetricRegularity:
            for (const auto& base : bases(S, delta)) {
                // bases lie in A x B, so the numerator grows at most like r
                const bool on_base = A.contains(head(base, n)) && B.contains(tail(base, n));
                for (const auto& d : dirs) {
                    for (const auto& r : rs) {
                        Vector p = add(base, scale(r, d));
                        if (!window(p)) continue;
                        const Vector y = head(p, n), z = tail(p, n);
                        Scalar num = pnorm(sub(y, dist_point_region(y, A, nm).witness),
                                           sub(z, dist_point_region(z, B, nm).witness), nm);
                        auto ds = dist_to_S(A, B, zeros(n), y, z, nm);
                        if (!ds) {
                            record(p, 0);
                        } else if (ds->value > 0) {
                            record(p, num / ds->value);
                            if (r == rs.front() && on_base) cands.push_back({base, d, zeros(n), num / ds->value, ds->value});
                        }
                    }
                }
            }
            if (!rs.empty() && !has_zero()) certify_zero(est, S, cands, rs.front());
            break;
        case RateProperty::Aubin:
            for (const auto& base : bases(S, delta)) {
                auto w0 = dist_to_S(A, B, zeros(n), head(base, n), tail(base, n), nm);
                if (!w0 || w0->value >= delta) continue;
                const Vector w = w0->witness;
                for (const auto& d : dirs) {
                    for (const auto& r : rs) {
                        Vector p = add(base, scale(r, d));
                        if (!window(p)) continue;
                        auto ds = dist_to_S(A, B, w, head(p, n), tail(p, n), nm);
                        Vector in = concat(base, p);
                        if (!ds) {
                            record(in, 0);
                        } else if (ds->value > 0) {
                            record(in, r / ds->value);
                            if (r == rs.front()) cands.push_back({base, d, w, r / ds->value, ds->value});
                        }
                    }
                }
            }
            if (!rs.empty() && !has_zero()) certify_zero(est, S, cands, rs.front());
            break;
    }

    if (est.samples.empty()) {
        // No finite ratio in the window: the sampled bound is the window itself.
        est.alpha_upper = delta;
        est.alpha_lower = 0;
        return est;
    }
    est.alpha_upper = est.samples.front().ratio;
    for (const auto& s : est.samples) {
        if (s.ratio < est.alpha_upper) est.alpha_upper = s.ratio;
    }
    est.alpha_lower = 0;
    est.exact = est.alpha_upper == 0;
    return est;
}

Region domain_of_S(const SetSystem& S) {
    if (!S.exact()) throw UnsupportedBackend("domain_of_S: oracle region");
    const std::size_t n = S.dim();
    if (2 * n > kProductDimCap) throw CapExceeded("domain_of_S: product dimension above 8");
    std::vector<Polyhedron> pieces;
    for (const auto& P : S.A().pieces()) {
        for (const auto& Q : S.B().pieces()) {
            // Variables (y, z, x) with x + y in P and x + z in Q.
            std::vector<Row> rows;
            for (const auto& r : P.rows()) rows.push_back({concat(concat(r.normal, zeros(n)), r.normal), r.rhs});
            for (const auto& r : Q.rows()) rows.push_back({concat(concat(zeros(n), r.normal), r.normal), r.rhs});
            pieces.push_back(project(Polyhedron(3 * n, std::move(rows)), 2 * n));
        }
    }
    return Region::exact(2 * n, std::move(pieces));
}

CrossCheck crosscheck_primal_dual(const SetSystem& S, const Scalar& delta, std::size_t grid) {
    if (!S.exact()) throw UnsupportedBackend("crosscheck_primal_dual: oracle region");
    const std::size_t n = S.dim();
    CrossCheck cc;
    cc.extremal = check_relative_extremal(S).status;
    const Region dom = domain_of_S(S);
    const Vector ab = concat(S.a(), S.b());
    cc.boundary_of_domain = on_boundary(dom, ab);
    if (cc.boundary_of_domain != (cc.extremal == Status::Proved)) {
        cc.errors.push_back("extremality " + status_name(cc.extremal) + " but (a, b) " +
                            (cc.boundary_of_domain ? "on" : "off") + " the boundary of dom S");
    }

    for (const auto& d : directions(S)) {
        Vector p = add(ab, scale(delta, d));
        if (!graph_consistent(S, zeros(n), head(p, n), tail(p, n))) {
            cc.errors.push_back("graph of F and S disagree at " + to_string(p));
        }
    }

    cc.approx = check_relative_approx_stationary(S).status;
    const MappingView F{S, MappingView::Which::F};
    const MappingView Sv{S, MappingView::Which::S};
    cc.metric_regularity = estimate_rate(F, RateProperty::MetricRegularity, delta, grid).alpha_upper;
    cc.aubin = estimate_rate(Sv, RateProperty::Aubin, delta, grid).alpha_upper;
    for (const auto& [name, rate] : {std::pair<std::string, Scalar>{"metric regularity", cc.metric_regularity},
                                     std::pair<std::string, Scalar>{"aubin", cc.aubin}}) {
        if (cc.approx == Status::Proved && rate > 0) {
            cc.warnings.push_back("approx-stationary but sampled " + name + " rate " + to_string(rate) + " > 0");
        }
        if (cc.approx == Status::Refuted && rate == 0) {
            cc.warnings.push_back("not approx-stationary but sampled " + name + " rate is 0");
        }
    }
    return cc;
}

Verdict product_boundary_condition(const SetSystem& S) {
    if (!S.exact()) throw UnsupportedBackend("product_boundary_condition: oracle region");
    const std::size_t n = S.dim();
    const std::size_t N = 2 * n;
    if (N > kProductDimCap) throw CapExceeded("product_boundary_condition: product dimension above 8");
    std::vector<Row> diag;
    for (std::size_t i = 0; i < n; ++i) {
        Vector c = zeros(N);
        c[i] = 1;
        c[n + i] = -1;
        diag.push_back({c, 0});
        diag.push_back({neg(c), 0});
    }
    const Polyhedron Bt(N, diag);
    std::vector<Polyhedron> pieces;
    for (const auto& P : S.A().pieces()) {
        for (const auto& Q : S.B().pieces()) {
            std::vector<Row> rows;
            for (const auto& r : P.rows()) rows.push_back({concat(r.normal, zeros(n)), r.rhs});
            for (const auto& r : Q.rows()) rows.push_back({concat(zeros(n), r.normal), r.rhs});
            // B~ = -B~, so A~ + B~ = A~ - B~.
            pieces.push_back(difference(Polyhedron(N, std::move(rows)), Bt));
        }
    }
    const Region sum = Region::exact(N, std::move(pieces));
    Verdict v = boundary_verdict(sum, concat(S.a(), S.b()), product_norm(S.norm(), n, 2));
    const Status ex = check_relative_extremal(S).status;
    if (ex != v.status) {
        throw SoundnessError("product_boundary_condition: boundary test " + status_name(v.status) +
                             " against extremality " + status_name(ex));
    }
    return v;
}

}  // namespace extremal
