#include "extremal/dual.hpp"

#include <algorithm>

#include "extremal/errors.hpp"
#include "extremal/primal.hpp"

namespace extremal {

namespace {

Scalar max2(const Scalar& x, const Scalar& y) { return x < y ? y : x; }
Scalar min2(const Scalar& x, const Scalar& y) { return x < y ? x : y; }

Vector combine(const std::vector<Vector>& gens, const Vector& coef, std::size_t off, std::size_t dim) {
    Vector out = zeros(dim);
    for (std::size_t j = 0; j < gens.size(); ++j) out = add(out, scale(coef[off + j], gens[j]));
    return out;
}

// Adds f_m . (sum_j coef_j g_j + sign * x) - t <= 0 for every facet m,
// with the generator block at `goff`, an optional free vector at `xoff`
// and t at `toff`.
void add_norm_rows(LinearProgram& lp, const std::vector<Vector>& facets, const std::vector<Vector>& gens,
                   std::size_t goff, std::optional<std::size_t> xoff, int xsign, std::size_t toff) {
    for (const auto& f : facets) {
        Vector c = zeros(lp.nvars);
        for (std::size_t j = 0; j < gens.size(); ++j) c[goff + j] = -dot(f, gens[j]);
        if (xoff) {
            for (std::size_t i = 0; i < f.size(); ++i) c[*xoff + i] = xsign * f[i];
        }
        c[toff] = -1;
        lp.add(std::move(c), Rel::Le, 0);
    }
}

// Least value of max(d(x*, K1), d(-x*, K2)) (or their sum) over x* on the
// dual unit sphere, one LP per sphere facet.
struct SphereFit {
    Scalar value;
    Vector xstar;
};

std::optional<SphereFit> sphere_fit(const Cone& K1, const Cone& K2, const PolyhedralNorm& dn, bool sum) {
    const std::size_t n = K1.dim();
    const auto facets = dn.unit_facets(n);
    const auto& G = K1.generators();
    const auto& H = K2.generators();
    const std::size_t p = G.size(), q = H.size();
    // Variables: x* (n, free), lambda (p), mu (q), t1, t2.
    const std::size_t nv = n + p + q + 2;
    std::optional<SphereFit> best;
    for (std::size_t k = 0; k < facets.size(); ++k) {
        LinearProgram lp(nv);
        for (std::size_t j = n; j < nv; ++j) lp.nonneg[j] = true;
        Vector c = zeros(nv);
        for (std::size_t i = 0; i < n; ++i) c[i] = facets[k][i];
        lp.add(c, Rel::Eq, 1);
        for (std::size_t m = 0; m < facets.size(); ++m) {
            if (m == k) continue;
            Vector r = zeros(nv);
            for (std::size_t i = 0; i < n; ++i) r[i] = facets[m][i];
            lp.add(std::move(r), Rel::Le, 1);
        }
        // ||x* - G lambda|| <= t1 and ||-x* - H mu|| <= t2.
        add_norm_rows(lp, facets, G, n, 0, 1, n + p + q);
        add_norm_rows(lp, facets, H, n + p, 0, -1, n + p + q + 1);
        lp.maximize = false;
        if (sum) {
            lp.objective[n + p + q] = 1;
            lp.objective[n + p + q + 1] = 1;
        } else {
            lp.add([&] {
                Vector r = zeros(nv);
                r[n + p + q] = 1;
                r[n + p + q + 1] = -1;
                return r;
            }(), Rel::Eq, 0);
            lp.objective[n + p + q] = 1;
        }
        LpResult r = solve(lp);
        if (r.status != LpStatus::Optimal) continue;
        Vector xs(r.x.begin(), r.x.begin() + n);
        Scalar d1 = dist_to_cone(xs, K1, dn).value;
        Scalar d2 = dist_to_cone(neg(xs), K2, dn).value;
        Scalar val = sum ? d1 + d2 : max2(d1, d2);
        if (!best || val < best->value) best = SphereFit{val, xs};
    }
    return best;
}

bool within(const Vector& x, const Vector& c, const Scalar& r, const PolyhedralNorm& n) {
    return n.eval(sub(x, c)) < r;
}

DualPair pair_from(const SeparationValue& sv, const Scalar& eps, DualForm form) {
    return DualPair{sv.face_a->representative, sv.face_b->representative, sv.astar, sv.bstar, eps, form};
}

}  // namespace

Vector norming_vector(const Vector& xstar, const PolyhedralNorm& n) {
    const auto verts = n.ball_vertices(xstar.size());
    const Vector* best = nullptr;
    Scalar bv;
    for (const auto& w : verts) {
        Scalar v = dot(xstar, w);
        if (!best || v > bv) {
            best = &w;
            bv = v;
        }
    }
    return *best;
}

std::optional<PairSeparation> pair_separation(const Cone& K1, const Cone& K2, const PolyhedralNorm& dn) {
    if (K1.dim() != K2.dim()) throw DimensionError("pair_separation: dimension mismatch");
    if (K1.trivial() && K2.trivial()) return std::nullopt;
    const std::size_t n = K1.dim();
    const auto facets = dn.unit_facets(n);
    const auto& G = K1.generators();
    const auto& H = K2.generators();
    const std::size_t p = G.size(), q = H.size();
    const std::size_t nv = p + q + 1;
    std::vector<Vector> both = G;
    both.insert(both.end(), H.begin(), H.end());

    std::optional<PairSeparation> best;
    const std::size_t nk = p ? facets.size() : 1;
    const std::size_t nl = q ? facets.size() : 1;
    for (std::size_t k = 0; k < nk; ++k) {
        for (std::size_t l = 0; l < nl; ++l) {
            LinearProgram lp(nv);
            for (std::size_t j = 0; j < nv; ++j) lp.nonneg[j] = true;
            add_norm_rows(lp, facets, {}, 0, std::nullopt, 0, p + q);
            // f_m . (G lambda + H mu) <= t
            for (std::size_t m = 0; m < facets.size(); ++m) {
                Vector& c = lp.rows[m].coef;
                for (std::size_t j = 0; j < p + q; ++j) c[j] = dot(facets[m], both[j]);
            }
            Vector c = zeros(nv);
            for (std::size_t j = 0; j < p; ++j) c[j] = dot(facets[k], G[j]);
            for (std::size_t j = 0; j < q; ++j) c[p + j] = dot(facets[l], H[j]);
            lp.add(std::move(c), Rel::Ge, 1);
            lp.maximize = false;
            lp.objective[p + q] = 1;
            LpResult r = solve(lp);
            if (r.status != LpStatus::Optimal) continue;
            Vector as = combine(G, r.x, 0, n);
            Vector bs = combine(H, r.x, p, n);
            Scalar s = dn.eval(as) + dn.eval(bs);
            if (s == 0) continue;
            Scalar val = dn.eval(add(as, bs)) / s;
            if (best && val >= best->value) continue;
            PairSeparation ps;
            ps.value = val;
            ps.astar = scale(1 / s, as);
            ps.bstar = scale(1 / s, bs);
            ps.lambda = Vector(r.x.begin(), r.x.begin() + p);
            ps.mu = Vector(r.x.begin() + p, r.x.begin() + p + q);
            for (auto& x : ps.lambda) x /= s;
            for (auto& x : ps.mu) x /= s;
            best = std::move(ps);
            if (best->value == 0) return best;
        }
    }
    return best;
}

SeparationValue separation_over(const std::vector<FaceCell>& ca, const std::vector<FaceCell>& cb,
                                const PolyhedralNorm& dn, std::size_t cap) {
    SeparationValue out;
    for (const auto& A : ca) {
        for (const auto& B : cb) {
            if (A.normal.trivial() && B.normal.trivial()) continue;
            if (++out.pairs > cap) {
                throw CapExceeded("separation: more than " + std::to_string(cap) + " face pairs");
            }
            auto ps = pair_separation(A.normal, B.normal, dn);
            if (!ps) continue;
            if (out.value && ps->value >= *out.value) continue;
            out.value = ps->value;
            out.face_a = A.face;
            out.face_b = B.face;
            out.cone_a = A.normal;
            out.cone_b = B.normal;
            out.astar = ps->astar;
            out.bstar = ps->bstar;
            out.lambda = ps->lambda;
            out.mu = ps->mu;
        }
    }
    return out;
}

SeparationValue separation_infimum(const SetSystem& S, const Scalar& locality, std::size_t cap) {
    if (!S.exact()) throw UnsupportedBackend("separation_infimum: oracle region");
    if (locality <= 0) throw PreconditionError("separation_infimum: locality must be positive");
    auto ca = face_cells(S.A(), S.a(), locality, S.norm(), cap);
    auto cb = face_cells(S.B(), S.b(), locality, S.norm(), cap);
    return separation_over(ca, cb, S.dual_norm(), cap);
}

SeparationValue separation_limit(const SetSystem& S, std::size_t cap) {
    if (!S.exact()) throw UnsupportedBackend("separation_limit: oracle region");
    auto ca = face_cells(S.A(), S.a(), std::nullopt, S.norm(), cap);
    auto cb = face_cells(S.B(), S.b(), std::nullopt, S.norm(), cap);
    return separation_over(ca, cb, S.dual_norm(), cap);
}

bool verify_separation_value(const SeparationValue& v, const PolyhedralNorm& dn) {
    if (!v.value) return !v.cone_a && !v.cone_b;
    if (!v.cone_a || !v.cone_b || !v.face_a || !v.face_b) return false;
    const std::size_t n = v.astar.size();
    const auto& G = v.cone_a->generators();
    const auto& H = v.cone_b->generators();
    if (v.lambda.size() != G.size() || v.mu.size() != H.size()) return false;
    for (const auto& x : v.lambda) {
        if (x < 0) return false;
    }
    for (const auto& x : v.mu) {
        if (x < 0) return false;
    }
    if (combine(G, v.lambda, 0, n) != v.astar || combine(H, v.mu, 0, n) != v.bstar) return false;
    if (dn.eval(v.astar) + dn.eval(v.bstar) != 1) return false;
    return dn.eval(add(v.astar, v.bstar)) == *v.value;
}

std::pair<Vector, Vector> lemma1_merge(const Vector& z1, const Vector& z2, const Cone& K1, const Cone& K2,
                                       const Scalar& eps, const PolyhedralNorm& dn) {
    require_same_dim(z1, z2, "lemma1_merge");
    if (eps <= 0 || eps >= 1) throw PreconditionError("lemma1_merge: eps must lie in (0, 1)");
    if (!K1.contains(z1) || !K2.contains(z2)) throw PreconditionError("lemma1_merge: z_i not in K_i");
    if (dn.eval(z1) + dn.eval(z2) != 1) throw PreconditionError("lemma1_merge: ||z1|| + ||z2|| != 1");
    if (dn.eval(add(z1, z2)) >= eps) throw PreconditionError("lemma1_merge: ||z1 + z2|| not below eps");

    Vector h1 = scale(Scalar(1, 2), sub(z1, z2));
    Vector h2 = neg(h1);
    Scalar s = dn.eval(h1) + dn.eval(h2);
    Vector o1 = scale(1 / s, h1), o2 = scale(1 / s, h2);

    const Scalar bound = eps / (2 * (1 - eps));
    if (dn.eval(o1) + dn.eval(o2) != 1 || !is_zero(add(o1, o2)) || dist_to_cone(o1, K1, dn).value >= bound ||
        dist_to_cone(o2, K2, dn).value >= bound) {
        throw SoundnessError("lemma1_merge: output bound fails");
    }
    return {o1, o2};
}

std::pair<Vector, Vector> lemma1_split(const Vector& z1, const Vector& z2, const Cone& K1, const Cone& K2,
                                       const Scalar& eps, const PolyhedralNorm& dn) {
    require_same_dim(z1, z2, "lemma1_split");
    if (eps <= 0 || eps >= 1) throw PreconditionError("lemma1_split: eps must lie in (0, 1)");
    if (dn.eval(z1) + dn.eval(z2) != 1) throw PreconditionError("lemma1_split: ||z1|| + ||z2|| != 1");
    if (!is_zero(add(z1, z2))) throw PreconditionError("lemma1_split: z1 + z2 != 0");
    ConeDistance d1 = dist_to_cone(z1, K1, dn);
    ConeDistance d2 = dist_to_cone(z2, K2, dn);
    if (d1.value + d2.value >= eps) throw PreconditionError("lemma1_split: cone distances not below eps");

    Scalar s = dn.eval(d1.witness) + dn.eval(d2.witness);
    Vector o1 = scale(1 / s, d1.witness), o2 = scale(1 / s, d2.witness);
    if (!K1.contains(o1) || !K2.contains(o2) || dn.eval(o1) + dn.eval(o2) != 1 ||
        dn.eval(add(o1, o2)) >= eps / (1 - eps)) {
        throw SoundnessError("lemma1_split: output bound fails");
    }
    return {o1, o2};
}

bool verify_dual_pair(const SetSystem& S, const DualPair& dp) { return verify_dual_pair(S, dp, dp.eps); }

bool verify_dual_pair(const SetSystem& S, const DualPair& dp, const Scalar& radius) {
    const std::size_t n = S.dim();
    if (dp.aprime.size() != n || dp.bprime.size() != n || dp.astar.size() != n || dp.bstar.size() != n) return false;
    if (dp.eps <= 0) return false;
    if (!S.A().contains(dp.aprime) || !S.B().contains(dp.bprime)) return false;
    if (!within(dp.aprime, S.a(), radius, S.norm()) || !within(dp.bprime, S.b(), radius, S.norm())) return false;
    const PolyhedralNorm& dn = S.dual_norm();
    const Cone NA = normal_cone(S.A(), dp.aprime);
    const Cone NB = normal_cone(S.B(), dp.bprime);
    switch (dp.form) {
        case DualForm::I:
            return dn.eval(dp.astar) == 1 && dp.bstar == neg(dp.astar) &&
                   dist_to_cone(dp.astar, NA, dn).value < dp.eps && dist_to_cone(dp.bstar, NB, dn).value < dp.eps;
        case DualForm::II:
            return NA.contains(dp.astar) && NB.contains(dp.bstar) && dn.eval(dp.astar) + dn.eval(dp.bstar) == 1 &&
                   dn.eval(add(dp.astar, dp.bstar)) < dp.eps;
        case DualForm::III: {
            Scalar s = dn.eval(dp.astar) + dn.eval(dp.bstar);
            return s > 0 && NA.contains(dp.astar) && NB.contains(dp.bstar) &&
                   dn.eval(add(dp.astar, dp.bstar)) < dp.eps * s;
        }
    }
    return false;
}

Verdict check_ep_condition(const SetSystem& S, DualForm form, const Scalar& eps, std::size_t cap) {
    if (eps <= 0 || eps >= 1) throw PreconditionError("check_ep_condition: eps must lie in (0, 1)");
    if (!S.exact()) throw UnsupportedBackend("check_ep_condition: oracle region");
    Verdict v;
    if (form != DualForm::I) {
        SeparationValue sv = separation_infimum(S, eps, cap);
        if (!verify_separation_value(sv, S.dual_norm())) throw SoundnessError("check_ep_condition: value fails");
        v.certificate.separation_value = sv.value;
        if (sv.value && *sv.value < eps) {
            DualPair dp = pair_from(sv, eps, form);
            if (!verify_dual_pair(S, dp)) throw SoundnessError("check_ep_condition: dual pair fails");
            v.status = Status::Proved;
            v.certificate.dual_pairs.push_back(dp);
        } else {
            v.status = Status::Refuted;
        }
        return v;
    }

    auto ca = face_cells(S.A(), S.a(), eps, S.norm(), cap);
    auto cb = face_cells(S.B(), S.b(), eps, S.norm(), cap);
    std::optional<Scalar> best;
    std::size_t pairs = 0;
    for (const auto& A : ca) {
        for (const auto& B : cb) {
            if (++pairs > cap) throw CapExceeded("check_ep_condition: more than " + std::to_string(cap) + " pairs");
            auto fit = sphere_fit(A.normal, B.normal, S.dual_norm(), false);
            if (!fit) continue;
            if (!best || fit->value < *best) best = fit->value;
            if (fit->value < eps) {
                DualPair dp{A.face.representative, B.face.representative, fit->xstar, neg(fit->xstar), eps,
                            DualForm::I};
                if (!verify_dual_pair(S, dp)) throw SoundnessError("check_ep_condition: dual pair fails");
                v.status = Status::Proved;
                v.certificate.dual_pairs.push_back(dp);
                v.certificate.separation_value = fit->value;
                return v;
            }
        }
    }
    v.status = Status::Refuted;
    v.certificate.separation_value = best;
    return v;
}

DualPair convert_conditions(const DualPair& dp, Conversion dir, const SetSystem& S, const Scalar& eps) {
    if (eps <= 0) throw PreconditionError("convert_conditions: eps must be positive");
    const Scalar xi = eps / (1 + eps);
    DualPair src = dp;
    src.eps = xi;
    src.form = dir == Conversion::IToII ? DualForm::I : DualForm::II;
    if (!verify_dual_pair(S, src)) throw PreconditionError("convert_conditions: source pair invalid at eps/(1+eps)");
    const Cone NA = normal_cone(S.A(), dp.aprime);
    const Cone NB = normal_cone(S.B(), dp.bprime);
    const PolyhedralNorm& dn = S.dual_norm();

    DualPair out;
    out.aprime = dp.aprime;
    out.bprime = dp.bprime;
    out.eps = eps;
    if (dir == Conversion::IIToI) {
        auto [h1, h2] = lemma1_merge(dp.astar, dp.bstar, NA, NB, xi, dn);
        out.astar = scale(2, h1);
        out.bstar = neg(out.astar);
        out.form = DualForm::I;
    } else {
        Scalar h(1, 2);
        auto [h1, h2] = lemma1_split(scale(h, dp.astar), scale(-h, dp.astar), NA, NB, xi, dn);
        out.astar = h1;
        out.bstar = h2;
        out.form = DualForm::II;
    }
    if (!verify_dual_pair(S, out)) throw SoundnessError("convert_conditions: converted pair fails");
    return out;
}

std::pair<Vector, Cone> support_point_search(const Region& A, const Vector& xbar, const Scalar& eps,
                                             const PolyhedralNorm& n) {
    if (eps <= 0) throw PreconditionError("support_point_search: eps must be positive");
    if (!A.contains(xbar)) throw PreconditionError("support_point_search: point not in the set");
    if (in_interior(A, xbar)) throw PreconditionError("support_point_search: point is interior");
    Cone here = normal_cone(A, xbar);
    if (!here.trivial()) return {xbar, here};
    auto cells = face_cells(A, xbar, eps, n);
    std::stable_sort(cells.begin(), cells.end(),
                     [](const FaceCell& x, const FaceCell& y) { return x.distance < y.distance; });
    for (const auto& c : cells) {
        if (c.normal.trivial()) continue;
        const Vector& p = c.face.representative;
        Cone N = normal_cone(A, p);
        if (!N.equals(c.normal)) throw SoundnessError("support_point_search: cell cone mismatch");
        return {p, N};
    }
    throw SoundnessError("support_point_search: no support point near a boundary point");
}

DifferenceSeparation difference_separation(const Region& A, const Region& B, const Scalar& eps,
                                           const PolyhedralNorm& n) {
    if (!A.is_exact() || !B.is_exact()) throw UnsupportedBackend("difference_separation: oracle region");
    if (eps <= 0) throw PreconditionError("difference_separation: eps must be positive");
    const std::size_t dim = A.dim();
    const PolyhedralNorm dn = n.dual(dim);
    Region D = minkowski_difference(A, B);
    PairDistance pd = dist_region_region(A, B, n);
    Vector z0 = zeros(dim);
    if (pd.value > 0) {
        z0 = sub(pd.a, pd.b);
    } else if (in_interior(D, z0)) {
        throw PreconditionError("difference_separation: 0 is interior to A - B");
    }
    auto [z, N] = support_point_search(D, z0, eps / 2, n);
    Vector g = N.generators().front();
    DifferenceSeparation out;
    out.astar = scale(1 / dn.eval(g), g);

    // Split z = a - b over a piece pair containing it.
    bool found = false;
    for (const auto& P : A.pieces()) {
        for (const auto& Q : B.pieces()) {
            LinearProgram lp(2 * dim);
            P.append_to(lp, 0);
            Q.append_to(lp, dim);
            for (std::size_t i = 0; i < dim; ++i) {
                Vector c = zeros(2 * dim);
                c[i] = 1;
                c[dim + i] = -1;
                lp.add(std::move(c), Rel::Eq, z[i]);
            }
            LpResult r = solve(lp);
            if (r.status == LpStatus::Infeasible) continue;
            if (r.status != LpStatus::Optimal) throw SoundnessError("difference_separation: split LP not optimal");
            out.a = Vector(r.x.begin(), r.x.begin() + dim);
            out.b = Vector(r.x.begin() + dim, r.x.end());
            found = true;
            break;
        }
        if (found) break;
    }
    if (!found) throw SoundnessError("difference_separation: support point not in A - B");
    if (!normal_cone(A, out.a).contains(out.astar) || !normal_cone(B, out.b).contains(neg(out.astar)) ||
        n.eval(sub(out.a, out.b)) >= pd.value + eps) {
        throw SoundnessError("difference_separation: normal-cone inclusion fails");
    }
    return out;
}

namespace {

bool zn_holds(const SetSystem& S, const Vector& a1, const Vector& b1, const Vector& astar, const Scalar& eps,
              const Scalar& lambda, const std::optional<Scalar>& tau) {
    const PolyhedralNorm& dn = S.dual_norm();
    if (dn.eval(astar) != 1) return false;
    if (!S.A().contains(a1) || !S.B().contains(b1)) return false;
    if (!within(a1, S.a(), lambda, S.norm()) || !within(b1, S.b(), lambda, S.norm())) return false;
    Scalar d = dist_to_cone(astar, normal_cone(S.A(), a1), dn).value +
               dist_to_cone(neg(astar), normal_cone(S.B(), b1), dn).value;
    if (d >= eps / lambda) return false;
    if (tau && *tau * S.norm().eval(sub(a1, b1)) > dot(astar, sub(b1, a1))) return false;
    return true;
}

// Points on the faces of the two cells (closed balls) that maximize
// <a*, b' - a'> - tau ||a' - b'||.
std::optional<std::pair<Vector, Vector>> zn_points(const SetSystem& S, const FacePoint& fa, const FacePoint& fb,
                                                   const Vector& astar, const Scalar& lambda, const Scalar& tau) {
    const std::size_t n = S.dim();
    LinearProgram lp(2 * n + 1);
    auto face_rows = [&](const Polyhedron& P, const std::vector<std::size_t>& act, std::size_t off) {
        for (std::size_t r = 0; r < P.rows().size(); ++r) {
            Vector c = zeros(2 * n + 1);
            for (std::size_t i = 0; i < n; ++i) c[off + i] = P.rows()[r].normal[i];
            bool tight = std::find(act.begin(), act.end(), r) != act.end();
            lp.add(std::move(c), tight ? Rel::Eq : Rel::Le, P.rows()[r].rhs);
        }
    };
    face_rows(S.A().pieces()[fa.piece_index], fa.active_rows, 0);
    face_rows(S.B().pieces()[fb.piece_index], fb.active_rows, n);
    const auto facets = S.norm().unit_facets(n);
    for (const auto& f : facets) {
        Vector c = zeros(2 * n + 1);
        for (std::size_t i = 0; i < n; ++i) c[i] = f[i];
        lp.add(c, Rel::Le, lambda + dot(f, S.a()));
        Vector e = zeros(2 * n + 1);
        for (std::size_t i = 0; i < n; ++i) e[n + i] = f[i];
        lp.add(e, Rel::Le, lambda + dot(f, S.b()));
        Vector g = zeros(2 * n + 1);
        for (std::size_t i = 0; i < n; ++i) {
            g[i] = f[i];
            g[n + i] = -f[i];
        }
        g[2 * n] = -1;
        lp.add(std::move(g), Rel::Le, 0);
    }
    for (std::size_t i = 0; i < n; ++i) {
        lp.objective[i] = -astar[i];
        lp.objective[n + i] = astar[i];
    }
    lp.objective[2 * n] = -tau;
    LpResult r = solve(lp);
    if (r.status != LpStatus::Optimal || r.value < 0) return std::nullopt;
    return std::make_pair(Vector(r.x.begin(), r.x.begin() + n), Vector(r.x.begin() + n, r.x.begin() + 2 * n));
}

}  // namespace

std::optional<ZnResult> zn_separation(const SetSystem& S, const Scalar& eps, const Scalar& lambda,
                                      const std::optional<Scalar>& tau, std::size_t cap) {
    if (!S.exact()) throw UnsupportedBackend("zn_separation: oracle region");
    if (lambda <= 0 || eps <= 0 || eps >= lambda) throw PreconditionError("zn_separation: need 0 < eps < lambda");
    if (tau && (*tau <= 0 || *tau >= 1)) throw PreconditionError("zn_separation: tau must lie in (0, 1)");
    if (!regions_intersect_empty({S.A(), S.B()}).empty) throw PreconditionError("zn_separation: A and B intersect");
    Scalar d = dist_region_region(S.A(), S.B(), S.norm()).value;
    if (S.norm().eval(sub(S.a(), S.b())) >= d + eps) {
        throw PreconditionError("zn_separation: ||a - b|| not below d(A, B) + eps");
    }

    auto ca = face_cells(S.A(), S.a(), lambda, S.norm(), cap);
    auto cb = face_cells(S.B(), S.b(), lambda, S.norm(), cap);
    std::size_t pairs = 0;
    for (const auto& A : ca) {
        if (A.normal.trivial()) continue;
        for (const auto& B : cb) {
            if (B.normal.trivial()) continue;
            if (++pairs > cap) throw CapExceeded("zn_separation: more than " + std::to_string(cap) + " pairs");
            auto fit = sphere_fit(A.normal, B.normal, S.dual_norm(), true);
            if (!fit || fit->value >= eps / lambda) continue;
            const Vector& ra = A.face.representative;
            const Vector& rb = B.face.representative;
            if (zn_holds(S, ra, rb, fit->xstar, eps, lambda, tau)) return ZnResult{ra, rb, fit->xstar, {}, {}};
            if (!tau) continue;
            auto pts = zn_points(S, A.face, B.face, fit->xstar, lambda, *tau);
            if (!pts) continue;
            Scalar t(1);
            for (int k = 0; k < 40; ++k) {
                t /= 2;
                Vector a1 = add(pts->first, scale(t, sub(ra, pts->first)));
                Vector b1 = add(pts->second, scale(t, sub(rb, pts->second)));
                if (zn_holds(S, a1, b1, fit->xstar, eps, lambda, tau)) return ZnResult{a1, b1, fit->xstar, {}, {}};
            }
        }
    }
    return std::nullopt;
}

std::optional<ZnResult> zn_prime(const SetSystem& S, const Scalar& eps, const Scalar& lambda, std::size_t cap) {
    if (lambda <= 0) throw PreconditionError("zn_prime: lambda must be positive");
    const Scalar lp = (eps + lambda) / 2;
    auto r = zn_separation(S, eps, lp, std::nullopt, cap);
    if (!r) return std::nullopt;
    Scalar h(1, 2);
    auto [o1, o2] = lemma1_split(scale(h, r->astar), scale(-h, r->astar), normal_cone(S.A(), r->aprime),
                                 normal_cone(S.B(), r->bprime), eps / (2 * lp), S.dual_norm());
    if (S.dual_norm().eval(add(o1, o2)) >= eps / lambda) throw SoundnessError("zn_prime: bound fails");
    r->ahat = o1;
    r->bhat = o2;
    return r;
}

bool zn3_holds(const ZnResult& r, const Scalar& tau, const PolyhedralNorm& n) {
    return tau * n.eval(sub(r.aprime, r.bprime)) <= dot(r.astar, sub(r.bprime, r.aprime));
}

std::optional<ShiftWitness> kl_backward(const DualPair& dp, const SetSystem& S, const Scalar& delta) {
    if (delta <= 0) throw PreconditionError("kl_backward: delta must be positive");
    DualPair src = dp;
    src.form = DualForm::II;
    if (!verify_dual_pair(S, src)) throw PreconditionError("kl_backward: dual pair invalid");
    const PolyhedralNorm& dn = S.dual_norm();
    const Scalar t = (dn.eval(add(dp.astar, dp.bstar)) + dp.eps) / 2;
    const Vector ub = norming_vector(dp.astar, S.norm());
    const Vector vb = norming_vector(dp.bstar, S.norm());
    Scalar rho = min2(delta, dp.eps);
    for (int k = 0; k < 40; ++k) {
        rho /= 2;
        ShiftWitness w;
        w.u = scale(t * rho, ub);
        w.v = scale(t * rho, vb);
        w.rho = rho;
        w.aprime = dp.aprime;
        w.bprime = dp.bprime;
        w.eps = dp.eps;
        if (check_shift_witness(S, w, dp.eps, Level::ApproxStationary).ok) return w;
    }
    return std::nullopt;
}

std::optional<DualPair> kl_forward(const SetSystem& S, const ShiftWitness& w, const Scalar& eps, const Scalar& delta,
                                   std::size_t cap) {
    if (!w.rho) throw PreconditionError("kl_forward: witness needs a finite rho");
    const Level lvl = (w.aprime || w.bprime) ? Level::ApproxStationary : Level::Stationary;
    if (!check_shift_witness(S, w, eps, lvl).ok) throw PreconditionError("kl_forward: witness does not verify");
    const Vector a1 = w.aprime.value_or(S.a());
    const Vector b1 = w.bprime.value_or(S.b());
    Scalar bound = max2(S.norm().eval(sub(a1, S.a())), S.norm().eval(sub(b1, S.b()))) + *w.rho * (eps + 1);
    if (delta <= bound) throw PreconditionError("kl_forward: delta not above the required bound");
    SeparationValue sv = separation_infimum(S, delta, cap);
    if (!sv.value || *sv.value >= eps) return std::nullopt;
    DualPair dp = pair_from(sv, eps, DualForm::II);
    if (!verify_dual_pair(S, dp, delta)) throw SoundnessError("kl_forward: dual pair fails");
    return dp;
}

Verdict nonlocal_ep(const SetSystem& S, const Scalar& eps, std::size_t cap) {
    if (eps <= 0 || eps >= 1) throw PreconditionError("nonlocal_ep: eps must lie in (0, 1)");
    if (!S.exact()) throw UnsupportedBackend("nonlocal_ep: oracle region");
    Verdict v;
    const PolyhedralNorm& n = S.norm();

    if (regions_intersect_empty({S.A(), S.B()}).empty) {
        PairDistance pd = dist_region_region(S.A(), S.B(), n);
        SetSystem Sd = S.with_points(pd.a, pd.b);
        const Scalar lambda = eps / 2;
        auto r = zn_prime(Sd, eps * eps / 4, lambda, cap);
        if (!r) {
            v.status = Status::Unknown;
            v.notes.push_back("nonlocal_ep: face search exhausted");
            return v;
        }
        DualPair dp{r->aprime, r->bprime, r->ahat, r->bhat, eps, DualForm::II};
        if (n.eval(sub(dp.aprime, dp.bprime)) >= pd.value + eps ||
            !verify_dual_pair(Sd, dp, (eps * eps / 4 + lambda) / 2)) {
            throw SoundnessError("nonlocal_ep: disjoint-branch pair fails");
        }
        v.status = Status::Proved;
        v.certificate.dual_pairs.push_back(dp);
        return v;
    }

    const Scalar ep = eps * eps / (4 * (eps + 1));
    Verdict ex = check_relative_extremal(S, ShiftMode::Both, {ep});
    if (!ex.proved()) throw PreconditionError("nonlocal_ep: pair is not extremal");
    const ShiftWitness& w = ex.certificate.witnesses.front();
    const Scalar lo = 2 * ep / eps;
    const Scalar hi = min2(2 * (eps - ep), eps - 2 * ep);
    const Scalar lambda = (lo + hi) / 2;
    const Vector su = add(S.a(), w.u), sv = add(S.b(), w.v);
    SetSystem Ss(S.A().translate(neg(su)), S.B().translate(neg(sv)), neg(w.u), neg(w.v), n, S.dual_norm());
    auto r = zn_prime(Ss, 2 * ep, lambda, cap);
    if (!r) {
        v.status = Status::Unknown;
        v.notes.push_back("nonlocal_ep: face search exhausted");
        return v;
    }
    DualPair dp{add(r->aprime, su), add(r->bprime, sv), r->ahat, r->bhat, eps, DualForm::II};
    if (!verify_dual_pair(S, dp)) throw SoundnessError("nonlocal_ep: pair fails");
    v.status = Status::Proved;
    v.certificate.dual_pairs.push_back(dp);
    v.certificate.witnesses.push_back(w);
    return v;
}

}  // namespace extremal
