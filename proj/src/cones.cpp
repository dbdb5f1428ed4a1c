#include "extremal/cones.hpp"

#include <algorithm>
#include <functional>

#include "extremal/dd.hpp"
#include "extremal/errors.hpp"
#include "extremal/lp.hpp"

namespace extremal {

namespace {

void check_cap(std::size_t dim) {
    if (dim > kConeDimCap) {
        throw CapExceeded("cone generator recovery is limited to dimension " + std::to_string(kConeDimCap) +
                          ", got " + std::to_string(dim));
    }
}

std::vector<Vector> nonzero(std::vector<Vector> v) {
    v.erase(std::remove_if(v.begin(), v.end(), [](const Vector& x) { return is_zero(x); }), v.end());
    return v;
}

}  // namespace

Cone Cone::from_generators(std::size_t dim, std::vector<Vector> gens) {
    check_cap(dim);
    for (const auto& g : gens) {
        if (g.size() != dim) throw DimensionError("Cone: generator dimension mismatch");
    }
    gens = nonzero(std::move(gens));
    std::vector<Vector> h = double_description(gens, dim).conic_generators();
    std::vector<Vector> g = double_description(h, dim).conic_generators();
    return Cone(dim, std::move(g), std::move(h));
}

Cone Cone::from_hrows(std::size_t dim, std::vector<Vector> hrows) {
    check_cap(dim);
    for (const auto& h : hrows) {
        if (h.size() != dim) throw DimensionError("Cone: row dimension mismatch");
    }
    hrows = nonzero(std::move(hrows));
    std::vector<Vector> g = double_description(hrows, dim).conic_generators();
    std::vector<Vector> h = double_description(g, dim).conic_generators();
    return Cone(dim, std::move(g), std::move(h));
}

Cone Cone::zero(std::size_t dim) { return from_generators(dim, {}); }
Cone Cone::whole(std::size_t dim) { return from_hrows(dim, {}); }

bool Cone::contains(const Vector& y) const {
    if (y.size() != dim_) throw DimensionError("Cone::contains: dimension mismatch");
    for (const auto& h : hrows_) {
        if (dot(h, y) > 0) return false;
    }
    return true;
}

Cone Cone::intersect(const Cone& o) const {
    if (o.dim_ != dim_) throw DimensionError("Cone::intersect: dimension mismatch");
    std::vector<Vector> h = hrows_;
    h.insert(h.end(), o.hrows_.begin(), o.hrows_.end());
    return from_hrows(dim_, std::move(h));
}

bool Cone::equals(const Cone& o) const {
    if (o.dim_ != dim_) return false;
    for (const auto& g : gens_) {
        if (!o.contains(g)) return false;
    }
    for (const auto& g : o.gens_) {
        if (!contains(g)) return false;
    }
    return true;
}

bool Cone::consistent() const {
    for (const auto& g : gens_) {
        if (!contains(g)) return false;
    }
    // Every generator of the H-form must be a conic combination of gens_.
    for (const auto& g : double_description(hrows_, dim_).conic_generators()) {
        if (!conic_coefficients(gens_, g)) return false;
    }
    return true;
}

std::optional<Vector> conic_coefficients(const std::vector<Vector>& gens, const Vector& y) {
    if (gens.empty()) {
        if (is_zero(y)) return Vector{};
        return std::nullopt;
    }
    const std::size_t k = gens.size();
    LinearProgram lp(k);
    lp.nonneg.assign(k, true);
    for (std::size_t i = 0; i < y.size(); ++i) {
        Vector c(k);
        for (std::size_t j = 0; j < k; ++j) c[j] = gens[j][i];
        lp.add(std::move(c), Rel::Eq, y[i]);
    }
    LpResult r = solve(lp);
    if (r.status == LpStatus::Infeasible) return std::nullopt;
    return r.x;
}

Cone tangent_cone(const Polyhedron& P, const Vector& a) {
    if (!P.contains(a)) throw PreconditionError("tangent_cone: point not in polyhedron");
    std::vector<Vector> h;
    for (auto i : P.active(a)) h.push_back(P.rows()[i].normal);
    return Cone::from_hrows(P.dim(), std::move(h));
}

Cone normal_cone(const Region& R, const Vector& a) {
    if (!R.is_exact()) throw UnsupportedBackend("normal_cone: oracle region");
    if (a.size() != R.dim()) throw DimensionError("normal_cone: dimension mismatch");
    std::optional<Cone> out;
    for (const auto& P : R.pieces()) {
        if (!P.contains(a)) continue;
        std::vector<Vector> g;
        for (auto i : P.active(a)) g.push_back(P.rows()[i].normal);
        Cone c = Cone::from_generators(R.dim(), std::move(g));
        out = out ? out->intersect(c) : c;
    }
    if (!out) throw PreconditionError("normal_cone: point not in region");
    return *out;
}

bool eps_normal_member(const Vector& xstar, const Vector& a, const Region& R, const Scalar& eps,
                       const PolyhedralNorm& n) {
    if (!R.is_exact()) throw UnsupportedBackend("eps_normal_member: oracle region");
    if (eps < 0) throw PreconditionError("eps_normal_member: negative epsilon");
    require_same_dim(xstar, a, "eps_normal_member");
    if (!R.contains(a)) throw PreconditionError("eps_normal_member: point not in region");
    const std::size_t d = a.size();
    const auto facets = n.unit_facets(d);
    for (const auto& P : R.pieces()) {
        if (!P.contains(a)) continue;
        const auto act = P.active(a);
        // On the region where facet k realizes the norm, ||v|| = <f_k, v>.
        for (const auto& fk : facets) {
            LinearProgram lp(d);
            for (auto i : act) lp.add(P.rows()[i].normal, Rel::Le, 0);
            for (const auto& fm : facets) {
                if (&fm != &fk) lp.add(sub(fk, fm), Rel::Ge, 0);
            }
            lp.add(fk, Rel::Le, 1);
            lp.objective = sub(xstar, scale(eps, fk));
            LpResult r = solve(lp);
            if (r.status != LpStatus::Optimal) throw SoundnessError("eps_normal_member: LP not optimal");
            if (r.value > 0) return false;
        }
    }
    return true;
}

ConeDistance dist_to_cone(const Vector& xstar, const Cone& K, const PolyhedralNorm& dn) {
    if (xstar.size() != K.dim()) throw DimensionError("dist_to_cone: dimension mismatch");
    if (K.contains(xstar)) return {0, xstar};
    const auto& G = K.generators();
    const std::size_t k = G.size();
    LinearProgram lp(k + 1);
    for (std::size_t j = 0; j < k; ++j) lp.nonneg[j] = true;
    for (const auto& f : dn.unit_facets(K.dim())) {
        Vector c(k + 1);
        for (std::size_t j = 0; j < k; ++j) c[j] = -dot(f, G[j]);
        c[k] = -1;
        lp.add(std::move(c), Rel::Le, -dot(f, xstar));
    }
    lp.maximize = false;
    lp.objective = unit(k + 1, k);
    LpResult r = solve(lp);
    if (r.status != LpStatus::Optimal) throw SoundnessError("dist_to_cone: LP not optimal");
    Vector y = zeros(K.dim());
    for (std::size_t j = 0; j < k; ++j) y = add(y, scale(r.x[j], G[j]));
    return {dn.eval(sub(xstar, y)), y};
}

namespace {

struct Hyperplane {
    Vector normal;  // primitive, first nonzero entry positive
    Scalar rhs;
};

// Maps a row to its hyperplane and the orientation of the row relative to it.
std::pair<Hyperplane, int> canonical(const Row& r) {
    Vector p = primitive(r.normal);
    std::size_t i = 0;
    while (p[i] == 0) ++i;
    int orient = 1;
    if (p[i] < 0) {
        p = neg(p);
    }
    Scalar f = p[i] / r.normal[i];
    if (f < 0) orient = -1;
    return {{p, r.rhs * f}, orient};
}

}  // namespace

std::vector<FaceCell> face_cells(const Region& R, const Vector& center, const std::optional<Scalar>& radius,
                                 const PolyhedralNorm& n, std::size_t cap) {
    if (!R.is_exact()) throw UnsupportedBackend("face_cells: oracle region");
    if (center.size() != R.dim()) throw DimensionError("face_cells: dimension mismatch");
    if (radius && *radius <= 0) throw PreconditionError("face_cells: radius must be positive");
    const std::size_t d = R.dim();
    const PolyhedralNorm dn = n.dual(d);

    std::vector<Hyperplane> planes;
    std::vector<std::vector<std::pair<std::size_t, int>>> rowmap(R.pieces().size());
    for (std::size_t p = 0; p < R.pieces().size(); ++p) {
        for (const auto& row : R.pieces()[p].rows()) {
            auto [h, o] = canonical(row);
            std::size_t idx = planes.size();
            for (std::size_t j = 0; j < planes.size(); ++j) {
                if (planes[j].normal == h.normal && planes[j].rhs == h.rhs) idx = j;
            }
            if (idx == planes.size()) planes.push_back(h);
            rowmap[p].push_back({idx, o});
        }
    }

    const std::size_t H = planes.size();
    std::vector<int> fixed(H, 2);  // 2 marks a branching hyperplane
    std::vector<std::size_t> branch;
    for (std::size_t j = 0; j < H; ++j) {
        Scalar v = dot(planes[j].normal, center) - planes[j].rhs;
        bool meets = radius ? abs(v) < *radius * dn.eval(planes[j].normal) : v == 0;
        if (meets) {
            branch.push_back(j);
        } else {
            fixed[j] = sign(v);
        }
    }

    std::vector<Constraint> base;
    std::vector<bool> base_strict;
    if (radius) {
        for (const auto& f : n.unit_facets(d)) {
            base.push_back({f, Rel::Le, *radius + dot(f, center)});
            base_strict.push_back(true);
        }
    }

    std::vector<FaceCell> cells;
    std::size_t leaves = 0;
    std::vector<int> signs = fixed;
    std::vector<Constraint> rows = base;
    std::vector<bool> strict = base_strict;

    auto finish = [&](Vector x) {
        if (++leaves > cap) throw CapExceeded("face_cells: more than " + std::to_string(cap) + " cells");
        if (!radius) {
            // Pull the point toward the center until the fixed signs hold.
            Scalar t = 1;
            for (;;) {
                Vector xt = add(center, scale(t, sub(x, center)));
                bool ok = true;
                for (std::size_t j = 0; j < H && ok; ++j) {
                    if (fixed[j] == 2) continue;
                    ok = sign(dot(planes[j].normal, xt) - planes[j].rhs) == fixed[j];
                }
                if (ok) {
                    x = xt;
                    break;
                }
                t /= 2;
            }
        }
        std::optional<Cone> cone;
        std::optional<FacePoint> face;
        for (std::size_t p = 0; p < R.pieces().size(); ++p) {
            bool inside = true;
            std::vector<std::size_t> active;
            std::vector<Vector> gens;
            for (std::size_t r = 0; r < rowmap[p].size() && inside; ++r) {
                auto [j, o] = rowmap[p][r];
                int s = signs[j] * o;
                if (s > 0) inside = false;
                if (s == 0) {
                    active.push_back(r);
                    gens.push_back(R.pieces()[p].rows()[r].normal);
                }
            }
            if (!inside) continue;
            Cone c = Cone::from_generators(d, std::move(gens));
            cone = cone ? cone->intersect(c) : c;
            if (!face) face = FacePoint{p, active, x};
        }
        if (!cone) return;
        Scalar dist = 0;
        if (radius) {
            LinearProgram lp(d + 1);
            for (std::size_t j = 0; j < H; ++j) {
                Vector c = planes[j].normal;
                c.push_back(0);
                Rel rel = signs[j] < 0 ? Rel::Le : signs[j] > 0 ? Rel::Ge : Rel::Eq;
                lp.add(std::move(c), rel, planes[j].rhs);
            }
            for (const auto& f : n.unit_facets(d)) {
                Vector c = f;
                c.push_back(-1);
                lp.add(std::move(c), Rel::Le, dot(f, center));
            }
            lp.maximize = false;
            lp.objective = unit(d + 1, d);
            LpResult r = solve(lp);
            if (r.status != LpStatus::Optimal) throw SoundnessError("face_cells: distance LP not optimal");
            dist = r.value;
        }
        for (auto& c : cells) {
            if (c.normal.equals(*cone)) {
                if (dist < c.distance) {
                    c.distance = dist;
                    c.face = *face;
                }
                return;
            }
        }
        cells.push_back({*face, *cone, dist});
    };

    std::function<void(std::size_t)> rec = [&](std::size_t k) {
        if (k == branch.size()) {
            StrictResult r = solve_strict(d, rows, strict);
            if (r.feasible) finish(r.x);
            return;
        }
        const std::size_t j = branch[k];
        for (int s : {-1, 0, 1}) {
            Rel rel = s < 0 ? Rel::Le : s > 0 ? Rel::Ge : Rel::Eq;
            rows.push_back({planes[j].normal, rel, planes[j].rhs});
            strict.push_back(s != 0);
            signs[j] = s;
            if (solve_strict(d, rows, strict).feasible) rec(k + 1);
            rows.pop_back();
            strict.pop_back();
        }
        signs[j] = fixed[j];
    };
    rec(0);
    return cells;
}

}  // namespace extremal
