#include "extremal/geometry.hpp"

#include <algorithm>
#include <functional>

#include "extremal/errors.hpp"

namespace extremal {

Scalar norm_eval(const Vector& v, const PolyhedralNorm& n) { return n.eval(v); }

PointDistance dist_point_polyhedron(const Vector& x, const Polyhedron& P, const PolyhedralNorm& n) {
    if (x.size() != P.dim()) throw DimensionError("dist_point_polyhedron: dimension mismatch");
    if (P.empty()) throw PreconditionError("dist_point_polyhedron: empty polyhedron");
    const std::size_t d = x.size();
    if (P.contains(x)) return {0, x, true, 0};
    // Variables (y, t): minimize t with <f, x - y> <= t for every unit facet f.
    LinearProgram lp(d + 1);
    P.append_to(lp, 0);
    for (const auto& f : n.unit_facets(d)) {
        Vector c = neg(f);
        c.push_back(-1);
        lp.add(std::move(c), Rel::Le, -dot(f, x));
    }
    lp.maximize = false;
    lp.objective = unit(d + 1, d);
    LpResult res = solve(lp);
    if (res.status != LpStatus::Optimal) throw SoundnessError("dist_point_polyhedron: LP not optimal");
    Vector y(res.x.begin(), res.x.begin() + static_cast<long>(d));
    return {n.eval(sub(x, y)), y, true, 0};
}

PointDistance dist_point_region(const Vector& x, const Region& R, const PolyhedralNorm& n) {
    if (x.size() != R.dim()) throw DimensionError("dist_point_region: dimension mismatch");
    if (R.empty()) throw PreconditionError("dist_point_region: empty region");
    if (!R.is_exact()) {
        std::optional<PointDistance> best;
        for (const auto& g : R.grid()) {
            Scalar v = n.eval(sub(x, g));
            if (!best || v < best->value) best = PointDistance{v, g, false, R.oracle().step};
        }
        return *best;
    }
    std::optional<PointDistance> best;
    for (const auto& P : R.pieces()) {
        PointDistance pd = dist_point_polyhedron(x, P, n);
        if (!best || pd.value < best->value) best = pd;
    }
    return *best;
}

namespace {

PairDistance dist_polyhedra(const Polyhedron& P, const Polyhedron& Q, const PolyhedralNorm& n) {
    const std::size_t d = P.dim();
    LinearProgram lp(2 * d + 1);
    P.append_to(lp, 0);
    Q.append_to(lp, d);
    for (const auto& f : n.unit_facets(d)) {
        Vector c = concat(f, neg(f));
        c.push_back(-1);
        lp.add(std::move(c), Rel::Le, 0);
    }
    lp.maximize = false;
    lp.objective = unit(2 * d + 1, 2 * d);
    LpResult res = solve(lp);
    if (res.status != LpStatus::Optimal) throw SoundnessError("dist_region_region: LP not optimal");
    Vector a(res.x.begin(), res.x.begin() + static_cast<long>(d));
    Vector b(res.x.begin() + static_cast<long>(d), res.x.begin() + static_cast<long>(2 * d));
    return {n.eval(sub(a, b)), a, b, true, 0};
}

}  // namespace

PairDistance dist_region_region(const Region& A, const Region& B, const PolyhedralNorm& n) {
    if (A.dim() != B.dim()) throw DimensionError("dist_region_region: dimension mismatch");
    if (A.empty() || B.empty()) throw PreconditionError("dist_region_region: empty region");
    if (!A.is_exact() && !B.is_exact()) throw UnsupportedBackend("dist_region_region: two oracle regions");
    if (!A.is_exact() || !B.is_exact()) {
        const Region& O = A.is_exact() ? B : A;
        const Region& E = A.is_exact() ? A : B;
        std::optional<PairDistance> best;
        for (const auto& g : O.grid()) {
            PointDistance pd = dist_point_region(g, E, n);
            if (!best || pd.value < best->value) {
                best = A.is_exact() ? PairDistance{pd.value, pd.witness, g, false, O.oracle().step}
                                    : PairDistance{pd.value, g, pd.witness, false, O.oracle().step};
            }
        }
        return *best;
    }
    std::optional<PairDistance> best;
    for (const auto& P : A.pieces()) {
        for (const auto& Q : B.pieces()) {
            PairDistance pd = dist_polyhedra(P, Q, n);
            if (!best || pd.value < best->value) best = pd;
        }
    }
    return *best;
}

IntersectionVerdict intersect_empty(const std::vector<Polyhedron>& pieces) {
    if (pieces.empty()) throw PreconditionError("intersect_empty: no pieces");
    const std::size_t d = pieces.front().dim();
    IntersectionVerdict out;
    for (const auto& p : pieces) {
        if (p.dim() != d) throw DimensionError("intersect_empty: dimension mismatch");
        out.rows.insert(out.rows.end(), p.rows().begin(), p.rows().end());
    }
    Polyhedron all(d, out.rows);
    out.empty = all.empty();
    if (out.empty) {
        out.certificate = all.certificate();
    } else {
        out.point = all.some_point();
    }
    return out;
}

UnionIntersection regions_intersect_empty(const std::vector<Region>& regions, const std::vector<Polyhedron>& extra) {
    for (const auto& r : regions) {
        if (!r.is_exact()) throw UnsupportedBackend("regions_intersect_empty: oracle region");
    }
    UnionIntersection out;
    out.empty = true;
    for (const auto& r : regions) {
        if (r.pieces().empty()) return out;  // empty union, trivially disjoint
    }
    std::vector<std::size_t> idx(regions.size(), 0);
    for (;;) {
        std::vector<Polyhedron> combo;
        for (std::size_t i = 0; i < regions.size(); ++i) combo.push_back(regions[i].pieces()[idx[i]]);
        combo.insert(combo.end(), extra.begin(), extra.end());
        IntersectionVerdict v = intersect_empty(combo);
        if (!v.empty) {
            out.empty = false;
            out.point = v.point;
            out.parts.clear();
            return out;
        }
        out.parts.push_back(std::move(v));
        std::size_t i = 0;
        for (; i < regions.size(); ++i) {
            if (++idx[i] < regions[i].pieces().size()) break;
            idx[i] = 0;
        }
        if (i == regions.size()) break;
    }
    return out;
}

bool verify_union_intersection(const UnionIntersection& u) {
    if (!u.empty) return false;
    for (const auto& p : u.parts) {
        if (!p.certificate || !verify_certificate(p.rows, *p.certificate)) return false;
    }
    return true;
}

namespace {

// Positive rescaling so the normal is a primitive integer vector.
Row normalize_row(const Row& r) {
    Vector p = primitive(r.normal);
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (r.normal[i] != 0) {
            Scalar f = p[i] / r.normal[i];
            return {p, r.rhs * f};
        }
    }
    return r;
}


Polyhedron empty_polyhedron(std::size_t d) { return Polyhedron(d, {Row{zeros(d), -1}}); }

// Drops zero rows and duplicates; returns nothing when a zero row is violated.
std::optional<std::vector<Row>> tidy(const std::vector<Row>& rows) {
    std::vector<Row> out;
    for (const auto& r : rows) {
        if (is_zero(r.normal)) {
            if (r.rhs < 0) return std::nullopt;
            continue;
        }
        Row n = normalize_row(r);
        bool dup = false;
        for (auto& o : out) {
            if (o.normal == n.normal) {
                if (n.rhs < o.rhs) o.rhs = n.rhs;
                dup = true;
                break;
            }
        }
        if (!dup) out.push_back(std::move(n));
    }
    return out;
}

}  // namespace

Polyhedron remove_redundant(const Polyhedron& P) {
    const std::size_t d = P.dim();
    auto rows = tidy(P.rows());
    if (!rows) return empty_polyhedron(d);
    if (Polyhedron(d, *rows).empty()) return empty_polyhedron(d);
    std::vector<bool> keep(rows->size(), true);
    for (std::size_t i = 0; i < rows->size(); ++i) {
        LinearProgram lp(d);
        for (std::size_t j = 0; j < rows->size(); ++j) {
            if (j != i && keep[j]) lp.add((*rows)[j].normal, Rel::Le, (*rows)[j].rhs);
        }
        lp.objective = (*rows)[i].normal;
        LpResult res = solve(lp);
        if (res.status == LpStatus::Optimal && res.value <= (*rows)[i].rhs) keep[i] = false;
    }
    std::vector<Row> out;
    for (std::size_t i = 0; i < rows->size(); ++i) {
        if (keep[i]) out.push_back((*rows)[i]);
    }
    return Polyhedron(d, std::move(out));
}

Polyhedron project(const Polyhedron& P, std::size_t keep) {
    if (keep == 0 || keep > P.dim()) throw DimensionError("project: bad target dimension");
    std::vector<Row> rows = P.rows();
    std::size_t d = P.dim();
    while (d > keep) {
        const std::size_t k = d - 1;
        std::vector<Row> next, pos, negs;
        for (auto& r : rows) {
            int s = sign(r.normal[k]);
            if (s > 0) pos.push_back(r);
            else if (s < 0) negs.push_back(r);
            else next.push_back(r);
        }
        for (const auto& p : pos) {
            for (const auto& q : negs) {
                Scalar cp = p.normal[k];
                Scalar cq = -q.normal[k];
                Row r{add(scale(cq, p.normal), scale(cp, q.normal)), cq * p.rhs + cp * q.rhs};
                next.push_back(std::move(r));
            }
        }
        for (auto& r : next) r.normal.pop_back();
        --d;
        Polyhedron reduced = remove_redundant(Polyhedron(d, std::move(next)));
        rows = reduced.rows();
    }
    return remove_redundant(Polyhedron(keep, rows));
}

Polyhedron difference(const Polyhedron& P, const Polyhedron& Q) {
    if (P.dim() != Q.dim()) throw DimensionError("difference: dimension mismatch");
    const std::size_t d = P.dim();
    // Variables (z, q) with z + q in P and q in Q.
    std::vector<Row> rows;
    for (const auto& r : P.rows()) rows.push_back({concat(r.normal, r.normal), r.rhs});
    for (const auto& r : Q.rows()) rows.push_back({concat(zeros(d), r.normal), r.rhs});
    return project(Polyhedron(2 * d, std::move(rows)), d);
}

Region minkowski_difference(const Region& A, const Region& B) {
    if (!A.is_exact() || !B.is_exact()) throw UnsupportedBackend("minkowski_difference: oracle region");
    if (A.dim() != B.dim()) throw DimensionError("minkowski_difference: dimension mismatch");
    std::vector<Polyhedron> pieces;
    for (const auto& P : A.pieces()) {
        for (const auto& Q : B.pieces()) pieces.push_back(difference(P, Q));
    }
    return Region::exact(A.dim(), std::move(pieces));
}

Polyhedron ball(const Vector& c, const Scalar& r, const PolyhedralNorm& n) {
    std::vector<Row> rows;
    for (const auto& f : n.unit_facets(c.size())) rows.push_back({f, r + dot(f, c)});
    return Polyhedron(c.size(), std::move(rows));
}

Region localize(const Region& R, const Vector& center, const Scalar& rho, const PolyhedralNorm& n) {
    if (rho <= 0) throw PreconditionError("localize: radius must be positive");
    if (center.size() != R.dim()) throw DimensionError("localize: dimension mismatch");
    if (!R.is_exact()) {
        OracleSpec s = R.oracle();
        auto base = s.member;
        s.member = [base, center, rho, n](const Vector& x) { return n.eval(sub(x, center)) <= rho && base(x); };
        return Region::oracle(std::move(s));
    }
    Polyhedron b = ball(center, rho, n);
    std::vector<Polyhedron> pieces;
    for (const auto& P : R.pieces()) pieces.push_back(P.intersect(b));
    return Region::exact(R.dim(), std::move(pieces));
}

std::optional<Vector> find_uncovered(const std::vector<Constraint>& base, const std::vector<bool>& base_strict,
                                     const std::vector<std::vector<Row>>& pieces, std::size_t dim) {
    std::vector<Constraint> rows = base;
    std::vector<bool> strict = base_strict;
    std::function<std::optional<Vector>(std::size_t)> rec = [&](std::size_t k) -> std::optional<Vector> {
        if (k == pieces.size()) {
            StrictResult r = solve_strict(dim, rows, strict);
            if (r.feasible) return r.x;
            return std::nullopt;
        }
        // Skip pieces that miss the current cell entirely.
        {
            std::vector<Constraint> with = rows;
            std::vector<bool> ws = strict;
            for (const auto& r : pieces[k]) {
                with.push_back({r.normal, Rel::Le, r.rhs});
                ws.push_back(false);
            }
            if (!solve_strict(dim, with, ws).feasible) return rec(k + 1);
        }
        const std::size_t mark = rows.size();
        for (std::size_t j = 0; j < pieces[k].size(); ++j) {
            rows.push_back({pieces[k][j].normal, Rel::Ge, pieces[k][j].rhs});
            strict.push_back(true);
            if (solve_strict(dim, rows, strict).feasible) {
                auto found = rec(k + 1);
                if (found) return found;
            }
            rows.back().rel = Rel::Le;
            strict.back() = false;
        }
        rows.resize(mark);
        strict.resize(mark);
        return std::nullopt;
    };
    return rec(0);
}

std::optional<Vector> uncovered_direction(const std::vector<std::vector<Vector>>& cones, std::size_t dim) {
    if (cones.empty()) return unit(dim, 0);
    std::vector<std::vector<Row>> pieces;
    for (const auto& c : cones) {
        std::vector<Row> rows;
        for (const auto& h : c) rows.push_back({h, 0});
        pieces.push_back(std::move(rows));
    }
    auto y = find_uncovered({}, {}, pieces, dim);
    if (y && is_zero(*y)) throw SoundnessError("uncovered_direction: zero direction outside a cone");
    return y;
}

LocalCone local_cone(const Region& R, const Vector& x, const PolyhedralNorm& n) {
    if (!R.is_exact()) throw UnsupportedBackend("local_cone: oracle region");
    if (x.size() != R.dim()) throw DimensionError("local_cone: dimension mismatch");
    const PolyhedralNorm dn = n.dual(x.size());
    LocalCone out;
    out.radius = 1;
    bool member = false;
    for (const auto& P : R.pieces()) {
        if (P.contains(x)) {
            member = true;
            std::vector<Vector> rows;
            for (const auto& r : P.rows()) {
                Scalar slack = r.rhs - dot(r.normal, x);
                if (slack == 0) {
                    rows.push_back(r.normal);
                } else {
                    Scalar rad = slack / dn.eval(r.normal);
                    if (rad < out.radius) out.radius = rad;
                }
            }
            out.cones.push_back(std::move(rows));
        } else {
            Scalar d = dist_point_polyhedron(x, P, n).value;
            if (d < out.radius) out.radius = d;
        }
    }
    if (!member) throw PreconditionError("local_cone: point not in region");
    return out;
}

bool in_interior(const Region& R, const Vector& x) {
    if (!R.contains(x)) return false;
    LocalCone lc = local_cone(R, x, PolyhedralNorm::max_norm());
    return !uncovered_direction(lc.cones, x.size());
}

bool on_boundary(const Region& R, const Vector& x) { return R.contains(x) && !in_interior(R, x); }

}  // namespace extremal
