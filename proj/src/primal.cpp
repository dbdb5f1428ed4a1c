#include "extremal/primal.hpp"

#include <algorithm>

#include "extremal/cones.hpp"
#include "extremal/dual.hpp"
#include "extremal/errors.hpp"

namespace extremal {

std::vector<Scalar> default_schedule() {
    std::vector<Scalar> out;
    Scalar e(1);
    for (int k = 0; k < 10; ++k) {
        e /= 2;
        out.push_back(e);
    }
    return out;
}

namespace {

void validate_schedule(const std::vector<Scalar>& schedule) {
    if (schedule.empty()) throw PreconditionError("schedule is empty");
    for (std::size_t i = 0; i < schedule.size(); ++i) {
        if (schedule[i] <= 0 || schedule[i] >= 1) throw PreconditionError("schedule entries must lie in (0, 1)");
        if (i > 0 && schedule[i] >= schedule[i - 1]) throw PreconditionError("schedule must be strictly decreasing");
    }
}

Scalar max2(const Scalar& x, const Scalar& y) { return x < y ? y : x; }
Scalar min2(const Scalar& x, const Scalar& y) { return x < y ? x : y; }

// Grid test of (A - a' - u) ∩ (B - b' - v) ∩ rho B. Walks the grid of an
// oracle side and tests the other side directly.
WitnessCheck grid_check(const SetSystem& S, const Vector& a1, const Vector& b1, const ShiftWitness& w) {
    WitnessCheck out;
    out.exact = false;
    const bool walk_a = !S.A().is_exact();
    const Region& walked = walk_a ? S.A() : S.B();
    const Region& other = walk_a ? S.B() : S.A();
    const Vector from = walk_a ? add(a1, w.u) : add(b1, w.v);
    const Vector to = walk_a ? add(b1, w.v) : add(a1, w.u);
    out.resolution = walked.oracle().step;
    if (!other.is_exact()) out.resolution = max2(*out.resolution, other.oracle().step);
    for (const auto& p : walked.grid()) {
        Vector x = sub(p, from);
        if (w.rho && S.norm().eval(x) > *w.rho) continue;
        if (other.contains(add(x, to))) {
            out.reason = "grid point " + to_string(x) + " lies in both shifted sets";
            return out;
        }
    }
    out.ok = true;
    return out;
}

// Union over the pieces of A and B of the tangent-cone differences at
// (a, b), with the radius below which both sets coincide with their cones.
struct LocalStructure {
    std::vector<std::vector<Vector>> cones;
    Scalar radius;
    std::optional<Vector> direction;  // outside every cone, if any
};

LocalStructure local_structure(const SetSystem& S, const Vector& a, const Vector& b) {
    const std::size_t n = S.dim();
    LocalCone la = local_cone(S.A(), a, S.norm());
    LocalCone lb = local_cone(S.B(), b, S.norm());
    LocalStructure out;
    out.radius = min2(la.radius, lb.radius);
    auto as_poly = [n](const std::vector<Vector>& hs) {
        std::vector<Row> rows;
        for (const auto& h : hs) rows.push_back({h, 0});
        return Polyhedron(n, std::move(rows));
    };
    for (const auto& ca : la.cones) {
        for (const auto& cb : lb.cones) {
            Polyhedron d = difference(as_poly(ca), as_poly(cb));
            std::vector<Vector> hs;
            for (const auto& r : d.rows()) {
                if (r.rhs != 0) throw SoundnessError("local_structure: cone difference is not homogeneous");
                hs.push_back(r.normal);
            }
            out.cones.push_back(std::move(hs));
        }
    }
    out.direction = uncovered_direction(out.cones, n);
    return out;
}

ShiftWitness split_shift(const Vector& step, ShiftMode mode) {
    ShiftWitness w;
    if (mode == ShiftMode::Single) {
        w.u = step;
        w.v = zeros(step.size());
    } else {
        Scalar h(1, 2);
        w.u = scale(h, step);
        w.v = scale(-h, step);
    }
    return w;
}

// Witness with rho < eps and ||step|| = eps rho / 2 along an uncovered
// direction. Both shifted sets stay inside the cone radius.
ShiftWitness stationary_from_ray(const Vector& y, const Scalar& r0, const Scalar& eps, ShiftMode mode,
                                 const PolyhedralNorm& n) {
    Scalar rho = min2(eps, r0) / 2;
    Scalar s = eps * rho / (2 * n.eval(y));
    ShiftWitness w = split_shift(scale(s, y), mode);
    w.rho = rho;
    w.eps = eps;
    return w;
}

ShiftWitness local_from_ray(const Vector& y, const Scalar& r0, const Scalar& rho, const Scalar& eps, ShiftMode mode,
                            const PolyhedralNorm& n) {
    Scalar rp = min2(rho, r0) / 2;
    Scalar s = min2(eps, r0 - rp) / (2 * n.eval(y));
    ShiftWitness w = split_shift(scale(s, y), mode);
    w.rho = rp;
    w.eps = eps;
    return w;
}

// Distance-formula witness turned into a single shift without touching
// rho: the shifted sets are disjoint globally.
ShiftWitness global_single(const ShiftWitness& w) {
    ShiftWitness o = w;
    o.u = sub(w.u, w.v);
    o.v = zeros(w.u.size());
    return o;
}

void require_verified(const SetSystem& S, const ShiftWitness& w, Level level, const char* where) {
    WitnessCheck c = check_shift_witness(S, w, w.eps, level);
    if (!c.ok) throw SoundnessError(std::string(where) + ": constructed witness fails: " + c.reason);
}

std::optional<ShiftWitness> distance_witness(const SetSystem& S, const Scalar& eps) {
    if (!S.exact() || S.a() == S.b()) return std::nullopt;
    return witness_from_distance(S, eps);
}

std::vector<Vector> probe_directions(std::size_t n) {
    std::vector<Vector> dirs;
    for (std::size_t i = 0; i < n; ++i) {
        dirs.push_back(unit(n, i));
        dirs.push_back(neg(unit(n, i)));
    }
    if (n <= 3) {
        for (std::size_t mask = 0; mask < (std::size_t(1) << n); ++mask) {
            Vector d(n);
            for (std::size_t i = 0; i < n; ++i) d[i] = (mask >> i) & 1 ? -1 : 1;
            dirs.push_back(d);
        }
    }
    return dirs;
}

// Grid evidence for oracle systems: for each schedule entry large enough
// against the grid step, look for a probe shift whose shifted sets miss
// each other on the grid.
Verdict oracle_probe(const SetSystem& S, Level level, const std::optional<Scalar>& rho_in,
                     const std::vector<Scalar>& schedule, ShiftMode mode) {
    Verdict v;
    Scalar step;
    bool have = false;
    for (const Region* r : {&S.A(), &S.B()}) {
        if (!r->is_exact()) {
            if (!have || r->oracle().step > step) step = r->oracle().step;
            have = true;
        }
    }
    bool all = true;
    std::size_t used = 0;
    for (const auto& eps : schedule) {
        std::optional<Scalar> rho = rho_in;
        Scalar mag = eps / 2;
        if (level == Level::Stationary || level == Level::ApproxStationary) {
            rho = eps / 2;
            mag = eps * *rho / 2;
        }
        if (mag < step) continue;
        ++used;
        bool found = false;
        for (const auto& d : probe_directions(S.dim())) {
            ShiftWitness w = split_shift(scale(mag / S.norm().eval(d), d), mode);
            w.rho = rho;
            w.eps = eps;
            if (check_shift_witness(S, w, eps, level).ok) {
                v.certificate.witnesses.push_back(w);
                found = true;
                break;
            }
        }
        all = all && found;
    }
    if (used == 0) {
        v.status = Status::Unknown;
        v.notes.push_back("grid step too coarse for every schedule entry");
        return v;
    }
    v.status = Status::Likely;
    v.leaning = all;
    v.resolution = step;
    return v;
}

Vector toward(const Vector& center, const Vector& rep, const Scalar& eps, const PolyhedralNorm& n) {
    Scalar d = n.eval(sub(rep, center));
    if (d == 0) return rep;
    Scalar t = min2(Scalar(1), eps / (2 * d));
    return add(center, scale(t, sub(rep, center)));
}

// Approximate-stationarity witness at eps from a zero-value limit cell pair.
ShiftWitness approx_witness(const SetSystem& S, const SeparationValue& sv, const Scalar& eps, ShiftMode mode) {
    if (!sv.face_a || !sv.face_b) throw SoundnessError("approx_witness: separation value without faces");
    Vector a1 = toward(S.a(), sv.face_a->representative, eps, S.norm());
    Vector b1 = toward(S.b(), sv.face_b->representative, eps, S.norm());
    LocalStructure ls = local_structure(S, a1, b1);
    if (!ls.direction) {
        throw SoundnessError("approx_witness: zero separation value but the tangent cones cover the space");
    }
    ShiftWitness w = stationary_from_ray(*ls.direction, ls.radius, eps, mode, S.norm());
    w.aprime = a1;
    w.bprime = b1;
    return w;
}

}  // namespace

WitnessCheck check_shift_witness(const SetSystem& S, const ShiftWitness& w, const Scalar& eps, Level level) {
    WitnessCheck out;
    const std::size_t n = S.dim();
    if (w.u.size() != n || w.v.size() != n) throw DimensionError("check_shift_witness: dimension mismatch");
    if (eps <= 0) {
        out.reason = "eps must be positive";
        return out;
    }
    const Vector a1 = w.aprime.value_or(S.a());
    const Vector b1 = w.bprime.value_or(S.b());
    const Scalar size = max2(S.norm().eval(w.u), S.norm().eval(w.v));

    switch (level) {
        case Level::Extremal:
            if (w.rho) {
                out.reason = "extremal witnesses are nonlocal (rho = infinity)";
                return out;
            }
            if (size >= eps) {
                out.reason = "shift not below eps";
                return out;
            }
            break;
        case Level::LocallyExtremal:
            if (!w.rho || *w.rho <= 0) {
                out.reason = "local witness needs a positive finite rho";
                return out;
            }
            if (size >= eps) {
                out.reason = "shift not below eps";
                return out;
            }
            break;
        case Level::Stationary:
        case Level::ApproxStationary:
            if (!w.rho || *w.rho <= 0 || *w.rho >= eps) {
                out.reason = "rho must lie in (0, eps)";
                return out;
            }
            if (size >= eps * *w.rho) {
                out.reason = "shift not below eps * rho";
                return out;
            }
            break;
    }
    if (level == Level::ApproxStationary) {
        if (a1.size() != n || b1.size() != n) throw DimensionError("check_shift_witness: dimension mismatch");
        if (!S.A().contains(a1) || S.norm().eval(sub(a1, S.a())) >= eps) {
            out.reason = "a' not in A near a";
            return out;
        }
        if (!S.B().contains(b1) || S.norm().eval(sub(b1, S.b())) >= eps) {
            out.reason = "b' not in B near b";
            return out;
        }
    } else if (a1 != S.a() || b1 != S.b()) {
        out.reason = "moved base points are only allowed at the approximate level";
        return out;
    }

    if (!S.exact()) return grid_check(S, a1, b1, w);

    Region As = S.A().translate(neg(add(a1, w.u)));
    Region Bs = S.B().translate(neg(add(b1, w.v)));
    std::vector<Polyhedron> extra;
    if (w.rho) extra.push_back(ball(zeros(n), *w.rho, S.norm()));
    UnionIntersection ui = regions_intersect_empty({As, Bs}, extra);
    if (!ui.empty) {
        out.reason = "shifted sets meet at " + to_string(*ui.point);
        out.emptiness = std::move(ui);
        return out;
    }
    if (!verify_union_intersection(ui)) throw SoundnessError("check_shift_witness: emptiness certificate fails");
    out.emptiness = std::move(ui);
    out.ok = true;
    return out;
}

bool verify_shift_witness(const SetSystem& S, const ShiftWitness& w, const Scalar& eps, Level level) {
    WitnessCheck c = check_shift_witness(S, w, eps, level);
    if (!c.ok) return false;
    return !c.exact || (c.emptiness && verify_union_intersection(*c.emptiness));
}

ShiftWitness single_shift(const ShiftWitness& w) {
    ShiftWitness o = w;
    o.u = sub(w.u, w.v);
    o.v = zeros(w.u.size());
    if (w.rho) o.rho = *w.rho / 2;
    return o;
}

Scalar single_shift_parameter(const Scalar& eps, Level level) {
    if (level == Level::Extremal || level == Level::LocallyExtremal) return 2 * eps;
    return 4 * eps;
}

std::optional<ShiftWitness> witness_from_distance(const SetSystem& S, const Scalar& eps) {
    if (S.a() == S.b()) throw PreconditionError("witness_from_distance: a = b");
    if (!S.exact()) return std::nullopt;
    return witness_from_distance(S, eps, dist_region_region(S.A(), S.B(), S.norm()).value);
}

std::optional<ShiftWitness> witness_from_distance(const SetSystem& S, const Scalar& eps, const Scalar& distance) {
    if (S.a() == S.b()) throw PreconditionError("witness_from_distance: a = b");
    if (eps <= 0) throw PreconditionError("witness_from_distance: eps must be positive");
    const Vector ba = sub(S.b(), S.a());
    const Scalar len = S.norm().eval(ba);
    ShiftWitness w;
    w.eps = eps;
    if (distance > 0 && len == distance) {
        Scalar t = min2(eps / len, Scalar(1, 2)) / 2;
        w.u = scale(t, ba);
        w.v = scale(-t, ba);
        return w;
    }
    if (len >= distance + eps) return std::nullopt;
    if (distance == 0 && (!S.exact() || !regions_intersect_empty({S.A(), S.B()}).empty)) return std::nullopt;
    Scalar ep;
    if (distance > 0) {
        ep = (len - distance + min2(eps, len)) / 2;
    } else {
        ep = len;
    }
    w.u = scale(ep / (2 * len), ba);
    w.v = neg(w.u);
    return w;
}

Verdict check_relative_extremal(const SetSystem& S, ShiftMode mode, const std::vector<Scalar>& schedule) {
    validate_schedule(schedule);
    if (!S.exact()) return oracle_probe(S, Level::Extremal, std::nullopt, schedule, mode);

    const std::size_t n = S.dim();
    Region D = minkowski_difference(S.A().translate(neg(S.a())), S.B().translate(neg(S.b())));
    LocalCone lc = local_cone(D, zeros(n), S.norm());
    Verdict v;
    auto y = uncovered_direction(lc.cones, n);
    if (!y) {
        v.status = Status::Refuted;
        v.certificate.cover = CoverCertificate{lc.cones, lc.radius};
        v.certificate.interior_radius = lc.radius / 2;
        if (!verify_cover(*v.certificate.cover, n)) throw SoundnessError("check_relative_extremal: cover fails");
        Polyhedron bl = ball(zeros(n), lc.radius / 2, S.norm());
        std::vector<Constraint> base;
        for (const auto& r : bl.rows()) base.push_back({r.normal, Rel::Le, r.rhs});
        std::vector<std::vector<Row>> pieces;
        for (const auto& P : D.pieces()) pieces.push_back(P.rows());
        if (find_uncovered(base, std::vector<bool>(base.size(), false), pieces, n)) {
            throw SoundnessError("check_relative_extremal: interior ball not inside the difference set");
        }
        return v;
    }

    Scalar t0 = 1;
    bool bounded = false;
    for (const auto& P : D.pieces()) {
        if (P.contains(zeros(n))) continue;
        LinearProgram lp(1);
        lp.nonneg[0] = true;
        lp.objective[0] = 1;
        lp.maximize = false;
        for (const auto& r : P.rows()) lp.add({dot(r.normal, *y)}, Rel::Le, r.rhs);
        LpResult res = solve(lp);
        if (res.status != LpStatus::Optimal) continue;
        if (!bounded || res.value < t0) t0 = res.value;
        bounded = true;
    }
    if (bounded) t0 /= 2;
    v.status = Status::Proved;
    v.certificate.ray = RayCertificate{*y, t0};
    if (!verify_ray(D, *v.certificate.ray)) throw SoundnessError("check_relative_extremal: ray certificate fails");

    const Scalar ny = S.norm().eval(*y);
    for (const auto& eps : schedule) {
        std::optional<ShiftWitness> w;
        if (auto dw = distance_witness(S, mode == ShiftMode::Single ? eps / 2 : eps)) {
            w = *dw;
            if (mode == ShiftMode::Single) {
                w = global_single(*w);
                w->eps = eps;
            }
        }
        if (!w) {
            Scalar s = min2(t0, eps / (2 * ny));
            w = split_shift(scale(s, *y), mode);
            w->eps = eps;
        }
        require_verified(S, *w, Level::Extremal, "check_relative_extremal");
        v.certificate.witnesses.push_back(*w);
    }
    return v;
}

Verdict check_relative_locally_extremal(const SetSystem& S, const Scalar& rho, ShiftMode mode,
                                        const std::vector<Scalar>& schedule) {
    if (rho <= 0) throw PreconditionError("check_relative_locally_extremal: rho must be positive");
    validate_schedule(schedule);
    if (!S.exact()) return oracle_probe(S, Level::LocallyExtremal, rho, schedule, mode);

    LocalStructure ls = local_structure(S, S.a(), S.b());
    Verdict v;
    if (!ls.direction) {
        v.status = Status::Refuted;
        v.certificate.cover = CoverCertificate{ls.cones, ls.radius};
        if (!verify_cover(*v.certificate.cover, S.dim())) {
            throw SoundnessError("check_relative_locally_extremal: cover fails");
        }
        return v;
    }
    v.status = Status::Proved;
    for (const auto& eps : schedule) {
        std::optional<ShiftWitness> w;
        if (auto dw = distance_witness(S, mode == ShiftMode::Single ? eps / 2 : eps)) {
            w = mode == ShiftMode::Single ? global_single(*dw) : *dw;
            w->rho = rho;
            w->eps = eps;
        }
        if (!w) w = local_from_ray(*ls.direction, ls.radius, rho, eps, mode, S.norm());
        require_verified(S, *w, Level::LocallyExtremal, "check_relative_locally_extremal");
        v.certificate.witnesses.push_back(*w);
    }
    return v;
}

Verdict check_relative_stationary(const SetSystem& S, const std::vector<Scalar>& schedule, ShiftMode mode) {
    validate_schedule(schedule);
    if (!S.exact()) return oracle_probe(S, Level::Stationary, std::nullopt, schedule, mode);

    LocalStructure ls = local_structure(S, S.a(), S.b());
    Verdict v;
    if (!ls.direction) {
        v.status = Status::Refuted;
        v.certificate.cover = CoverCertificate{ls.cones, ls.radius};
        if (!verify_cover(*v.certificate.cover, S.dim())) {
            throw SoundnessError("check_relative_stationary: cover fails");
        }
        return v;
    }
    v.status = Status::Proved;
    for (const auto& eps : schedule) {
        const Scalar rho = eps / 2;
        std::optional<ShiftWitness> w;
        const Scalar target = eps * rho;
        if (auto dw = distance_witness(S, mode == ShiftMode::Single ? target / 2 : target)) {
            w = mode == ShiftMode::Single ? global_single(*dw) : *dw;
            w->rho = rho;
            w->eps = eps;
        }
        if (!w) w = stationary_from_ray(*ls.direction, ls.radius, eps, mode, S.norm());
        require_verified(S, *w, Level::Stationary, "check_relative_stationary");
        v.certificate.witnesses.push_back(*w);
    }
    return v;
}

Verdict check_relative_approx_stationary(const SetSystem& S, const std::vector<Scalar>& schedule,
                                         std::size_t face_cap) {
    validate_schedule(schedule);
    if (!S.exact()) {
        Verdict v = oracle_probe(S, Level::Stationary, std::nullopt, schedule, ShiftMode::Both);
        v.notes.push_back("oracle backend: grid evidence at the reference points only");
        return v;
    }

    SeparationValue sv = separation_limit(S, face_cap);
    if (!verify_separation_value(sv, S.dual_norm())) {
        throw SoundnessError("check_relative_approx_stationary: separation value does not re-verify");
    }
    Verdict v;
    v.certificate.separation_value = sv.value;
    if (sv.value && *sv.value == 0) {
        v.status = Status::Proved;
        for (const auto& eps : schedule) {
            ShiftWitness w = approx_witness(S, sv, eps, ShiftMode::Both);
            w.eps = eps;
            require_verified(S, w, Level::ApproxStationary, "check_relative_approx_stationary");
            v.certificate.witnesses.push_back(w);
            v.certificate.dual_pairs.push_back(DualPair{*w.aprime, *w.bprime, sv.astar, sv.bstar, eps, DualForm::II});
        }
        return v;
    }

    v.status = Status::Refuted;
    if (check_relative_stationary(S, schedule).proved()) {
        throw SoundnessError("check_relative_approx_stationary: stationary witness against a positive separation value");
    }
    const Scalar& last = schedule.back();
    SeparationValue at = separation_infimum(S, last, face_cap);
    if (at.value && *at.value < last) {
        v.notes.push_back("separation value below eps at every schedule entry but positive in the limit; "
                          "the schedule is too shallow to see it");
    }
    return v;
}

bool metric_char_approx_stationary(const SetSystem& S, const Scalar& eps, std::size_t samples) {
    if (eps <= 0) throw PreconditionError("metric_char_approx_stationary: eps must be positive");
    if (!S.exact()) throw UnsupportedBackend("metric_char_approx_stationary: oracle region");
    const std::size_t n = S.dim();
    const PolyhedralNorm& nm = S.norm();

    std::vector<Vector> dirs{zeros(n)};
    auto push_dir = [&](const Vector& d) {
        if (is_zero(d)) return;
        Vector u = scale(Scalar(1) / nm.eval(d), d);
        for (const auto& e : dirs) {
            if (e == u) return;
        }
        dirs.push_back(u);
    };
    for (std::size_t i = 0; i < n; ++i) {
        push_dir(unit(n, i));
        push_dir(neg(unit(n, i)));
    }
    for (const Region* R : {&S.A(), &S.B()}) {
        for (const auto& P : R->pieces()) {
            for (const auto& r : P.rows()) {
                push_dir(r.normal);
                push_dir(neg(r.normal));
            }
        }
    }
    const std::vector<Scalar> steps{eps / 2, eps / 4, eps / 8};
    std::vector<Vector> shifts{zeros(n)};
    for (const auto& s : steps) {
        for (std::size_t i = 1; i < dirs.size(); ++i) shifts.push_back(scale(s, dirs[i]));
    }
    std::vector<Vector> xs{zeros(n)};
    for (std::size_t i = 1; i < dirs.size(); ++i) xs.push_back(scale(eps / 2, dirs[i]));

    auto meet_distance = [&](const Vector& x, const Vector& y, const Vector& z) -> std::optional<Scalar> {
        std::optional<Scalar> best;
        for (const auto& P : S.A().pieces()) {
            for (const auto& Q : S.B().pieces()) {
                Polyhedron I = P.translate(neg(y)).intersect(Q.translate(neg(z)));
                if (I.empty()) continue;
                Scalar d = dist_point_polyhedron(x, I, nm).value;
                if (!best || d < *best) best = d;
            }
        }
        return best;
    };

    std::size_t tried = 0;
    for (const auto& sy : shifts) {
        for (const auto& sz : shifts) {
            const Vector y = add(S.a(), sy);
            const Vector z = add(S.b(), sz);
            for (const auto& x : xs) {
                if (++tried > samples) return false;
                Scalar da = dist_point_region(add(x, y), S.A(), nm).value;
                Scalar db = dist_point_region(add(x, z), S.B(), nm).value;
                auto dm = meet_distance(x, y, z);
                if (!dm || max2(da, db) < eps * *dm) return true;
            }
        }
    }
    return false;
}

ChainReport implication_chain(const SetSystem& S, const std::vector<Scalar>& schedule) {
    ChainReport r;
    r.verdicts[0] = check_relative_extremal(S, ShiftMode::Both, schedule);
    r.verdicts[1] = check_relative_locally_extremal(S, Scalar(1), ShiftMode::Both, schedule);
    r.verdicts[2] = check_relative_stationary(S, schedule);
    r.verdicts[3] = check_relative_approx_stationary(S, schedule);
    const Level levels[4] = {Level::Extremal, Level::LocallyExtremal, Level::Stationary, Level::ApproxStationary};
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = i + 1; j < 4; ++j) {
            if (r.verdicts[i].proved() && r.verdicts[j].refuted()) {
                r.violations.push_back(level_name(levels[i]) + " proved but " + level_name(levels[j]) + " refuted");
            }
        }
    }
    r.convex = S.convex();
    if (r.convex) {
        for (std::size_t i = 1; i < 4; ++i) {
            if (r.verdicts[i].status != r.verdicts[0].status) {
                r.violations.push_back("convex pair: " + level_name(levels[i]) + " differs from extremal");
            }
        }
    }
    return r;
}

std::array<Status, 4> verdict_vector(const SetSystem& S, const std::vector<Scalar>& schedule) {
    ChainReport r = implication_chain(S, schedule);
    return {r.verdicts[0].status, r.verdicts[1].status, r.verdicts[2].status, r.verdicts[3].status};
}

bool check_translation_invariance(const SetSystem& S, const Vector& u, const Vector& v,
                                  const std::vector<Scalar>& schedule) {
    return verdict_vector(S, schedule) == verdict_vector(S.translated(u, v), schedule);
}

StabilityReport stability_probe(const SetSystem& S, const Scalar& eps, const Scalar& delta,
                                const std::vector<std::pair<Vector, Vector>>& pairs) {
    if (eps <= 0 || delta <= 0) throw PreconditionError("stability_probe: eps and delta must be positive");
    if (!S.exact()) throw UnsupportedBackend("stability_probe: oracle region");
    SeparationValue sv = separation_limit(S);
    if (!sv.value || *sv.value != 0) throw PreconditionError("stability_probe: pair is not approximately stationary");
    const PolyhedralNorm& n = S.norm();
    StabilityReport rep;
    for (const auto& [a1, b1] : pairs) {
        if (!S.A().contains(a1) || !S.B().contains(b1) || n.eval(sub(a1, S.a())) >= eps ||
            n.eval(sub(b1, S.b())) >= eps) {
            throw PreconditionError("stability_probe: pair outside A ∩ B_eps(a) x B ∩ B_eps(b)");
        }
        const Scalar m = max2(n.eval(sub(a1, S.a())), n.eval(sub(b1, S.b())));
        const Scalar xi = min2(delta, eps - m) / 2;
        ShiftWitness w = approx_witness(S, sv, xi, ShiftMode::Both);
        w.eps = eps;
        rep.witnesses.push_back(w);
        // Re-check against (a', b') at eps: rho < delta, moved points within eps.
        SetSystem Sp = S.with_points(a1, b1);
        WitnessCheck c = check_shift_witness(Sp, w, eps, Level::ApproxStationary);
        if (!c.ok) {
            rep.failures.push_back("pair " + to_string(a1) + ", " + to_string(b1) + ": " + c.reason);
        } else if (!w.rho || *w.rho >= delta) {
            rep.failures.push_back("pair " + to_string(a1) + ", " + to_string(b1) + ": rho not below delta");
        }
    }
    return rep;
}

bool verify_cover(const CoverCertificate& c, std::size_t dim) {
    if (c.radius <= 0) return false;
    std::vector<Constraint> base;
    for (std::size_t i = 0; i < dim; ++i) {
        base.push_back({unit(dim, i), Rel::Le, c.radius});
        base.push_back({unit(dim, i), Rel::Ge, -c.radius});
    }
    std::vector<std::vector<Row>> pieces;
    for (const auto& cone : c.cones) {
        std::vector<Row> rows;
        for (const auto& h : cone) {
            if (h.size() != dim) return false;
            rows.push_back({h, 0});
        }
        pieces.push_back(std::move(rows));
    }
    return !find_uncovered(base, std::vector<bool>(base.size(), false), pieces, dim);
}

bool verify_ray(const Region& D, const RayCertificate& r) {
    if (r.t0 <= 0 || is_zero(r.direction)) return false;
    if (!D.contains(zeros(r.direction.size()))) return false;
    for (const auto& P : D.pieces()) {
        std::vector<Constraint> rows;
        std::vector<bool> strict;
        for (const auto& row : P.rows()) {
            rows.push_back({{dot(row.normal, r.direction)}, Rel::Le, row.rhs});
            strict.push_back(false);
        }
        rows.push_back({{Scalar(1)}, Rel::Ge, Scalar(0)});
        strict.push_back(true);
        rows.push_back({{Scalar(1)}, Rel::Le, r.t0});
        strict.push_back(false);
        if (solve_strict(1, rows, strict).feasible) return false;
    }
    return true;
}

}  // namespace extremal
