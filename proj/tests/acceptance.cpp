// Acceptance run: one PASS/FAIL line per criterion. All comparisons are
// exact (tolerance 0); the only pinned limits are the wall-clock budgets.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include <sys/wait.h>

#include "extremal/cli_io.hpp"
#include "extremal/dual.hpp"
#include "extremal/errors.hpp"
#include "extremal/geometry.hpp"
#include "extremal/lp.hpp"
#include "extremal/mappings.hpp"
#include "extremal/primal.hpp"
#include "random_instances.hpp"
#include "support.hpp"

using namespace fixtures;
namespace fs = std::filesystem;

namespace {

constexpr double kBudgetGolden = 10;     // seconds
constexpr double kBudgetLemma = 60;
constexpr double kBudgetConsistency = 300;
constexpr int kLemmaInstances = 1000;    // per part
constexpr int kRandomUnions = 200;
constexpr int kRandomConvex = 200;
constexpr int kTranslations = 50;

struct Instance {
    std::string name;
    SetSystem S;
};

// Collects failure descriptions; a criterion passes when none are recorded.
struct Failures {
    std::vector<std::string> items;
    void add(const std::string& s) { items.push_back(s); }
    void expect(bool ok, const std::string& what) {
        if (!ok) add(what);
    }
};

int g_failed = 0;
std::set<int> g_only;  // criteria named on the command line; all when empty

void criterion(int id, const char* title, double budget, const std::function<void(Failures&)>& body) {
    if (!g_only.empty() && !g_only.count(id)) return;
    Failures f;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        body(f);
    } catch (const std::exception& e) {
        f.add(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (budget > 0 && secs >= budget) {
        std::ostringstream s;
        s << "took " << secs << " s, budget " << budget << " s";
        f.add(s.str());
    }
    char t[32];
    std::snprintf(t, sizeof t, "%.1fs", secs);
    std::cout << (f.items.empty() ? "PASS" : "FAIL") << " criterion " << id << ": " << title << " (" << t << ")";
    if (!f.items.empty()) {
        ++g_failed;
        std::cout << ": " << f.items.size() << " failure(s)";
        for (std::size_t i = 0; i < f.items.size() && i < 5; ++i) std::cout << "\n    " << f.items[i];
    }
    std::cout << std::endl;
}

std::vector<fs::path> corpus_scenes() {
    std::vector<fs::path> out;
    for (const auto& e : fs::directory_iterator(EXTREMAL_CORPUS_DIR)) {
        const std::string n = e.path().filename().string();
        if (n.size() > 11 && n.substr(n.size() - 11) == ".scene.json") out.push_back(e.path());
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Every distinct (sets, points) pair queried by an exact corpus scene.
std::vector<Instance> corpus_systems() {
    std::vector<Instance> out;
    for (const auto& p : corpus_scenes()) {
        const Scene s = load_scene(p);
        if (!s.exact()) continue;
        std::set<std::string> seen;
        for (const auto& q : s.queries) {
            if (q.points.size() != 2 || q.sets.size() != 2) continue;
            const std::string key = q.sets[0] + "," + q.sets[1] + "@" + q.points[0] + "," + q.points[1];
            if (!seen.insert(key).second) continue;
            out.push_back({s.name + "[" + key + "]", system_for(s, q)});
        }
    }
    return out;
}

Polyhedron random_piece(std::mt19937& g, std::size_t n, int max_rows) {
    std::uniform_int_distribution<int> m(1, max_rows), rhs(-1, 2);
    std::vector<Row> rows;
    const int k = m(g);
    for (int j = 0; j < k; ++j) {
        const int r = rhs(g);
        rows.push_back({random_int_vector(g, n, -3, 3), r > 0 ? Scalar(r - 1) : Scalar(r)});
    }
    return Polyhedron(n, rows);
}

// Union of 1-3 pieces in the plane that contains the origin.
Region random_union(std::mt19937& g) {
    std::uniform_int_distribution<int> k(1, 3);
    while (true) {
        std::vector<Polyhedron> ps;
        const int pieces = k(g);
        for (int i = 0; i < pieces; ++i) ps.push_back(random_piece(g, 2, 2));
        Region R = Region::exact(2, ps);
        if (R.contains(v2(0, 0))) return R;
    }
}

std::vector<Instance> random_unions(int count, unsigned seed) {
    std::mt19937 g(seed);
    std::uniform_int_distribution<int> coin(0, 1), c(-2, 2);
    std::vector<Instance> out;
    for (int i = 0; i < count; ++i) {
        const Region A = random_union(g);
        Region B = random_union(g);
        Vector b = v2(0, 0);
        if (coin(g)) {
            b = v2(c(g), c(g));
            B = B.translate(b);
        }
        out.push_back({"union#" + std::to_string(i), SetSystem(A, B, v2(0, 0), b)});
    }
    return out;
}

std::vector<Instance> random_convex(int count, unsigned seed) {
    std::mt19937 g(seed);
    std::vector<Instance> out;
    for (int i = 0; i < count; ++i) {
        const std::size_t n = i % 2 ? 3 : 2;
        while (true) {
            const Polyhedron P = random_piece(g, n, 3), Q = random_piece(g, n, 3);
            const Vector o = zeros(n);
            if (!P.contains(o) || !Q.contains(o)) continue;
            out.push_back({"convex#" + std::to_string(i), SetSystem(Region::exact(n, {P}), Region::exact(n, {Q}), o, o)});
            break;
        }
    }
    return out;
}

// 0 in the interior of D = (A - a) - (B - b), decided by LPs over the
// pieces directly: D is convex here, so 0 is interior iff every +-e_i
// direction enters D.
bool difference_interior(const SetSystem& S) {
    const std::size_t n = S.dim();
    const Polyhedron& P = S.A().pieces().front();
    const Polyhedron& Q = S.B().pieces().front();
    for (std::size_t i = 0; i < n; ++i) {
        for (int sign : {1, -1}) {
            // variables x (n), y (n), t; x + a in P, y + b in Q, x - y = t d
            LinearProgram lp(2 * n + 1);
            lp.objective[2 * n] = 1;
            for (const auto& r : P.rows()) {
                Vector c = zeros(2 * n + 1);
                for (std::size_t k = 0; k < n; ++k) c[k] = r.normal[k];
                lp.add(c, Rel::Le, r.rhs - dot(r.normal, S.a()));
            }
            for (const auto& r : Q.rows()) {
                Vector c = zeros(2 * n + 1);
                for (std::size_t k = 0; k < n; ++k) c[n + k] = r.normal[k];
                lp.add(c, Rel::Le, r.rhs - dot(r.normal, S.b()));
            }
            for (std::size_t k = 0; k < n; ++k) {
                Vector c = zeros(2 * n + 1);
                c[k] = 1;
                c[n + k] = -1;
                c[2 * n] = k == i ? Scalar(-sign) : Scalar(0);
                lp.add(c, Rel::Eq, 0);
            }
            Vector cap = zeros(2 * n + 1);
            cap[2 * n] = 1;
            lp.add(cap, Rel::Le, 1);
            const LpResult r = solve(lp);
            if (r.status != LpStatus::Optimal || r.value <= 0) return false;
        }
    }
    return true;
}

// Farkas arithmetic from scratch: y >= 0, sum y_i n_i = 0, sum y_i r_i < 0.
bool farkas_holds(const Json& part) {
    const auto& rows = part.at("rows");
    const auto& ys = part.at("multipliers");
    if (rows.size() != ys.size() || rows.empty()) return false;
    const std::size_t n = rows[0].size() - 1;
    Vector sum = zeros(n);
    Scalar rhs = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const Scalar y = scalar_from_json(ys[i]);
        if (y < 0) return false;
        for (std::size_t k = 0; k < n; ++k) sum[k] += y * scalar_from_json(rows[i][k]);
        rhs += y * scalar_from_json(rows[i][n]);
    }
    return is_zero(sum) && rhs < 0;
}

std::optional<Level> level_of(const std::string& kind) {
    if (kind == "extremal" || kind == "nonlocal-ep" || kind == "distance") return Level::Extremal;
    if (kind == "locally-extremal") return Level::LocallyExtremal;
    if (kind == "stationary") return Level::Stationary;
    if (kind == "approx-stationary") return Level::ApproxStationary;
    return std::nullopt;
}

Status decision_from_schedule(const SetSystem& S, const std::vector<Scalar>& schedule) {
    for (const auto& e : schedule) {
        const SeparationValue sv = separation_infimum(S, e);
        if (!sv.value || *sv.value >= e) return Status::Refuted;
    }
    return Status::Proved;
}

void c1(Failures& f) {
    const auto v = verdict_vector(crossing());
    for (std::size_t i = 0; i < 4; ++i) f.expect(v[i] == Status::Refuted, "crossing halfplanes: level " + std::to_string(i) + " not refuted");
    f.expect(separation_limit(crossing()).value == Scalar(1), "crossing halfplanes: separation value != 1");

    f.expect(check_relative_extremal(union_at_origin()).refuted(), "union stand-in at (0,0): extremal not refuted");
    f.expect(check_relative_locally_extremal(union_at_origin(), frac(1, 2)).proved(),
             "union stand-in at (0,0): local extremality (rho 1/2) not proved");
    f.expect(check_relative_locally_extremal(union_at_corner(), frac(1, 4)).refuted(),
             "union stand-in at (-1,1): local extremality (rho 1/4) not refuted");

    const SetSystem P = parallel_sum();
    f.expect(dist_region_region(P.A(), P.B(), P.norm()).value == Scalar(1), "parallel halfplanes: distance != 1");
    const auto w = witness_from_distance(P, frac(1, 4));
    f.expect(w && verify_shift_witness(P, *w, frac(1, 4), Level::Extremal), "parallel halfplanes: distance witness fails");

    f.expect(check_relative_extremal(strips()).proved(), "strip stand-in: relative extremality not proved");
}

void c2(Failures& f) {
    std::mt19937 g(2024);
    const PolyhedralNorm norms[] = {PolyhedralNorm::sum_norm(), PolyhedralNorm::max_norm()};
    int merges = 0, splits = 0, k = 0;
    while (merges < kLemmaInstances || splits < kLemmaInstances) {
        const std::size_t n = 2 + (k % 2);
        const PolyhedralNorm& dn = norms[(k / 2) % 2];
        ++k;
        if (merges < kLemmaInstances) {
            if (auto in = random_merge(g, n, dn)) {
                auto [o1, o2] = lemma1_merge(in->z1, in->z2, in->K1, in->K2, in->eps, dn);
                const Scalar bound = in->eps / (2 * (1 - in->eps));
                f.expect(is_zero(add(o1, o2)) && dn.eval(o1) + dn.eval(o2) == 1 &&
                             dist_to_cone(o1, in->K1, dn).value < bound && dist_to_cone(o2, in->K2, dn).value < bound,
                         "merge bound violated at instance " + std::to_string(merges));
                ++merges;
            }
        }
        if (splits < kLemmaInstances) {
            if (auto in = random_split(g, n, dn)) {
                auto [o1, o2] = lemma1_split(in->z1, in->z2, in->K1, in->K2, in->eps, dn);
                f.expect(in->K1.contains(o1) && in->K2.contains(o2) && dn.eval(o1) + dn.eval(o2) == 1 &&
                             dn.eval(add(o1, o2)) < in->eps / (1 - in->eps),
                         "split bound violated at instance " + std::to_string(splits));
                ++splits;
            }
        }
    }
}

void c3(Failures& f, const std::vector<Instance>& corpus, const std::vector<Instance>& unions) {
    const auto schedule = default_schedule();
    auto one = [&](const Instance& in) {
        const Status primal = check_relative_approx_stationary(in.S, schedule).status;
        const Status dual = decision_from_schedule(in.S, schedule);
        f.expect(primal == dual, in.name + ": approx " + status_name(primal) + ", schedule decision " + status_name(dual));
    };
    for (const auto& in : corpus) one(in);
    for (const auto& in : unions) one(in);
}

void c4(Failures& f, const std::vector<Instance>& convex) {
    for (const auto& in : convex) {
        const Status ex = check_relative_extremal(in.S).status;
        const bool interior = difference_interior(in.S);
        const Status direct = interior ? Status::Refuted : Status::Proved;
        f.expect(ex == direct, in.name + ": extremal " + status_name(ex) + ", direct test " + status_name(direct));
    }
}

void c5(Failures& f, const std::vector<Instance>& all) {
    for (const auto& in : all) {
        const ChainReport r = implication_chain(in.S);
        for (const auto& v : r.violations) f.add(in.name + ": " + v);
        if (in.S.convex()) {
            for (const auto& v : r.verdicts)
                f.expect(v.status == r.verdicts[0].status, in.name + ": convex pair with unequal verdicts");
        }
    }
}

void c6(Failures& f, const std::vector<Instance>& all) {
    int proved = 0;
    for (const auto& in : all) {
        const Verdict both = check_relative_extremal(in.S, ShiftMode::Both);
        if (both.proved()) {
            ++proved;
            f.expect(check_relative_extremal(in.S, ShiftMode::Single).proved(), in.name + ": single-shift extremal not proved");
            for (const auto& w : both.certificate.witnesses) {
                const Scalar e = single_shift_parameter(w.eps, Level::Extremal);
                f.expect(verify_shift_witness(in.S, single_shift(w), e, Level::Extremal),
                         in.name + ": single-shift witness fails at " + to_string(e));
            }
        }
        const Verdict st = check_relative_stationary(in.S, default_schedule(), ShiftMode::Both);
        if (st.proved()) {
            ++proved;
            f.expect(check_relative_stationary(in.S, default_schedule(), ShiftMode::Single).proved(),
                     in.name + ": single-shift stationarity not proved");
            for (const auto& w : st.certificate.witnesses) {
                const Scalar e = single_shift_parameter(w.eps, Level::Stationary);
                f.expect(verify_shift_witness(in.S, single_shift(w), e, Level::Stationary),
                         in.name + ": single-shift stationary witness fails at " + to_string(e));
            }
        }
    }
    f.expect(proved > 0, "no proved instance");

    std::mt19937 g(66);
    std::uniform_int_distribution<int> num(-12, 12), den(1, 4);
    for (int i = 0; i < kTranslations; ++i) {
        const Instance& in = all[i % all.size()];
        Vector u, v;
        for (std::size_t k = 0; k < in.S.dim(); ++k) {
            u.push_back(frac(num(g), den(g)));
            v.push_back(frac(num(g), den(g)));
        }
        f.expect(check_translation_invariance(in.S, u, v), in.name + ": verdicts change under translation");
    }
}

void c7(Failures& f, const std::vector<Instance>& corpus) {
    int converted = 0;
    for (const auto& in : corpus) {
        for (const Scalar& eps : {frac(1, 2), frac(1, 4), frac(1, 8)}) {
            const Scalar xi = eps / (1 + eps);
            const Verdict two = check_ep_condition(in.S, DualForm::II, xi);
            if (two.proved()) {
                const DualPair out = convert_conditions(two.certificate.dual_pairs.front(), Conversion::IIToI, in.S, eps);
                f.expect(out.form == DualForm::I && out.eps == eps && verify_dual_pair(in.S, out),
                         in.name + ": II -> I conversion fails at " + to_string(eps));
                ++converted;
            }
            const Verdict one = check_ep_condition(in.S, DualForm::I, xi);
            if (one.proved()) {
                const DualPair out = convert_conditions(one.certificate.dual_pairs.front(), Conversion::IToII, in.S, eps);
                f.expect(out.form == DualForm::II && out.eps == eps && verify_dual_pair(in.S, out),
                         in.name + ": I -> II conversion fails at " + to_string(eps));
                ++converted;
            }
        }
    }
    f.expect(converted > 0, "no proved corpus instance to convert");
}

void c8(Failures& f, const std::vector<Instance>& all) {
    const Scalar delta(1, 4);
    for (const auto& in : all) {
        const Status ex = check_relative_extremal(in.S).status;
        const CrossCheck cc = crosscheck_primal_dual(in.S, delta);
        for (const auto& e : cc.errors) f.add(in.name + ": " + e);
        f.expect(cc.boundary_of_domain == (ex == Status::Proved), in.name + ": boundary of dom S disagrees");
        try {
            const Verdict pb = product_boundary_condition(in.S);
            f.expect(pb.status == ex, in.name + ": product boundary " + status_name(pb.status));
        } catch (const SoundnessError& e) {
            f.add(in.name + ": " + e.what());
        }
        const SeparationValue sv = separation_infimum(in.S, delta);
        if (!sv.value || *sv.value >= Scalar(1, 2)) {
            f.expect(cc.metric_regularity > 0 && cc.aubin > 0,
                     in.name + ": separation >= 1/2 but a sampled rate is 0 (mr " + to_string(cc.metric_regularity) +
                         ", aubin " + to_string(cc.aubin) + ")");
        }
        if (cc.approx == Status::Proved) {
            f.expect(cc.metric_regularity == 0 && cc.aubin == 0,
                     in.name + ": approx proved but rates mr " + to_string(cc.metric_regularity) + ", aubin " +
                         to_string(cc.aubin));
        }
    }
}

void check_witnesses(Failures& f, const std::string& where, const Json& cert, const SetSystem& S, Level level,
                     int& count) {
    if (!cert.contains("witnesses")) return;
    for (const auto& wj : cert["witnesses"]) {
        ++count;
        const ShiftWitness w = witness_from_json(wj);
        f.expect(wj.value("verified", false), where + ": witness not marked verified");
        f.expect(verify_shift_witness(S, w, w.eps, level), where + ": witness fails at " + to_string(w.eps));
        if (wj.contains("emptiness")) {
            for (const auto& part : wj["emptiness"]) f.expect(farkas_holds(part), where + ": Farkas multipliers fail");
        }
    }
}

void c9(Failures& f) {
    int witnesses = 0, pairs = 0, values = 0;
    for (const auto& p : corpus_scenes()) {
        const Scene s = load_scene(p);
        Json report;
        try {
            report = run_scene(s, RunConfig{});
        } catch (const SoundnessError& e) {
            f.add(s.name + ": soundness error " + e.what());
            continue;
        }
        if (!s.exact()) continue;
        for (const auto& r : report["results"]) {
            const std::string kind = r["kind"];
            const std::string where = s.name + "#" + std::to_string(r["index"].get<int>()) + " " + kind;
            try {
                if (r.contains("error")) {
                    f.add(where + ": " + r["error"]["message"].get<std::string>());
                    continue;
                }
                Query q{kind, r["sets"].get<std::vector<std::string>>(), r["points"].get<std::vector<std::string>>(),
                        r["args"]};
                const SetSystem S = system_for(s, q);
                const PolyhedralNorm& dn = S.dual_norm();
                if (r.contains("certificate")) {
                    if (auto lvl = level_of(kind)) check_witnesses(f, where, r["certificate"], S, *lvl, witnesses);
                    if (r["certificate"].contains("dual_pairs")) {
                        for (const auto& dj : r["certificate"]["dual_pairs"]) {
                            ++pairs;
                            const DualPair dp = dual_pair_from_json(dj);
                            bool ok;
                            if (kind == "nonlocal-ep" && regions_intersect_empty({S.A(), S.B()}).empty) {
                                // ball constraints replaced by ||a' - b'|| < d(A, B) + eps
                                const Scalar d = dist_region_region(S.A(), S.B(), S.norm()).value;
                                ok = verify_dual_pair(S.with_points(dp.aprime, dp.bprime), dp) &&
                                     S.norm().eval(sub(dp.aprime, dp.bprime)) < d + dp.eps;
                            } else {
                                ok = verify_dual_pair(S, dp);
                            }
                            f.expect(ok, where + ": dual pair fails");
                        }
                    }
                }
                if (kind == "chain") {
                    static const Level levels[] = {Level::Extremal, Level::LocallyExtremal, Level::Stationary,
                                                   Level::ApproxStationary};
                    for (std::size_t i = 0; i < 4; ++i) {
                        if (r["levels"][i].contains("certificate"))
                            check_witnesses(f, where, r["levels"][i]["certificate"], S, levels[i], witnesses);
                    }
                }
                if (kind == "separation-infimum" && r["value"] != "inf") {
                    ++values;
                    const Vector as = vector_from_json(r["astar"]), bs = vector_from_json(r["bstar"]);
                    const Vector fa = vector_from_json(r["face_a"]), fb = vector_from_json(r["face_b"]);
                    f.expect(r.value("verified", false), where + ": separation value not marked verified");
                    f.expect(normal_cone(S.A(), fa).contains(as) && normal_cone(S.B(), fb).contains(bs) &&
                                 dn.eval(as) + dn.eval(bs) == 1 && dn.eval(add(as, bs)) == scalar_from_json(r["value"]),
                             where + ": separation value does not re-derive");
                }
                if (kind == "distance" && r.contains("witness") && !r["witness"].is_null()) {
                    ++witnesses;
                    const ShiftWitness w = witness_from_json(r["witness"]);
                    f.expect(verify_shift_witness(S, w, w.eps, Level::Extremal), where + ": distance witness fails");
                }
                if (kind == "zn" && r.value("found", false)) {
                    ++pairs;
                    const Json& z = r["zn"];
                    const Vector ap = vector_from_json(z["aprime"]), bp = vector_from_json(z["bprime"]);
                    const Vector as = vector_from_json(z["astar"]);
                    const Scalar eps = scalar_from_json(r["args"]["eps"]);
                    const Scalar lambda = scalar_from_json(r["args"]["lambda"]);
                    const Scalar dev =
                        dist_to_cone(as, normal_cone(S.A(), ap), dn).value + dist_to_cone(neg(as), normal_cone(S.B(), bp), dn).value;
                    f.expect(S.A().contains(ap) && S.B().contains(bp) && dn.eval(as) == 1 && dev < eps / lambda,
                             where + ": separation conditions fail");
                    if (r["args"].contains("tau")) {
                        const Scalar tau = scalar_from_json(r["args"]["tau"]);
                        const Vector d = sub(bp, ap);
                        f.expect(dot(as, d) >= tau * S.norm().eval(d), where + ": direction condition fails");
                    }
                }
            } catch (const std::exception& e) {
                f.add(where + ": " + e.what());
            }
        }
    }
    f.expect(witnesses > 0 && pairs > 0 && values > 0, "nothing to re-verify");

    const std::string cmd = std::string("\"") + EXTREMAL_BIN + "\" corpus > /dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    const int code = rc == -1 ? -1 : WEXITSTATUS(rc);
    f.expect(code != 3, "extremal corpus exited with 3");
    f.expect(code == 0, "extremal corpus exited with " + std::to_string(code));
}

}  // namespace

int main(int argc, char** argv) {
    for (int i = 1; i < argc; ++i) g_only.insert(std::atoi(argv[i]));
    std::cout << "acceptance: exact comparisons throughout (tolerance 0)" << std::endl;
    const auto corpus = corpus_systems();
    const auto unions = random_unions(kRandomUnions, 1234);
    const auto convex = random_convex(kRandomConvex, 4321);
    std::vector<Instance> all = corpus;
    all.insert(all.end(), unions.begin(), unions.end());
    all.insert(all.end(), convex.begin(), convex.end());

    criterion(1, "worked examples, exact verdicts and values", kBudgetGolden, c1);
    criterion(2, "cone lemma bounds, 1000 instances per part", kBudgetLemma, c2);
    criterion(3, "approximate stationarity vs dual schedule decision", kBudgetConsistency,
              [&](Failures& f) { c3(f, corpus, unions); });
    criterion(4, "extremality vs direct interior test of the difference set", 0,
              [&](Failures& f) { c4(f, convex); });
    criterion(5, "implication chain monotone, convex pairs all equal", 0, [&](Failures& f) { c5(f, all); });
    criterion(6, "single-shift mode and translation invariance", 0, [&](Failures& f) { c6(f, all); });
    criterion(7, "form conversion at xi = eps / (1 + eps)", 0, [&](Failures& f) { c7(f, corpus); });
    criterion(8, "mapping cross-checks", 0, [&](Failures& f) {
        std::vector<Instance> exact = corpus;
        exact.insert(exact.end(), unions.begin(), unions.end());
        c8(f, exact);
    });
    criterion(9, "certificate re-verification on the corpus", 0, c9);
    return g_failed == 0 ? 0 : 1;
}
