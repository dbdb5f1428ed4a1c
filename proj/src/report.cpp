#include <chrono>
#include <sstream>

#include "extremal/cli_io.hpp"
#include "extremal/dual.hpp"
#include "extremal/errors.hpp"
#include "extremal/mappings.hpp"
#include "extremal/primal.hpp"

namespace extremal {

namespace {

enum class Arg { Positive, Schedule, Flag, Form, Property, Count };

const std::map<std::string, std::map<std::string, std::pair<Arg, bool>>>& schemas() {
    static const std::map<std::string, std::map<std::string, std::pair<Arg, bool>>> s{
        {"extremal", {{"schedule", {Arg::Schedule, false}}, {"single_shift", {Arg::Flag, false}}}},
        {"locally-extremal",
         {{"rho", {Arg::Positive, true}}, {"schedule", {Arg::Schedule, false}}, {"single_shift", {Arg::Flag, false}}}},
        {"stationary", {{"schedule", {Arg::Schedule, false}}, {"single_shift", {Arg::Flag, false}}}},
        {"approx-stationary", {{"schedule", {Arg::Schedule, false}}}},
        {"ep-condition", {{"form", {Arg::Form, true}}, {"eps", {Arg::Positive, true}}}},
        {"separation-infimum", {{"eps", {Arg::Positive, false}}}},
        {"zn",
         {{"eps", {Arg::Positive, true}},
          {"lambda", {Arg::Positive, true}},
          {"tau", {Arg::Positive, false}},
          {"zn3", {Arg::Flag, false}},
          {"primed", {Arg::Flag, false}}}},
        {"nonlocal-ep", {{"eps", {Arg::Positive, true}}}},
        {"rates", {{"property", {Arg::Property, false}}, {"delta", {Arg::Positive, false}}, {"grid", {Arg::Count, false}}}},
        {"crosscheck", {{"delta", {Arg::Positive, false}}, {"grid", {Arg::Count, false}}}},
        {"product-boundary", {}},
        {"chain", {{"schedule", {Arg::Schedule, false}}}},
        {"distance", {{"eps", {Arg::Positive, false}}}},
    };
    return s;
}

const std::vector<RateProperty> kProperties{RateProperty::Covering, RateProperty::Semiregularity,
                                            RateProperty::LipschitzLsc, RateProperty::MetricRegularity,
                                            RateProperty::Aubin};

Scalar arg_scalar(const Json& j) {
    if (j.is_number_integer()) return Scalar(j.dump());
    if (!j.is_string()) throw std::invalid_argument("expected a rational literal");
    return parse_scalar(j.get<std::string>());
}

void check_arg(const std::string& key, const Json& v, Arg type) {
    auto bad = [&](const std::string& why) { throw PreconditionError(key + ": " + why); };
    try {
        switch (type) {
            case Arg::Positive:
                if (arg_scalar(v) <= 0) bad("must be positive");
                break;
            case Arg::Schedule:
                if (!v.is_array() || v.empty()) bad("expected a nonempty list of rationals");
                for (const auto& e : v) {
                    if (arg_scalar(e) <= 0) bad("schedule entries must be positive");
                }
                break;
            case Arg::Flag:
                if (!v.is_boolean()) bad("expected true or false");
                break;
            case Arg::Form:
                if (!v.is_string() || (v != "I" && v != "II" && v != "III")) bad("form is one of I, II, III");
                break;
            case Arg::Property: {
                if (!v.is_string()) bad("expected a property name");
                bool ok = v == "all";
                for (auto p : kProperties) ok = ok || v == rate_property_name(p);
                if (!ok) bad("unknown property");
                break;
            }
            case Arg::Count:
                if (!v.is_number_unsigned() || v.get<std::size_t>() == 0) bad("expected a positive integer");
                break;
        }
    } catch (const std::invalid_argument& e) {
        bad(e.what());
    }
}

std::vector<Scalar> schedule_for(const Query& q, const RunConfig& cfg) {
    if (q.args.contains("schedule")) {
        std::vector<Scalar> s;
        for (const auto& e : q.args.at("schedule")) s.push_back(arg_scalar(e));
        return s;
    }
    return cfg.schedule ? *cfg.schedule : default_schedule();
}

Scalar arg_or(const Query& q, const char* key, const Scalar& fallback) {
    return q.args.contains(key) ? arg_scalar(q.args.at(key)) : fallback;
}

bool flag(const Query& q, const char* key) { return q.args.contains(key) && q.args.at(key).get<bool>(); }

Json opt_scalar(const std::optional<Scalar>& s) { return s ? Json(to_string(*s)) : Json("inf"); }

std::string form_name(DualForm f) {
    switch (f) {
        case DualForm::I: return "I";
        case DualForm::II: return "II";
        case DualForm::III: return "III";
    }
    return "";
}

DualForm form_from(const std::string& s) {
    if (s == "I") return DualForm::I;
    if (s == "III") return DualForm::III;
    return DualForm::II;
}

std::string error_type(const Error& e) {
    if (dynamic_cast<const DimensionError*>(&e)) return "dimension";
    if (dynamic_cast<const PreconditionError*>(&e)) return "precondition";
    if (dynamic_cast<const UnsupportedBackend*>(&e)) return "unsupported_backend";
    if (dynamic_cast<const CapExceeded*>(&e)) return "cap_exceeded";
    if (dynamic_cast<const ParseError*>(&e)) return "parse";
    return "error";
}

// Farkas certificates for every witness, re-derived against the system.
void attach_emptiness(Json& verdict, const SetSystem& S, Level level) {
    if (!S.exact() || !verdict.contains("certificate") || !verdict["certificate"].contains("witnesses")) return;
    for (auto& wj : verdict["certificate"]["witnesses"]) {
        const ShiftWitness w = witness_from_json(wj);
        WitnessCheck c = check_shift_witness(S, w, w.eps, level);
        wj["verified"] = c.ok;
        if (!c.emptiness) continue;
        Json parts = Json::array();
        for (const auto& p : c.emptiness->parts) {
            if (!p.certificate) continue;
            Json rows = Json::array();
            for (const auto& r : p.rows) {
                Json row = to_json(r.normal);
                row.push_back(to_string(r.rhs));
                rows.push_back(row);
            }
            Json mult = Json::array();
            for (const auto& m : p.certificate->multipliers) mult.push_back(to_string(m));
            parts.push_back({{"rows", rows}, {"multipliers", mult}});
        }
        wj["emptiness"] = parts;
    }
}

Json verdict_record(const Verdict& v, const SetSystem& S, std::optional<Level> level) {
    Json j = to_json(v);
    if (level) attach_emptiness(j, S, *level);
    return j;
}

Json separation_record(const SeparationValue& v, const PolyhedralNorm& dn) {
    Json j{{"value", opt_scalar(v.value)}, {"pairs", v.pairs}};
    if (v.value) {
        j["astar"] = to_json(v.astar);
        j["bstar"] = to_json(v.bstar);
        j["verified"] = verify_separation_value(v, dn);
        if (v.face_a) j["face_a"] = to_json(v.face_a->representative);
        if (v.face_b) j["face_b"] = to_json(v.face_b->representative);
    }
    return j;
}

Json rate_record(const RateEstimate& e) {
    Json j{{"property", rate_property_name(e.property)},
           {"alpha_lower", to_string(e.alpha_lower)},
           {"alpha_upper", to_string(e.alpha_upper)},
           {"exact", e.exact},
           {"samples", e.samples.size()}};
    Json mins = Json::array();
    for (const auto& s : e.samples) {
        if (s.ratio != e.alpha_upper) continue;
        mins.push_back({{"input", to_json(s.input)}, {"ratio", to_string(s.ratio)}});
        if (mins.size() == 4) break;
    }
    j["attaining"] = mins;
    return j;
}

void dispatch(Json& r, const Scene& scene, const Query& q, const RunConfig& cfg) {
    const SetSystem S = system_for(scene, q);
    r["regime"] = S.exact() ? "exact" : "oracle";
    const std::string& k = q.kind;
    const ShiftMode mode = flag(q, "single_shift") ? ShiftMode::Single : ShiftMode::Both;
    const std::size_t cap = cfg.face_cap;

    if (k == "extremal") {
        r.update(verdict_record(check_relative_extremal(S, mode, schedule_for(q, cfg)), S, Level::Extremal));
    } else if (k == "locally-extremal") {
        r.update(verdict_record(
            check_relative_locally_extremal(S, arg_scalar(q.args.at("rho")), mode, schedule_for(q, cfg)), S,
            Level::LocallyExtremal));
    } else if (k == "stationary") {
        r.update(verdict_record(check_relative_stationary(S, schedule_for(q, cfg), mode), S, Level::Stationary));
    } else if (k == "approx-stationary") {
        r.update(verdict_record(check_relative_approx_stationary(S, schedule_for(q, cfg), cap), S,
                                Level::ApproxStationary));
    } else if (k == "ep-condition") {
        r.update(verdict_record(check_ep_condition(S, form_from(q.args.at("form")), arg_scalar(q.args.at("eps")), cap),
                                S, std::nullopt));
    } else if (k == "separation-infimum") {
        SeparationValue v = q.args.contains("eps") ? separation_infimum(S, arg_scalar(q.args.at("eps")), cap)
                                                   : separation_limit(S, cap);
        r.update(separation_record(v, S.dual_norm()));
    } else if (k == "zn") {
        const Scalar eps = arg_scalar(q.args.at("eps")), lambda = arg_scalar(q.args.at("lambda"));
        std::optional<Scalar> tau;
        if (flag(q, "zn3")) tau = arg_or(q, "tau", Scalar(0));
        auto z = flag(q, "primed") ? zn_prime(S, eps, lambda, cap) : zn_separation(S, eps, lambda, tau, cap);
        r["found"] = z.has_value();
        if (z) {
            r["zn"] = {{"aprime", to_json(z->aprime)}, {"bprime", to_json(z->bprime)}, {"astar", to_json(z->astar)}};
            if (!z->ahat.empty()) {
                r["zn"]["ahat"] = to_json(z->ahat);
                r["zn"]["bhat"] = to_json(z->bhat);
            }
            if (tau) r["zn3"] = zn3_holds(*z, *tau, S.norm());
        }
    } else if (k == "nonlocal-ep") {
        r.update(verdict_record(nonlocal_ep(S, arg_scalar(q.args.at("eps")), cap), S, Level::Extremal));
    } else if (k == "rates") {
        const Scalar delta = arg_or(q, "delta", Scalar(1, 4));
        const std::size_t grid = q.args.contains("grid") ? q.args.at("grid").get<std::size_t>() : cfg.grid;
        const std::string want = q.args.value("property", std::string("all"));
        Json rates = Json::array();
        for (auto p : kProperties) {
            if (want != "all" && want != rate_property_name(p)) continue;
            const bool onF = p == RateProperty::Covering || p == RateProperty::MetricRegularity;
            MappingView M{S, onF ? MappingView::Which::F : MappingView::Which::S};
            rates.push_back(rate_record(estimate_rate(M, p, delta, grid)));
        }
        r["rates"] = rates;
    } else if (k == "crosscheck") {
        const Scalar delta = arg_or(q, "delta", Scalar(1, 4));
        const std::size_t grid = q.args.contains("grid") ? q.args.at("grid").get<std::size_t>() : cfg.grid;
        CrossCheck c = crosscheck_primal_dual(S, delta, grid);
        r["extremal"] = status_name(c.extremal);
        r["boundary_of_domain"] = c.boundary_of_domain;
        r["approx"] = status_name(c.approx);
        r["metric_regularity"] = to_string(c.metric_regularity);
        r["aubin"] = to_string(c.aubin);
        r["errors"] = c.errors;
        r["warnings"] = c.warnings;
        r["consistent"] = c.consistent();
    } else if (k == "product-boundary") {
        r.update(verdict_record(product_boundary_condition(S), S, std::nullopt));
    } else if (k == "chain") {
        ChainReport c = implication_chain(S, schedule_for(q, cfg));
        static const std::array<Level, 4> levels{Level::Extremal, Level::LocallyExtremal, Level::Stationary,
                                                 Level::ApproxStationary};
        Json vs = Json::array(), lv = Json::array();
        for (std::size_t i = 0; i < 4; ++i) {
            vs.push_back(status_name(c.verdicts[i].status));
            Json l = verdict_record(c.verdicts[i], S, levels[i]);
            l["level"] = level_name(levels[i]);
            lv.push_back(l);
        }
        r["verdicts"] = vs;
        r["levels"] = lv;
        r["violations"] = c.violations;
        r["convex"] = c.convex;
    } else if (k == "distance") {
        PairDistance d = dist_region_region(S.A(), S.B(), S.norm());
        r["value"] = to_string(d.value);
        r["a"] = to_json(d.a);
        r["b"] = to_json(d.b);
        r["exact"] = d.exact;
        if (!d.exact) r["resolution"] = to_string(d.resolution);
        if (q.args.contains("eps")) {
            const Scalar eps = arg_scalar(q.args.at("eps"));
            auto w = witness_from_distance(S, eps);
            r["witness"] = w ? to_json(*w) : Json();
            if (w) r["witness_verified"] = verify_shift_witness(S, *w, w->eps, Level::Extremal);
        }
    }
}

std::string text_value(const Json& j) {
    if (j.is_string()) return j.get<std::string>();
    return j.dump();
}

void text_vector_line(std::ostringstream& out, const char* label, const Json& j) {
    if (!j.is_array()) return;
    out << label << "(";
    for (std::size_t i = 0; i < j.size(); ++i) out << (i ? ", " : "") << text_value(j[i]);
    out << ")";
}

}  // namespace

const std::vector<std::string>& query_kinds() {
    static const std::vector<std::string> k{"extremal",   "locally-extremal", "stationary",       "approx-stationary",
                                            "ep-condition", "separation-infimum", "zn",           "nonlocal-ep",
                                            "rates",      "crosscheck",       "product-boundary", "chain",
                                            "distance"};
    return k;
}

void validate_query(const Query& q, std::size_t dim) {
    auto it = schemas().find(q.kind);
    if (it == schemas().end()) throw PreconditionError("kind: unknown query kind '" + q.kind + "'");
    if (!q.args.is_object()) throw PreconditionError("args: expected an object");
    for (const auto& [key, v] : q.args.items()) {
        auto s = it->second.find(key);
        if (s == it->second.end()) throw PreconditionError(key + ": not an argument of " + q.kind);
        check_arg(key, v, s->second.first);
    }
    for (const auto& [key, spec] : it->second) {
        if (spec.second && !q.args.contains(key)) throw PreconditionError(key + ": required by " + q.kind);
    }
    if (flag(q, "zn3") && !q.args.contains("tau")) throw PreconditionError("tau: required with zn3");
    if (q.sets.size() < 2 || q.sets.size() != q.points.size()) {
        throw PreconditionError("sets: one point per set, at least two sets");
    }
    (void)dim;
}

std::vector<Scalar> parse_schedule(std::string_view text) {
    std::vector<Scalar> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        if (comma == std::string_view::npos) comma = text.size();
        std::string_view item = text.substr(pos, comma - pos);
        while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
        while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
        Scalar s;
        try {
            s = parse_scalar(item);
        } catch (const std::invalid_argument& e) {
            throw PreconditionError(std::string("eps schedule: ") + e.what());
        }
        if (s <= 0) throw PreconditionError("eps schedule: entries must be positive");
        out.push_back(s);
        pos = comma + 1;
    }
    return out;
}

SetSystem system_for(const Scene& scene, const Query& q) {
    std::vector<Region> regions;
    std::vector<Vector> points;
    for (std::size_t i = 0; i < q.sets.size(); ++i) {
        auto r = scene.regions.find(q.sets[i]);
        auto p = scene.points.find(q.points[i]);
        if (r == scene.regions.end()) throw PreconditionError("unknown region '" + q.sets[i] + "'");
        if (p == scene.points.end()) throw PreconditionError("unknown point '" + q.points[i] + "'");
        regions.push_back(r->second);
        points.push_back(p->second);
    }
    if (regions.size() > 2) return reduce_n_sets(regions, points, scene.norm);
    if (scene.dual_norm) return SetSystem(regions[0], regions[1], points[0], points[1], scene.norm, *scene.dual_norm);
    return SetSystem(regions[0], regions[1], points[0], points[1], scene.norm);
}

Json run_query(const Scene& scene, const Query& q, const RunConfig& cfg) {
    validate_query(q, scene.dim);
    Json r{{"kind", q.kind}, {"sets", q.sets}, {"points", q.points}, {"args", q.args}};
    const auto t0 = std::chrono::steady_clock::now();
    try {
        dispatch(r, scene, q, cfg);
    } catch (const SoundnessError&) {
        throw;
    } catch (const Error& e) {
        r["error"] = {{"type", error_type(e)}, {"message", e.what()}};
    }
    if (cfg.timings) {
        r["timing_us"] =
            std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - t0).count();
    }
    return r;
}

Json run_queries(const Scene& scene, const std::vector<Query>& queries, const RunConfig& cfg) {
    Json config{{"face_cap", cfg.face_cap}, {"grid", cfg.grid}, {"seed", cfg.seed}};
    if (cfg.schedule) {
        Json s = Json::array();
        for (const auto& e : *cfg.schedule) s.push_back(to_string(e));
        config["schedule"] = s;
    }
    Json results = Json::array();
    for (std::size_t i = 0; i < queries.size(); ++i) {
        Json r = run_query(scene, queries[i], cfg);
        r["index"] = i;
        results.push_back(std::move(r));
    }
    Json rep{{"schema", "v1"},
             {"scene", scene.name},
             {"regime", scene.exact() ? "exact" : "oracle"},
             {"config", config},
             {"results", results}};
    if (!scene.stand_in.empty()) rep["stand_in"] = scene.stand_in;
    return rep;
}

Json run_scene(const Scene& scene, const RunConfig& cfg, const std::vector<std::string>& keep) {
    std::vector<Query> qs;
    for (const auto& q : scene.queries) {
        if (keep.empty() || std::find(keep.begin(), keep.end(), q.kind) != keep.end()) qs.push_back(q);
    }
    return run_queries(scene, qs, cfg);
}

std::string emit_report(const Json& report, ReportFormat format) {
    if (format == ReportFormat::Json) return report.dump(2) + "\n";
    std::ostringstream out;
    out << "scene " << report.value("scene", std::string()) << " [" << report.value("regime", std::string()) << "]\n";
    if (report.contains("stand_in")) out << "  stand-in: " << report["stand_in"].get<std::string>() << "\n";
    if (!report.contains("results")) return out.str();
    for (const auto& r : report["results"]) {
        out << "[" << r.value("index", 0) << "] " << r.value("kind", std::string());
        if (r.contains("error")) {
            out << ": error (" << r["error"]["type"].get<std::string>() << ") " << r["error"]["message"].get<std::string>()
                << "\n";
            continue;
        }
        if (r.contains("verdict")) out << ": " << r["verdict"].get<std::string>();
        if (r.contains("leaning")) out << " (leaning " << (r["leaning"].get<bool>() ? "proved" : "refuted") << ")";
        if (r.contains("resolution")) out << " at resolution " << text_value(r["resolution"]);
        if (r.contains("verdicts")) {
            out << ":";
            for (const auto& v : r["verdicts"]) out << " " << v.get<std::string>();
        }
        if (r.contains("value")) out << " value " << text_value(r["value"]);
        if (r.contains("found")) out << (r["found"].get<bool>() ? ": found" : ": not found");
        if (r.contains("consistent")) {
            out << ": extremal " << r["extremal"].get<std::string>() << ", (a, b) "
                << (r["boundary_of_domain"].get<bool>() ? "on" : "off") << " bd dom S, approx "
                << r["approx"].get<std::string>() << ", rates " << text_value(r["metric_regularity"]) << " / "
                << text_value(r["aubin"]);
        }
        out << "\n";
        if (r.contains("certificate")) {
            const Json& c = r["certificate"];
            if (c.contains("witnesses")) {
                for (const auto& w : c["witnesses"]) {
                    out << "    shift eps " << text_value(w["eps"]) << ": ";
                    text_vector_line(out, "u = ", w["u"]);
                    text_vector_line(out, ", v = ", w["v"]);
                    out << ", rho " << text_value(w["rho"]) << "\n";
                }
            }
            if (c.contains("dual_pairs")) {
                for (const auto& d : c["dual_pairs"]) {
                    out << "    dual " << d["form"].get<std::string>() << " eps " << text_value(d["eps"]) << ": ";
                    text_vector_line(out, "a* = ", d["astar"]);
                    text_vector_line(out, " at ", d["aprime"]);
                    text_vector_line(out, ", b* = ", d["bstar"]);
                    text_vector_line(out, " at ", d["bprime"]);
                    out << "\n";
                }
            }
            if (c.contains("ray")) {
                text_vector_line(out, "    ray ", c["ray"]["direction"]);
                out << " up to t0 = " << text_value(c["ray"]["t0"]) << "\n";
            }
            if (c.contains("cover")) {
                out << "    cover by " << c["cover"]["cones"].size() << " cones on radius "
                    << text_value(c["cover"]["radius"]) << "\n";
            }
            if (c.contains("separation_value")) out << "    separation value " << text_value(c["separation_value"]) << "\n";
        }
        if (r.contains("rates")) {
            for (const auto& e : r["rates"]) {
                out << "    " << e["property"].get<std::string>() << ": alpha in [" << text_value(e["alpha_lower"])
                    << ", " << text_value(e["alpha_upper"]) << "]" << (e["exact"].get<bool>() ? " exact" : "") << " over "
                    << e["samples"].get<std::size_t>() << " samples\n";
            }
        }
        if (r.contains("witness") && !r["witness"].is_null()) {
            text_vector_line(out, "    witness u = ", r["witness"]["u"]);
            text_vector_line(out, ", v = ", r["witness"]["v"]);
            out << (r.value("witness_verified", false) ? " (verified)" : " (not verified)") << "\n";
        }
        for (const char* key : {"violations", "errors", "warnings", "notes"}) {
            if (!r.contains(key)) continue;
            for (const auto& n : r[key]) out << "    " << key << ": " << n.get<std::string>() << "\n";
        }
        if (r.contains("timing_us")) out << "    time " << r["timing_us"].get<long>() << " us\n";
    }
    return out.str();
}

Json parse_report(std::string_view text) { return Json::parse(text); }

bool report_has_errors(const Json& report) {
    if (!report.contains("results")) return false;
    for (const auto& r : report["results"]) {
        if (r.contains("error")) return true;
    }
    return false;
}

std::vector<std::string> compare_golden(const Json& report, const Json& golden) {
    std::vector<std::string> out;
    if (golden.value("scene", std::string()) != report.value("scene", std::string())) {
        out.push_back("scene name differs");
    }
    const Json& results = report["results"];
    for (const auto& e : golden.at("expect")) {
        const std::size_t i = e.at("query").get<std::size_t>();
        if (i >= results.size()) {
            out.push_back("query " + std::to_string(i) + " missing");
            continue;
        }
        for (const auto& [key, want] : e.items()) {
            if (key == "query" || key == "why") continue;
            if (!results[i].contains(key)) {
                out.push_back("query " + std::to_string(i) + ": no field '" + key + "'");
            } else if (results[i][key] != want) {
                out.push_back("query " + std::to_string(i) + ": " + key + " = " + results[i][key].dump() +
                              ", expected " + want.dump());
            }
        }
    }
    return out;
}

Json to_json(const Vector& v) {
    Json j = Json::array();
    for (const auto& x : v) j.push_back(to_string(x));
    return j;
}

Json to_json(const ShiftWitness& w) {
    Json j{{"u", to_json(w.u)}, {"v", to_json(w.v)}, {"rho", opt_scalar(w.rho)}, {"eps", to_string(w.eps)}};
    if (w.aprime) j["aprime"] = to_json(*w.aprime);
    if (w.bprime) j["bprime"] = to_json(*w.bprime);
    return j;
}

Json to_json(const DualPair& d) {
    return {{"aprime", to_json(d.aprime)}, {"bprime", to_json(d.bprime)}, {"astar", to_json(d.astar)},
            {"bstar", to_json(d.bstar)},   {"eps", to_string(d.eps)},      {"form", form_name(d.form)}};
}

Json to_json(const Verdict& v) {
    Json j{{"verdict", status_name(v.status)}};
    if (v.leaning) j["leaning"] = *v.leaning;
    if (v.resolution) j["resolution"] = to_string(*v.resolution);
    if (!v.notes.empty()) j["notes"] = v.notes;
    const Certificate& c = v.certificate;
    Json cj = Json::object();
    if (!c.witnesses.empty()) {
        cj["witnesses"] = Json::array();
        for (const auto& w : c.witnesses) cj["witnesses"].push_back(to_json(w));
    }
    if (!c.dual_pairs.empty()) {
        cj["dual_pairs"] = Json::array();
        for (const auto& d : c.dual_pairs) cj["dual_pairs"].push_back(to_json(d));
    }
    if (c.ray) cj["ray"] = {{"direction", to_json(c.ray->direction)}, {"t0", to_string(c.ray->t0)}};
    if (c.cover) {
        Json cones = Json::array();
        for (const auto& cone : c.cover->cones) {
            Json rows = Json::array();
            for (const auto& h : cone) rows.push_back(to_json(h));
            cones.push_back(rows);
        }
        cj["cover"] = {{"cones", cones}, {"radius", to_string(c.cover->radius)}};
    }
    if (c.separation_value) cj["separation_value"] = to_string(*c.separation_value);
    if (c.interior_radius) cj["interior_radius"] = to_string(*c.interior_radius);
    if (!cj.empty()) j["certificate"] = cj;
    return j;
}

Scalar scalar_from_json(const Json& j) {
    try {
        return arg_scalar(j);
    } catch (const std::invalid_argument& e) {
        throw PreconditionError(e.what());
    }
}

Vector vector_from_json(const Json& j) {
    Vector v;
    for (const auto& e : j) v.push_back(scalar_from_json(e));
    return v;
}

ShiftWitness witness_from_json(const Json& j) {
    ShiftWitness w;
    w.u = vector_from_json(j.at("u"));
    w.v = vector_from_json(j.at("v"));
    if (j.at("rho") != "inf") w.rho = scalar_from_json(j.at("rho"));
    if (j.contains("aprime")) w.aprime = vector_from_json(j.at("aprime"));
    if (j.contains("bprime")) w.bprime = vector_from_json(j.at("bprime"));
    w.eps = scalar_from_json(j.at("eps"));
    return w;
}

DualPair dual_pair_from_json(const Json& j) {
    DualPair d;
    d.aprime = vector_from_json(j.at("aprime"));
    d.bprime = vector_from_json(j.at("bprime"));
    d.astar = vector_from_json(j.at("astar"));
    d.bstar = vector_from_json(j.at("bstar"));
    d.eps = scalar_from_json(j.at("eps"));
    d.form = form_from(j.at("form").get<std::string>());
    return d;
}

}  // namespace extremal
