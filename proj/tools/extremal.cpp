// extremal: batch front end for scenes and the shipped corpus.
//
// Exit codes: 0 every query resolved, 2 parse/validation error or a query
// that could not be resolved (also a corpus golden mismatch), 3 soundness
// error.

#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "extremal/cli_io.hpp"
#include "extremal/errors.hpp"

#ifndef EXTREMAL_CORPUS_DIR
#define EXTREMAL_CORPUS_DIR "corpus"
#endif

namespace fs = std::filesystem;
using namespace extremal;

namespace {

struct Options {
    std::string scene;
    std::string format = "text";
    std::string schedule;
    std::size_t face_cap = 10000;
    std::size_t grid = 32;
    std::uint64_t seed = 0;
    bool timings = false;
    std::vector<std::string> kinds;
    std::string out;
    std::string dir = EXTREMAL_CORPUS_DIR;
};

RunConfig config(const Options& o) {
    RunConfig c;
    if (!o.schedule.empty()) c.schedule = parse_schedule(o.schedule);
    c.face_cap = o.face_cap;
    c.grid = o.grid;
    c.seed = o.seed;
    c.timings = o.timings;
    return c;
}

ReportFormat format(const Options& o) { return o.format == "json" ? ReportFormat::Json : ReportFormat::Text; }

Scene need_scene(const Options& o) {
    if (o.scene.empty()) throw PreconditionError("--scene is required");
    return load_scene(o.scene);
}

int finish(const Json& report, const Options& o) {
    std::cout << emit_report(report, format(o));
    return report_has_errors(report) ? 2 : 0;
}

int cmd_check(const Options& o) { return finish(run_scene(need_scene(o), config(o), o.kinds), o); }

// Runs the scene's queries of the given kinds, or `fallback` when the scene
// has none of them.
int cmd_subset(const Options& o, const std::vector<std::string>& kinds, const std::vector<Query>& fallback) {
    const Scene s = need_scene(o);
    std::vector<Query> qs;
    for (const auto& q : s.queries) {
        if (std::find(kinds.begin(), kinds.end(), q.kind) != kinds.end()) qs.push_back(q);
    }
    if (qs.empty()) qs = fallback;
    return finish(run_queries(s, qs, config(o)), o);
}

int cmd_separate(const Options& o) {
    RunConfig c = config(o);
    const Scalar eps = c.schedule ? c.schedule->back() : Scalar(1, 4);
    Query lim{"separation-infimum"};
    Query ep{"ep-condition"};
    ep.args = {{"form", "II"}, {"eps", to_string(eps)}};
    return cmd_subset(o, {"ep-condition", "separation-infimum", "zn", "nonlocal-ep"}, {lim, ep});
}

int cmd_rates(const Options& o) {
    return cmd_subset(o, {"rates", "crosscheck", "product-boundary"}, {Query{"rates"}, Query{"crosscheck"}});
}

int cmd_plot(const Options& o) {
    const Scene s = need_scene(o);
    const Json report = run_scene(s, config(o), o.kinds);
    const std::string svg = emit_svg(s, report);
    if (o.out.empty()) {
        std::cout << svg;
    } else {
        std::ofstream f(o.out, std::ios::binary);
        f << svg;
        if (!f) throw PreconditionError("cannot write " + o.out);
    }
    return report_has_errors(report) ? 2 : 0;
}

int cmd_corpus(const Options& o) {
    std::vector<fs::path> scenes;
    for (const auto& e : fs::directory_iterator(o.dir)) {
        const std::string n = e.path().filename().string();
        if (n.size() > 11 && n.substr(n.size() - 11) == ".scene.json") scenes.push_back(e.path());
    }
    std::sort(scenes.begin(), scenes.end());
    const RunConfig c = config(o);
    int code = 0;
    Json all = Json::array();
    for (const auto& p : scenes) {
        const Scene s = load_scene(p);
        const Json report = run_scene(s, c);
        std::string base = p.string();
        base.resize(base.size() - 11);
        const fs::path golden = base + ".golden.json";
        std::vector<std::string> bad;
        if (fs::exists(golden)) {
            std::ifstream in(golden, std::ios::binary);
            bad = compare_golden(report, Json::parse(in));
        } else {
            bad.push_back("no golden file");
        }
        if (report_has_errors(report)) bad.push_back("query error");
        if (!bad.empty()) code = 2;
        if (format(o) == ReportFormat::Json) {
            all.push_back(report);
            continue;
        }
        std::cout << (bad.empty() ? "PASS " : "FAIL ") << s.name << "\n";
        for (const auto& b : bad) std::cout << "    " << b << "\n";
    }
    if (format(o) == ReportFormat::Json) std::cout << all.dump(2) << "\n";
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact checks of extremality, stationarity and dual separation for pairs of polyhedral sets"};
    app.require_subcommand(1);
    Options o;
    app.add_option("--scene", o.scene, "scene file (.scene.json)");
    app.add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--eps-schedule", o.schedule, "comma separated rationals, e.g. 1/2,1/4,1/8");
    app.add_option("--face-cap", o.face_cap, "bound on enumerated face pairs");
    app.add_option("--grid", o.grid, "grid size for rate sampling");
    app.add_option("--seed", o.seed, "recorded in the report; all runs are deterministic");
    app.add_flag("--timings", o.timings, "add per-query timings (reports are then not byte-stable)");

    auto* check = app.add_subcommand("check", "run the queries of a scene");
    auto* separate = app.add_subcommand("separate", "dual separation queries");
    auto* rates = app.add_subcommand("rates", "regularity rates and mapping cross-checks");
    auto* plot = app.add_subcommand("plot", "SVG of a planar scene with its witnesses");
    auto* corpus = app.add_subcommand("corpus", "run the corpus against its golden files");
    check->add_option("--kind", o.kinds, "only queries of these kinds");
    plot->add_option("--kind", o.kinds, "only queries of these kinds");
    plot->add_option("--out", o.out, "output file (default stdout)");
    corpus->add_option("--dir", o.dir, "corpus directory");
    for (auto* sub : {check, separate, rates, plot, corpus}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*check) return cmd_check(o);
        if (*separate) return cmd_separate(o);
        if (*rates) return cmd_rates(o);
        if (*plot) return cmd_plot(o);
        if (*corpus) return cmd_corpus(o);
    } catch (const SoundnessError& e) {
        std::cerr << "soundness error: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
