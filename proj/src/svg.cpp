#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "extremal/cli_io.hpp"
#include "extremal/errors.hpp"

namespace extremal {

namespace {

constexpr double kWidth = 800;
constexpr double kHeight = 600;
constexpr double kArrow = 36;  // drawn length of witness and dual arrows, px

const char* kFills[] = {"#4c78a8", "#e45756", "#54a24b", "#b279a2", "#f58518", "#72b7b2"};

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", x);
    return buf;
}

struct Frame {
    double x0, y0, x1, y1, s, ox, oy;

    // World to pixel; y grows upward in the world.
    std::pair<double, double> px(double x, double y) const { return {ox + (x - x0) * s, oy + (y1 - y) * s}; }
};

Frame frame_for(const std::array<Scalar, 4>& w) {
    Frame f{w[0].get_d(), w[1].get_d(), w[2].get_d(), w[3].get_d(), 0, 0, 0};
    f.s = std::min(kWidth / (f.x1 - f.x0), kHeight / (f.y1 - f.y0));
    f.ox = (kWidth - (f.x1 - f.x0) * f.s) / 2;
    f.oy = (kHeight - (f.y1 - f.y0) * f.s) / 2;
    return f;
}

std::array<Scalar, 4> default_window(const Scene& scene) {
    Scalar x0(-1), y0(-1), x1(1), y1(1);
    for (const auto& [name, p] : scene.points) {
        x0 = std::min<Scalar>(x0, p[0] - 2);
        y0 = std::min<Scalar>(y0, p[1] - 2);
        x1 = std::max<Scalar>(x1, p[0] + 2);
        y1 = std::max<Scalar>(y1, p[1] + 2);
    }
    return {x0, y0, x1, y1};
}

// Vertices of a planar polyhedron cut to the window, in angular order.
std::vector<Vector> clip(const Polyhedron& P, const std::array<Scalar, 4>& w) {
    std::vector<Row> rows = P.rows();
    rows.push_back({{-1, 0}, -w[0]});
    rows.push_back({{0, -1}, -w[1]});
    rows.push_back({{1, 0}, w[2]});
    rows.push_back({{0, 1}, w[3]});
    std::vector<Vector> pts;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = i + 1; j < rows.size(); ++j) {
            const Vector& a = rows[i].normal;
            const Vector& b = rows[j].normal;
            Scalar det = a[0] * b[1] - a[1] * b[0];
            if (det == 0) continue;
            Vector x{(rows[i].rhs * b[1] - a[1] * rows[j].rhs) / det, (a[0] * rows[j].rhs - rows[i].rhs * b[0]) / det};
            bool inside = std::all_of(rows.begin(), rows.end(), [&](const Row& r) { return dot(r.normal, x) <= r.rhs; });
            if (inside && std::find(pts.begin(), pts.end(), x) == pts.end()) pts.push_back(x);
        }
    }
    if (pts.size() < 3) return pts;
    double cx = 0, cy = 0;
    for (const auto& p : pts) {
        cx += p[0].get_d();
        cy += p[1].get_d();
    }
    cx /= pts.size();
    cy /= pts.size();
    std::sort(pts.begin(), pts.end(), [&](const Vector& a, const Vector& b) {
        return std::atan2(a[1].get_d() - cy, a[0].get_d() - cx) < std::atan2(b[1].get_d() - cy, b[0].get_d() - cx);
    });
    return pts;
}

void arrow(std::ostringstream& out, const Frame& f, const Vector& base, const Vector& dir, const char* cls) {
    const double dx = dir[0].get_d(), dy = dir[1].get_d();
    const double len = std::hypot(dx, dy);
    if (len == 0) return;
    auto [x, y] = f.px(base[0].get_d(), base[1].get_d());
    out << "  <line class=\"" << cls << "\" x1=\"" << num(x) << "\" y1=\"" << num(y) << "\" x2=\""
        << num(x + kArrow * dx / len) << "\" y2=\"" << num(y - kArrow * dy / len) << "\" marker-end=\"url(#head)\"/>\n";
}

}  // namespace

std::string emit_svg(const Scene& scene, const Json& report, const std::optional<std::array<Scalar, 4>>& window) {
    if (scene.dim != 2) throw DimensionError("emit_svg: plots are planar, scene has dimension " + std::to_string(scene.dim));
    const std::array<Scalar, 4> w = window ? *window : scene.window ? *scene.window : default_window(scene);
    const Frame f = frame_for(w);
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"600\" viewBox=\"0 0 800 600\">\n";
    out << "  <desc>" << scene.name << "; world window [" << to_string(w[0]) << ", " << to_string(w[2]) << "] x ["
        << to_string(w[1]) << ", " << to_string(w[3]) << "] mapped with scale " << num(f.s) << " px per unit</desc>\n";
    out << "  <defs><marker id=\"head\" markerWidth=\"8\" markerHeight=\"8\" refX=\"7\" refY=\"4\" orient=\"auto\">"
           "<path d=\"M0,0 L8,4 L0,8 z\"/></marker></defs>\n";
    out << "  <style>.shift{stroke:#222;stroke-width:2}.dual{stroke:#8a2be2;stroke-width:2;stroke-dasharray:4 2}"
           "text{font:12px sans-serif}</style>\n";
    out << "  <rect width=\"800\" height=\"600\" fill=\"white\"/>\n";

    std::size_t k = 0;
    for (const auto& [name, R] : scene.regions) {
        const char* fill = kFills[k++ % (sizeof kFills / sizeof *kFills)];
        out << "  <g id=\"region-" << name << "\" fill=\"" << fill << "\" fill-opacity=\"0.35\" stroke=\"" << fill
            << "\">\n";
        if (R.is_exact()) {
            for (const auto& P : R.pieces()) {
                auto pts = clip(P, w);
                if (pts.size() < 3) continue;
                out << "    <polygon points=\"";
                for (std::size_t i = 0; i < pts.size(); ++i) {
                    auto [x, y] = f.px(pts[i][0].get_d(), pts[i][1].get_d());
                    out << (i ? " " : "") << num(x) << "," << num(y);
                }
                out << "\"/>\n";
            }
        } else {
            const double cell = std::max(1.0, R.oracle().step.get_d() * f.s);
            for (const auto& g : R.grid()) {
                if (g[0] < w[0] || g[0] > w[2] || g[1] < w[1] || g[1] > w[3] || !R.contains(g)) continue;
                auto [x, y] = f.px(g[0].get_d(), g[1].get_d());
                out << "    <rect x=\"" << num(x - cell / 2) << "\" y=\"" << num(y - cell / 2) << "\" width=\""
                    << num(cell) << "\" height=\"" << num(cell) << "\" stroke=\"none\"/>\n";
            }
        }
        out << "  </g>\n";
    }

    for (const auto& [name, p] : scene.points) {
        auto [x, y] = f.px(p[0].get_d(), p[1].get_d());
        out << "  <circle cx=\"" << num(x) << "\" cy=\"" << num(y) << "\" r=\"4\"/>\n";
        out << "  <text x=\"" << num(x + 6) << "\" y=\"" << num(y - 6) << "\">" << name << "</text>\n";
    }

    // Shift arrows at the reference points (u moves A, v moves B) and dual
    // vectors at their base points. Arrows have a fixed drawn length.
    if (report.contains("results")) {
        for (const auto& r : report["results"]) {
            if (r.contains("error") || r.value("regime", std::string()) != "exact") continue;
            std::vector<const Json*> certs;
            if (r.contains("certificate")) certs.push_back(&r["certificate"]);
            if (r.contains("levels")) {
                for (const auto& l : r["levels"]) {
                    if (l.contains("certificate")) certs.push_back(&l["certificate"]);
                }
            }
            if (r["points"].size() != 2) continue;
            const auto& pa = scene.points.at(r["points"][0].get<std::string>());
            const auto& pb = scene.points.at(r["points"][1].get<std::string>());
            for (const Json* c : certs) {
                if (c->contains("witnesses")) {
                    const ShiftWitness sw = witness_from_json((*c)["witnesses"].front());
                    arrow(out, f, sw.aprime ? *sw.aprime : pa, neg(sw.u), "shift");
                    arrow(out, f, sw.bprime ? *sw.bprime : pb, neg(sw.v), "shift");
                }
                if (c->contains("dual_pairs")) {
                    const DualPair d = dual_pair_from_json((*c)["dual_pairs"].front());
                    arrow(out, f, d.aprime, d.astar, "dual");
                    arrow(out, f, d.bprime, d.bstar, "dual");
                }
            }
        }
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace extremal
