#include <cmath>
#include <fstream>
#include <sstream>

#include "extremal/cli_io.hpp"
#include "extremal/errors.hpp"

namespace extremal {

namespace {

// Raised while walking the parsed document; converted to a ParseError
// once the pointer is mapped back to a source position.
struct SceneIssue {
    std::string pointer;
    std::string message;
};

// Iterator over the source text that publishes how far the lexer has read.
struct TrackedIter {
    using iterator_category = std::forward_iterator_tag;
    using value_type = char;
    using difference_type = std::ptrdiff_t;
    using pointer = const char*;
    using reference = const char&;

    const char* p = nullptr;
    const char** cursor = nullptr;

    reference operator*() const { return *p; }
    TrackedIter& operator++() {
        ++p;
        *cursor = p;
        return *this;
    }
    TrackedIter operator++(int) {
        TrackedIter t = *this;
        ++*this;
        return t;
    }
    bool operator==(const TrackedIter& o) const { return p == o.p; }
    bool operator!=(const TrackedIter& o) const { return p != o.p; }
};

std::string escape_pointer(const std::string& key) {
    std::string out;
    for (char c : key) {
        if (c == '~') out += "~0";
        else if (c == '/') out += "~1";
        else out += c;
    }
    return out;
}

// Builds the DOM through the stock handler and records where each value
// starts, keyed by JSON pointer.
class PositionSax {
public:
    PositionSax(Json& root, std::string_view text, const char** cursor)
        : dom_(root, true), text_(text), cursor_(cursor) {}

    std::map<std::string, std::size_t> positions;

    bool null() { return scalar([&] { return dom_.null(); }); }
    bool boolean(bool v) { return scalar([&] { return dom_.boolean(v); }); }
    bool number_integer(Json::number_integer_t v) { return scalar([&] { return dom_.number_integer(v); }); }
    bool number_unsigned(Json::number_unsigned_t v) { return scalar([&] { return dom_.number_unsigned(v); }); }
    bool number_float(Json::number_float_t, const std::string&) {
        const std::size_t at = start();
        throw_at(at, "decimal literal; write rationals as \"p/q\"");
        return false;
    }
    bool string(std::string& s) { return scalar([&] { return dom_.string(s); }); }
    bool binary(Json::binary_t& b) { return scalar([&] { return dom_.binary(b); }); }
    bool start_object(std::size_t n) {
        record();
        frames_.push_back({false, 0, {}});
        return dom_.start_object(n);
    }
    bool key(std::string& k) {
        frames_.back().key = k;
        last_ = offset();
        return dom_.key(k);
    }
    bool end_object() {
        frames_.pop_back();
        finish();
        return dom_.end_object();
    }
    bool start_array(std::size_t n) {
        record();
        frames_.push_back({true, 0, {}});
        return dom_.start_array(n);
    }
    bool end_array() {
        frames_.pop_back();
        finish();
        return dom_.end_array();
    }
    bool parse_error(std::size_t pos, const std::string& token, const nlohmann::detail::exception& ex) {
        std::string msg = ex.what();
        auto colon = msg.rfind(": ");
        if (colon != std::string::npos) msg = msg.substr(colon + 2);
        throw_at(pos >= token.size() ? pos - token.size() : 0, msg, token);
        return false;
    }

    [[noreturn]] void throw_at(std::size_t at, const std::string& msg, std::string token = {}) const {
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i < at && i < text_.size(); ++i) {
            if (text_[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        if (token.empty()) token = token_at(at);
        throw ParseError(msg, line, col, token);
    }

    std::string token_at(std::size_t at) const {
        std::size_t end = at;
        while (end < text_.size() && end - at < 40 && text_[end] != ',' && text_[end] != '\n' &&
               text_[end] != '}' && text_[end] != ']')
            ++end;
        return std::string(text_.substr(std::min(at, text_.size()), end - std::min(at, end)));
    }

private:
    struct Frame {
        bool array;
        std::size_t index;
        std::string key;
    };

    std::size_t offset() const { return static_cast<std::size_t>(*cursor_ - text_.data()); }

    std::size_t start() const {
        std::size_t i = last_;
        while (i < text_.size() && (std::isspace(static_cast<unsigned char>(text_[i])) || text_[i] == ',' ||
                                    text_[i] == ':'))
            ++i;
        return i;
    }

    std::string path() const {
        std::string p;
        for (const auto& f : frames_) p += "/" + (f.array ? std::to_string(f.index) : escape_pointer(f.key));
        return p;
    }

    void record() {
        positions[path()] = start();
        last_ = offset();
    }

    void finish() {
        last_ = offset();
        if (!frames_.empty() && frames_.back().array) ++frames_.back().index;
    }

    template <typename F>
    bool scalar(F f) {
        record();
        bool ok = f();
        finish();
        return ok;
    }

    nlohmann::detail::json_sax_dom_parser<Json> dom_;
    std::string_view text_;
    const char** cursor_;
    std::vector<Frame> frames_;
    std::size_t last_ = 0;
};

[[noreturn]] void issue(const std::string& pointer, const std::string& msg) { throw SceneIssue{pointer, msg}; }

const Json& field(const Json& j, const std::string& ptr, const char* key) {
    if (!j.is_object() || !j.contains(key)) issue(ptr, std::string("missing field '") + key + "'");
    return j.at(key);
}

Scalar scalar_at(const Json& j, const std::string& ptr) {
    if (j.is_number_integer()) return Scalar(j.dump());
    if (!j.is_string()) issue(ptr, "expected a rational literal");
    try {
        return parse_scalar(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
        issue(ptr, e.what());
    }
}

Vector vector_at(const Json& j, const std::string& ptr, std::size_t dim) {
    if (!j.is_array()) issue(ptr, "expected a vector");
    if (j.size() != dim) issue(ptr, "dimension mismatch: expected " + std::to_string(dim) + " entries");
    Vector v;
    for (std::size_t i = 0; i < j.size(); ++i) v.push_back(scalar_at(j[i], ptr + "/" + std::to_string(i)));
    return v;
}

std::string string_at(const Json& j, const std::string& ptr) {
    if (!j.is_string()) issue(ptr, "expected a string");
    return j.get<std::string>();
}

PolyhedralNorm norm_at(const Json& j, const std::string& ptr, std::size_t dim) {
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s == "max") return PolyhedralNorm::max_norm();
        if (s == "sum") return PolyhedralNorm::sum_norm();
        issue(ptr, "unknown norm '" + s + "'");
    }
    const Json& facets = field(j, ptr, "polytope");
    if (!facets.is_array()) issue(ptr + "/polytope", "expected a list of facets");
    std::vector<Facet> out;
    for (std::size_t i = 0; i < facets.size(); ++i) {
        const std::string p = ptr + "/polytope/" + std::to_string(i);
        out.push_back({vector_at(field(facets[i], p, "normal"), p + "/normal", dim),
                       scalar_at(field(facets[i], p, "rhs"), p + "/rhs")});
    }
    try {
        return PolyhedralNorm::polytope(std::move(out));
    } catch (const Error& e) {
        issue(ptr, e.what());
    }
}

bool exp_below(const Scalar& x1, const Scalar& x2) {
    // x2 >= e^{-x1}; equality is only possible at x1 = 0.
    if (x1 == 0) return x2 >= 1;
    if (x2 <= 0) return false;
    return x2.get_d() >= std::exp(-x1.get_d());
}

Region oracle_at(const Json& j, const std::string& ptr, std::size_t dim) {
    if (dim != 2) issue(ptr, "oracle families are planar");
    OracleSpec spec;
    spec.name = string_at(field(j, ptr, "family"), ptr + "/family");
    if (spec.name == "parabola") {
        spec.member = [](const Vector& x) { return x[0] * x[0] <= x[1]; };
    } else if (spec.name == "exponential") {
        spec.member = [](const Vector& x) { return exp_below(x[0], x[1]); };
    } else if (spec.name == "exp_strip") {
        spec.member = [](const Vector& x) { return x[1] <= 1 && exp_below(x[0], x[1]); };
    } else {
        issue(ptr + "/family", "unknown oracle family '" + spec.name + "'");
    }
    spec.lo = vector_at(field(j, ptr, "lo"), ptr + "/lo", dim);
    spec.hi = vector_at(field(j, ptr, "hi"), ptr + "/hi", dim);
    spec.step = scalar_at(field(j, ptr, "step"), ptr + "/step");
    if (spec.step <= 0) issue(ptr + "/step", "step must be positive");
    for (std::size_t i = 0; i < dim; ++i) {
        if (spec.hi[i] < spec.lo[i]) issue(ptr + "/hi", "empty bounding box");
    }
    return Region::oracle(std::move(spec));
}

Region region_at(const Json& j, const std::string& ptr, std::size_t dim) {
    if (!j.is_object()) issue(ptr, "expected a region object");
    Region r;
    if (j.contains("oracle")) {
        r = oracle_at(j.at("oracle"), ptr + "/oracle", dim);
    } else {
        const Json& pieces = field(j, ptr, "pieces");
        if (!pieces.is_array() || pieces.empty()) issue(ptr + "/pieces", "expected a nonempty list of pieces");
        std::vector<Polyhedron> ps;
        for (std::size_t i = 0; i < pieces.size(); ++i) {
            const std::string pp = ptr + "/pieces/" + std::to_string(i);
            if (!pieces[i].is_array()) issue(pp, "expected a list of rows");
            std::vector<Row> rows;
            for (std::size_t k = 0; k < pieces[i].size(); ++k) {
                const std::string rp = pp + "/" + std::to_string(k);
                rows.push_back({vector_at(field(pieces[i][k], rp, "normal"), rp + "/normal", dim),
                                scalar_at(field(pieces[i][k], rp, "rhs"), rp + "/rhs")});
            }
            ps.emplace_back(dim, std::move(rows));
        }
        r = Region::exact(dim, std::move(ps));
        if (r.pieces().empty()) issue(ptr + "/pieces", "region is empty");
    }
    if (j.contains("offset")) r = r.translate(vector_at(j.at("offset"), ptr + "/offset", dim));
    return r;
}

Query query_at(const Json& j, const std::string& ptr, const Scene& s) {
    if (!j.is_object()) issue(ptr, "expected a query object");
    for (const auto& [k, v] : j.items()) {
        if (k != "kind" && k != "sets" && k != "points" && k != "args") issue(ptr + "/" + k, "unknown query field");
    }
    Query q;
    q.kind = string_at(field(j, ptr, "kind"), ptr + "/kind");
    auto names = [&](const char* key, std::vector<std::string>& out) {
        if (!j.contains(key)) return;
        const Json& arr = j.at(key);
        const std::string p = ptr + "/" + key;
        if (!arr.is_array() || arr.size() < 2) issue(p, "expected at least two names");
        out.clear();
        for (std::size_t i = 0; i < arr.size(); ++i) out.push_back(string_at(arr[i], p + "/" + std::to_string(i)));
    };
    names("sets", q.sets);
    names("points", q.points);
    if (q.sets.size() != q.points.size()) issue(ptr + "/points", "one point per set");
    for (std::size_t i = 0; i < q.sets.size(); ++i) {
        if (!s.regions.count(q.sets[i])) {
            issue(ptr + (j.contains("sets") ? "/sets/" + std::to_string(i) : "/kind"), "unknown region '" + q.sets[i] + "'");
        }
        if (!s.points.count(q.points[i])) {
            issue(ptr + (j.contains("points") ? "/points/" + std::to_string(i) : "/kind"),
                  "unknown point '" + q.points[i] + "'");
        }
    }
    if (j.contains("args")) q.args = j.at("args");
    try {
        validate_query(q, s.dim);
    } catch (const Error& e) {
        std::string msg = e.what();
        // validate_query names the offending argument first
        std::string key = msg.substr(0, msg.find(':'));
        issue(q.args.contains(key) ? ptr + "/args/" + key : ptr + "/kind", msg);
    }
    return q;
}

Scene build(const Json& doc) {
    if (!doc.is_object()) issue("", "expected a scene object");
    static const std::vector<std::string> known{"name",   "description", "stand_in", "dim",    "norm",
                                                "dual_norm", "regions",  "points",   "queries", "window"};
    for (const auto& [k, v] : doc.items()) {
        if (std::find(known.begin(), known.end(), k) == known.end()) issue("/" + escape_pointer(k), "unknown field");
    }
    Scene s;
    s.name = string_at(field(doc, "", "name"), "/name");
    if (doc.contains("description")) s.description = string_at(doc.at("description"), "/description");
    if (doc.contains("stand_in")) s.stand_in = string_at(doc.at("stand_in"), "/stand_in");
    const Json& dim = field(doc, "", "dim");
    if (!dim.is_number_integer() || dim.get<long>() < 1) issue("/dim", "dimension must be a positive integer");
    s.dim = dim.get<std::size_t>();
    if (doc.contains("norm")) s.norm = norm_at(doc.at("norm"), "/norm", s.dim);
    if (doc.contains("dual_norm")) s.dual_norm = norm_at(doc.at("dual_norm"), "/dual_norm", s.dim);

    const Json& regions = field(doc, "", "regions");
    if (!regions.is_object()) issue("/regions", "expected named regions");
    for (const auto& [name, r] : regions.items()) {
        s.regions[name] = region_at(r, "/regions/" + escape_pointer(name), s.dim);
    }
    const Json& points = field(doc, "", "points");
    if (!points.is_object()) issue("/points", "expected named points");
    for (const auto& [name, p] : points.items()) {
        s.points[name] = vector_at(p, "/points/" + escape_pointer(name), s.dim);
    }
    if (doc.contains("window")) {
        Vector w = vector_at(doc.at("window"), "/window", 4);
        if (w[2] <= w[0] || w[3] <= w[1]) issue("/window", "window must have positive extent");
        s.window = std::array<Scalar, 4>{w[0], w[1], w[2], w[3]};
    }
    if (doc.contains("queries")) {
        const Json& qs = doc.at("queries");
        if (!qs.is_array()) issue("/queries", "expected a list of queries");
        for (std::size_t i = 0; i < qs.size(); ++i) s.queries.push_back(query_at(qs[i], "/queries/" + std::to_string(i), s));
    }
    return s;
}

}  // namespace

bool Scene::exact() const {
    for (const auto& [name, r] : regions) {
        if (!r.is_exact()) return false;
    }
    return true;
}

Scene parse_scene(std::string_view text) {
    Json doc;
    const char* cursor = text.data();
    PositionSax sax(doc, text, &cursor);
    TrackedIter first{text.data(), &cursor};
    TrackedIter last{text.data() + text.size(), &cursor};
    Json::sax_parse(first, last, &sax);
    try {
        return build(doc);
    } catch (const SceneIssue& e) {
        std::string ptr = e.pointer;
        while (!sax.positions.count(ptr) && !ptr.empty()) ptr = ptr.substr(0, ptr.rfind('/'));
        auto it = sax.positions.find(ptr);
        sax.throw_at(it == sax.positions.end() ? 0 : it->second,
                     (e.pointer.empty() ? std::string() : e.pointer + ": ") + e.message);
    }
}

Scene load_scene(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw PreconditionError("cannot read " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_scene(buf.str());
}

}  // namespace extremal
