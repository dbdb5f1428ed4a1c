#include "extremal/dd.hpp"

#include <algorithm>

#include "extremal/errors.hpp"

namespace extremal {

namespace {

struct Ray {
    Vector v;
    std::vector<bool> zero;  // indices of processed rows tight at v
};

bool subset(const std::vector<bool>& a, const std::vector<bool>& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] && !b[i]) return false;
    }
    return true;
}

std::vector<bool> meet(const std::vector<bool>& a, const std::vector<bool>& b) {
    std::vector<bool> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] && b[i];
    return r;
}

}  // namespace

std::vector<Vector> DdResult::conic_generators() const {
    std::vector<Vector> g = rays;
    for (const auto& l : lineality) {
        g.push_back(l);
        g.push_back(neg(l));
    }
    return g;
}

DdResult double_description(const std::vector<Vector>& hrows, std::size_t dim) {
    const std::size_t m = hrows.size();
    std::vector<Vector> lin;
    for (std::size_t i = 0; i < dim; ++i) lin.push_back(unit(dim, i));
    std::vector<Ray> rays;
    std::vector<bool> processed(m, false);

    for (std::size_t k = 0; k < m; ++k) {
        const Vector& h = hrows[k];
        if (h.size() != dim) throw DimensionError("double_description: row dimension mismatch");
        std::size_t pick = lin.size();
        for (std::size_t i = 0; i < lin.size(); ++i) {
            if (dot(h, lin[i]) != 0) {
                pick = i;
                break;
            }
        }
        if (pick < lin.size()) {
            Vector l0 = lin[pick];
            Scalar hl = dot(h, l0);
            lin.erase(lin.begin() + static_cast<std::ptrdiff_t>(pick));
            for (auto& l : lin) {
                Scalar c = dot(h, l);
                if (c != 0) l = primitive(sub(l, scale(c / hl, l0)));
            }
            for (auto& r : rays) {
                Scalar c = dot(h, r.v);
                if (c != 0) r.v = primitive(sub(r.v, scale(c / hl, l0)));
                r.zero[k] = true;
            }
            Ray fresh{primitive(hl > 0 ? neg(l0) : l0), processed};
            rays.push_back(std::move(fresh));
            processed[k] = true;
            continue;
        }
        std::vector<Ray> pos, zero, negs;
        for (auto& r : rays) {
            int s = sign(dot(h, r.v));
            if (s > 0) pos.push_back(r);
            else if (s < 0) negs.push_back(r);
            else zero.push_back(r);
        }
        std::vector<Ray> next;
        for (const auto& p : pos) {
            for (const auto& q : negs) {
                std::vector<bool> common = meet(p.zero, q.zero);
                bool adjacent = true;
                for (const auto& r : rays) {
                    if (&r.v == &p.v || &r.v == &q.v) continue;
                    if (r.v == p.v || r.v == q.v) continue;
                    if (subset(common, r.zero)) {
                        adjacent = false;
                        break;
                    }
                }
                if (!adjacent) continue;
                Vector v = sub(scale(dot(h, p.v), q.v), scale(dot(h, q.v), p.v));
                common[k] = true;
                next.push_back({primitive(v), common});
            }
        }
        for (auto& r : zero) {
            r.zero[k] = true;
            next.push_back(std::move(r));
        }
        for (auto& r : negs) next.push_back(std::move(r));
        rays.clear();
        for (auto& r : next) {
            bool dup = false;
            for (const auto& e : rays) {
                if (e.v == r.v) {
                    dup = true;
                    break;
                }
            }
            if (!dup) rays.push_back(std::move(r));
        }
        processed[k] = true;
    }
    DdResult out;
    for (auto& l : lin) out.lineality.push_back(primitive(l));
    for (auto& r : rays) out.rays.push_back(r.v);
    std::sort(out.rays.begin(), out.rays.end(), [](const Vector& a, const Vector& b) {
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
    });
    return out;
}

}  // namespace extremal
