#include "extremal/scalar.hpp"

#include <stdexcept>

#include "extremal/errors.hpp"

namespace extremal {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (c < '0' || c > '9') return false;
    }
    return true;
}

}  // namespace

Scalar parse_scalar(std::string_view text) {
    std::string_view body = text;
    if (!body.empty() && (body.front() == '-' || body.front() == '+')) body.remove_prefix(1);
    auto slash = body.find('/');
    std::string_view num = body.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) {
        throw std::invalid_argument("not a rational literal: '" + std::string(text) + "'");
    }
    mpz_class n{std::string(num)};
    mpz_class d{std::string(den)};
    if (d == 0) throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
    if (!text.empty() && text.front() == '-') n = -n;
    Scalar out(n, d);
    out.canonicalize();
    return out;
}

std::string to_string(const Scalar& s) { return s.get_str(); }

std::string to_string(const Vector& v) {
    std::string out = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        out += v[i].get_str();
    }
    return out + ")";
}

Scalar abs(const Scalar& s) { return s < 0 ? Scalar(-s) : s; }

int sign(const Scalar& s) { return sgn(s); }

Vector zeros(std::size_t n) { return Vector(n, Scalar(0)); }

Vector unit(std::size_t n, std::size_t i) {
    Vector e = zeros(n);
    e.at(i) = 1;
    return e;
}

void require_same_dim(const Vector& x, const Vector& y, const char* where) {
    if (x.size() != y.size()) {
        throw DimensionError(std::string(where) + ": dimension " + std::to_string(x.size()) + " vs " +
                             std::to_string(y.size()));
    }
}

Vector add(const Vector& x, const Vector& y) {
    require_same_dim(x, y, "add");
    Vector r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i] + y[i];
    return r;
}

Vector sub(const Vector& x, const Vector& y) {
    require_same_dim(x, y, "sub");
    Vector r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i] - y[i];
    return r;
}

Vector neg(const Vector& x) {
    Vector r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = -x[i];
    return r;
}

Vector scale(const Scalar& t, const Vector& x) {
    Vector r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = t * x[i];
    return r;
}

Scalar dot(const Vector& x, const Vector& y) {
    require_same_dim(x, y, "dot");
    Scalar s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

bool is_zero(const Vector& x) {
    for (const auto& c : x) {
        if (c != 0) return false;
    }
    return true;
}

Vector primitive(const Vector& x) {
    if (is_zero(x)) return x;
    mpz_class l = 1;
    for (const auto& c : x) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    std::vector<mpz_class> ints(x.size());
    mpz_class g = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        ints[i] = x[i].get_num() * (l / x[i].get_den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), ints[i].get_mpz_t());
    }
    Vector r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = Scalar(ints[i] / g);
    return r;
}

Vector concat(const Vector& x, const Vector& y) {
    Vector r = x;
    r.insert(r.end(), y.begin(), y.end());
    return r;
}

}  // namespace extremal
