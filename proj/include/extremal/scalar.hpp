#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace extremal {

/// Exact rational. mpq_class keeps the canonical reduced form after every
/// operation we perform through this header.
using Scalar = mpq_class;
using Vector = std::vector<Scalar>;

/// Parses "p", "-p" or "p/q". Decimal points, exponents and whitespace are
/// rejected. Throws std::invalid_argument.
Scalar parse_scalar(std::string_view text);
std::string to_string(const Scalar& s);
std::string to_string(const Vector& v);

Scalar abs(const Scalar& s);
int sign(const Scalar& s);

Vector zeros(std::size_t n);
Vector unit(std::size_t n, std::size_t i);
Vector add(const Vector& x, const Vector& y);
Vector sub(const Vector& x, const Vector& y);
Vector neg(const Vector& x);
Vector scale(const Scalar& t, const Vector& x);
Scalar dot(const Vector& x, const Vector& y);
bool is_zero(const Vector& x);
void require_same_dim(const Vector& x, const Vector& y, const char* where);

/// Scales a nonzero vector to the primitive integer vector on the same ray.
Vector primitive(const Vector& x);

/// Concatenation (x, y).
Vector concat(const Vector& x, const Vector& y);

}  // namespace extremal
