#pragma once

#include <string>
#include <vector>

#include "extremal/polyhedron.hpp"
#include "extremal/system.hpp"

namespace fixtures {

using namespace extremal;

inline Scalar q(const char* s) { return parse_scalar(s); }
inline Scalar frac(long a, long b) { return Scalar(a) / b; }
inline Vector v2(Scalar a, Scalar b) { return {a, b}; }
inline Row row(Scalar a, Scalar b, Scalar r) { return {{a, b}, r}; }
inline Polyhedron poly(std::vector<Row> rows) { return Polyhedron(2, std::move(rows)); }
inline Region region(std::vector<Polyhedron> pieces) { return Region::exact(2, std::move(pieces)); }
inline Region halfplane(Scalar a, Scalar b, Scalar r) { return region({poly({row(a, b, r)})}); }

// B = {x2 >= 0, x2 >= 2x1 - 1, x2 >= -2x1 - 1}
inline Region wedge_floor() { return region({poly({row(0, -1, 0), row(2, -1, 1), row(-2, -1, 1)})}); }

inline SetSystem complementary() {
    return SetSystem(halfplane(0, 1, 0), halfplane(0, -1, 0), v2(0, 0), v2(0, 0));
}

inline SetSystem crossing() {
    return SetSystem(halfplane(0, 1, 0), halfplane(1, 1, 0), v2(0, 0), v2(0, 0));
}

inline SetSystem single_floor() { return SetSystem(halfplane(0, 1, 0), wedge_floor(), v2(0, 0), v2(0, 0)); }

inline Region floor_or_left() { return region({poly({row(0, 1, 0)}), poly({row(1, 0, -1)})}); }

inline SetSystem union_at_origin() { return SetSystem(floor_or_left(), wedge_floor(), v2(0, 0), v2(0, 0)); }

inline SetSystem union_at_corner() { return SetSystem(floor_or_left(), wedge_floor(), v2(-1, 1), v2(-1, 1)); }

inline SetSystem parallel_sum() {
    return SetSystem(halfplane(0, 1, 0), halfplane(0, -1, -1), v2(0, 0), v2(0, 1), PolyhedralNorm::sum_norm());
}

inline SetSystem parallel_max() { return SetSystem(halfplane(0, 1, 0), halfplane(0, -1, -1), v2(0, 0), v2(0, 1)); }

// B = {x2 >= 1/8, x1 + 2 x2 >= 2}
inline SetSystem asymptote_far() {
    Region B = region({poly({row(0, -1, frac(-1, 8)), row(-1, -2, -2)})});
    return SetSystem(halfplane(0, 1, 0), B, v2(0, 0), v2(0, 2));
}

inline SetSystem asymptote_near() {
    Region B = region({poly({row(0, -1, frac(-9, 8)), row(-1, -2, -4)})});
    return SetSystem(halfplane(0, 1, 0), B, v2(0, 0), v2(0, 3));
}

// A = {-1 <= x2 <= 0}, B = {x2 <= 1, x1 + 2 x2 >= 2, x2 >= 1/4}
inline SetSystem strips() {
    Region A = region({poly({row(0, 1, 0), row(0, -1, 1)})});
    Region B = region({poly({row(0, 1, 1), row(-1, -2, -2), row(0, -1, frac(-1, 4))})});
    return SetSystem(A, B, v2(1, -1), v2(1, 1));
}

inline SetSystem whole_plane() {
    return SetSystem(region({poly({})}), region({poly({})}), v2(0, 0), v2(1, 1));
}

}  // namespace fixtures
