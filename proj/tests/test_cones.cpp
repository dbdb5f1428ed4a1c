#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "extremal/cones.hpp"
#include "extremal/errors.hpp"
#include "support.hpp"

using namespace fixtures;

namespace {

Vector rand_vec(std::mt19937& g, std::size_t n, int lo, int hi) {
    std::uniform_int_distribution<int> d(lo, hi);
    Vector v;
    for (std::size_t i = 0; i < n; ++i) v.push_back(d(g));
    return v;
}

// Random union of 1-3 pieces in the plane, each with 1-2 rows through the
// origin, so that the origin lies in every piece.
Region random_star(std::mt19937& g) {
    std::uniform_int_distribution<int> k(1, 3), m(1, 2);
    std::vector<Polyhedron> ps;
    const int pieces = k(g);
    for (int i = 0; i < pieces; ++i) {
        std::vector<Row> rows;
        const int r = m(g);
        for (int j = 0; j < r; ++j) {
            Vector nrm;
            do nrm = rand_vec(g, 2, -3, 3);
            while (is_zero(nrm));
            rows.push_back({nrm, 0});
        }
        ps.emplace_back(2, rows);
    }
    return Region::exact(2, ps);
}

// Directions v with a + t v in R for the probe step t: the brute-force
// stand-in for the tangent structure.
std::vector<Vector> tangent_probe(const Region& R, const Vector& a) {
    std::vector<Vector> out;
    const Scalar t(1, 1000);
    for (int i = -6; i <= 6; ++i) {
        for (int j = -6; j <= 6; ++j) {
            if (i == 0 && j == 0) continue;
            Vector v = v2(i, j);
            if (R.contains(add(a, scale(t, v)))) out.push_back(v);
        }
    }
    return out;
}

}  // namespace

TEST_CASE("tangent cones") {
    Polyhedron quadrant(2, {row(1, 0, 0), row(0, 1, 0)});
    CHECK(tangent_cone(quadrant, v2(-1, -1)).equals(Cone::whole(2)));
    Cone half = tangent_cone(Polyhedron(2, {row(0, 1, 0)}), v2(5, 0));
    CHECK(half.contains(v2(7, -1)));
    CHECK(half.contains(v2(-7, 0)));
    CHECK_FALSE(half.contains(v2(0, 1)));
    CHECK(tangent_cone(quadrant, v2(0, 0)).equals(Cone::from_hrows(2, {v2(1, 0), v2(0, 1)})));
    CHECK_THROWS_AS(tangent_cone(quadrant, v2(1, 0)), PreconditionError);
}

TEST_CASE("normal cones") {
    // <c, x> <= d at a boundary point
    Region R = halfplane(2, -1, 3);
    Cone N = normal_cone(R, v2(1, -1));
    CHECK(N.equals(Cone::from_generators(2, {v2(2, -1)})));
    CHECK(normal_cone(R, v2(0, 0)).trivial());

    // {x2 <= 0} ∪ {x1 <= -1} at (-1, 0): ray(e2) ∩ ray(-e1) = {0}
    Cone U = normal_cone(floor_or_left(), v2(-1, 0));
    CHECK(U.trivial());
    // grid oracle: no nonzero x* has <x*, v> <= 0 on all probed tangent directions
    auto dirs = tangent_probe(floor_or_left(), v2(-1, 0));
    for (int i = -4; i <= 4; ++i) {
        for (int j = -4; j <= 4; ++j) {
            if (i == 0 && j == 0) continue;
            bool normal = true;
            for (const auto& v : dirs) normal = normal && dot(v2(i, j), v) <= 0;
            CHECK_FALSE(normal);
        }
    }
    CHECK_THROWS_AS(normal_cone(R, v2(5, 0)), PreconditionError);
}

TEST_CASE("normal cone of a union matches the grid oracle") {
    std::mt19937 g(7);
    for (int it = 0; it < 60; ++it) {
        Region R = random_star(g);
        Cone N = normal_cone(R, v2(0, 0));
        CHECK(N.consistent());
        auto dirs = tangent_probe(R, v2(0, 0));
        for (int i = -3; i <= 3; ++i) {
            for (int j = -3; j <= 3; ++j) {
                bool normal = true;
                for (const auto& v : dirs) normal = normal && dot(v2(i, j), v) <= 0;
                CHECK(N.contains(v2(i, j)) == normal);
            }
        }
    }
}

TEST_CASE("polarity of normal and tangent generators") {
    std::mt19937 g(11);
    for (int it = 0; it < 60; ++it) {
        Region R = random_star(g);
        for (const auto& P : R.pieces()) {
            Cone T = tangent_cone(P, v2(0, 0));
            Cone N = normal_cone(Region::exact(2, {P}), v2(0, 0));
            for (const auto& n : N.generators())
                for (const auto& t : T.generators()) CHECK(dot(n, t) <= 0);
        }
    }
}

TEST_CASE("union rule at a point of a single piece") {
    Region R = floor_or_left();
    Cone a = normal_cone(R, v2(3, 0));
    Cone b = normal_cone(Region::exact(2, {R.pieces()[0]}), v2(3, 0));
    CHECK(a.equals(b));
    CHECK(a.generators() == b.generators());
}

TEST_CASE("eps-normal membership") {
    const auto mx = PolyhedralNorm::max_norm();
    Region H = halfplane(0, 1, 0);
    const Scalar eps(1, 4);
    // c + eps * e1 where e1 has dual (sum) norm 1
    CHECK(eps_normal_member(v2(eps, 1), v2(0, 0), H, eps, mx));
    CHECK_FALSE(eps_normal_member(v2(1, 1), v2(0, 0), H, frac(1, 2), mx));
    CHECK_THROWS_AS(eps_normal_member(v2(0, 1), v2(0, 1), H, eps, mx), PreconditionError);

    // grid oracle: sup <x*, v> - eps ||v|| over probed tangent directions
    std::mt19937 g(3);
    for (int it = 0; it < 80; ++it) {
        Region R = random_star(g);
        Vector xs = rand_vec(g, 2, -3, 3);
        Scalar e = Scalar(std::uniform_int_distribution<int>(0, 8)(g)) / 4;
        auto dirs = tangent_probe(R, v2(0, 0));
        bool oracle = true;
        for (const auto& v : dirs) oracle = oracle && dot(xs, v) <= e * mx.eval(v);
        // the tangent cones here have extreme rays with integer entries of
        // size <= 3, all of which are probed
        CHECK(eps_normal_member(xs, v2(0, 0), R, e, mx) == oracle);
    }
}

TEST_CASE("eps = 0 is membership in the normal cone") {
    std::mt19937 g(5);
    for (int it = 0; it < 80; ++it) {
        Region R = random_star(g);
        Vector xs = rand_vec(g, 2, -3, 3);
        CHECK(eps_normal_member(xs, v2(0, 0), R, 0, PolyhedralNorm::sum_norm()) ==
              normal_cone(R, v2(0, 0)).contains(xs));
    }
}

TEST_CASE("eps-normals grow with eps and contain N + eps B*") {
    std::mt19937 g(9);
    const auto mx = PolyhedralNorm::max_norm();
    std::uniform_int_distribution<int> c(0, 4);
    int samples = 0;
    while (samples < 500) {
        Region R = random_star(g);
        Cone N = normal_cone(R, v2(0, 0));
        const Scalar eps = Scalar(c(g) + 1) / 8;
        // y in N, e in the dual (sum) ball
        Vector y = zeros(2);
        for (const auto& gen : N.generators()) y = add(y, scale(Scalar(c(g)), gen));
        Vector e = rand_vec(g, 2, -4, 4);
        Scalar en = PolyhedralNorm::sum_norm().eval(e);
        if (en > 0) e = scale(Scalar(c(g)) / (4 * en), e);
        Vector xs = add(y, scale(eps, e));
        CHECK(eps_normal_member(xs, v2(0, 0), R, eps, mx));
        if (eps_normal_member(xs, v2(0, 0), R, eps / 2, mx)) CHECK(eps_normal_member(xs, v2(0, 0), R, eps, mx));
        ++samples;
    }
}

TEST_CASE("distance to a cone") {
    const auto sm = PolyhedralNorm::sum_norm();
    Cone ray2 = Cone::from_generators(2, {v2(0, 1)});
    auto in = dist_to_cone(v2(0, 3), ray2, sm);
    CHECK(in.value == 0);
    CHECK(in.witness == v2(0, 3));
    auto z = dist_to_cone(v2(0, 1), Cone::zero(2), sm);
    CHECK(z.value == 1);
    CHECK(z.witness == v2(0, 0));
    auto d = dist_to_cone(v2(1, 1), ray2, sm);
    CHECK(d.value == 1);
    CHECK(d.witness == v2(0, 1));
    // the witness attains the value and beats a grid of cone points
    std::mt19937 g(2);
    for (int it = 0; it < 50; ++it) {
        Vector xs = rand_vec(g, 2, -5, 5);
        Cone K = Cone::from_generators(2, {rand_vec(g, 2, -3, 3), rand_vec(g, 2, -3, 3)});
        auto r = dist_to_cone(xs, K, sm);
        CHECK(K.contains(r.witness));
        CHECK(sm.eval(sub(xs, r.witness)) == r.value);
        for (int s = 0; s <= 12; ++s)
            for (int t = 0; t <= 12; ++t) {
                Vector y = zeros(2);
                if (!K.generators().empty()) y = add(y, scale(Scalar(s) / 2, K.generators()[0]));
                if (K.generators().size() > 1) y = add(y, scale(Scalar(t) / 2, K.generators()[1]));
                CHECK(r.value <= sm.eval(sub(xs, y)));
            }
    }
}

TEST_CASE("cone representations agree") {
    std::mt19937 g(4);
    for (int it = 0; it < 40; ++it) {
        std::vector<Vector> gens;
        for (int k = 0; k < 3; ++k) gens.push_back(rand_vec(g, 3, -2, 2));
        Cone K = Cone::from_generators(3, gens);
        CHECK(K.consistent());
        Cone H = Cone::from_hrows(3, K.hrows());
        CHECK(H.equals(K));
    }
    std::vector<Vector> rows(5, zeros(5));
    for (std::size_t i = 0; i < 5; ++i) rows[i][i] = 1;
    CHECK_THROWS_AS(Cone::from_hrows(5, rows), CapExceeded);
}

TEST_CASE("face cells carry exact representatives") {
    const auto mx = PolyhedralNorm::max_norm();
    for (const auto& R : {floor_or_left(), wedge_floor()}) {
        for (const auto& c : face_cells(R, v2(0, 0), Scalar(2), mx)) {
            const Polyhedron& P = R.pieces()[c.face.piece_index];
            for (std::size_t i = 0; i < P.rows().size(); ++i) {
                const Scalar lhs = dot(P.rows()[i].normal, c.face.representative);
                const bool active =
                    std::find(c.face.active_rows.begin(), c.face.active_rows.end(), i) != c.face.active_rows.end();
                if (active) CHECK(lhs == P.rows()[i].rhs);
                else CHECK(lhs < P.rows()[i].rhs);
            }
            CHECK(c.distance < 2);
            CHECK(normal_cone(R, c.face.representative).equals(c.normal));
        }
    }
}
