#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "extremal/errors.hpp"
#include "extremal/geometry.hpp"
#include "extremal/primal.hpp"
#include "support.hpp"

using namespace fixtures;

namespace {

const std::vector<Scalar> kShort = {frac(1, 2), frac(1, 4), frac(1, 8)};

std::vector<SetSystem> exact_fixtures() {
    return {complementary(), crossing(),     single_floor(), union_at_origin(), union_at_corner(),
            parallel_sum(),  parallel_max(), asymptote_far(), asymptote_near(), strips(), whole_plane()};
}

// Random pair of halfplanes, the first bounded by a line through the origin,
// the second with an offset in 0..2.
SetSystem random_convex(std::mt19937& g) {
    std::uniform_int_distribution<int> c(-3, 3), off(0, 2);
    Vector n1, n2;
    do n1 = {c(g), c(g)};
    while (is_zero(n1));
    do n2 = {c(g), c(g)};
    while (is_zero(n2));
    const Scalar r = off(g);
    return SetSystem(region({poly({{n1, 0}})}), region({poly({{n2, r}})}), v2(0, 0), v2(0, 0));
}

}  // namespace

TEST_CASE("shift witnesses") {
    const SetSystem S = complementary();
    const Scalar eps(1, 4);
    ShiftWitness w{v2(0, eps / 2), v2(0, 0), std::nullopt, std::nullopt, std::nullopt, eps};
    CHECK(verify_shift_witness(S, w, eps, Level::Extremal));
    // the shifts touch: {x2 <= 0} and {x2 >= 0} keep the line
    ShiftWitness zero{v2(0, 0), v2(0, 0), std::nullopt, std::nullopt, std::nullopt, eps};
    CHECK_FALSE(verify_shift_witness(S, zero, eps, Level::Extremal));
    // size gate: max{|u|, |v|} must be below eps
    ShiftWitness big{v2(0, eps), v2(0, 0), std::nullopt, std::nullopt, std::nullopt, eps};
    CHECK_FALSE(verify_shift_witness(S, big, eps, Level::Extremal));

    // {x2 <= 0}, {x2 >= 1}: u = (0, e), v = (0, -e) separates with norm e,
    // which is a valid witness strictly below 2e
    const SetSystem P = parallel_max();
    ShiftWitness pw{v2(0, eps), v2(0, -eps), std::nullopt, std::nullopt, std::nullopt, 2 * eps};
    CHECK(verify_shift_witness(P, pw, 2 * eps, Level::Extremal));
    CHECK_FALSE(verify_shift_witness(P, pw, eps, Level::Extremal));

    // stationary: rho in (0, eps) and the shifts below eps * rho
    ShiftWitness sw{v2(0, frac(1, 64)), v2(0, 0), frac(1, 8), std::nullopt, std::nullopt, eps};
    CHECK(verify_shift_witness(S, sw, eps, Level::Stationary));
    sw.u = v2(0, frac(1, 16));
    CHECK_FALSE(verify_shift_witness(S, sw, eps, Level::Stationary));
    sw.u = v2(0, frac(1, 64));
    sw.rho = Scalar(1);
    CHECK_FALSE(verify_shift_witness(S, sw, eps, Level::Stationary));
}

TEST_CASE("verdicts on the fixtures") {
    CHECK(check_relative_extremal(complementary()).proved());
    CHECK(check_relative_extremal(crossing()).refuted());
    CHECK(check_relative_extremal(whole_plane()).refuted());
    CHECK(check_relative_extremal(parallel_max()).proved());

    CHECK(check_relative_locally_extremal(union_at_origin(), frac(1, 2)).proved());
    CHECK(check_relative_locally_extremal(union_at_corner(), frac(1, 4)).refuted());
    // overlapping convex pair, base point interior to both
    SetSystem overlap(halfplane(0, 1, 1), halfplane(0, -1, 1), v2(0, 0), v2(0, 0));
    CHECK(check_relative_locally_extremal(overlap, frac(1, 2)).refuted());
    CHECK(check_relative_extremal(overlap).refuted());

    CHECK(check_relative_stationary(crossing(), kShort).refuted());
    CHECK(check_relative_stationary(union_at_origin(), kShort).proved());
    CHECK(check_relative_stationary(strips(), kShort).proved());

    CHECK(check_relative_approx_stationary(crossing(), kShort).refuted());
    CHECK(check_relative_approx_stationary(strips(), kShort).proved());
    CHECK(check_relative_approx_stationary(complementary(), kShort).proved());
}

TEST_CASE("refuted verdicts carry a checkable certificate") {
    const Verdict v = check_relative_extremal(crossing());
    REQUIRE(v.refuted());
    const auto& c = v.certificate;
    CHECK((c.ray.has_value() || c.cover.has_value() || !c.dual_pairs.empty()));
    if (c.ray) CHECK(verify_ray(minkowski_difference(crossing().A().translate(neg(crossing().a())),
                                                     crossing().B().translate(neg(crossing().b()))),
                                *c.ray));
    if (c.cover) CHECK(verify_cover(*c.cover, 2));
}

TEST_CASE("witness from the distance formulas") {
    const Scalar eps(1, 4);
    auto w = witness_from_distance(parallel_max(), eps);
    REQUIRE(w.has_value());
    CHECK(w->u == v2(0, frac(1, 8)));
    CHECK(w->v == v2(0, frac(-1, 8)));
    CHECK(verify_shift_witness(parallel_max(), *w, eps, Level::Extremal));

    // d = 0 branch: points closer than eps
    SetSystem close(halfplane(0, 1, 0), halfplane(0, -1, frac(-1, 8)), v2(0, 0), v2(0, frac(1, 8)));
    auto z = witness_from_distance(close, eps, Scalar(0));
    REQUIRE(z.has_value());
    CHECK(z->u == v2(0, frac(1, 16)));
    CHECK(z->v == v2(0, frac(-1, 16)));
    CHECK(verify_shift_witness(close, *z, eps, Level::Extremal));

    CHECK_THROWS_AS(witness_from_distance(complementary(), eps), PreconditionError);
}

TEST_CASE("metric characterization") {
    CHECK_FALSE(metric_char_approx_stationary(crossing(), frac(1, 4)));
    CHECK(metric_char_approx_stationary(complementary(), frac(1, 4)));
}

TEST_CASE("implication chain") {
    const auto crossing_v = verdict_vector(crossing(), kShort);
    for (auto s : crossing_v) CHECK(s == Status::Refuted);
    const auto strips_v = verdict_vector(strips(), kShort);
    for (auto s : strips_v) CHECK(s == Status::Proved);
    const auto corner = verdict_vector(union_at_origin(), kShort);
    CHECK(corner[0] == Status::Refuted);
    CHECK(corner[1] == Status::Proved);
    CHECK(corner[2] == Status::Proved);
    CHECK(corner[3] == Status::Proved);
    for (const auto& S : exact_fixtures()) CHECK(implication_chain(S, kShort).sound());
}

TEST_CASE("convex pairs: all four levels agree") {
    std::mt19937 g(17);
    for (int it = 0; it < 40; ++it) {
        const SetSystem S = random_convex(g);
        const ChainReport r = implication_chain(S, kShort);
        CHECK(r.convex);
        CHECK(r.sound());
        for (const auto& v : r.verdicts) CHECK(v.status == r.verdicts[0].status);
    }
}

TEST_CASE("translation invariance") {
    CHECK(check_translation_invariance(crossing(), v2(1, 0), v2(0, 1), kShort));
    CHECK(check_translation_invariance(union_at_origin(), v2(0, 0), v2(0, 0), kShort));
    std::mt19937 g(23);
    std::uniform_int_distribution<int> c(-5, 5);
    for (int it = 0; it < 10; ++it) {
        CHECK(check_translation_invariance(strips(), v2(c(g), c(g)), v2(c(g), c(g)), kShort));
    }
}

TEST_CASE("stability probe") {
    const Scalar eps(1, 4);
    const SetSystem S = complementary();
    auto r = stability_probe(S, eps, frac(1, 8), {{v2(0, 0), v2(0, 0)}, {v2(frac(1, 8), 0), v2(0, 0)}});
    CHECK(r.sound());
    CHECK(r.witnesses.size() == 2);
    CHECK_THROWS_AS(stability_probe(crossing(), eps, frac(1, 8), {{v2(0, 0), v2(0, 0)}}), PreconditionError);
    CHECK_THROWS_AS(stability_probe(S, eps, frac(1, 8), {{v2(0, 1), v2(0, 0)}}), PreconditionError);
}

TEST_CASE("proved verdicts re-verify") {
    for (const auto& S : exact_fixtures()) {
        const Verdict v = check_relative_extremal(S, ShiftMode::Both, kShort);
        if (!v.proved()) continue;
        for (const auto& w : v.certificate.witnesses) {
            CHECK(verify_shift_witness(S, w, w.eps, Level::Extremal));
            // polyhedral shifted sets that miss each other are a positive
            // distance apart
            const Region A = S.A().translate(neg(add(S.a(), w.u)));
            const Region B = S.B().translate(neg(add(S.b(), w.v)));
            CHECK(dist_region_region(A, B, S.norm()).value > 0);
        }
    }
}

TEST_CASE("single-shift equivalence") {
    for (const auto& S : exact_fixtures()) {
        const Verdict both = check_relative_extremal(S, ShiftMode::Both, kShort);
        const Verdict single = check_relative_extremal(S, ShiftMode::Single, kShort);
        CHECK(both.status == single.status);
        for (const auto& w : both.certificate.witnesses) {
            const ShiftWitness s = single_shift(w);
            CHECK(is_zero(s.v));
            const Scalar e = single_shift_parameter(w.eps, Level::Extremal);
            CHECK(verify_shift_witness(S, s, e, Level::Extremal));
        }
        const Verdict st = check_relative_stationary(S, kShort, ShiftMode::Both);
        const Verdict st1 = check_relative_stationary(S, kShort, ShiftMode::Single);
        CHECK(st.status == st1.status);
    }
}

TEST_CASE("approximate stationarity needs boundary points") {
    for (const auto& S : exact_fixtures()) {
        if (!check_relative_approx_stationary(S, kShort).proved()) continue;
        if (S.conventional()) {
            CHECK(on_boundary(S.A(), S.a()));
            CHECK(on_boundary(S.B(), S.b()));
        }
    }
}
