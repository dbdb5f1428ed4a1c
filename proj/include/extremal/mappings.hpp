#pragma once

#include <optional>
#include <string>
#include <vector>

#include "extremal/system.hpp"

namespace extremal {

/// F(x) = (A - x) x (B - x) and its inverse S(y, z) = (A - y) ∩ (B - z).
/// The product space carries the max norm.
struct MappingView {
    enum class Which { F, S };
    SetSystem system;
    Which which = Which::F;
};

/// Image of F (two factors) or S (one region). S takes (y, z) stacked.
struct MappingImage {
    std::vector<Region> factors;
    bool contains(const Vector& p) const;
};

MappingImage evaluate(const MappingView& M, const Vector& input);

/// (y, z) in F(x) iff x in S(y, z), by membership in the two images.
bool graph_consistent(const SetSystem& S, const Vector& x, const Vector& y, const Vector& z);

enum class RateProperty { Covering, Semiregularity, LipschitzLsc, MetricRegularity, Aubin };
std::string rate_property_name(RateProperty p);

struct RateSample {
    Vector input;  // the stacked sample point(s)
    Scalar ratio;
};

/// Ratios of the defining inequality of the property over a sample within
/// the delta window. alpha_upper is the least sampled ratio; alpha_lower
/// equals it only when a zero ratio pins the rate exactly, and is 0
/// otherwise. Samples with an infinite ratio are dropped.
struct RateEstimate {
    RateProperty property;
    Scalar alpha_lower;
    Scalar alpha_upper;
    bool exact = false;
    std::vector<RateSample> samples;
};

RateEstimate estimate_rate(const MappingView& M, RateProperty property, const Scalar& delta, std::size_t grid = 32);

/// dom S = {(y, z) : (A - y) ∩ (B - z) nonempty}, by elimination of x.
Region domain_of_S(const SetSystem& S);

struct CrossCheck {
    Status extremal = Status::Unknown;
    bool boundary_of_domain = false;
    Status approx = Status::Unknown;
    Scalar metric_regularity;
    Scalar aubin;
    std::vector<std::string> errors;    // exact-side disagreements
    std::vector<std::string> warnings;  // sampled-side disagreements
    bool consistent() const { return errors.empty(); }
};

CrossCheck crosscheck_primal_dual(const SetSystem& S, const Scalar& delta = Scalar(1, 4), std::size_t grid = 32);

/// (a, b) on the boundary of A x B + {(x, x)} in the product space, which
/// must match relative extremality. Product dimension capped at 8.
Verdict product_boundary_condition(const SetSystem& S);

}  // namespace extremal
