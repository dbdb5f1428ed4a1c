#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "extremal/system.hpp"

namespace extremal {

/// 1/2, 1/4, ..., 1/1024.
std::vector<Scalar> default_schedule();

/// Outcome of checking a shift witness. Exact systems are decided with
/// certified emptiness; oracle systems on the grid.
struct WitnessCheck {
    bool ok = false;
    bool exact = true;
    std::optional<Scalar> resolution;
    std::optional<UnionIntersection> emptiness;
    std::string reason;
};

WitnessCheck check_shift_witness(const SetSystem& S, const ShiftWitness& w, const Scalar& eps, Level level);
bool verify_shift_witness(const SetSystem& S, const ShiftWitness& w, const Scalar& eps, Level level);

enum class ShiftMode { Both, Single };

/// The single-shift witness u' = u - v, v' = 0 at radius rho/2, and the
/// parameter at which it is valid when w is valid at eps.
ShiftWitness single_shift(const ShiftWitness& w);
Scalar single_shift_parameter(const Scalar& eps, Level level);

Verdict check_relative_extremal(const SetSystem& S, ShiftMode mode = ShiftMode::Both,
                                const std::vector<Scalar>& schedule = default_schedule());
Verdict check_relative_locally_extremal(const SetSystem& S, const Scalar& rho, ShiftMode mode = ShiftMode::Both,
                                        const std::vector<Scalar>& schedule = default_schedule());
Verdict check_relative_stationary(const SetSystem& S, const std::vector<Scalar>& schedule = default_schedule(),
                                  ShiftMode mode = ShiftMode::Both);
Verdict check_relative_approx_stationary(const SetSystem& S,
                                         const std::vector<Scalar>& schedule = default_schedule(),
                                         std::size_t face_cap = 10000);

/// Shift pair from the distance formulas; nothing when neither applies.
std::optional<ShiftWitness> witness_from_distance(const SetSystem& S, const Scalar& eps);
/// Same with a caller-supplied value of d(A, B).
std::optional<ShiftWitness> witness_from_distance(const SetSystem& S, const Scalar& eps, const Scalar& distance);

/// Searches y in B_eps(a), z in B_eps(b), x in eps*B with
/// max{d(x, A-y), d(x, B-z)} < eps * d(x, (A-y) ∩ (B-z)).
bool metric_char_approx_stationary(const SetSystem& S, const Scalar& eps, std::size_t samples = 400);

struct ChainReport {
    std::array<Verdict, 4> verdicts;
    std::vector<std::string> violations;
    bool convex = false;
    bool sound() const { return violations.empty(); }
};

ChainReport implication_chain(const SetSystem& S, const std::vector<Scalar>& schedule = default_schedule());

/// Statuses of the four checks, in chain order.
std::array<Status, 4> verdict_vector(const SetSystem& S, const std::vector<Scalar>& schedule = default_schedule());

bool check_translation_invariance(const SetSystem& S, const Vector& u, const Vector& v,
                                  const std::vector<Scalar>& schedule = default_schedule());

struct StabilityReport {
    std::vector<ShiftWitness> witnesses;  // one per pair, in order
    std::vector<std::string> failures;
    bool sound() const { return failures.empty(); }
};

StabilityReport stability_probe(const SetSystem& S, const Scalar& eps, const Scalar& delta,
                                const std::vector<std::pair<Vector, Vector>>& pairs);

/// Independent re-check of a cover certificate: the closed box of the
/// given half-width around 0 lies in the union of the cones.
bool verify_cover(const CoverCertificate& c, std::size_t dim);

/// Re-check of a ray certificate against the pieces of D.
bool verify_ray(const Region& D, const RayCertificate& r);

}  // namespace extremal
