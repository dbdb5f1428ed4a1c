#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "extremal/cones.hpp"
#include "extremal/system.hpp"

namespace extremal {

/// min ||a* + b*|| over a* in K1, b* in K2 with ||a*|| + ||b*|| = 1.
struct PairSeparation {
    Scalar value;
    Vector astar;
    Vector bstar;
    Vector lambda;  // coefficients of astar over K1's generators
    Vector mu;      // coefficients of bstar over K2's generators
};

std::optional<PairSeparation> pair_separation(const Cone& K1, const Cone& K2, const PolyhedralNorm& dn);

/// Infimum of the pair value over the face cells of A near a and of B
/// near b. An absent value means no admissible pair (both sides have only
/// trivial normal cones), i.e. +infinity.
struct SeparationValue {
    std::optional<Scalar> value;
    std::optional<FacePoint> face_a;
    std::optional<FacePoint> face_b;
    std::optional<Cone> cone_a;
    std::optional<Cone> cone_b;
    Vector astar;
    Vector bstar;
    Vector lambda;
    Vector mu;
    std::size_t pairs = 0;
};

SeparationValue separation_over(const std::vector<FaceCell>& ca, const std::vector<FaceCell>& cb,
                                const PolyhedralNorm& dn, std::size_t cap = 10000);

/// Cells meeting the open locality balls around a and b.
SeparationValue separation_infimum(const SetSystem& S, const Scalar& locality, std::size_t cap = 10000);

/// The locality -> 0 limit: cells whose closure contains a (resp. b).
SeparationValue separation_limit(const SetSystem& S, std::size_t cap = 10000);

/// Substitutes the stored LP solution and re-derives the value.
bool verify_separation_value(const SeparationValue& v, const PolyhedralNorm& dn);

std::pair<Vector, Vector> lemma1_merge(const Vector& z1, const Vector& z2, const Cone& K1, const Cone& K2,
                                       const Scalar& eps, const PolyhedralNorm& dn);
std::pair<Vector, Vector> lemma1_split(const Vector& z1, const Vector& z2, const Cone& K1, const Cone& K2,
                                       const Scalar& eps, const PolyhedralNorm& dn);

/// Exact check of the form conditions of a dual pair with points within
/// dp.eps of the system's reference points.
bool verify_dual_pair(const SetSystem& S, const DualPair& dp);
/// Same with the points only required within `radius` of a and b.
bool verify_dual_pair(const SetSystem& S, const DualPair& dp, const Scalar& radius);

Verdict check_ep_condition(const SetSystem& S, DualForm form, const Scalar& eps, std::size_t cap = 10000);

enum class Conversion { IToII, IIToI };

/// dp must be valid in the source form at xi = eps / (1 + eps); the
/// output is valid in the target form at eps.
DualPair convert_conditions(const DualPair& dp, Conversion dir, const SetSystem& S, const Scalar& eps);

/// A point of A within eps of xbar with a nontrivial normal cone.
std::pair<Vector, Cone> support_point_search(const Region& A, const Vector& xbar, const Scalar& eps,
                                             const PolyhedralNorm& n);

struct DifferenceSeparation {
    Vector a;
    Vector b;
    Vector astar;
};

DifferenceSeparation difference_separation(const Region& A, const Region& B, const Scalar& eps,
                                           const PolyhedralNorm& n);

struct ZnResult {
    Vector aprime;
    Vector bprime;
    Vector astar;
    /// Normal-cone form: ||ahat|| + ||bhat|| = 1, ||ahat + bhat|| < eps / lambda.
    Vector ahat;
    Vector bhat;
};

/// Face search for the Zheng–Ng conditions. With tau, the direction
/// condition tau ||a' - b'|| <= <a*, b' - a'> is imposed as well.
std::optional<ZnResult> zn_separation(const SetSystem& S, const Scalar& eps, const Scalar& lambda,
                                      const std::optional<Scalar>& tau = std::nullopt, std::size_t cap = 10000);
/// Primed form: search at lambda' = (eps + lambda) / 2, then split.
std::optional<ZnResult> zn_prime(const SetSystem& S, const Scalar& eps, const Scalar& lambda,
                                 std::size_t cap = 10000);

bool zn3_holds(const ZnResult& r, const Scalar& tau, const PolyhedralNorm& n);

std::optional<ShiftWitness> kl_backward(const DualPair& dp, const SetSystem& S, const Scalar& delta);
std::optional<DualPair> kl_forward(const SetSystem& S, const ShiftWitness& w, const Scalar& eps, const Scalar& delta,
                                   std::size_t cap = 10000);

/// Nonlocal principle. For disjoint sets the ball constraints are replaced
/// by ||a' - b'|| < d(A, B) + eps; otherwise the pair must be extremal and
/// the points land within eps of a and b.
Verdict nonlocal_ep(const SetSystem& S, const Scalar& eps, std::size_t cap = 10000);

/// Norming direction: ||w|| = 1 with <x*, w> = ||x*||_*.
Vector norming_vector(const Vector& xstar, const PolyhedralNorm& n);

}  // namespace extremal
