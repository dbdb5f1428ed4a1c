#pragma once

#include <optional>
#include <string>
#include <vector>

#include "extremal/geometry.hpp"
#include "extremal/norm.hpp"
#include "extremal/polyhedron.hpp"
#include "extremal/scalar.hpp"

namespace extremal {

/// A pair of sets with reference points a in A, b in B.
class SetSystem {
public:
    SetSystem(Region A, Region B, Vector a, Vector b, PolyhedralNorm norm = PolyhedralNorm::max_norm());
    SetSystem(Region A, Region B, Vector a, Vector b, PolyhedralNorm norm, PolyhedralNorm dual_norm);

    const Region& A() const { return A_; }
    const Region& B() const { return B_; }
    const Vector& a() const { return a_; }
    const Vector& b() const { return b_; }
    const PolyhedralNorm& norm() const { return norm_; }
    const PolyhedralNorm& dual_norm() const { return dual_; }
    std::size_t dim() const { return a_.size(); }

    bool exact() const { return A_.is_exact() && B_.is_exact(); }
    bool conventional() const { return a_ == b_; }
    /// Both regions are single polyhedra.
    bool convex() const;

    /// Same norms, regions translated: {A - u, B - v} at a - u, b - v.
    SetSystem translated(const Vector& u, const Vector& v) const;
    SetSystem with_points(const Vector& a, const Vector& b) const;

private:
    Region A_, B_;
    Vector a_, b_;
    PolyhedralNorm norm_, dual_;
};

/// Product-space reduction of n >= 2 sets with reference points: the pair
/// A_1 x ... x A_{n-1} and {(x,...,x) : x in A_n} under the max-combined
/// norm.
SetSystem reduce_n_sets(const std::vector<Region>& regions, const std::vector<Vector>& points,
                        const PolyhedralNorm& base = PolyhedralNorm::max_norm());

enum class Level { Extremal, LocallyExtremal, Stationary, ApproxStationary };
std::string level_name(Level l);

/// Shifts u, v at radius rho (nullopt encodes rho = infinity), optionally
/// at moved base points a', b'.
struct ShiftWitness {
    Vector u;
    Vector v;
    std::optional<Scalar> rho;
    std::optional<Vector> aprime;
    std::optional<Vector> bprime;
    Scalar eps;  // the parameter the witness is claimed for
};

enum class DualForm { I, II, III };

/// a' in A, b' in B with dual vectors a*, b*.
struct DualPair {
    Vector aprime;
    Vector bprime;
    Vector astar;
    Vector bstar;
    Scalar eps;
    DualForm form = DualForm::II;
};

/// 0 in D and t*direction outside D for every t in (0, t0].
struct RayCertificate {
    Vector direction;
    Scalar t0;
};

/// The cones (H-rows, <h, y> <= 0) cover the whole space; `radius` bounds a
/// ball on which the set coincides with its cones.
struct CoverCertificate {
    std::vector<std::vector<Vector>> cones;
    Scalar radius;
};

enum class Status { Proved, Refuted, Likely, Unknown };
std::string status_name(Status s);

struct Certificate {
    std::vector<ShiftWitness> witnesses;
    std::vector<DualPair> dual_pairs;
    std::optional<RayCertificate> ray;
    std::optional<CoverCertificate> cover;
    std::optional<Scalar> separation_value;
    std::optional<Scalar> interior_radius;
};

struct Verdict {
    Status status = Status::Unknown;
    /// For Likely: the direction the grid evidence points to.
    std::optional<bool> leaning;
    std::optional<Scalar> resolution;
    Certificate certificate;
    std::vector<std::string> notes;

    bool proved() const { return status == Status::Proved; }
    bool refuted() const { return status == Status::Refuted; }
};

}  // namespace extremal
