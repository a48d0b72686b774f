#pragma once

#include <cstdint>

#include "polyrad/error.hpp"
#include "polyrad/polytope.hpp"

namespace polyrad {

struct BallResult {
    Vector center;
    double radius = 0.0;
};

/// {x : (x - center)ᵀ shape (x - center) <= 1}, shape symmetric positive definite.
struct Ellipsoid {
    Vector center;
    Matrix shape;

    /// Lower-triangular L with shape = (L Lᵀ)^{-1}, so the set is center + L·B₂.
    Matrix factor() const;
    /// (x - center)ᵀ shape (x - center)
    double gauge(const Vector& x) const;
    double log_volume_ratio() const;  ///< log of vol / vol(B₂)
};

/// Raised when an ellipsoid iteration stops at its cap. The partial ellipsoid
/// still satisfies the routine's feasibility contract.
class EllipsoidLimitError : public Error {
public:
    EllipsoidLimitError(const std::string& what, Ellipsoid partial)
        : Error(ErrorCode::IterationLimit, "IterationLimit: " + what), partial_(std::move(partial)) {}
    const Ellipsoid& partial() const { return partial_; }

private:
    Ellipsoid partial_;
};

inline constexpr double kDefaultEllipsoidEps = 1e-6;

/// Smallest enclosing ball (move-to-front recursion). Deterministic for a
/// given seed.
BallResult min_enclosing_ball(const VPolytope& k, std::uint64_t seed = 0x5eed);

/// Largest inscribed ball.
BallResult chebyshev(const HPolytope& k, lp::Mode mode = lp::Mode::Float);

/// R₁(K, B₂): half the largest pairwise distance.
double euclid_diameter(const VPolytope& k);

/// r₁(K, B₂): half the minimal width, from the facets of K − K. Intended for
/// d <= 4.
double euclid_width(const VPolytope& k);

/// Minimum-volume enclosing ellipsoid by the Khachiyan iteration with away
/// steps. Every point is inside the result.
Ellipsoid loewner_ellipsoid(const VPolytope& k, double eps = kDefaultEllipsoidEps, std::size_t max_iterations = 10000);

/// Maximum-volume inscribed ellipsoid by a barrier method on (center, L).
/// The result is always inside K, also when EllipsoidLimitError is raised.
Ellipsoid john_ellipsoid(const HPolytope& k, double eps = kDefaultEllipsoidEps, std::size_t max_newton_steps = 200);

}  // namespace polyrad
