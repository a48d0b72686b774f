#pragma once

#include <string_view>

#include "polyrad/containment.hpp"
#include "polyrad/euclid.hpp"

namespace polyrad {

enum class AsymmetryKind { Minkowski, John, Loewner };

std::string_view to_string(AsymmetryKind kind);

/// Bodies with asymmetry at most 1 + kSymmetryTol are reported symmetric.
inline constexpr double kSymmetryTol = 1e-6;

struct AsymmetryResult {
    double value = 1.0;
    Vector center;
    AsymmetryKind kind = AsymmetryKind::Minkowski;

    bool symmetric() const { return value <= 1.0 + kSymmetryTol; }
};

/// s(K) = R(−K, K) and a Minkowski center.
AsymmetryResult minkowski_asymmetry(const Body& k, const ContainmentOptions& opts = {});

/// min{ρ : −(K − c0) ⊆ ρ(K − c0)}. Throws Error{CenterOutside} unless c0 is
/// interior to K.
double centered_asymmetry(const Body& k, const Vector& c0);

/// Asymmetry about the center of the John ellipsoid (uses the H-presentation).
AsymmetryResult john_asymmetry(const Body& k, double eps = kDefaultEllipsoidEps);

/// Asymmetry about the center of the Loewner ellipsoid (uses the V-presentation).
AsymmetryResult loewner_asymmetry(const Body& k, double eps = kDefaultEllipsoidEps);

}  // namespace polyrad
