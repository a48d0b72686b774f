#pragma once

#include <vector>

#include "polyrad/lp.hpp"
#include "polyrad/polytope.hpp"

namespace polyrad {

/// LP formulation of K ⊆ c + ρC.
enum class ContainmentMethod {
    Auto,
    VertexVertex,        ///< vertices of K as nonnegative combinations of vertices of C
    HalfspaceHalfspace,  ///< Farkas multipliers for every row of C over the rows of K
    Support,             ///< h(K, a_j) <= a_j·c + ρ b_j for every row of C
};

struct ContainmentOptions {
    lp::Mode mode = lp::Mode::Float;
    ContainmentMethod method = ContainmentMethod::Auto;
};

struct ContainmentResult {
    double rho = 0.0;
    Vector center;
    /// Optimal value of the LP dual (equals rho up to solver tolerance).
    double dual_bound = 0.0;
    /// Indices of rows of C (Support, HalfspaceHalfspace) or points of K
    /// (VertexVertex) with a nonzero multiplier. Informational.
    std::vector<std::size_t> tight_witness;
    ContainmentMethod method = ContainmentMethod::Auto;
};

/// R(K, C) = min{ρ : K ⊆ c + ρC for some c}.
ContainmentResult circumradius(const Body& k, const Body& c, const ContainmentOptions& opts = {});

/// min{ρ : K ⊆ center + ρC} for a fixed center. Requires 0 in the interior of
/// C, otherwise throws Error{CenterOutside}.
double circumradius_at(const Body& k, const Body& c, const Vector& center);

/// r(K, C) = 1 / R(C, K). The center is that of the inscribed copy
/// center + r·C ⊆ K.
ContainmentResult inradius(const Body& k, const Body& c, const ContainmentOptions& opts = {});

/// R₁(K, C) = R(K − K, C − C); the C-diameter is 2R₁.
double core_radius_1(const Body& k, const Body& c, const ContainmentOptions& opts = {});

/// r₁(K, C) = 1 / R₁(C, K); the C-width is 2r₁.
double width_radius_1(const Body& k, const Body& c, const ContainmentOptions& opts = {});

}  // namespace polyrad
