#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "polyrad/polytope.hpp"

namespace polyrad::fixtures {

/// Closed-form radii of a fixture. Unset fields are not known in closed form.
/// R, r, R1, r1 are taken against the fixture's gauge (B₂ unless `gauge` says
/// otherwise); s is s(K) and s_gauge is s(C) for pair fixtures.
struct FixtureRadii {
    std::optional<double> R, r, R1, r1, s, s_gauge, s0;
    /// R(K, C) and R(C, K) for the simplex-cap-ball pair.
    std::optional<double> R_pair, R_pair_reverse;
    std::string gauge = "B2";
    std::string formula_source;
};

/// d+1 unit vectors, pairwise equidistant, centroid at 0.
VPolytope regular_simplex(int d);

/// conv{0, e_1, ..., e_d}
VPolytope standard_simplex(int d);

/// [-1, 1]^d
VPolytope cube(int d);
HPolytope cube_h(int d);

/// conv{±e_i}
VPolytope cross_polytope(int d);

struct PartialDifferencePair {
    VPolytope k;  ///< −S + βS
    VPolytope c;  ///< S − αS
    FixtureRadii radii;
};

/// S is the regular simplex, or its image under a random affine map drawn
/// from `affine_seed` when one is given.
PartialDifferencePair partial_difference_pair(int d, double alpha, double beta,
                                              std::optional<std::uint64_t> affine_seed = std::nullopt);

/// K = T ∩ ρB₂ (and C = T ∩ ρ₂B₂ when ρ₂ is given).
FixtureRadii simplex_cap_ball_radii(int d, double rho, std::optional<double> rho2 = std::nullopt);

/// K = conv(T ∪ ρB₂).
FixtureRadii conv_simplex_ball_radii(int d, double rho);

/// r₁(T, B₂) for the regular simplex with unit circumradius.
double regular_simplex_width_radius(int d);

enum class PolygonFit { Inscribed, Circumscribed };

/// Regular m-gon approximating radius·B₂. Inscribed: vertices on the circle at
/// angles phase + 2πk/m. Circumscribed: edges tangent to the circle with outer
/// normals at angles phase + 2πk/m.
VPolytope polygonal_ball(int m, double radius = 1.0, PolygonFit fit = PolygonFit::Inscribed, double phase = 0.0);

/// conv(T ∪ (1/σ)·m-gon), d = 2. Returns all 3 + m candidate points.
VPolytope build_jung_fixture(double sigma, int m);

/// T ∩ (σ/2)·m-gon, d = 2, built from halfspaces.
VPolytope build_steinhagen_fixture(double sigma, int m);

/// conv([p1, p2] ∪ ½B₂) where p1, p2 are two vertices of T. The disk is a
/// circumscribed m-gon with an edge opposite the chord, so r = 1/2 exactly.
VPolytope build_figure_fixture(int m);
FixtureRadii figure_radii();

}  // namespace polyrad::fixtures
