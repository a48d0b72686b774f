#include "polyrad/fixtures.hpp"

#include <cmath>
#include <random>
#include <string>

#include "polyrad/error.hpp"

namespace polyrad::fixtures {

namespace {

void require(bool ok, const std::string& what)
{
    if (!ok) raise(ErrorCode::ParameterOutOfRange, what);
}

Vector polar(double radius, double angle)
{
    Vector v(2);
    v << radius * std::cos(angle), radius * std::sin(angle);
    return v;
}

}  // namespace

VPolytope regular_simplex(int d)
{
    require(d >= 1, "dimension must be at least 1");
    // Vertex i has coordinate k equal to entry i of the k-th Helmert vector.
    const double scale = std::sqrt((d + 1.0) / d);
    std::vector<Vector> pts(static_cast<std::size_t>(d) + 1, Vector::Zero(d));
    for (int k = 1; k <= d; ++k) {
        const double norm = std::sqrt(static_cast<double>(k) * (k + 1));
        for (int i = 0; i < k; ++i) pts[static_cast<std::size_t>(i)][k - 1] = scale / norm;
        pts[static_cast<std::size_t>(k)][k - 1] = -scale * k / norm;
    }
    return VPolytope(d, std::move(pts));
}

VPolytope standard_simplex(int d)
{
    require(d >= 1, "dimension must be at least 1");
    std::vector<ExactVector> pts(static_cast<std::size_t>(d) + 1, ExactVector(static_cast<std::size_t>(d), Rational(0)));
    for (int k = 0; k < d; ++k) pts[static_cast<std::size_t>(k) + 1][static_cast<std::size_t>(k)] = 1;
    return VPolytope::from_exact(d, std::move(pts));
}

VPolytope cube(int d)
{
    require(d >= 1 && d <= 20, "cube dimension out of range");
    std::vector<ExactVector> pts;
    for (long mask = 0; mask < (1L << d); ++mask) {
        ExactVector p;
        for (int k = 0; k < d; ++k) p.push_back((mask >> k & 1) ? Rational(1) : Rational(-1));
        pts.push_back(std::move(p));
    }
    return VPolytope::from_exact(d, std::move(pts));
}

HPolytope cube_h(int d)
{
    require(d >= 1, "dimension must be at least 1");
    std::vector<ExactVector> normals;
    std::vector<Rational> offsets;
    for (int k = 0; k < d; ++k)
        for (int sign : {1, -1}) {
            ExactVector n(static_cast<std::size_t>(d), Rational(0));
            n[static_cast<std::size_t>(k)] = sign;
            normals.push_back(std::move(n));
            offsets.emplace_back(1);
        }
    return HPolytope::from_exact(d, std::move(normals), std::move(offsets));
}

VPolytope cross_polytope(int d)
{
    require(d >= 1, "dimension must be at least 1");
    std::vector<ExactVector> pts;
    for (int k = 0; k < d; ++k)
        for (int sign : {1, -1}) {
            ExactVector p(static_cast<std::size_t>(d), Rational(0));
            p[static_cast<std::size_t>(k)] = sign;
            pts.push_back(std::move(p));
        }
    return VPolytope::from_exact(d, std::move(pts));
}

PartialDifferencePair partial_difference_pair(int d, double alpha, double beta, std::optional<std::uint64_t> affine_seed)
{
    require(d >= 1, "dimension must be at least 1");
    require(alpha >= 0 && alpha <= 1, "alpha must lie in [0, 1]");
    require(beta >= 0 && beta <= 1, "beta must lie in [0, 1]");
    VPolytope s = regular_simplex(d);
    if (affine_seed) {
        std::mt19937_64 rng(*affine_seed);
        std::normal_distribution<double> g;
        Matrix a(d, d);
        do {
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) a(i, j) = g(rng);
        } while (std::abs(a.determinant()) < 0.1);
        Vector t(d);
        for (int i = 0; i < d; ++i) t[i] = g(rng);
        for (auto& p : s.points) p = a * p + t;
    }
    PartialDifferencePair out;
    out.k.dim = out.c.dim = d;
    for (const auto& p : s.points)
        for (const auto& q : s.points) {
            out.k.points.push_back(-p + beta * q);
            out.c.points.push_back(p - alpha * q);
        }
    auto& f = out.radii;
    f.gauge = "C";
    f.R = (d + beta) / (1 + d * alpha);
    f.r = (1 + d * beta) / (d + alpha);
    f.R1 = (1 + beta) / (1 + alpha);
    f.r1 = (1 + beta) / (1 + alpha);
    f.s = (d + beta) / (1 + d * beta);
    f.s_gauge = (d + alpha) / (1 + d * alpha);
    f.formula_source = "partial difference bodies of simplices";
    return out;
}

double regular_simplex_width_radius(int d)
{
    require(d >= 1, "dimension must be at least 1");
    if (d % 2 == 1) return std::sqrt(static_cast<double>(d)) / d;
    return (d + 1.0) / std::sqrt(d + 2.0) / d;
}

FixtureRadii simplex_cap_ball_radii(int d, double rho, std::optional<double> rho2)
{
    require(d >= 1, "dimension must be at least 1");
    require(rho >= 1.0 / d && rho <= 1, "rho must lie in [1/d, 1]");
    FixtureRadii f;
    f.s = d * rho;
    f.r = 1.0 / d;
    f.r1 = std::min(regular_simplex_width_radius(d), (rho + 1.0 / d) / 2);
    if (rho2) {
        require(*rho2 >= 1.0 / d && *rho2 <= rho, "rho2 must lie in [1/d, rho]");
        f.R_pair = rho / *rho2;
        f.R_pair_reverse = 1.0;
    }
    f.formula_source = "regular simplex intersected with a ball";
    return f;
}

FixtureRadii conv_simplex_ball_radii(int d, double rho)
{
    require(d >= 1, "dimension must be at least 1");
    require(rho >= 1.0 / d && rho <= 1, "rho must lie in [1/d, 1]");
    FixtureRadii f;
    f.s = 1 / rho;
    f.R = 1.0;
    f.R1 = std::max(std::sqrt((d + 1.0) / (2.0 * d)), (1 + rho) / 2);
    f.formula_source = "convex hull of a regular simplex and a ball";
    return f;
}

VPolytope polygonal_ball(int m, double radius, PolygonFit fit, double phase)
{
    require(m >= 3, "polygon needs at least 3 vertices");
    require(radius > 0, "radius must be positive");
    std::vector<Vector> pts;
    for (int k = 0; k < m; ++k) {
        if (fit == PolygonFit::Inscribed)
            pts.push_back(polar(radius, phase + 2 * M_PI * k / m));
        else
            pts.push_back(polar(radius / std::cos(M_PI / m), phase + (2 * k + 1) * M_PI / m));
    }
    return VPolytope(2, std::move(pts));
}

VPolytope build_jung_fixture(double sigma, int m)
{
    require(sigma >= 1 && sigma <= 2, "sigma must lie in [1, 2]");
    VPolytope k = regular_simplex(2);
    const VPolytope disk = polygonal_ball(m, 1 / sigma);
    k.points.insert(k.points.end(), disk.points.begin(), disk.points.end());
    return k;
}

VPolytope build_steinhagen_fixture(double sigma, int m)
{
    require(sigma >= 1 && sigma <= 2, "sigma must lie in [1, 2]");
    require(m >= 3, "polygon needs at least 3 vertices");
    const VPolytope t = regular_simplex(2);
    std::vector<Vector> normals;
    std::vector<double> offsets;
    // facet opposite vertex i has outer normal −v_i at distance 1/2
    for (const auto& v : t.points) {
        normals.push_back(-v);
        offsets.push_back(0.5);
    }
    const double radius = sigma / 2;
    for (int k = 0; k < m; ++k) {
        normals.push_back(polar(1.0, (2 * k + 1) * M_PI / m));
        offsets.push_back(radius * std::cos(M_PI / m));
    }
    return vertices_of(HPolytope(2, std::move(normals), std::move(offsets)));
}

VPolytope build_figure_fixture(int m)
{
    require(m >= 3, "polygon needs at least 3 vertices");
    const VPolytope t = regular_simplex(2);
    // chord [p1, p2] lies on y = 1/2; put an edge of the disk polygon on y = -1/2
    VPolytope k(2, {t.points[0], t.points[1]});
    const VPolytope disk = polygonal_ball(m, 0.5, PolygonFit::Circumscribed, -M_PI / 2);
    k.points.insert(k.points.end(), disk.points.begin(), disk.points.end());
    return k;
}

FixtureRadii figure_radii()
{
    FixtureRadii f;
    f.r = 0.5;
    f.R = 7.0 / 8.0;
    f.s0 = 2.0;
    f.formula_source = "s versus s0 figure";
    return f;
}

}  // namespace polyrad::fixtures
