#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "polyrad/polytope.hpp"

// Seeded generators shared by the property tests.
namespace testgen {

using polyrad::HPolytope;
using polyrad::Vector;
using polyrad::VPolytope;

inline Vector vec(std::initializer_list<double> xs)
{
    Vector v(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index i = 0;
    for (double x : xs) v[i++] = x;
    return v;
}

inline Vector random_direction(std::mt19937_64& rng, int d)
{
    std::normal_distribution<double> g;
    Vector v(d);
    do {
        for (int k = 0; k < d; ++k) v[k] = g(rng);
    } while (v.norm() < 1e-3);
    return v / v.norm();
}

inline Vector random_point(std::mt19937_64& rng, int d, double lo = -1.0, double hi = 1.0)
{
    std::uniform_real_distribution<double> u(lo, hi);
    Vector v(d);
    for (int k = 0; k < d; ++k) v[k] = u(rng);
    return v;
}

/// n random points in the box, plus d+1 simplex corners so the hull is full-dimensional.
inline VPolytope random_vpolytope(std::mt19937_64& rng, int d, int n)
{
    std::vector<Vector> pts;
    for (int i = 0; i < n; ++i) pts.push_back(random_point(rng, d));
    Vector corner = Vector::Constant(d, -1.2);
    pts.push_back(corner);
    for (int k = 0; k < d; ++k) {
        Vector e = corner;
        e[k] = 1.2;
        pts.push_back(e);
    }
    return VPolytope(d, pts);
}

/// Random halfspaces around the origin intersected with a bounding box.
inline HPolytope random_hpolytope(std::mt19937_64& rng, int d, int m)
{
    std::uniform_real_distribution<double> off(0.4, 1.0);
    std::vector<Vector> ns;
    std::vector<double> bs;
    for (int i = 0; i < m; ++i) {
        ns.push_back(random_direction(rng, d));
        bs.push_back(off(rng));
    }
    for (int k = 0; k < d; ++k)
        for (double s : {1.0, -1.0}) {
            Vector e = Vector::Zero(d);
            e[k] = s;
            ns.push_back(e);
            bs.push_back(1.5);
        }
    return HPolytope(d, ns, bs);
}

/// n random points in [-1, 1]^d; full-dimensional almost surely for n > d.
inline VPolytope random_cloud(std::mt19937_64& rng, int d, int n)
{
    std::vector<Vector> pts;
    for (int i = 0; i < n; ++i) pts.push_back(random_point(rng, d));
    return VPolytope(d, pts);
}

/// Haar-ish rotation from the QR factor of a Gaussian matrix, sign-fixed.
inline polyrad::Matrix random_rotation(std::mt19937_64& rng, int d)
{
    std::normal_distribution<double> g;
    polyrad::Matrix a(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) a(i, j) = g(rng);
    Eigen::HouseholderQR<polyrad::Matrix> qr(a);
    polyrad::Matrix q = qr.householderQ();
    if (q.determinant() < 0) q.col(0) *= -1;
    return q;
}

inline VPolytope box(int d, double lo, double hi)
{
    std::vector<Vector> pts;
    for (int mask = 0; mask < (1 << d); ++mask) {
        Vector p(d);
        for (int k = 0; k < d; ++k) p[k] = (mask >> k & 1) ? hi : lo;
        pts.push_back(p);
    }
    return VPolytope(d, pts);
}

inline HPolytope box_h(int d, double lo, double hi)
{
    std::vector<Vector> ns;
    std::vector<double> bs;
    for (int k = 0; k < d; ++k) {
        Vector e = Vector::Zero(d);
        e[k] = 1.0;
        ns.push_back(e);
        bs.push_back(hi);
        ns.push_back(-e);
        bs.push_back(-lo);
    }
    return HPolytope(d, ns, bs);
}

/// conv{0, e_1, ..., e_d}
inline VPolytope standard_simplex(int d)
{
    std::vector<Vector> pts{Vector::Zero(d)};
    for (int k = 0; k < d; ++k) pts.push_back(Vector::Unit(d, k));
    return VPolytope(d, pts);
}

// Regular simplex with vertices on the unit sphere: centered basis vectors of
// R^{d+1}, expressed in an orthonormal basis of the hyperplane sum(x) = 0.
inline VPolytope unit_regular_simplex(int d)
{
    polyrad::Matrix e = polyrad::Matrix::Identity(d + 1, d + 1);
    e.rowwise() -= e.colwise().mean();
    Eigen::HouseholderQR<polyrad::Matrix> qr(e.transpose());
    polyrad::Matrix q = qr.householderQ();
    polyrad::Matrix basis = q.leftCols(d);
    std::vector<Vector> pts;
    for (int i = 0; i <= d; ++i) {
        Vector p = basis.transpose() * e.row(i).transpose();
        pts.push_back(p / p.norm());
    }
    return VPolytope(d, pts);
}

}  // namespace testgen
