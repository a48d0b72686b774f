#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <thread>

#include "doctest.h"
#include "polyrad/error.hpp"
#include "polyrad/polytope.hpp"
#include "support.hpp"

using namespace polyrad;
using testgen::vec;

namespace {

ErrorCode code_of(auto&& fn)
{
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("no error raised");
    return ErrorCode::MalformedProblem;
}

bool contains_point(const std::vector<Vector>& pts, const Vector& p, double tol = 1e-9)
{
    return std::any_of(pts.begin(), pts.end(), [&](const Vector& q) { return (q - p).norm() <= tol; });
}

}  // namespace

TEST_CASE("negate")
{
    Body sq(testgen::box(2, 0, 1));
    Body neg = negate(sq);
    CHECK(same_set(neg.v(), testgen::box(2, -1, 0)));

    std::vector<Vector> cross;
    for (int k = 0; k < 3; ++k) {
        cross.push_back(Vector::Unit(3, k));
        cross.push_back(-Vector::Unit(3, k));
    }
    Body x(VPolytope(3, cross));
    CHECK(same_set(negate(x).v(), x.v()));

    Body s(testgen::standard_simplex(2));
    auto n = negate(s).v();
    for (auto p : {vec({0, 0}), vec({-1, 0}), vec({0, -1})}) CHECK(contains_point(n.points, p));

    Body h(testgen::box_h(2, 0, 1));
    CHECK(same_set(testgen::box(2, -1, 0), negate(h).h()));
}

TEST_CASE("dilate_translate")
{
    Body sq(testgen::box(2, 0, 1));
    CHECK(same_set(dilate_translate(sq, 2.0, Vector::Zero(2)).v(), testgen::box(2, 0, 2)));
    CHECK(same_set(dilate_translate(sq, 1.0, Vector::Zero(2)).v(), sq.v()));

    Body c(testgen::box_h(2, -1, 1));
    auto moved = dilate_translate(c, 0.5, vec({1, 0}));
    VPolytope expect(2, {vec({0.5, -0.5}), vec({1.5, -0.5}), vec({1.5, 0.5}), vec({0.5, 0.5})});
    CHECK(same_set(expect, moved.h()));

    CHECK(code_of([&] { dilate_translate(sq, -1.0, Vector::Zero(2)); }) == ErrorCode::NegativeScale);
}

TEST_CASE("minkowski_sum")
{
    VPolytope seg(1, {vec({0}), vec({1})});
    auto sum = minkowski_sum(seg, seg);
    CHECK(support(sum, vec({1})) == 2.0);
    CHECK(support(sum, vec({-1})) == 0.0);

    auto sq = testgen::box(2, 0, 1);
    auto shifted = minkowski_sum(sq, VPolytope(2, {vec({3, -1})}));
    CHECK(same_set(shifted, VPolytope(2, {vec({3, -1}), vec({4, -1}), vec({3, 0}), vec({4, 0})})));

    // S + (-S): 9 candidates whose hull is the hexagon ±e1, ±e2, ±(e1 - e2)
    auto s = testgen::standard_simplex(2);
    VPolytope ms;
    ms.dim = 2;
    for (auto& p : s.points) ms.points.push_back(-p);
    auto hex = minkowski_sum(s, ms);
    CHECK(hex.size() == 9);
    auto ext = extreme_points(hex);
    CHECK(ext.size() == 6);
    for (auto p : {vec({1, 0}), vec({-1, 0}), vec({0, 1}), vec({0, -1}), vec({1, -1}), vec({-1, 1})})
        CHECK(contains_point(ext.points, p));

    CHECK(code_of([&] { minkowski_sum(seg, sq); }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("difference_body")
{
    CHECK(same_set(difference_body(Body(testgen::box(2, 0, 1))), testgen::box(2, -1, 1)));

    auto seg = difference_body(Body(VPolytope(1, {vec({2}), vec({5})})));
    CHECK(seg.size() == 2);
    CHECK(support(seg, vec({1})) == 3.0);
    CHECK(support(seg, vec({-1})) == 3.0);

    auto hex = difference_body(Body(testgen::standard_simplex(2)));
    CHECK(hex.size() == 6);
    for (auto p : {vec({1, 0}), vec({-1, 0}), vec({0, 1}), vec({0, -1}), vec({1, -1}), vec({-1, 1})})
        CHECK(contains_point(hex.points, p));

    // H-presented input converts first
    auto from_h = difference_body(Body(testgen::box_h(3, 0, 2)));
    CHECK(same_set(from_h, testgen::box(3, -2, 2)));
}

TEST_CASE("vertices_of")
{
    auto sq = vertices_of(testgen::box_h(2, 0, 1));
    CHECK(sq.size() == 4);
    for (auto p : {vec({0, 0}), vec({1, 0}), vec({0, 1}), vec({1, 1})}) CHECK(contains_point(sq.points, p));

    std::vector<Vector> ns;
    std::vector<double> bs;
    for (int k = 0; k < 3; ++k) {
        ns.push_back(-Vector::Unit(3, k));
        bs.push_back(0);
    }
    ns.push_back(Vector::Ones(3));
    bs.push_back(1);
    auto simplex = vertices_of(HPolytope(3, ns, bs));
    CHECK(simplex.size() == 4);
    CHECK(contains_point(simplex.points, Vector::Zero(3)));
    for (int k = 0; k < 3; ++k) CHECK(contains_point(simplex.points, Vector::Unit(3, k)));

    // regular hexagon: rows at angles k*60deg, offset cos(30deg)
    std::vector<Vector> hn;
    std::vector<double> hb;
    for (int k = 0; k < 6; ++k) {
        const double t = M_PI / 3 * k;
        hn.push_back(vec({std::cos(t), std::sin(t)}));
        hb.push_back(std::cos(M_PI / 6));
    }
    auto hex = vertices_of(HPolytope(2, hn, hb));
    CHECK(hex.size() == 6);
    for (int k = 0; k < 6; ++k) {
        const double t = M_PI / 3 * k + M_PI / 6;
        CHECK(contains_point(hex.points, vec({std::cos(t), std::sin(t)}), 1e-9));
    }

    // redundant rows are harmless
    auto h = testgen::box_h(2, 0, 1);
    h.normals.push_back(vec({1, 1}));
    h.offsets.push_back(5);
    h.normals.push_back(vec({1, 0}));
    h.offsets.push_back(1);
    CHECK(vertices_of(h).size() == 4);

    HPolytope halfplane(2, {vec({1, 0})}, {1});
    CHECK(code_of([&] { vertices_of(halfplane); }) == ErrorCode::Unbounded);
    HPolytope wedge(2, {vec({1, 0}), vec({0, 1})}, {1, 1});
    CHECK(code_of([&] { vertices_of(wedge); }) == ErrorCode::Unbounded);
    HPolytope flat(2, {vec({1, 0}), vec({-1, 0}), vec({0, 1}), vec({0, -1})}, {0, 0, 1, 1});
    CHECK(code_of([&] { vertices_of(flat); }) == ErrorCode::NotFullDimensional);
    HPolytope empty(1, {vec({1}), vec({-1})}, {-1, -1});
    CHECK(code_of([&] { vertices_of(empty); }) == ErrorCode::Infeasible);
}

TEST_CASE("facets_of")
{
    CHECK(facets_of(testgen::box(2, 0, 1)).size() == 4);

    for (int d = 2; d <= 5; ++d) {
        auto t = testgen::unit_regular_simplex(d);
        auto h = facets_of(t);
        CHECK(h.size() == static_cast<std::size_t>(d + 1));
        for (double b : h.offsets) CHECK(b == doctest::Approx(1.0 / d).epsilon(1e-12));
    }

    std::vector<Vector> cross;
    for (int k = 0; k < 3; ++k) {
        cross.push_back(Vector::Unit(3, k));
        cross.push_back(-Vector::Unit(3, k));
    }
    auto oct = facets_of(VPolytope(3, cross));
    CHECK(oct.size() == 8);
    for (std::size_t i = 0; i < oct.size(); ++i) {
        CHECK(oct.offsets[i] == doctest::Approx(1 / std::sqrt(3.0)));
        for (int k = 0; k < 3; ++k) CHECK(std::abs(oct.normals[i][k]) == doctest::Approx(1 / std::sqrt(3.0)));
    }

    // cube with interior and face-center points: still 6 facets
    auto cube = testgen::box(3, -1, 1);
    cube.points.push_back(Vector::Zero(3));
    cube.points.push_back(vec({1, 0, 0}));
    cube.points.push_back(vec({0.5, 1, -0.5}));
    cube.points.push_back(cube.points[0]);
    CHECK(facets_of(cube).size() == 6);

    VPolytope flat(3, {vec({0, 0, 0}), vec({1, 0, 0}), vec({0, 1, 0}), vec({1, 1, 0})});
    CHECK(code_of([&] { facets_of(flat); }) == ErrorCode::NotFullDimensional);
    VPolytope line(2, {vec({0, 0}), vec({1, 1}), vec({2, 2})});
    CHECK(code_of([&] { facets_of(line); }) == ErrorCode::NotFullDimensional);
}

TEST_CASE("support")
{
    CHECK(support(Body(testgen::box(2, -1, 1)), vec({1, 0})) == 1.0);
    CHECK(support(Body(testgen::box_h(2, -1, 1)), vec({1, 0})) == doctest::Approx(1.0));

    Body s(testgen::standard_simplex(2));
    const Vector a = vec({1, 0});
    const double lhs = support(s, a) + support(negate(s), a);
    CHECK(lhs == 1.0);
    CHECK(support(difference_body(s), a) == lhs);

    const Vector c = vec({0.3, -2});
    CHECK(support(dilate_translate(s, 2.5, c), vec({1, 2})) == doctest::Approx(vec({1, 2}).dot(c) + 2.5 * support(s, vec({1, 2}))));

    CHECK(code_of([&] { support(s, Vector::Zero(2)); }) == ErrorCode::ZeroDirection);
    CHECK(code_of([&] { support(s, Vector::Zero(3)); }) == ErrorCode::DimensionMismatch);
    CHECK(code_of([&] { support(HPolytope(2, {vec({1, 0})}, {1}), vec({0, 1})); }) == ErrorCode::Unbounded);
}

TEST_CASE("constructor validation")
{
    CHECK(code_of([] { VPolytope(2, {}); }) == ErrorCode::ParameterOutOfRange);
    CHECK(code_of([] { VPolytope(2, {vec({1, 2, 3})}); }) == ErrorCode::DimensionMismatch);
    CHECK(code_of([] { HPolytope(2, {vec({0, 0})}, {1}); }) == ErrorCode::ZeroDirection);
    CHECK(code_of([] { HPolytope(2, {vec({1, 0})}, {1, 2}); }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("exact payload survives operations")
{
    auto tri = VPolytope::from_exact(2, {{Rational(0), Rational(0)}, {Rational(1, 3), Rational(0)}, {Rational(0), Rational(1, 3)}});
    Body b(tri);
    auto diff = difference_body(b);
    REQUIRE(diff.is_exact());
    for (std::size_t i = 0; i < diff.size(); ++i)
        for (int k = 0; k < 2; ++k) CHECK(to_double(diff.exact_points[i][static_cast<std::size_t>(k)]) == diff.points[i][k]);
    auto moved = dilate_translate(b, 3.0, vec({1, 0}));
    REQUIRE(moved.v().is_exact());
    CHECK(moved.v().exact_points[1][0] == Rational(2));
}

TEST_CASE("property: H to V to H round trip")
{
    std::mt19937_64 rng(7001);
    for (int trial = 0; trial < 40; ++trial) {
        const int d = 2 + trial % 3;
        auto h = testgen::random_hpolytope(rng, d, 3 + trial % 6);
        auto v = vertices_of(h);
        auto back = facets_of(v);
        CHECK(same_set(v, h));
        CHECK(same_set(v, back));
        for (const auto& p : v.points) CHECK(max_violation(h, p) <= kGeomTol);
    }
}

TEST_CASE("property: V to H to V round trip")
{
    std::mt19937_64 rng(7002);
    for (int trial = 0; trial < 30; ++trial) {
        const int d = 2 + trial % 3;
        auto v = testgen::random_vpolytope(rng, d, 6 + trial % 8);
        auto h = facets_of(v);
        auto back = vertices_of(h);
        CHECK(same_set(extreme_points(v), back));
        CHECK(extreme_points(v).size() == back.size());
        for (const auto& p : v.points) CHECK(max_violation(h, p) <= kGeomTol);
    }
}

TEST_CASE("property: difference body is exactly symmetric")
{
    std::mt19937_64 rng(7003);
    for (int trial = 0; trial < 20; ++trial) {
        const int d = 1 + trial % 4;
        auto b = difference_body(Body(testgen::random_vpolytope(rng, d, 5)));
        for (const auto& p : b.points) {
            const Vector q = -p;
            CHECK(std::any_of(b.points.begin(), b.points.end(), [&](const Vector& x) { return x == q; }));
        }
    }
}

TEST_CASE("property: support homogeneity and additivity")
{
    std::mt19937_64 rng(7004);
    std::uniform_real_distribution<double> lam(0.1, 10.0);
    for (int trial = 0; trial < 40; ++trial) {
        const int d = 1 + trial % 5;
        auto k = testgen::random_vpolytope(rng, d, 4);
        auto c = testgen::random_vpolytope(rng, d, 3);
        auto sum = minkowski_sum(k, c);
        for (int j = 0; j < 5; ++j) {
            const Vector a = testgen::random_direction(rng, d);
            const double l = lam(rng);
            CHECK(support(k, l * a) == doctest::Approx(l * support(k, a)).epsilon(1e-12));
            CHECK(support(sum, a) == doctest::Approx(support(k, a) + support(c, a)).epsilon(1e-12));
        }
    }
    for (int trial = 0; trial < 15; ++trial) {
        const int d = 2 + trial % 3;
        auto h = testgen::random_hpolytope(rng, d, 5);
        auto v = vertices_of(h);
        const Vector a = testgen::random_direction(rng, d);
        CHECK(support(h, a) == doctest::Approx(support(v, a)).epsilon(1e-9));
        CHECK(support(h, 3.0 * a) == doctest::Approx(3.0 * support(h, a)).epsilon(1e-9));
    }
}

TEST_CASE("concurrent first access computes the alternate once")
{
    std::mt19937_64 rng(7005);
    Body b(testgen::random_hpolytope(rng, 3, 8));
    CHECK_FALSE(b.has_v());
    std::vector<const VPolytope*> seen(8);
    std::vector<std::thread> threads;
    for (std::size_t i = 0; i < seen.size(); ++i)
        threads.emplace_back([&, i] { seen[i] = &b.v(); });
    for (auto& t : threads) t.join();
    for (auto* p : seen) CHECK(p == seen[0]);
    CHECK(b.has_v());
    Body copy = b;
    CHECK(&copy.v() == seen[0]);
}
