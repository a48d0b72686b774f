#pragma once

#include <atomic>
#include <memory>
#include <mutex>
#include <optional>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "polyrad/lp.hpp"
#include "polyrad/rational.hpp"

namespace polyrad {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using ExactVector = std::vector<Rational>;

/// Tolerance for vertex/facet deduplication and membership. One order above
/// the LP tolerances so solver noise never flips a geometric predicate.
inline constexpr double kGeomTol = 1e-8;

/// Convex hull of a finite point list (redundant points allowed).
/// `exact_points` is either empty or parallel to `points` and holds the
/// rational coordinates the body was defined with.
struct VPolytope {
    int dim = 0;
    std::vector<Vector> points;
    std::vector<ExactVector> exact_points;

    VPolytope() = default;
    VPolytope(int dim, std::vector<Vector> points);

    static VPolytope from_exact(int dim, std::vector<ExactVector> points);

    bool is_exact() const { return !exact_points.empty(); }
    std::size_t size() const { return points.size(); }
};

/// { x : normals[i]·x <= offsets[i] for all i }.
struct HPolytope {
    int dim = 0;
    std::vector<Vector> normals;
    std::vector<double> offsets;
    std::vector<ExactVector> exact_normals;
    std::vector<Rational> exact_offsets;

    HPolytope() = default;
    HPolytope(int dim, std::vector<Vector> normals, std::vector<double> offsets);

    static HPolytope from_exact(int dim, std::vector<ExactVector> normals, std::vector<Rational> offsets);

    bool is_exact() const { return !exact_normals.empty(); }
    std::size_t size() const { return normals.size(); }
};

enum class Representation { V, H };

/// A polytope in one native presentation. The other presentation is computed
/// on first request and cached; copies share the cache and concurrent first
/// access computes it once.
class Body {
public:
    Body(VPolytope v);
    Body(HPolytope h);

    int dim() const;
    Representation native() const;

    bool has_v() const;  ///< native V or already cached
    bool has_h() const;

    const VPolytope& v() const;
    const HPolytope& h() const;

    /// Native presentation size: number of points or rows.
    std::size_t native_size() const;

private:
    struct State {
        std::variant<VPolytope, HPolytope> primary;
        mutable std::once_flag once;
        mutable std::optional<VPolytope> v_alt;
        mutable std::optional<HPolytope> h_alt;
        mutable std::atomic<bool> ready{false};
    };
    void ensure_alternate() const;

    std::shared_ptr<State> state_;
};

Body negate(const Body& body);

/// c + rho * K. Throws Error{NegativeScale} for rho < 0.
Body dilate_translate(const Body& body, double rho, const Vector& center);

/// All pairwise sums; redundancy is kept.
VPolytope minkowski_sum(const VPolytope& a, const VPolytope& b);

/// K - K reduced to its vertices. The result is exactly point-symmetric.
VPolytope difference_body(const Body& body);

/// Vertices of a bounded full-dimensional H-polytope.
VPolytope vertices_of(const HPolytope& h);

/// Facets of a full-dimensional V-polytope, unit normals.
HPolytope facets_of(const VPolytope& v);

/// Removes duplicate and non-extreme points.
VPolytope extreme_points(const VPolytope& v);

/// max over K of a·x. Throws Error{ZeroDirection} for a = 0 and
/// Error{Unbounded} when an H-polytope is unbounded in direction a.
double support(const Body& body, const Vector& direction);
double support(const VPolytope& v, const Vector& direction);
double support(const HPolytope& h, const Vector& direction);

/// Dimension of the affine hull of the points (numerical rank).
int affine_dimension(const std::vector<Vector>& points);

/// Largest ball {c + r B_2} inside an H-polytope, by linear programming.
struct InscribedBall {
    Vector center;
    double radius = 0.0;
};
InscribedBall largest_inscribed_ball(const HPolytope& h, lp::Mode mode = lp::Mode::Float);

/// Largest row violation of x (negative when strictly inside).
double max_violation(const HPolytope& h, const Vector& x);

/// Mutual containment check of two presentations within tol.
bool same_set(const VPolytope& v, const HPolytope& h, double tol = kGeomTol);
bool same_set(const VPolytope& a, const VPolytope& b, double tol = kGeomTol);

}  // namespace polyrad
