#include "polyrad/euclid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace polyrad {

// ---------------------------------------------------------------- Ellipsoid

Matrix Ellipsoid::factor() const
{
    return Matrix(shape.inverse().llt().matrixL());
}

double Ellipsoid::gauge(const Vector& x) const
{
    const Vector y = x - center;
    return y.dot(shape * y);
}

double Ellipsoid::log_volume_ratio() const
{
    return -0.5 * std::log(shape.determinant());
}

// ---------------------------------------------------------------- balls

namespace {

class MoveToFront {
public:
    MoveToFront(std::vector<Vector> pts, int d) : pts_(std::move(pts)), d_(d) {}

    BallResult solve()
    {
        std::vector<Vector> support;
        return run(pts_.size(), support);
    }

private:
    static bool inside(const BallResult& b, const Vector& p)
    {
        if (b.radius < 0) return false;
        return (p - b.center).norm() <= b.radius * (1 + 1e-12) + 1e-13;
    }

    // Smallest ball with every support point on its boundary.
    static BallResult ball_of(const std::vector<Vector>& s, int d)
    {
        if (s.empty()) return {Vector::Zero(d), -1.0};
        if (s.size() == 1) return {s[0], 0.0};
        const auto k = static_cast<Eigen::Index>(s.size() - 1);
        Matrix q(d, k);
        for (Eigen::Index i = 0; i < k; ++i) q.col(i) = s[static_cast<std::size_t>(i) + 1] - s[0];
        const Matrix g = q.transpose() * q;
        const Vector rhs = 0.5 * g.diagonal();
        const Vector lambda = g.completeOrthogonalDecomposition().solve(rhs);
        BallResult b{s[0] + q * lambda, 0.0};
        for (const auto& p : s) b.radius = std::max(b.radius, (p - b.center).norm());
        return b;
    }

    BallResult run(std::size_t n, std::vector<Vector>& support)
    {
        BallResult b = ball_of(support, d_);
        if (support.size() == static_cast<std::size_t>(d_) + 1) return b;
        for (std::size_t i = 0; i < n; ++i) {
            if (inside(b, pts_[i])) continue;
            support.push_back(pts_[i]);
            b = run(i, support);
            support.pop_back();
            std::rotate(pts_.begin(), pts_.begin() + static_cast<std::ptrdiff_t>(i),
                        pts_.begin() + static_cast<std::ptrdiff_t>(i) + 1);
        }
        return b;
    }

    std::vector<Vector> pts_;
    int d_;
};

}  // namespace

BallResult min_enclosing_ball(const VPolytope& k, std::uint64_t seed)
{
    std::vector<Vector> pts = k.points;
    std::mt19937_64 rng(seed);
    std::shuffle(pts.begin(), pts.end(), rng);
    return MoveToFront(std::move(pts), k.dim).solve();
}

BallResult chebyshev(const HPolytope& k, lp::Mode mode)
{
    auto ball = largest_inscribed_ball(k, mode);
    return {std::move(ball.center), ball.radius};
}

double euclid_diameter(const VPolytope& k)
{
    double best = 0.0;
    for (std::size_t i = 0; i < k.size(); ++i)
        for (std::size_t j = i + 1; j < k.size(); ++j) best = std::max(best, (k.points[i] - k.points[j]).squaredNorm());
    return std::sqrt(best) / 2;
}

double euclid_width(const VPolytope& k)
{
    const HPolytope h = facets_of(difference_body(Body(k)));
    return *std::min_element(h.offsets.begin(), h.offsets.end()) / 2;
}

// ---------------------------------------------------------------- Loewner

Ellipsoid loewner_ellipsoid(const VPolytope& k, double eps, std::size_t max_iterations)
{
    if (!(eps > 0 && eps < 1)) raise(ErrorCode::ParameterOutOfRange, "ellipsoid accuracy must lie in (0, 1)");
    const int d = k.dim;
    if (affine_dimension(k.points) < d) raise(ErrorCode::NotFullDimensional, "points do not span R^d");
    const VPolytope ext = extreme_points(k);
    const auto n = static_cast<Eigen::Index>(ext.size());

    Matrix q(d + 1, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        q.col(i).head(d) = ext.points[static_cast<std::size_t>(i)];
        q(d, i) = 1.0;
    }
    const double lifted = d + 1;
    Vector u = Vector::Constant(n, 1.0 / static_cast<double>(n));
    bool converged = false;

    for (std::size_t it = 0; it < max_iterations; ++it) {
        const Matrix x = q * u.asDiagonal() * q.transpose();
        const Matrix z = x.llt().solve(q);
        const Vector omega = q.cwiseProduct(z).colwise().sum().transpose();

        Eigen::Index j = 0;
        const double kappa = omega.maxCoeff(&j);
        Eigen::Index m = -1;
        double low = std::numeric_limits<double>::infinity();
        for (Eigen::Index i = 0; i < n; ++i)
            if (u[i] > 0 && omega[i] < low) {
                low = omega[i];
                m = i;
            }
        const double eps_plus = kappa / lifted - 1;
        const double eps_minus = 1 - low / lifted;
        if (std::max(eps_plus, eps_minus) <= eps) {
            converged = true;
            break;
        }
        if (eps_plus > eps_minus) {
            const double beta = (kappa - lifted) / (lifted * (kappa - 1));
            u *= 1 - beta;
            u[j] += beta;
        } else {
            const double beta = std::min((lifted - low) / (lifted * (low - 1)), u[m] / (1 - u[m]));
            u *= 1 + beta;
            u[m] -= beta;
            if (u[m] < 1e-300) u[m] = 0.0;
        }
    }

    Matrix p(d, n);
    for (Eigen::Index i = 0; i < n; ++i) p.col(i) = ext.points[static_cast<std::size_t>(i)];
    Ellipsoid e;
    e.center = p * u;
    const Matrix second = p * u.asDiagonal() * p.transpose() - e.center * e.center.transpose();
    e.shape = second.inverse() / d;
    e.shape = 0.5 * (e.shape + e.shape.transpose());
    double worst = 0.0;
    for (const auto& pt : k.points) worst = std::max(worst, e.gauge(pt));
    if (worst > 1.0) e.shape /= worst;
    if (!converged) throw EllipsoidLimitError("Loewner iteration cap reached", std::move(e));
    return e;
}

// ---------------------------------------------------------------- John

namespace {

class JohnBarrier {
public:
    JohnBarrier(std::vector<Vector> a, std::vector<double> b, int d)
        : a_(std::move(a)), b_(std::move(b)), d_(d), n_(d + d * (d + 1) / 2)
    {
        for (int col = 0; col < d; ++col)
            for (int row = col; row < d; ++row) index_.push_back({row, col});
    }

    int size() const { return n_; }

    Vector pack(const Vector& c, const Matrix& l) const
    {
        Vector x(n_);
        x.head(d_) = c;
        for (std::size_t i = 0; i < index_.size(); ++i) x[d_ + static_cast<Eigen::Index>(i)] = l(index_[i].first, index_[i].second);
        return x;
    }

    void unpack(const Vector& x, Vector& c, Matrix& l) const
    {
        c = x.head(d_);
        l = Matrix::Zero(d_, d_);
        for (std::size_t i = 0; i < index_.size(); ++i) l(index_[i].first, index_[i].second) = x[d_ + static_cast<Eigen::Index>(i)];
    }

    bool feasible(const Vector& x) const
    {
        Vector c;
        Matrix l;
        unpack(x, c, l);
        for (int k = 0; k < d_; ++k)
            if (!(l(k, k) > 0)) return false;
        for (std::size_t i = 0; i < a_.size(); ++i) {
            const double s = b_[i] - a_[i].dot(c);
            if (!(s > 0) || !(s * s - (l.transpose() * a_[i]).squaredNorm() > 0)) return false;
        }
        return true;
    }

    /// t·(−log det L) − Σ log((b − a·c)² − ‖Lᵀa‖²); +inf outside the domain.
    double value(const Vector& x, double t) const
    {
        if (!feasible(x)) return std::numeric_limits<double>::infinity();
        Vector c;
        Matrix l;
        unpack(x, c, l);
        double f = 0.0;
        for (int k = 0; k < d_; ++k) f -= t * std::log(l(k, k));
        for (std::size_t i = 0; i < a_.size(); ++i) {
            const double s = b_[i] - a_[i].dot(c);
            f -= std::log(s * s - (l.transpose() * a_[i]).squaredNorm());
        }
        return f;
    }

    /// Gradient of −log det L.
    void objective_gradient(const Vector& x, Vector& grad) const
    {
        Vector c;
        Matrix l;
        unpack(x, c, l);
        grad = Vector::Zero(n_);
        for (std::size_t p = 0; p < index_.size(); ++p)
            if (index_[p].first == index_[p].second) grad[d_ + static_cast<Eigen::Index>(p)] = -1.0 / l(index_[p].first, index_[p].first);
    }

    void derivatives(const Vector& x, double t, Vector& grad, Matrix& hess) const
    {
        Vector c;
        Matrix l;
        unpack(x, c, l);
        grad = Vector::Zero(n_);
        hess = Matrix::Zero(n_, n_);
        for (std::size_t p = 0; p < index_.size(); ++p) {
            const auto [row, col] = index_[p];
            if (row != col) continue;
            const auto at = d_ + static_cast<Eigen::Index>(p);
            grad[at] -= t / l(row, row);
            hess(at, at) += t / (l(row, row) * l(row, row));
        }
        Vector dg(n_);
        for (std::size_t i = 0; i < a_.size(); ++i) {
            const Vector& a = a_[i];
            const double s = b_[i] - a.dot(c);
            const Vector v = l.transpose() * a;
            const double g = s * s - v.squaredNorm();
            dg.head(d_) = -2 * s * a;
            for (std::size_t p = 0; p < index_.size(); ++p) {
                const auto [row, col] = index_[p];
                dg[d_ + static_cast<Eigen::Index>(p)] = -2 * v[col] * a[row];
            }
            grad -= dg / g;
            hess += dg * dg.transpose() / (g * g);
            hess.topLeftCorner(d_, d_) -= 2 * a * a.transpose() / g;
            for (std::size_t p = 0; p < index_.size(); ++p)
                for (std::size_t r = 0; r < index_.size(); ++r) {
                    if (index_[p].second != index_[r].second) continue;
                    hess(d_ + static_cast<Eigen::Index>(p), d_ + static_cast<Eigen::Index>(r)) +=
                        2 * a[index_[p].first] * a[index_[r].first] / g;
                }
        }
    }

private:
    std::vector<Vector> a_;
    std::vector<double> b_;
    int d_;
    int n_;
    std::vector<std::pair<int, int>> index_;
};

Ellipsoid to_ellipsoid(const JohnBarrier& barrier, const Vector& x)
{
    Vector c;
    Matrix l;
    barrier.unpack(x, c, l);
    const Matrix inv = l.triangularView<Eigen::Lower>().solve(Matrix::Identity(l.rows(), l.cols()));
    Ellipsoid e;
    e.center = c;
    e.shape = inv.transpose() * inv;
    return e;
}

}  // namespace

Ellipsoid john_ellipsoid(const HPolytope& k, double eps, std::size_t max_newton_steps)
{
    if (!(eps > 0 && eps < 1)) raise(ErrorCode::ParameterOutOfRange, "ellipsoid accuracy must lie in (0, 1)");
    const int d = k.dim;
    for (int i = 0; i < d; ++i) {
        support(k, Vector::Unit(d, i));
        support(k, -Vector::Unit(d, i));
    }
    const auto ball = largest_inscribed_ball(k);
    double scale = 1.0;
    for (double b : k.offsets) scale = std::max(scale, std::abs(b));
    if (ball.radius <= kGeomTol * scale) raise(ErrorCode::NotFullDimensional, "H-polytope has empty interior");

    std::vector<Vector> a;
    std::vector<double> b;
    for (std::size_t i = 0; i < k.size(); ++i) {
        const double len = k.normals[i].norm();
        a.push_back(k.normals[i] / len);
        b.push_back(k.offsets[i] / len);
    }
    const JohnBarrier barrier(a, b, d);
    const double m = static_cast<double>(a.size());
    Vector x = barrier.pack(ball.center, 0.99 * ball.radius * Matrix::Identity(d, d));

    // an order below the volume tolerance so that tight instances stay within audit tolerances
    const double target_gap = 1e-1 * d * std::log1p(eps);
    const double mu = 4.0;
    double t = 1.0;
    std::size_t steps = 0;
    Vector grad, dx;
    Matrix hess;
    for (;;) {
        for (;;) {
            barrier.derivatives(x, t, grad, hess);
            dx = hess.ldlt().solve(-grad);
            const double decrement = -grad.dot(dx);
            const double f0 = barrier.value(x, t);
            // lambda^2 <= 1e-3 keeps the duality gap within 1.1 nu/t; below roundoff of f nothing is left to gain
            if (!(decrement > std::max(1e-3, 1e-12 * std::abs(f0)))) break;
            if (steps == max_newton_steps)
                throw EllipsoidLimitError("John Newton step cap reached", to_ellipsoid(barrier, x));
            ++steps;
            double alpha = 1.0;
            while (alpha > 1e-10 && !(barrier.value(x + alpha * dx, t) <= f0 - 0.25 * alpha * decrement)) alpha *= 0.5;
            if (alpha <= 1e-10) break;
            x += alpha * dx;
        }
        if (1.1 * 2 * m / t <= target_gap) break;
        // predictor along the central path, linear in 1/t: dx/d(1/t) = t^2 H^-1 grad(-log det L)
        Vector objective_grad = Vector::Zero(barrier.size());
        barrier.objective_gradient(x, objective_grad);
        const Vector tangent = hess.ldlt().solve(objective_grad) * (t * t);
        const double next = t * mu;
        const Vector shift = (1.0 / next - 1.0 / t) * tangent;
        double best = barrier.value(x, next), best_beta = 0.0;
        for (double beta = 2.0; beta > 1e-3; beta *= 0.5) {
            const double f = barrier.value(x + beta * shift, next);
            if (f < best) best = f, best_beta = beta;
        }
        x += best_beta * shift;
        t = next;
    }
    return to_ellipsoid(barrier, x);
}

}  // namespace polyrad
