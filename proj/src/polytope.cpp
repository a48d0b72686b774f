#include "polyrad/polytope.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "polyrad/error.hpp"

namespace polyrad {

namespace {

double coordinate_scale(const std::vector<Vector>& points)
{
    double s = 1.0;
    for (const auto& p : points) s = std::max(s, p.cwiseAbs().maxCoeff());
    return s;
}

void check_dims(int dim, const std::vector<Vector>& vs, const char* what)
{
    if (dim < 1) raise(ErrorCode::DimensionMismatch, "dimension must be positive");
    for (const auto& v : vs)
        if (v.size() != dim)
            raise(ErrorCode::DimensionMismatch, std::string(what) + " of length " + std::to_string(v.size()) +
                                                    " in dimension " + std::to_string(dim));
}

Vector to_vector(const ExactVector& e)
{
    Vector v(static_cast<Eigen::Index>(e.size()));
    for (std::size_t i = 0; i < e.size(); ++i) v[static_cast<Eigen::Index>(i)] = to_double(e[i]);
    return v;
}

ExactVector to_exact(const Vector& v)
{
    ExactVector e;
    e.reserve(static_cast<std::size_t>(v.size()));
    for (Eigen::Index i = 0; i < v.size(); ++i) e.push_back(exact_from_double(v[i]));
    return e;
}

VPolytope select(const VPolytope& v, const std::vector<std::size_t>& idx)
{
    VPolytope out;
    out.dim = v.dim;
    for (std::size_t i : idx) {
        out.points.push_back(v.points[i]);
        if (v.is_exact()) out.exact_points.push_back(v.exact_points[i]);
    }
    return out;
}

// Indices of pairwise-distinct points (max-norm distance > tol).
std::vector<std::size_t> unique_indices(const std::vector<Vector>& pts, double tol)
{
    std::vector<std::size_t> order(pts.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const auto& p = pts[a];
        const auto& q = pts[b];
        for (Eigen::Index k = 0; k < p.size(); ++k)
            if (p[k] != q[k]) return p[k] < q[k];
        return a < b;
    });
    std::vector<std::size_t> kept;
    std::vector<bool> dropped(pts.size(), false);
    for (std::size_t oi = 0; oi < order.size(); ++oi) {
        const std::size_t i = order[oi];
        if (dropped[i]) continue;
        kept.push_back(i);
        for (std::size_t oj = oi + 1; oj < order.size(); ++oj) {
            const std::size_t j = order[oj];
            if (pts[j][0] - pts[i][0] > tol) break;
            if (!dropped[j] && (pts[j] - pts[i]).cwiseAbs().maxCoeff() <= tol) dropped[j] = true;
        }
    }
    std::sort(kept.begin(), kept.end());
    return kept;
}

// Counter-clockwise hull vertices of planar points; points within `tol` of a
// hull edge are dropped.
std::vector<std::size_t> hull_2d(const std::vector<Vector>& pts, double tol)
{
    std::vector<std::size_t> idx = unique_indices(pts, tol);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        if (pts[a][0] != pts[b][0]) return pts[a][0] < pts[b][0];
        return pts[a][1] < pts[b][1];
    });
    if (idx.size() < 3) return idx;
    auto keeps_turn = [&](std::size_t o, std::size_t a, std::size_t b) {
        const Vector oa = pts[a] - pts[o];
        const Vector ob = pts[b] - pts[o];
        const double cross = oa[0] * ob[1] - oa[1] * ob[0];
        return cross > tol * ob.norm();
    };
    std::vector<std::size_t> hull(2 * idx.size());
    std::size_t k = 0;
    for (std::size_t i : idx) {
        while (k >= 2 && !keeps_turn(hull[k - 2], hull[k - 1], i)) --k;
        hull[k++] = i;
    }
    for (std::size_t t = idx.size() - 1, lower = k + 1; t-- > 0;) {
        const std::size_t i = idx[t];
        while (k >= lower && !keeps_turn(hull[k - 2], hull[k - 1], i)) --k;
        hull[k++] = i;
    }
    hull.resize(k - 1);
    return hull;
}

bool point_in_hull_of_others(const std::vector<Vector>& pts, std::size_t i)
{
    const int d = static_cast<int>(pts[i].size());
    const std::size_t n = pts.size();
    lp::LpProblem p(n - 1);
    for (int k = 0; k < d; ++k) {
        auto& row = p.add_row(lp::Relation::Equal, pts[i][k]);
        for (std::size_t j = 0, col = 0; j < n; ++j) {
            if (j == i) continue;
            row.coefficients[col++] = pts[j][k];
        }
    }
    auto& sum = p.add_row(lp::Relation::Equal, 1.0);
    std::fill(sum.coefficients.begin(), sum.coefficients.end(), 1.0);
    return lp::solve(p).status == lp::Status::Optimal;
}

std::vector<std::size_t> extreme_indices(const VPolytope& v)
{
    const double tol = kGeomTol * coordinate_scale(v.points) * 0.1;
    if (v.dim == 2) return hull_2d(v.points, tol);

    std::vector<std::size_t> idx = unique_indices(v.points, tol);
    if (v.dim == 1) {
        auto [lo, hi] = std::minmax_element(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
            return v.points[a][0] < v.points[b][0];
        });
        std::vector<std::size_t> out{*lo};
        if (*hi != *lo) out.push_back(*hi);
        std::sort(out.begin(), out.end());
        return out;
    }
    if (idx.size() <= 2) return idx;
    std::vector<Vector> unique;
    for (std::size_t i : idx) unique.push_back(v.points[i]);
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < unique.size(); ++k)
        if (!point_in_hull_of_others(unique, k)) out.push_back(idx[k]);
    return out;
}

struct Facet {
    Vector normal;
    double offset;
};

void add_facet(std::vector<Facet>& facets, Vector n, double b, double tol)
{
    for (const auto& f : facets)
        if ((f.normal - n).cwiseAbs().maxCoeff() <= 1e-7 && std::abs(f.offset - b) <= tol) return;
    facets.push_back({std::move(n), b});
}

// Hyperplanes through affinely independent d-subsets with every point on one side.
std::vector<Facet> brute_force_facets(const std::vector<Vector>& pts, int d, double tol)
{
    const std::size_t n = pts.size();
    std::vector<Facet> facets;
    std::vector<std::size_t> comb(static_cast<std::size_t>(d));
    std::iota(comb.begin(), comb.end(), 0);
    Matrix diffs(d - 1, d);
    Matrix minor(d - 1, d - 1);
    const double degenerate = 1e-12;

    for (;;) {
        bool covered = false;
        for (const auto& f : facets) {
            bool all_on = true;
            for (std::size_t c : comb)
                if (std::abs(f.normal.dot(pts[c]) - f.offset) > tol) {
                    all_on = false;
                    break;
                }
            if (all_on) {
                covered = true;
                break;
            }
        }
        if (!covered) {
            for (int r = 1; r < d; ++r) diffs.row(r - 1) = (pts[comb[static_cast<std::size_t>(r)]] - pts[comb[0]]).transpose();
            Vector normal(d);
            for (int j = 0; j < d; ++j) {
                for (int c = 0, cc = 0; c < d; ++c) {
                    if (c == j) continue;
                    minor.col(cc++) = diffs.col(c);
                }
                const double det = d == 1 ? 1.0 : minor.determinant();
                normal[j] = (j % 2 == 0) ? det : -det;
            }
            const double len = normal.norm();
            if (len > degenerate * std::pow(diffs.cwiseAbs().maxCoeff(), d - 1)) {
                normal /= len;
                const double b = normal.dot(pts[comb[0]]);
                double lo = 0.0, hi = 0.0;
                for (const auto& p : pts) {
                    const double s = normal.dot(p) - b;
                    lo = std::min(lo, s);
                    hi = std::max(hi, s);
                    if (lo < -tol && hi > tol) break;
                }
                if (hi <= tol && lo < -tol)
                    add_facet(facets, normal, b, tol);
                else if (lo >= -tol && hi > tol)
                    add_facet(facets, -normal, -b, tol);
            }
        }

        int k = d - 1;
        while (k >= 0 && comb[static_cast<std::size_t>(k)] == n - static_cast<std::size_t>(d) + static_cast<std::size_t>(k)) --k;
        if (k < 0) break;
        ++comb[static_cast<std::size_t>(k)];
        for (int j = k + 1; j < d; ++j) comb[static_cast<std::size_t>(j)] = comb[static_cast<std::size_t>(j - 1)] + 1;
    }
    return facets;
}

}  // namespace

VPolytope::VPolytope(int d, std::vector<Vector> pts) : dim(d), points(std::move(pts))
{
    if (points.empty()) raise(ErrorCode::ParameterOutOfRange, "a V-polytope needs at least one point");
    check_dims(dim, points, "point");
}

VPolytope VPolytope::from_exact(int d, std::vector<ExactVector> pts)
{
    std::vector<Vector> approx;
    for (const auto& p : pts) approx.push_back(to_vector(p));
    VPolytope v(d, std::move(approx));
    v.exact_points = std::move(pts);
    return v;
}

HPolytope::HPolytope(int d, std::vector<Vector> ns, std::vector<double> bs)
    : dim(d), normals(std::move(ns)), offsets(std::move(bs))
{
    check_dims(dim, normals, "normal");
    if (normals.size() != offsets.size())
        raise(ErrorCode::DimensionMismatch, "normals and offsets differ in count");
    for (std::size_t i = 0; i < normals.size(); ++i) {
        if (normals[i].cwiseAbs().maxCoeff() == 0.0) raise(ErrorCode::ZeroDirection, "zero normal in row " + std::to_string(i));
        if (!std::isfinite(offsets[i])) raise(ErrorCode::ParseError, "non-finite offset in row " + std::to_string(i));
    }
}

HPolytope HPolytope::from_exact(int d, std::vector<ExactVector> ns, std::vector<Rational> bs)
{
    std::vector<Vector> approx;
    for (const auto& n : ns) approx.push_back(to_vector(n));
    std::vector<double> off;
    for (const auto& b : bs) off.push_back(to_double(b));
    HPolytope h(d, std::move(approx), std::move(off));
    h.exact_normals = std::move(ns);
    h.exact_offsets = std::move(bs);
    return h;
}

// ---------------------------------------------------------------- Body

Body::Body(VPolytope v) : state_(std::make_shared<State>())
{
    state_->primary = std::move(v);
}

Body::Body(HPolytope h) : state_(std::make_shared<State>())
{
    state_->primary = std::move(h);
}

int Body::dim() const
{
    return std::visit([](const auto& p) { return p.dim; }, state_->primary);
}

Representation Body::native() const
{
    return std::holds_alternative<VPolytope>(state_->primary) ? Representation::V : Representation::H;
}

std::size_t Body::native_size() const
{
    return std::visit([](const auto& p) { return p.size(); }, state_->primary);
}

void Body::ensure_alternate() const
{
    std::call_once(state_->once, [this] {
        if (native() == Representation::V)
            state_->h_alt = facets_of(std::get<VPolytope>(state_->primary));
        else
            state_->v_alt = vertices_of(std::get<HPolytope>(state_->primary));
        state_->ready = true;
    });
}

bool Body::has_v() const { return native() == Representation::V || state_->ready; }
bool Body::has_h() const { return native() == Representation::H || state_->ready; }

const VPolytope& Body::v() const
{
    if (native() == Representation::V) return std::get<VPolytope>(state_->primary);
    ensure_alternate();
    return *state_->v_alt;
}

const HPolytope& Body::h() const
{
    if (native() == Representation::H) return std::get<HPolytope>(state_->primary);
    ensure_alternate();
    return *state_->h_alt;
}

// ---------------------------------------------------------------- operations

namespace {

VPolytope negate_v(const VPolytope& v)
{
    VPolytope out = v;
    for (auto& p : out.points) p = -p;
    for (auto& e : out.exact_points)
        for (auto& x : e) x = -x;
    return out;
}

HPolytope negate_h(const HPolytope& h)
{
    HPolytope out = h;
    for (auto& n : out.normals) n = -n;
    for (auto& e : out.exact_normals)
        for (auto& x : e) x = -x;
    return out;
}

}  // namespace

Body negate(const Body& body)
{
    if (body.native() == Representation::V) return Body(negate_v(body.v()));
    return Body(negate_h(body.h()));
}

Body dilate_translate(const Body& body, double rho, const Vector& center)
{
    if (rho < 0) raise(ErrorCode::NegativeScale, "dilatation factor " + std::to_string(rho));
    if (center.size() != body.dim()) raise(ErrorCode::DimensionMismatch, "translation vector length");
    if (body.native() == Representation::V) {
        VPolytope out = body.v();
        for (auto& p : out.points) p = center + rho * p;
        if (out.is_exact()) {
            const Rational r = exact_from_double(rho);
            const ExactVector c = to_exact(center);
            for (auto& e : out.exact_points)
                for (std::size_t k = 0; k < e.size(); ++k) e[k] = c[k] + r * e[k];
        }
        return Body(std::move(out));
    }
    HPolytope out = body.h();
    for (std::size_t i = 0; i < out.size(); ++i) out.offsets[i] = rho * out.offsets[i] + out.normals[i].dot(center);
    if (out.is_exact()) {
        const Rational r = exact_from_double(rho);
        const ExactVector c = to_exact(center);
        for (std::size_t i = 0; i < out.size(); ++i) {
            Rational shift = 0;
            for (std::size_t k = 0; k < c.size(); ++k) shift += out.exact_normals[i][k] * c[k];
            out.exact_offsets[i] = r * out.exact_offsets[i] + shift;
        }
    }
    return Body(std::move(out));
}

VPolytope minkowski_sum(const VPolytope& a, const VPolytope& b)
{
    if (a.dim != b.dim) raise(ErrorCode::DimensionMismatch, "Minkowski sum of different dimensions");
    VPolytope out;
    out.dim = a.dim;
    const bool exact = a.is_exact() && b.is_exact();
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) {
            out.points.push_back(a.points[i] + b.points[j]);
            if (exact) {
                ExactVector e(a.exact_points[i]);
                for (std::size_t k = 0; k < e.size(); ++k) e[k] += b.exact_points[j][k];
                out.exact_points.push_back(std::move(e));
            }
        }
    return out;
}

VPolytope extreme_points(const VPolytope& v) { return select(v, extreme_indices(v)); }

VPolytope difference_body(const Body& body)
{
    const VPolytope k = extreme_points(body.v());
    VPolytope candidates = minkowski_sum(k, negate_v(k));
    VPolytope hull = extreme_points(candidates);

    // Union with the mirror image so the output is symmetric even when a
    // tolerance decision kept p but not -p.
    VPolytope both = hull;
    const VPolytope mirrored = negate_v(hull);
    both.points.insert(both.points.end(), mirrored.points.begin(), mirrored.points.end());
    both.exact_points.insert(both.exact_points.end(), mirrored.exact_points.begin(), mirrored.exact_points.end());
    return select(both, unique_indices(both.points, 0.0));
}

int affine_dimension(const std::vector<Vector>& points)
{
    if (points.size() <= 1) return 0;
    const Eigen::Index d = points.front().size();
    Matrix centered(static_cast<Eigen::Index>(points.size()) - 1, d);
    for (std::size_t i = 1; i < points.size(); ++i) centered.row(static_cast<Eigen::Index>(i) - 1) = (points[i] - points[0]).transpose();
    Eigen::JacobiSVD<Matrix> svd(centered);
    const auto& s = svd.singularValues();
    if (s.size() == 0 || s[0] == 0.0) return 0;
    int rank = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s[i] > 1e-10 * s[0]) ++rank;
    return rank;
}

HPolytope facets_of(const VPolytope& v)
{
    if (affine_dimension(v.points) < v.dim)
        raise(ErrorCode::NotFullDimensional, "point set spans fewer than " + std::to_string(v.dim) + " dimensions");
    const double scale = coordinate_scale(v.points);
    std::vector<Vector> normals;
    std::vector<double> offsets;

    if (v.dim == 1) {
        double lo = v.points[0][0], hi = lo;
        for (const auto& p : v.points) {
            lo = std::min(lo, p[0]);
            hi = std::max(hi, p[0]);
        }
        normals = {Vector::Constant(1, 1.0), Vector::Constant(1, -1.0)};
        offsets = {hi, -lo};
    } else if (v.dim == 2) {
        const auto hull = hull_2d(v.points, 0.1 * kGeomTol * scale);
        if (hull.size() < 3) raise(ErrorCode::NotFullDimensional, "planar hull is degenerate");
        for (std::size_t i = 0; i < hull.size(); ++i) {
            const Vector& a = v.points[hull[i]];
            const Vector& b = v.points[hull[(i + 1) % hull.size()]];
            Vector n(2);
            n << b[1] - a[1], a[0] - b[0];
            n.normalize();
            normals.push_back(n);
            offsets.push_back(n.dot(a));
        }
    } else {
        const auto idx = unique_indices(v.points, 0.1 * kGeomTol * scale);
        std::vector<Vector> pts;
        for (std::size_t i : idx) pts.push_back(v.points[i]);
        for (auto& f : brute_force_facets(pts, v.dim, kGeomTol * scale)) {
            normals.push_back(std::move(f.normal));
            offsets.push_back(f.offset);
        }
    }
    return HPolytope(v.dim, std::move(normals), std::move(offsets));
}

InscribedBall largest_inscribed_ball(const HPolytope& h, lp::Mode mode)
{
    const int d = h.dim;
    lp::LpProblem p(static_cast<std::size_t>(d) + 1);
    for (int k = 0; k < d; ++k) p.set_bounds(static_cast<std::size_t>(k), lp::Bounds<double>::free());
    p.objective[static_cast<std::size_t>(d)] = -1.0;
    for (std::size_t i = 0; i < h.size(); ++i) {
        auto& row = p.add_row(lp::Relation::LessEqual, h.offsets[i]);
        for (int k = 0; k < d; ++k) row.coefficients[static_cast<std::size_t>(k)] = h.normals[i][k];
        row.coefficients[static_cast<std::size_t>(d)] = h.normals[i].norm();
    }
    const auto s = lp::solve(p, mode);
    if (s.status == lp::Status::Infeasible) raise(ErrorCode::Infeasible, "H-polytope is empty");
    if (s.status == lp::Status::Unbounded) raise(ErrorCode::Unbounded, "H-polytope contains arbitrarily large balls");
    InscribedBall ball;
    ball.center = Vector(d);
    for (int k = 0; k < d; ++k) ball.center[k] = s.point[static_cast<std::size_t>(k)];
    ball.radius = s.point[static_cast<std::size_t>(d)];
    return ball;
}

VPolytope vertices_of(const HPolytope& h)
{
    if (h.size() == 0) raise(ErrorCode::Unbounded, "no rows");
    const auto ball = largest_inscribed_ball(h);
    double scale = 1.0;
    for (double b : h.offsets) scale = std::max(scale, std::abs(b));
    if (ball.radius <= kGeomTol * scale) raise(ErrorCode::NotFullDimensional, "H-polytope has empty interior");

    // Polar dual about the interior point: vertices of the primal are the
    // facets of the hull of the scaled normals.
    std::vector<Vector> dual;
    for (std::size_t i = 0; i < h.size(); ++i)
        dual.push_back(h.normals[i] / (h.offsets[i] - h.normals[i].dot(ball.center)));
    if (affine_dimension(dual) < h.dim) raise(ErrorCode::Unbounded, "H-polytope contains a line");
    const HPolytope dual_facets = facets_of(VPolytope(h.dim, dual));

    double dual_scale = coordinate_scale(dual);
    std::vector<Vector> verts;
    for (std::size_t i = 0; i < dual_facets.size(); ++i) {
        const double beta = dual_facets.offsets[i];
        if (beta <= kGeomTol * dual_scale) raise(ErrorCode::Unbounded, "H-polytope is unbounded");
        verts.push_back(ball.center + dual_facets.normals[i] / beta);
    }
    VPolytope out(h.dim, std::move(verts));
    return select(out, unique_indices(out.points, 0.1 * kGeomTol * coordinate_scale(out.points)));
}

double support(const VPolytope& v, const Vector& a)
{
    if (a.size() != v.dim) raise(ErrorCode::DimensionMismatch, "direction length");
    if (a.cwiseAbs().maxCoeff() == 0.0) raise(ErrorCode::ZeroDirection, "support in direction 0");
    double best = a.dot(v.points[0]);
    for (const auto& p : v.points) best = std::max(best, a.dot(p));
    return best;
}

double support(const HPolytope& h, const Vector& a)
{
    if (a.size() != h.dim) raise(ErrorCode::DimensionMismatch, "direction length");
    if (a.cwiseAbs().maxCoeff() == 0.0) raise(ErrorCode::ZeroDirection, "support in direction 0");
    const auto d = static_cast<std::size_t>(h.dim);
    lp::LpProblem p(d);
    for (std::size_t k = 0; k < d; ++k) {
        p.set_bounds(k, lp::Bounds<double>::free());
        p.objective[k] = -a[static_cast<Eigen::Index>(k)];
    }
    for (std::size_t i = 0; i < h.size(); ++i) {
        auto& row = p.add_row(lp::Relation::LessEqual, h.offsets[i]);
        for (std::size_t k = 0; k < d; ++k) row.coefficients[k] = h.normals[i][static_cast<Eigen::Index>(k)];
    }
    const auto s = lp::solve(p);
    if (s.status == lp::Status::Unbounded) raise(ErrorCode::Unbounded, "support is infinite in this direction");
    if (s.status == lp::Status::Infeasible) raise(ErrorCode::Infeasible, "H-polytope is empty");
    return -s.objective;
}

double support(const Body& body, const Vector& a)
{
    if (body.has_v()) return support(body.v(), a);
    return support(body.h(), a);
}

double max_violation(const HPolytope& h, const Vector& x)
{
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < h.size(); ++i) worst = std::max(worst, h.normals[i].dot(x) - h.offsets[i]);
    return worst;
}

bool same_set(const VPolytope& v, const HPolytope& h, double tol)
{
    for (const auto& p : v.points)
        if (max_violation(h, p) > tol) return false;
    const HPolytope hull = facets_of(v);
    for (const auto& q : vertices_of(h).points)
        if (max_violation(hull, q) > tol) return false;
    return true;
}

bool same_set(const VPolytope& a, const VPolytope& b, double tol)
{
    const HPolytope ha = facets_of(a);
    const HPolytope hb = facets_of(b);
    for (const auto& p : a.points)
        if (max_violation(hb, p) > tol) return false;
    for (const auto& p : b.points)
        if (max_violation(ha, p) > tol) return false;
    return true;
}

}  // namespace polyrad
