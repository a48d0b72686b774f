#include "polyrad/containment.hpp"

#include <cmath>
#include <string>

#include "polyrad/error.hpp"

namespace polyrad {

namespace {

constexpr std::size_t kMaxProductSize = 50000;
constexpr double kMaxFacetSubsets = 2e5;

double binomial(std::size_t n, int k)
{
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * static_cast<double>(n - static_cast<std::size_t>(k) + static_cast<std::size_t>(i)) / i;
    return r;
}

bool facets_cheap(const Body& c)
{
    if (c.has_h()) return true;
    return c.dim() <= 4 || binomial(c.native_size(), c.dim()) <= kMaxFacetSubsets;
}

ContainmentMethod pick_method(const Body& k, const Body& c)
{
    if (!facets_cheap(c)) return ContainmentMethod::VertexVertex;
    if (k.has_v()) return ContainmentMethod::Support;
    if (k.h().size() * c.h().size() <= kMaxProductSize) return ContainmentMethod::HalfspaceHalfspace;
    return ContainmentMethod::Support;
}

std::vector<std::size_t> positive(const std::vector<double>& duals, std::size_t first, std::size_t count, std::size_t stride)
{
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < count; ++j)
        if (std::abs(duals[first + j * stride]) > 1e-9) out.push_back(j);
    return out;
}

ContainmentResult finish(const lp::LpSolution& s, int d, ContainmentMethod method)
{
    if (s.status == lp::Status::Infeasible)
        raise(ErrorCode::NotFullDimensional, "containment LP infeasible: gauge body is not full-dimensional");
    if (s.status == lp::Status::Unbounded) raise(ErrorCode::NumericalFailure, "containment LP reported unbounded");
    ContainmentResult r;
    r.center = Vector(d);
    for (int k = 0; k < d; ++k) r.center[k] = s.point[static_cast<std::size_t>(k)];
    r.rho = s.point[static_cast<std::size_t>(d)];
    r.dual_bound = s.dual_objective;
    r.method = method;
    return r;
}

// Variables: c (free, d), ρ >= 0.
lp::LpProblem center_rho_problem(int d, std::size_t extra)
{
    lp::LpProblem p(static_cast<std::size_t>(d) + 1 + extra);
    for (int k = 0; k < d; ++k) p.set_bounds(static_cast<std::size_t>(k), lp::Bounds<double>::free());
    p.objective[static_cast<std::size_t>(d)] = 1.0;
    return p;
}

ContainmentResult solve_support(const Body& k, const HPolytope& c, lp::Mode mode)
{
    const int d = c.dim;
    auto p = center_rho_problem(d, 0);
    for (std::size_t j = 0; j < c.size(); ++j) {
        auto& row = p.add_row(lp::Relation::GreaterEqual, support(k, c.normals[j]));
        for (int i = 0; i < d; ++i) row.coefficients[static_cast<std::size_t>(i)] = c.normals[j][i];
        row.coefficients[static_cast<std::size_t>(d)] = c.offsets[j];
    }
    const auto s = lp::solve(p, mode);
    auto r = finish(s, d, ContainmentMethod::Support);
    r.tight_witness = positive(s.duals, 0, c.size(), 1);
    return r;
}

ContainmentResult solve_vertex_vertex(const VPolytope& kv, const VPolytope& cv, lp::Mode mode)
{
    const int d = kv.dim;
    const std::size_t np = kv.size(), nq = cv.size();
    const std::size_t base = static_cast<std::size_t>(d) + 1;
    auto p = center_rho_problem(d, np * nq);
    for (std::size_t i = 0; i < np; ++i) {
        const std::size_t mu = base + i * nq;
        for (int t = 0; t < d; ++t) {
            auto& row = p.add_row(lp::Relation::Equal, kv.points[i][t]);
            row.coefficients[static_cast<std::size_t>(t)] = 1.0;
            for (std::size_t j = 0; j < nq; ++j) row.coefficients[mu + j] = cv.points[j][t];
        }
        auto& sum = p.add_row(lp::Relation::Equal, 0.0);
        sum.coefficients[static_cast<std::size_t>(d)] = -1.0;
        for (std::size_t j = 0; j < nq; ++j) sum.coefficients[mu + j] = 1.0;
    }
    const auto s = lp::solve(p, mode);
    auto r = finish(s, d, ContainmentMethod::VertexVertex);
    r.tight_witness = positive(s.duals, static_cast<std::size_t>(d), np, static_cast<std::size_t>(d) + 1);
    return r;
}

ContainmentResult solve_halfspace_halfspace(const HPolytope& kh, const HPolytope& ch, lp::Mode mode)
{
    const int d = kh.dim;
    const std::size_t mk = kh.size(), mc = ch.size();
    const std::size_t base = static_cast<std::size_t>(d) + 1;
    auto p = center_rho_problem(d, mk * mc);
    for (std::size_t j = 0; j < mc; ++j) {
        const std::size_t y = base + j * mk;
        for (int t = 0; t < d; ++t) {
            auto& row = p.add_row(lp::Relation::Equal, ch.normals[j][t]);
            for (std::size_t i = 0; i < mk; ++i) row.coefficients[y + i] = kh.normals[i][t];
        }
        auto& bound = p.add_row(lp::Relation::LessEqual, 0.0);
        for (std::size_t i = 0; i < mk; ++i) bound.coefficients[y + i] = kh.offsets[i];
        for (int t = 0; t < d; ++t) bound.coefficients[static_cast<std::size_t>(t)] = -ch.normals[j][t];
        bound.coefficients[static_cast<std::size_t>(d)] = -ch.offsets[j];
    }
    const auto s = lp::solve(p, mode);
    if (s.status == lp::Status::Infeasible) raise(ErrorCode::Unbounded, "K is not bounded by the rows of C");
    auto r = finish(s, d, ContainmentMethod::HalfspaceHalfspace);
    r.tight_witness = positive(s.duals, static_cast<std::size_t>(d), mc, static_cast<std::size_t>(d) + 1);
    return r;
}

void check_pair(const Body& k, const Body& c)
{
    if (k.dim() != c.dim())
        raise(ErrorCode::DimensionMismatch,
              "bodies of dimension " + std::to_string(k.dim()) + " and " + std::to_string(c.dim()));
}

const Vector* singleton_point(const Body& k)
{
    if (k.native() != Representation::V) return nullptr;
    const auto& pts = k.v().points;
    for (const auto& p : pts)
        if ((p - pts.front()).cwiseAbs().maxCoeff() > kGeomTol * std::max(1.0, pts.front().cwiseAbs().maxCoeff()))
            return nullptr;
    return &pts.front();
}

}  // namespace

ContainmentResult circumradius(const Body& k, const Body& c, const ContainmentOptions& opts)
{
    check_pair(k, c);
    if (const Vector* p = singleton_point(k)) {
        ContainmentResult r;
        r.center = *p;
        r.method = opts.method;
        return r;
    }
    const auto method = opts.method == ContainmentMethod::Auto ? pick_method(k, c) : opts.method;
    switch (method) {
    case ContainmentMethod::VertexVertex:
        return solve_vertex_vertex(extreme_points(k.v()), extreme_points(c.v()), opts.mode);
    case ContainmentMethod::HalfspaceHalfspace:
        return solve_halfspace_halfspace(k.h(), c.h(), opts.mode);
    default:
        return solve_support(k, c.h(), opts.mode);
    }
}

double circumradius_at(const Body& k, const Body& c, const Vector& center)
{
    check_pair(k, c);
    if (center.size() != k.dim()) raise(ErrorCode::DimensionMismatch, "center length");
    const HPolytope& h = c.h();
    double scale = 1.0;
    for (double b : h.offsets) scale = std::max(scale, std::abs(b));
    double rho = 0.0;
    for (std::size_t j = 0; j < h.size(); ++j) {
        const double b = h.offsets[j];
        if (b <= kGeomTol * scale * h.normals[j].norm())
            raise(ErrorCode::CenterOutside, "origin is not interior to the gauge (row " + std::to_string(j) + ")");
        rho = std::max(rho, (support(k, h.normals[j]) - h.normals[j].dot(center)) / b);
    }
    return rho;
}

ContainmentResult inradius(const Body& k, const Body& c, const ContainmentOptions& opts)
{
    const auto back = circumradius(c, k, opts);
    if (back.rho <= 0.0) raise(ErrorCode::NotFullDimensional, "gauge body is a single point");
    ContainmentResult r = back;
    r.rho = 1.0 / back.rho;
    r.dual_bound = 1.0 / back.dual_bound;
    r.center = -back.center / back.rho;
    return r;
}

double core_radius_1(const Body& k, const Body& c, const ContainmentOptions& opts)
{
    check_pair(k, c);
    return circumradius(Body(difference_body(k)), Body(difference_body(c)), opts).rho;
}

double width_radius_1(const Body& k, const Body& c, const ContainmentOptions& opts)
{
    const double r1 = core_radius_1(c, k, opts);
    if (r1 <= 0.0) raise(ErrorCode::NotFullDimensional, "gauge body is a single point");
    return 1.0 / r1;
}

}  // namespace polyrad
