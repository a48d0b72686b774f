#include "polyrad/audit.hpp"

#include <algorithm>
#include <cmath>

#include "polyrad/error.hpp"
#include "polyrad/symmetry.hpp"

namespace polyrad::audit {

InequalityReport at_most(std::string name, double lhs, double rhs, const Tolerances& tol)
{
    InequalityReport r{std::move(name), lhs, rhs, rhs - lhs, false, false, {}};
    r.satisfied = r.slack >= -tol.audit;
    r.tight = std::abs(r.slack) <= tol.tight;
    return r;
}

InequalityReport at_least(std::string name, double lhs, double rhs, const Tolerances& tol)
{
    InequalityReport r{std::move(name), lhs, rhs, lhs - rhs, false, false, {}};
    r.satisfied = r.slack >= -tol.audit;
    r.tight = std::abs(r.slack) <= tol.tight;
    return r;
}

double bohnenblust_bound(double s_k, double s_c) { return (s_c + 1) * s_k / (s_k + 1); }
double leichtweiss_bound(double s_k, double s_c) { return (s_k + 1) * s_c / (s_c + 1); }

double jung_bound(int d, double s) { return std::min(std::sqrt(2.0 * d / (d + 1)), 2 * s / (s + 1)); }

double steinhagen_bound(int d, double s)
{
    const double classical = d % 2 == 1 ? std::sqrt(static_cast<double>(d)) : (d + 1) / std::sqrt(d + 2.0);
    return std::min(classical, (s + 1) / 2);
}

double in_circum_bound(double s_k, double s_c) { return std::max(s_k / s_c, s_c / s_k); }

double alexander_a_bound(double s) { return 1 + 1 / s; }

double alexander_a_euclid_bound(int d, double s)
{
    const double refined = d % 2 == 1 ? 2 * std::sqrt(static_cast<double>(d)) / s : 2.0 * (d + 1) / (s * std::sqrt(d + 2.0));
    return std::min(refined, alexander_a_bound(s));
}

double alexander_b_bound(double s) { return 1 / (s + 1); }

double alexander_b_euclid_bound(int d, double s)
{
    return std::min(std::sqrt(static_cast<double>(d)) / (s * std::sqrt(2.0 * (d + 1))), alexander_b_bound(s));
}

std::vector<InequalityReport> chain_links(double r, double r1, double R, double R1, double s, const Tolerances& tol)
{
    const double v[] = {2 * r, 2 * r1, (1 + s) * r, r + R, (1 + s) / s * R, 2 * R1, 2 * R};
    std::vector<InequalityReport> out;
    for (int i = 0; i < 6; ++i) out.push_back(at_most("chain_" + std::to_string(i + 1), v[i], v[i + 1], tol));
    return out;
}

namespace {

// Lazily computed radii of one (K, C) pair, shared by all audits of a run.
class Measure {
public:
    Measure(const Body& k, const Gauge& c, const Options& o) : k_(k), c_(c), o_(o) {}

    int dim() const { return k_.dim(); }
    bool euclidean() const { return c_.is_euclidean(); }

    double R()
    {
        return get(R_, "R", [&] {
            return euclidean() ? min_enclosing_ball(k_.v()).radius : circumradius(k_, *c_.body, {o_.mode}).rho;
        });
    }
    double r()
    {
        return get(r_, "r", [&] { return euclidean() ? chebyshev(k_.h(), o_.mode).radius : inradius(k_, *c_.body, {o_.mode}).rho; });
    }
    double R1()
    {
        return get(R1_, "R1", [&] { return euclidean() ? euclid_diameter(k_.v()) : core_radius_1(k_, *c_.body, {o_.mode}); });
    }
    double r1()
    {
        return get(r1_, "r1", [&] { return euclidean() ? euclid_width(k_.v()) : width_radius_1(k_, *c_.body, {o_.mode}); });
    }
    double s_k()
    {
        return get(sk_, "s_K", [&] { return minkowski_asymmetry(k_, {o_.mode}).value; });
    }
    double s_c()
    {
        return get(sc_, "s_C", [&] { return euclidean() ? 1.0 : minkowski_asymmetry(*c_.body, {o_.mode}).value; });
    }

    void require_symmetric_gauge()
    {
        if (s_c() > 1 + kSymmetryTol)
            raise(ErrorCode::CNotSymmetric, "gauge has Minkowski asymmetry " + std::to_string(s_c()));
    }

    InequalityReport stamp(InequalityReport r) const
    {
        r.digest.emplace_back("d", dim());
        r.digest.insert(r.digest.end(), digest_.begin(), digest_.end());
        return r;
    }

private:
    template <class F>
    double get(std::optional<double>& slot, const char* name, F&& compute)
    {
        if (!slot) {
            slot = compute();
            digest_.emplace_back(name, *slot);
        }
        return *slot;
    }

    const Body& k_;
    const Gauge& c_;
    const Options& o_;
    std::optional<double> R_, r_, R1_, r1_, sk_, sc_;
    std::vector<std::pair<std::string, double>> digest_;
};

void require_euclidean(const Measure& m, const char* what)
{
    if (!m.euclidean()) raise(ErrorCode::MalformedProblem, std::string(what) + " is a Euclidean inequality");
}

InequalityReport bohnenblust(Measure& m, const Tolerances& t)
{
    return m.stamp(at_most("bohnenblust", m.R() / m.R1(), bohnenblust_bound(m.s_k(), m.s_c()), t));
}

InequalityReport leichtweiss(Measure& m, const Tolerances& t)
{
    return m.stamp(at_most("leichtweiss", m.r1() / m.r(), leichtweiss_bound(m.s_k(), m.s_c()), t));
}

InequalityReport jung(Measure& m, const Tolerances& t)
{
    require_euclidean(m, "Jung");
    return m.stamp(at_most("jung", m.R() / m.R1(), jung_bound(m.dim(), m.s_k()), t));
}

InequalityReport steinhagen(Measure& m, const Tolerances& t)
{
    require_euclidean(m, "Steinhagen");
    return m.stamp(at_most("steinhagen", m.r1() / m.r(), steinhagen_bound(m.dim(), m.s_k()), t));
}

InequalityReport in_circum(Measure& m, const Tolerances& t)
{
    return m.stamp(at_least("in_circum", m.R() / m.r(), in_circum_bound(m.s_k(), m.s_c()), t));
}

std::vector<InequalityReport> chain(Measure& m, const Tolerances& t)
{
    m.require_symmetric_gauge();
    auto links = chain_links(m.r(), m.r1(), m.R(), m.R1(), m.s_k(), t);
    for (auto& l : links) l = m.stamp(std::move(l));
    return links;
}

std::vector<InequalityReport> alexander(Measure& m, const Tolerances& t)
{
    m.require_symmetric_gauge();
    const double w = 2 * m.r1(), D = 2 * m.R1(), s = m.s_k();
    std::vector<InequalityReport> out;
    out.push_back(m.stamp(at_most("alexander_a", w / m.R(), alexander_a_bound(s), t)));
    if (m.euclidean()) out.push_back(m.stamp(at_most("alexander_a_euclid", w / m.R(), alexander_a_euclid_bound(m.dim(), s), t)));
    out.push_back(m.stamp(at_most("alexander_b", m.r() / D, alexander_b_bound(s), t)));
    if (m.euclidean()) out.push_back(m.stamp(at_most("alexander_b_euclid", m.r() / D, alexander_b_euclid_bound(m.dim(), s), t)));
    return out;
}

InequalityReport sharp_john(const Body& k, Measure& m, const Options& o)
{
    const int d = k.dim();
    const Ellipsoid e = john_ellipsoid(k.h(), o.eps);
    const Matrix l = e.factor();
    std::vector<Vector> normalized;
    for (const auto& v : k.v().points) normalized.push_back(l.triangularView<Eigen::Lower>().solve(v - e.center));
    const double rho = min_enclosing_ball(VPolytope(d, std::move(normalized))).radius;
    const double s = m.s_k();
    const double s0 = centered_asymmetry(k, e.center);
    const double upper = std::sqrt(s0 * d);

    InequalityReport r;
    r.name = "sharp_john";
    r.lhs = rho;
    r.rhs = upper;
    r.slack = std::min(rho - s, upper - rho);
    r.satisfied = r.slack >= -o.tol.audit;
    r.tight = std::abs(r.slack) <= o.tol.tight;
    r = m.stamp(std::move(r));
    r.digest.emplace_back("s0", s0);
    r.digest.emplace_back("rho", rho);
    r.digest.emplace_back("lower_slack", rho - s);
    r.digest.emplace_back("upper_slack", upper - rho);
    return r;
}

}  // namespace

InequalityReport audit_bohnenblust(const Body& k, const Gauge& c, const Options& o)
{
    Measure m(k, c, o);
    return bohnenblust(m, o.tol);
}

InequalityReport audit_leichtweiss(const Body& k, const Gauge& c, const Options& o)
{
    Measure m(k, c, o);
    return leichtweiss(m, o.tol);
}

InequalityReport audit_jung(const Body& k, const Options& o)
{
    const Gauge g = Gauge::euclidean();
    Measure m(k, g, o);
    return jung(m, o.tol);
}

InequalityReport audit_steinhagen(const Body& k, const Options& o)
{
    const Gauge g = Gauge::euclidean();
    Measure m(k, g, o);
    return steinhagen(m, o.tol);
}

InequalityReport audit_in_circum(const Body& k, const Gauge& c, const Options& o)
{
    Measure m(k, c, o);
    return in_circum(m, o.tol);
}

std::vector<InequalityReport> audit_chain(const Body& k, const Gauge& c, const Options& o)
{
    Measure m(k, c, o);
    return chain(m, o.tol);
}

std::vector<InequalityReport> audit_alexander(const Body& k, const Gauge& c, const Options& o)
{
    Measure m(k, c, o);
    return alexander(m, o.tol);
}

InequalityReport audit_sharp_john(const Body& k, const Options& o)
{
    const Gauge g = Gauge::euclidean();
    Measure m(k, g, o);
    return sharp_john(k, m, o);
}

const std::vector<std::string>& audit_names()
{
    static const std::vector<std::string> names{"bohnenblust", "leichtweiss", "jung",      "steinhagen",
                                                "in-circum",   "chain",       "alexander", "sharp-john"};
    return names;
}

std::vector<InequalityReport> run_audits(const Body& k, const Gauge& c, const std::vector<std::string>& which,
                                         const Options& o)
{
    Measure m(k, c, o);
    std::vector<std::string> selected = which;
    if (selected.empty()) {
        const bool symmetric_gauge = c.is_euclidean() || m.s_c() <= 1 + kSymmetryTol;
        for (const auto& n : audit_names()) {
            if (!c.is_euclidean() && (n == "jung" || n == "steinhagen" || n == "sharp-john")) continue;
            if (!symmetric_gauge && (n == "chain" || n == "alexander")) continue;
            selected.push_back(n);
        }
    }
    std::vector<InequalityReport> out;
    for (const auto& name : selected) {
        if (name == "bohnenblust")
            out.push_back(bohnenblust(m, o.tol));
        else if (name == "leichtweiss")
            out.push_back(leichtweiss(m, o.tol));
        else if (name == "jung")
            out.push_back(jung(m, o.tol));
        else if (name == "steinhagen")
            out.push_back(steinhagen(m, o.tol));
        else if (name == "in-circum")
            out.push_back(in_circum(m, o.tol));
        else if (name == "chain") {
            auto links = chain(m, o.tol);
            out.insert(out.end(), links.begin(), links.end());
        } else if (name == "alexander") {
            auto rs = alexander(m, o.tol);
            out.insert(out.end(), rs.begin(), rs.end());
        } else if (name == "sharp-john") {
            if (!c.is_euclidean()) raise(ErrorCode::MalformedProblem, "sharp John is a Euclidean inequality");
            out.push_back(sharp_john(k, m, o));
        } else
            raise(ErrorCode::ParameterOutOfRange, "unknown audit '" + name + "'");
    }
    return out;
}

}  // namespace polyrad::audit
