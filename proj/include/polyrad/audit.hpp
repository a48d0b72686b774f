#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "polyrad/containment.hpp"
#include "polyrad/euclid.hpp"

namespace polyrad::audit {

struct Tolerances {
    double audit = 1e-6;  ///< satisfied ⇔ slack >= −audit
    double tight = 1e-4;  ///< tight ⇔ |slack| <= tight
};

struct InequalityReport {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    /// Normalized so that slack >= 0 means the inequality holds.
    double slack = 0.0;
    bool satisfied = false;
    bool tight = false;
    std::vector<std::pair<std::string, double>> digest;
};

InequalityReport at_most(std::string name, double lhs, double rhs, const Tolerances& tol);
InequalityReport at_least(std::string name, double lhs, double rhs, const Tolerances& tol);

// Right-hand sides.
double bohnenblust_bound(double s_k, double s_c);
double leichtweiss_bound(double s_k, double s_c);
double jung_bound(int d, double s);
double steinhagen_bound(int d, double s);
double in_circum_bound(double s_k, double s_c);
double alexander_a_bound(double s);
double alexander_a_euclid_bound(int d, double s);
double alexander_b_bound(double s);
double alexander_b_euclid_bound(int d, double s);

/// The six links of 2r ≤ w ≤ (1+s)r ≤ r+R ≤ ((1+s)/s)R ≤ D ≤ 2R for given
/// radii (w = 2r1, D = 2R1) and s = s(K).
std::vector<InequalityReport> chain_links(double r, double r1, double R, double R1, double s, const Tolerances& tol);

/// Either the Euclidean unit ball (exact routines) or a polytope.
struct Gauge {
    std::optional<Body> body;

    static Gauge euclidean() { return {}; }
    static Gauge of(Body b) { return {std::move(b)}; }
    bool is_euclidean() const { return !body.has_value(); }
};

struct Options {
    Tolerances tol;
    lp::Mode mode = lp::Mode::Float;
    double eps = kDefaultEllipsoidEps;
};

InequalityReport audit_bohnenblust(const Body& k, const Gauge& c, const Options& opts = {});
InequalityReport audit_leichtweiss(const Body& k, const Gauge& c, const Options& opts = {});
InequalityReport audit_jung(const Body& k, const Options& opts = {});
InequalityReport audit_steinhagen(const Body& k, const Options& opts = {});
InequalityReport audit_in_circum(const Body& k, const Gauge& c, const Options& opts = {});
/// Throws Error{CNotSymmetric} unless s(C) <= 1 + 1e-6.
std::vector<InequalityReport> audit_chain(const Body& k, const Gauge& c, const Options& opts = {});
/// Reports a) and b); the Euclidean refinements are added for the Euclidean gauge.
std::vector<InequalityReport> audit_alexander(const Body& k, const Gauge& c, const Options& opts = {});
/// ρ = circumradius of K after the affine map sending its John ellipsoid to
/// B₂, checked against s(K) <= ρ <= sqrt(s₀(K) d).
InequalityReport audit_sharp_john(const Body& k, const Options& opts = {});

/// Names accepted by run_audits, in their canonical order.
const std::vector<std::string>& audit_names();

/// Runs the named audits; an empty list runs everything applicable to the
/// gauge (Jung, Steinhagen and sharp John only for the Euclidean gauge,
/// chain and Alexander only for a symmetric one).
std::vector<InequalityReport> run_audits(const Body& k, const Gauge& c, const std::vector<std::string>& which,
                                         const Options& opts = {});

}  // namespace polyrad::audit
