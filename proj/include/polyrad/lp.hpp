#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "polyrad/rational.hpp"

// Dense two-phase revised simplex with Bland's rule. The same template runs in
// floating point and over GMP rationals; the rational instantiation is exact
// and serves as the cross-check oracle for the floating-point one.
namespace polyrad::lp {

enum class Relation { LessEqual, Equal, GreaterEqual };
enum class Mode { Float, Rational };
enum class Status { Optimal, Infeasible, Unbounded };

/// Per-variable bounds; an empty optional is an infinite bound.
template <class T>
struct Bounds {
    std::optional<T> lower = T(0);
    std::optional<T> upper;

    static Bounds free() { return {std::nullopt, std::nullopt}; }
    static Bounds nonnegative() { return {T(0), std::nullopt}; }
    static Bounds between(T lo, T hi) { return {std::move(lo), std::move(hi)}; }
};

template <class T>
struct Constraint {
    std::vector<T> coefficients;
    Relation relation = Relation::LessEqual;
    T rhs = T(0);
};

/// minimize objective·x subject to the constraints and bounds. An empty bounds
/// vector means every variable is nonnegative.
template <class T>
struct Problem {
    std::vector<T> objective;
    std::vector<Constraint<T>> constraints;
    std::vector<Bounds<T>> bounds;

    explicit Problem(std::size_t num_variables = 0) : objective(num_variables, T(0)) {}

    std::size_t num_variables() const { return objective.size(); }

    /// Appends a row and returns a reference so callers can fill it in place.
    Constraint<T>& add_row(Relation relation, T rhs)
    {
        constraints.push_back({std::vector<T>(objective.size(), T(0)), relation, std::move(rhs)});
        return constraints.back();
    }

    void set_bounds(std::size_t var, Bounds<T> b)
    {
        if (bounds.empty()) bounds.assign(objective.size(), Bounds<T>::nonnegative());
        bounds.at(var) = std::move(b);
    }
};

template <class T>
struct Solution {
    Status status = Status::Infeasible;
    std::vector<T> point;          // present iff Optimal
    T objective = T(0);
    /// Row multipliers of the optimal basis, one per input constraint.
    std::vector<T> duals;
    /// Value of the dual program at those multipliers; equals the primal
    /// objective at optimality (exactly in Rational mode).
    T dual_objective = T(0);
    std::size_t iterations = 0;
};

struct Tolerances {
    double feasibility = 1e-9;
    double optimality = 1e-9;
    double pivot = 1e-11;
    /// 0 selects a size-dependent default.
    std::size_t max_iterations = 0;
};

using LpProblem = Problem<double>;
using ExactLpProblem = Problem<Rational>;
using LpSolution = Solution<double>;
using ExactLpSolution = Solution<Rational>;

/// Solves in the requested mode. Rational mode converts every double exactly
/// and rounds only the returned values. Throws Error{MalformedProblem} on
/// dimension mismatch and Error{NumericalFailure} when Float mode cycles,
/// exceeds its iteration budget, or returns a point that fails the
/// feasibility re-check.
LpSolution solve(const LpProblem& problem, Mode mode = Mode::Float, const Tolerances& tol = {});

ExactLpSolution solve_exact(const ExactLpProblem& problem);

ExactLpProblem to_exact(const LpProblem& problem);

}  // namespace polyrad::lp
