#include "polyrad/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include <Eigen/Dense>

#include "polyrad/error.hpp"

namespace polyrad::lp {

namespace {

template <class T>
constexpr bool kExact = std::is_same_v<T, Rational>;

template <class T>
T abs_value(const T& v)
{
    return v < 0 ? T(-v) : v;
}

template <class T>
using SparseColumn = std::vector<std::pair<std::size_t, T>>;

// Problem rewritten as  min cost·z  s.t.  A z = rhs,  z >= 0.
// Rows with a negative right-hand side that came from "<=" share one
// artificial column with coefficient -1, so a single pivot makes the initial
// basis feasible for phase one.
template <class T>
struct StandardForm {
    struct Term {
        std::size_t column;
        int sign;
    };

    std::size_t rows = 0;
    std::vector<SparseColumn<T>> columns;
    std::vector<T> cost;
    std::vector<T> rhs;
    std::vector<bool> artificial;
    std::vector<std::size_t> initial_basis;
    std::optional<std::size_t> shared_artificial;
    std::size_t shared_row = 0;
    T cost_offset = T(0);

    std::vector<std::vector<Term>> var_terms;
    std::vector<T> var_offset;
    std::vector<int> row_sign;
    bool trivially_infeasible = false;
};

template <class T>
void validate(const Problem<T>& problem)
{
    const std::size_t n = problem.num_variables();
    if (!problem.bounds.empty() && problem.bounds.size() != n)
        raise(ErrorCode::MalformedProblem, "bounds vector has length " + std::to_string(problem.bounds.size()) +
                                               ", expected " + std::to_string(n));
    for (std::size_t i = 0; i < problem.constraints.size(); ++i) {
        const auto& row = problem.constraints[i];
        if (row.coefficients.size() != n)
            raise(ErrorCode::MalformedProblem, "constraint " + std::to_string(i) + " has " +
                                                   std::to_string(row.coefficients.size()) + " coefficients, expected " +
                                                   std::to_string(n));
        if constexpr (!kExact<T>) {
            if (!std::isfinite(row.rhs)) raise(ErrorCode::MalformedProblem, "non-finite right-hand side");
            for (double a : row.coefficients)
                if (!std::isfinite(a)) raise(ErrorCode::MalformedProblem, "non-finite coefficient");
        }
    }
    if constexpr (!kExact<T>) {
        for (double c : problem.objective)
            if (!std::isfinite(c)) raise(ErrorCode::MalformedProblem, "non-finite objective coefficient");
    }
}

template <class T>
std::optional<T> finite_or_none(const std::optional<T>& v)
{
    if constexpr (!kExact<T>) {
        if (v && !std::isfinite(*v)) return std::nullopt;
    }
    return v;
}

template <class T>
StandardForm<T> standardize(const Problem<T>& problem)
{
    StandardForm<T> sf;
    const std::size_t n = problem.num_variables();
    sf.var_terms.resize(n);
    sf.var_offset.assign(n, T(0));

    struct UpperRow {
        std::size_t column;
        T width;
    };
    std::vector<UpperRow> upper_rows;
    std::size_t structural = 0;

    for (std::size_t j = 0; j < n; ++j) {
        Bounds<T> b = problem.bounds.empty() ? Bounds<T>::nonnegative() : problem.bounds[j];
        auto lo = finite_or_none(b.lower);
        auto hi = finite_or_none(b.upper);
        if (lo && hi && *lo > *hi) sf.trivially_infeasible = true;
        if (lo) {
            sf.var_offset[j] = *lo;
            sf.var_terms[j].push_back({structural, +1});
            if (hi) upper_rows.push_back({structural, T(*hi - *lo)});
            ++structural;
        } else if (hi) {
            sf.var_offset[j] = *hi;
            sf.var_terms[j].push_back({structural++, -1});
        } else {
            sf.var_terms[j].push_back({structural++, +1});
            sf.var_terms[j].push_back({structural++, -1});
        }
    }

    struct Row {
        std::vector<T> coef;
        Relation relation;
        T rhs;
    };
    std::vector<Row> rows;
    rows.reserve(problem.constraints.size() + upper_rows.size());
    for (const auto& c : problem.constraints) {
        Row r{std::vector<T>(structural, T(0)), c.relation, c.rhs};
        for (std::size_t j = 0; j < n; ++j) {
            const T& a = c.coefficients[j];
            if (a == 0) continue;
            for (const auto& term : sf.var_terms[j]) {
                if (term.sign > 0)
                    r.coef[term.column] += a;
                else
                    r.coef[term.column] -= a;
            }
            r.rhs -= a * sf.var_offset[j];
        }
        int sign = 1;
        if (r.relation == Relation::GreaterEqual || (r.relation == Relation::Equal && r.rhs < 0)) {
            for (auto& v : r.coef) v = -v;
            r.rhs = -r.rhs;
            sign = -1;
            if (r.relation == Relation::GreaterEqual) r.relation = Relation::LessEqual;
        }
        sf.row_sign.push_back(sign);
        rows.push_back(std::move(r));
    }
    for (const auto& u : upper_rows) {
        Row r{std::vector<T>(structural, T(0)), Relation::LessEqual, u.width};
        r.coef[u.column] = T(1);
        rows.push_back(std::move(r));
    }

    sf.rows = rows.size();
    sf.columns.assign(structural, {});
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t k = 0; k < structural; ++k)
            if (rows[i].coef[k] != 0) sf.columns[k].push_back({i, rows[i].coef[k]});
    sf.cost.assign(structural, T(0));
    for (std::size_t j = 0; j < n; ++j) {
        const T& c = problem.objective[j];
        if (c == 0) continue;
        for (const auto& term : sf.var_terms[j]) sf.cost[term.column] += term.sign > 0 ? c : T(-c);
        sf.cost_offset += c * sf.var_offset[j];
    }
    sf.artificial.assign(structural, false);

    sf.initial_basis.assign(sf.rows, 0);
    std::vector<std::size_t> negative_rows;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        sf.rhs.push_back(rows[i].rhs);
        const bool slack_row = rows[i].relation == Relation::LessEqual;
        sf.columns.push_back({{i, T(1)}});
        sf.cost.push_back(T(0));
        sf.artificial.push_back(!slack_row);
        sf.initial_basis[i] = sf.columns.size() - 1;
        if (slack_row && rows[i].rhs < 0) negative_rows.push_back(i);
    }
    if (!negative_rows.empty()) {
        SparseColumn<T> col;
        std::size_t most_negative = negative_rows.front();
        for (std::size_t i : negative_rows) {
            col.push_back({i, T(-1)});
            if (sf.rhs[i] < sf.rhs[most_negative]) most_negative = i;
        }
        sf.columns.push_back(std::move(col));
        sf.cost.push_back(T(0));
        sf.artificial.push_back(true);
        sf.shared_artificial = sf.columns.size() - 1;
        sf.shared_row = most_negative;
    }
    return sf;
}

template <class T>
class RevisedSimplex {
public:
    RevisedSimplex(const StandardForm<T>& sf, const Tolerances& tol)
        : sf_(sf), tol_(tol), m_(sf.rows), ncols_(sf.columns.size())
    {
        max_iterations_ = tol.max_iterations ? tol.max_iterations : 100 * (m_ + ncols_) + 10000;
        binv_.assign(m_ * m_, T(0));
        for (std::size_t i = 0; i < m_; ++i) binv_[i * m_ + i] = T(1);
        basis_ = sf.initial_basis;
        position_.assign(ncols_, -1);
        for (std::size_t i = 0; i < m_; ++i) position_[basis_[i]] = static_cast<long>(i);
        xb_ = sf.rhs;
        if (sf.shared_artificial) {
            auto alpha = column_image(*sf.shared_artificial);
            pivot(*sf.shared_artificial, sf.shared_row, alpha);
        }
    }

    Status run_phase_one()
    {
        bool any_artificial = false;
        for (std::size_t j = 0; j < ncols_; ++j) any_artificial = any_artificial || sf_.artificial[j];
        if (!any_artificial) return Status::Optimal;

        std::vector<T> cost(ncols_, T(0));
        for (std::size_t j = 0; j < ncols_; ++j)
            if (sf_.artificial[j]) cost[j] = T(1);
        run(cost, true);

        T infeasibility = T(0);
        for (std::size_t i = 0; i < m_; ++i)
            if (sf_.artificial[basis_[i]]) infeasibility += xb_[i];
        if constexpr (kExact<T>) {
            if (infeasibility > 0) return Status::Infeasible;
        } else {
            double scale = 1.0;
            for (double b : sf_.rhs) scale = std::max(scale, std::abs(b));
            if (infeasibility > tol_.feasibility * scale) return Status::Infeasible;
        }
        drive_out_artificials();
        return Status::Optimal;
    }

    Status run_phase_two() { return run(sf_.cost, false); }

    void finish()
    {
        if constexpr (!kExact<T>) refactor();
    }

    std::vector<T> structural_values(std::size_t count) const
    {
        std::vector<T> z(count, T(0));
        for (std::size_t i = 0; i < m_; ++i) {
            if (basis_[i] < count) {
                T v = xb_[i];
                if constexpr (!kExact<T>) v = std::max(v, 0.0);
                z[basis_[i]] = v;
            }
        }
        return z;
    }

    std::vector<T> row_prices(const std::vector<T>& cost) const
    {
        std::vector<T> y(m_, T(0));
        for (std::size_t i = 0; i < m_; ++i) {
            const T& cb = cost[basis_[i]];
            if (cb == 0) continue;
            for (std::size_t k = 0; k < m_; ++k) y[k] += cb * binv_[i * m_ + k];
        }
        return y;
    }

    std::size_t iterations() const { return iterations_; }

private:
    bool negative_reduced_cost(const T& d) const
    {
        if constexpr (kExact<T>)
            return d < 0;
        else
            return d < -tol_.optimality;
    }

    bool usable_pivot(const T& a) const
    {
        if constexpr (kExact<T>)
            return a > 0;
        else
            return a > tol_.pivot;
    }

    bool nonzero_pivot(const T& a) const
    {
        if constexpr (kExact<T>)
            return a != 0;
        else
            return std::abs(a) > tol_.pivot;
    }

    std::vector<T> column_image(std::size_t j) const
    {
        std::vector<T> alpha(m_, T(0));
        for (const auto& [row, value] : sf_.columns[j])
            for (std::size_t i = 0; i < m_; ++i) {
                const T& b = binv_[i * m_ + row];
                if (b != 0) alpha[i] += b * value;
            }
        return alpha;
    }

    T reduced_cost(std::size_t j, const std::vector<T>& cost, const std::vector<T>& y) const
    {
        T d = cost[j];
        for (const auto& [row, value] : sf_.columns[j]) d -= y[row] * value;
        return d;
    }

    Status run(const std::vector<T>& cost, bool allow_artificial)
    {
        for (;;) {
            if (++iterations_ > max_iterations_)
                raise(ErrorCode::NumericalFailure, "simplex iteration budget exhausted");
            const auto y = row_prices(cost);

            std::optional<std::size_t> entering;
            for (std::size_t j = 0; j < ncols_; ++j) {
                if (position_[j] >= 0) continue;
                if (sf_.artificial[j] && !allow_artificial) continue;
                if (negative_reduced_cost(reduced_cost(j, cost, y))) {
                    entering = j;
                    break;
                }
            }
            if (!entering) return Status::Optimal;

            auto alpha = column_image(*entering);
            auto leaving = ratio_test(alpha, allow_artificial);
            if (!leaving) return Status::Unbounded;
            pivot(*entering, *leaving, alpha);
        }
    }

    // Minimum ratio; ties go to the smallest basic index (Bland). Basic
    // artificials left over from phase one leave at ratio zero.
    std::optional<std::size_t> ratio_test(const std::vector<T>& alpha, bool allow_artificial) const
    {
        std::optional<std::size_t> best;
        T best_ratio = T(0);
        auto better = [&](std::size_t i, const T& ratio) {
            if (!best) return true;
            if constexpr (kExact<T>) {
                if (ratio != best_ratio) return ratio < best_ratio;
            } else {
                const double slack = 1e-12 * (1.0 + std::abs(best_ratio));
                if (ratio < best_ratio - slack) return true;
                if (ratio > best_ratio + slack) return false;
            }
            return basis_[i] < basis_[*best];
        };
        for (std::size_t i = 0; i < m_; ++i) {
            T ratio;
            if (!allow_artificial && sf_.artificial[basis_[i]] && nonzero_pivot(alpha[i])) {
                ratio = T(0);
            } else if (usable_pivot(alpha[i])) {
                ratio = xb_[i] / alpha[i];
                if constexpr (!kExact<T>) ratio = std::max(ratio, 0.0);
            } else {
                continue;
            }
            if (better(i, ratio)) {
                best = i;
                best_ratio = ratio;
            }
        }
        return best;
    }

    void pivot(std::size_t entering, std::size_t r, const std::vector<T>& alpha)
    {
        const T theta = xb_[r] / alpha[r];
        for (std::size_t i = 0; i < m_; ++i) {
            if (i == r || alpha[i] == 0) continue;
            xb_[i] -= theta * alpha[i];
            if constexpr (!kExact<T>) {
                if (xb_[i] < 0 && xb_[i] > -tol_.feasibility) xb_[i] = 0.0;
            }
        }
        xb_[r] = theta;

        const T inv = T(1) / alpha[r];
        T* row_r = &binv_[r * m_];
        for (std::size_t k = 0; k < m_; ++k)
            if (row_r[k] != 0) row_r[k] *= inv;
        for (std::size_t i = 0; i < m_; ++i) {
            if (i == r || alpha[i] == 0) continue;
            T* row_i = &binv_[i * m_];
            const T f = alpha[i];
            for (std::size_t k = 0; k < m_; ++k)
                if (row_r[k] != 0) row_i[k] -= f * row_r[k];
        }

        position_[basis_[r]] = -1;
        basis_[r] = entering;
        position_[entering] = static_cast<long>(r);

        if constexpr (!kExact<T>) {
            if (++since_refactor_ >= 64) refactor();
        }
    }

    void drive_out_artificials()
    {
        for (std::size_t r = 0; r < m_; ++r) {
            if (!sf_.artificial[basis_[r]]) continue;
            for (std::size_t j = 0; j < ncols_; ++j) {
                if (position_[j] >= 0 || sf_.artificial[j]) continue;
                T entry = T(0);
                for (const auto& [row, value] : sf_.columns[j]) entry += binv_[r * m_ + row] * value;
                if (nonzero_pivot(entry)) {
                    auto alpha = column_image(j);
                    pivot(j, r, alpha);
                    break;
                }
            }
            // A row with no usable entry is redundant; its artificial stays
            // basic at zero and phase two never lets it grow.
        }
    }

    void refactor()
    {
        if constexpr (!kExact<T>) {
            since_refactor_ = 0;
            Eigen::MatrixXd basis_matrix = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m_), static_cast<Eigen::Index>(m_));
            for (std::size_t i = 0; i < m_; ++i)
                for (const auto& [row, value] : sf_.columns[basis_[i]])
                    basis_matrix(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(i)) = value;
            Eigen::PartialPivLU<Eigen::MatrixXd> lu(basis_matrix);
            Eigen::MatrixXd inverse = lu.inverse();
            if (!inverse.allFinite()) raise(ErrorCode::NumericalFailure, "singular basis during refactorization");
            for (std::size_t i = 0; i < m_; ++i)
                for (std::size_t k = 0; k < m_; ++k)
                    binv_[i * m_ + k] = inverse(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k));
            for (std::size_t i = 0; i < m_; ++i) {
                double v = 0.0;
                for (std::size_t k = 0; k < m_; ++k) v += binv_[i * m_ + k] * sf_.rhs[k];
                if (v < 0 && v > -tol_.feasibility) v = 0.0;
                xb_[i] = v;
            }
        }
    }

    const StandardForm<T>& sf_;
    Tolerances tol_;
    std::size_t m_;
    std::size_t ncols_;
    std::size_t max_iterations_ = 0;
    std::size_t iterations_ = 0;
    std::size_t since_refactor_ = 0;
    std::vector<T> binv_;
    std::vector<std::size_t> basis_;
    std::vector<long> position_;
    std::vector<T> xb_;
};

template <class T>
void check_feasible(const Problem<T>& problem, const std::vector<T>& x, const Tolerances& tol)
{
    if constexpr (!kExact<T>) {
        for (std::size_t i = 0; i < problem.constraints.size(); ++i) {
            const auto& row = problem.constraints[i];
            double lhs = 0.0, scale = 1.0 + std::abs(row.rhs);
            for (std::size_t j = 0; j < x.size(); ++j) {
                lhs += row.coefficients[j] * x[j];
                scale = std::max(scale, std::abs(row.coefficients[j] * x[j]));
            }
            double violation = 0.0;
            switch (row.relation) {
            case Relation::LessEqual: violation = lhs - row.rhs; break;
            case Relation::GreaterEqual: violation = row.rhs - lhs; break;
            case Relation::Equal: violation = std::abs(lhs - row.rhs); break;
            }
            if (violation > 1e3 * tol.feasibility * scale)
                raise(ErrorCode::NumericalFailure,
                      "optimal point violates constraint " + std::to_string(i) + " by " + std::to_string(violation));
        }
    }
}

template <class T>
Solution<T> solve_impl(const Problem<T>& problem, const Tolerances& tol)
{
    validate(problem);
    const auto sf = standardize(problem);
    Solution<T> out;
    if (sf.trivially_infeasible) {
        out.status = Status::Infeasible;
        return out;
    }

    RevisedSimplex<T> simplex(sf, tol);
    if (simplex.run_phase_one() == Status::Infeasible) {
        out.status = Status::Infeasible;
        out.iterations = simplex.iterations();
        return out;
    }
    const Status phase_two = simplex.run_phase_two();
    out.iterations = simplex.iterations();
    if (phase_two == Status::Unbounded) {
        out.status = Status::Unbounded;
        return out;
    }
    simplex.finish();

    std::size_t structural = 0;
    for (const auto& terms : sf.var_terms)
        for (const auto& t : terms) structural = std::max(structural, t.column + 1);
    const auto z = simplex.structural_values(structural);

    const std::size_t n = problem.num_variables();
    out.status = Status::Optimal;
    out.point.assign(n, T(0));
    for (std::size_t j = 0; j < n; ++j) {
        T v = sf.var_offset[j];
        for (const auto& t : sf.var_terms[j]) v += t.sign > 0 ? z[t.column] : T(-z[t.column]);
        out.point[j] = v;
    }
    out.objective = T(0);
    for (std::size_t j = 0; j < n; ++j) out.objective += problem.objective[j] * out.point[j];

    const auto y = simplex.row_prices(sf.cost);
    out.duals.assign(problem.constraints.size(), T(0));
    for (std::size_t i = 0; i < problem.constraints.size(); ++i)
        out.duals[i] = sf.row_sign[i] > 0 ? y[i] : T(-y[i]);
    out.dual_objective = sf.cost_offset;
    for (std::size_t i = 0; i < sf.rows; ++i) out.dual_objective += y[i] * sf.rhs[i];

    check_feasible(problem, out.point, tol);
    return out;
}

}  // namespace

ExactLpProblem to_exact(const LpProblem& problem)
{
    ExactLpProblem exact(problem.num_variables());
    for (std::size_t j = 0; j < problem.objective.size(); ++j) exact.objective[j] = exact_from_double(problem.objective[j]);
    for (const auto& row : problem.constraints) {
        auto& r = exact.add_row(row.relation, exact_from_double(row.rhs));
        if (row.coefficients.size() != problem.num_variables())
            raise(ErrorCode::MalformedProblem, "constraint length does not match objective length");
        for (std::size_t j = 0; j < row.coefficients.size(); ++j) r.coefficients[j] = exact_from_double(row.coefficients[j]);
    }
    for (const auto& b : problem.bounds) {
        Bounds<Rational> eb{std::nullopt, std::nullopt};
        if (b.lower && std::isfinite(*b.lower)) eb.lower = exact_from_double(*b.lower);
        if (b.upper && std::isfinite(*b.upper)) eb.upper = exact_from_double(*b.upper);
        exact.bounds.push_back(eb);
    }
    return exact;
}

ExactLpSolution solve_exact(const ExactLpProblem& problem) { return solve_impl(problem, Tolerances{}); }

LpSolution solve(const LpProblem& problem, Mode mode, const Tolerances& tol)
{
    if (mode == Mode::Float) return solve_impl(problem, tol);

    validate(problem);
    const auto exact = solve_exact(to_exact(problem));
    LpSolution out;
    out.status = exact.status;
    out.iterations = exact.iterations;
    out.objective = to_double(exact.objective);
    out.dual_objective = to_double(exact.dual_objective);
    for (const auto& v : exact.point) out.point.push_back(to_double(v));
    for (const auto& v : exact.duals) out.duals.push_back(to_double(v));
    return out;
}

}  // namespace polyrad::lp
