#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace cho {

/// Right-hand side y' = f(t, y).  Writes the derivative into dydt.
using OdeRhs = std::function<void(double t, std::span<const double> y,
                                  std::span<double> dydt)>;

/// State admissibility predicate.  Returning false at a trial state makes the
/// solver shrink the step (bisection); if the step underflows while the guard
/// keeps failing, the solve terminates with OdeStatus::guard_triggered at the
/// last admissible state.
using OdeGuard = std::function<bool(double t, std::span<const double> y)>;

struct OdeProblem {
    std::size_t dimension = 1;
    OdeRhs rhs;
    double t0 = 0.0;
    double t1 = 1.0;
    std::vector<double> y0;
};

struct OdeOptions {
    double rtol = 1e-9;
    double atol = 1e-12;
    double h_initial = 0.0;       ///< 0 = automatic selection
    double h_max = 0.0;           ///< 0 = span length
    std::size_t max_steps = 2'000'000;
    bool dense = true;            ///< keep per-step interpolants
};

enum class OdeStatus {
    success,
    guard_triggered,  ///< guard predicate rejected every admissible step size
    step_underflow,   ///< error control drove h below the representable floor
    max_steps,
};

struct OdeStats {
    std::size_t n_steps = 0;     ///< accepted steps
    std::size_t n_rejected = 0;  ///< error- or guard-rejected trials
    std::size_t n_rhs = 0;       ///< right-hand-side evaluations
};

/// One accepted step with its dense-output coefficients (order-7 interpolant,
/// 7 vectors in the nested Horner form of the 8(7) pair's interpolation).
struct StepRecord {
    double t_start = 0.0;
    double h = 0.0;
    std::vector<double> y_start;
    std::vector<double> coeff;  ///< 7 x dimension, row-major
    double error_estimate = 0.0;
};

class OdeSolution {
  public:
    OdeStatus status = OdeStatus::success;
    OdeStats stats;

    double t_begin() const { return t_begin_; }
    /// Last time reached; equals the requested t1 only on success.
    double t_end() const { return t_end_; }
    std::span<const double> y_end() const { return y_end_; }

    /// Dense evaluation at any t in [t_begin, t_end].  Requires the solve to
    /// have been run with options.dense = true.
    void eval(double t, std::span<double> y) const;
    std::vector<double> eval(double t) const;

    const std::vector<StepRecord>& steps() const { return steps_; }

  private:
    friend OdeSolution solve(const OdeProblem&, const OdeOptions&, OdeGuard);
    double t_begin_ = 0.0;
    double t_end_ = 0.0;
    std::vector<double> y_end_;
    std::vector<StepRecord> steps_;
    std::size_t dim_ = 0;
};

/// Adaptive embedded Runge-Kutta solve: order-8 propagation with an order-7
/// style error estimate and an order-7 continuous interpolant per step.
/// Deterministic: identical inputs give bit-identical step sequences.
OdeSolution solve(const OdeProblem& problem, const OdeOptions& options = {},
                  OdeGuard guard = {});

namespace detail {
/// Numeric self-checks of the embedded tableau: stage consistency
/// (sum_j a_ij = c_i) and all rooted-tree order conditions through order 5
/// plus the quadrature conditions through order 8.  Returns max violation.
double tableau_order_condition_residual();
}  // namespace detail

}  // namespace cho
