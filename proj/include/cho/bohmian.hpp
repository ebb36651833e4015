#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cho/ode.hpp"
#include "cho/params.hpp"

namespace cho {

// Pilot-wave layer for the two-oscillator state: phase, guidance velocities,
// trajectory integration, quantum potential and per-particle energies.  The
// phase convention matches the guidance equations used throughout:
// S = -hbar arg(psi), v = grad S / m.  Velocities vanish identically when
// the coupling (and with it delta_omega) is zero.

struct TrajectoryState {
    double t;   ///< [fs]
    double x1;  ///< [A]
    double x2;  ///< [A]
};

/// Guidance denominator x1^2 sin^2(dw t) + x2^2 cos^2(dw t) [A^2].
double guidance_denominator(double x1, double x2, double t,
                            const DerivedFrequencies& f);

/// Singularity floor for the denominator: 1e-10 times the squared natural
/// length hbar/(m wbar).
double singularity_floor(const OscillatorParams& p, const DerivedFrequencies& f);

/// Reduced phase S(x1, x2, t) = 2 hbar wbar t - hbar atan2(x1 sin(dw t),
/// x2 cos(dw t)), principal branch [m_e A^2 fs^-1].  Terms of order dw/wbar
/// in the amplitude are dropped; the (dw/wbar) t phases are kept.  Throws
/// SingularityError where both arctangent arguments vanish (phase undefined).
double phase_S(double x1, double x2, double t, const OscillatorParams& p,
               const DerivedFrequencies& f);

struct PhaseGradient {
    double dx1;  ///< dS/dx1 [m_e A fs^-1]
    double dx2;
};
PhaseGradient grad_phase_S(double x1, double x2, double t,
                           const OscillatorParams& p, const DerivedFrequencies& f);

/// Accumulates a branch-continuous S along a sequence of points (unwraps the
/// principal arctangent by multiples of 2 pi hbar).
class PhaseTracker {
  public:
    explicit PhaseTracker(const OscillatorParams& p, const DerivedFrequencies& f)
        : p_(p), f_(f) {}
    double next(double x1, double x2, double t);

  private:
    OscillatorParams p_;
    DerivedFrequencies f_;
    bool started_ = false;
    double last_angle_ = 0.0;
    double winding_ = 0.0;
};

struct GuidanceVelocity {
    double v1;  ///< [A/fs]
    double v2;
};

/// v1 = -(hbar/m) x2 cos(dw t) sin(dw t) / den,
/// v2 = +(hbar/m) x1 cos(dw t) sin(dw t) / den.
/// Throws SingularityError when den < singularity_floor.
GuidanceVelocity guidance_field(double x1, double x2, double t,
                                const OscillatorParams& p,
                                const DerivedFrequencies& f);

struct TrajectorySample {
    std::vector<TrajectoryState> points;   ///< at the requested output times
    std::optional<OdeSolution> solution;   ///< dense solution when integrated
    OdeStats stats;
    double delta_omega = 0.0;              ///< coupling the sample was run at
};

/// Integrates the guidance equations from (x1_0, x2_0) over [t0, t1] with the
/// adaptive 8(7) solver; records n_output uniformly spaced points (endpoints
/// included).  Throws SingularityError if the trajectory approaches the
/// guidance singularity, StepUnderflowError if the step size dies first.
TrajectorySample integrate_trajectory(double x1_0, double x2_0, double t0,
                                      double t1, const OscillatorParams& p,
                                      const DerivedFrequencies& f,
                                      double rtol = 1e-9, double atol = 1e-12,
                                      int n_output = 0, bool dense = true);

/// Coupling-rescaling map t' = (dw/dw') t, x' = sqrt(dw/dw') x applied
/// pointwise; the result satisfies the guidance equations at dw'.
TrajectorySample scaling_map(const TrajectorySample& sample, double delta_old,
                             double delta_new);

struct QuantumPotential {
    double q1;        ///< [m_e A^2 fs^-2]
    double q2;
    double combined;  ///< the single-expression form of q1 + q2
};

/// Closed-form quantum potential.  q1 + q2 equals `combined` identically.
/// Throws SingularityError below the denominator floor.
QuantumPotential quantum_potential(double x1, double x2, double t,
                                   const OscillatorParams& p,
                                   const DerivedFrequencies& f);

struct EnergyBreakdown {
    double k1, k2;  ///< kinetic, from the guidance velocities
    double v1, v2;  ///< classical potential (1/2) m wbar^2 x^2
    double q1, q2;  ///< quantum potential parts
    double e1, e2;  ///< assembled K + V + Q
    double e_total; ///< e1 + e2
    double e1_reduced, e2_reduced;  ///< hbar wbar (1 +- ratio/2) closed forms;
                                    ///< e1_reduced + e2_reduced = 2 hbar wbar exactly
};

EnergyBreakdown bohmian_energies(const TrajectoryState& state,
                                 const OscillatorParams& p,
                                 const DerivedFrequencies& f);

struct EnsembleSpec {
    int count = 1;
    std::uint64_t seed = 0;
    std::vector<double> eval_times;  ///< [fs]
};

/// Initial positions distributed as |psi0|^2: x1 from the ground-state
/// Gaussian, x2 by rejection sampling of the first-excited density from a
/// Gaussian proposal (width sqrt(3) sigma, analytic acceptance bound).
/// Deterministic: sample i depends only on (seed, i).
std::vector<ParticleCoords> sample_initial_ensemble(const EnsembleSpec& spec,
                                                    const OscillatorParams& p);

struct EquivarianceResult {
    double t_eval;
    double cdf_distance_x1;  ///< sup |empirical CDF - closed-form CDF|
    double cdf_distance_x2;
    int n_total = 0;
    int n_lost = 0;  ///< trajectories terminated by the singularity guard
};

/// Transports the ensemble to t_eval along the guidance flow and compares the
/// empirical marginal CDFs against the closed-form marginals.
EquivarianceResult equivariance_check(const EnsembleSpec& spec, double t_eval,
                                      const OscillatorParams& p,
                                      double rtol = 1e-9, double atol = 1e-12,
                                      int workers = 1);

/// Endpoint states of every ensemble member at t_eval (index-aligned with the
/// initial samples; lost trajectories reported at their last safe state with
/// lost = true).
struct EnsembleEndpoint {
    TrajectoryState state;
    bool lost = false;
};
std::vector<EnsembleEndpoint> evolve_ensemble(const EnsembleSpec& spec,
                                              double t_eval,
                                              const OscillatorParams& p,
                                              double rtol = 1e-9,
                                              double atol = 1e-12,
                                              int workers = 1);

}  // namespace cho
