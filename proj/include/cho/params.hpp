#pragma once

#include <stdexcept>

// Two identical one-dimensional harmonic oscillators of mass m and elastic
// constant k, coupled by a spring of constant lambda.  Units are atomic-scale
// throughout: mass in electron masses (m_e), length in Angstrom (A), time in
// femtoseconds (fs).  Energies then come out in m_e A^2 fs^-2.

namespace cho {

struct OscillatorParams {
    double m = 1.0;       ///< mass [m_e]
    double k = 1.0;       ///< elastic constant [m_e fs^-2]
    double lambda = 0.0;  ///< coupling constant [m_e fs^-2]
    double hbar = 10.0;   ///< reduced Planck constant [m_e A^2 fs^-1]
    double d = 0.0;       ///< equilibrium half-offset [A]; the canonical shift
                          ///< x = X +- d removes it from all dynamics

    double epsilon() const { return 2.0 * lambda / k; }

    /// Throws std::invalid_argument unless m, k, hbar > 0 and lambda >= 0.
    void validate() const;

    /// First-order formulas downstream are expansions in delta_omega/omega_bar;
    /// epsilon <= 0.2 keeps that ratio below ~0.046.
    bool perturbative() const { return epsilon() <= 0.2; }
};

/// The two normal-mode frequencies and the beat parameters built from them.
/// All fields come from exact square roots, never series expansions.
struct DerivedFrequencies {
    double omega;        ///< sqrt(k/m), + mode [fs^-1]
    double omega_prime;  ///< sqrt((k+2 lambda)/m), - mode [fs^-1]
    double delta_omega;  ///< (omega' - omega)/2 [fs^-1]
    double omega_bar;    ///< (omega' + omega)/2 [fs^-1]
    double epsilon;      ///< 2 lambda / k

    double delta_ratio() const { return delta_omega / omega_bar; }
};

DerivedFrequencies derive_frequencies(const OscillatorParams& p);

/// First-order approximation delta_omega ~ lambda/(2 sqrt(k m)).  Diagnostic
/// only; everything else uses the exact value.
double delta_omega_first_order(const OscillatorParams& p);

/// Build params from the mode-frequency parameterization (m, omega_bar,
/// delta_omega/omega_bar) used by the trajectory and marginal scenarios.
/// Exact inversion: omega = omega_bar - delta, omega' = omega_bar + delta,
/// k = m omega^2, lambda = m (omega'^2 - omega^2)/2.
OscillatorParams params_from_mode_frequencies(double m, double omega_bar,
                                              double delta_ratio,
                                              double hbar = 10.0);

/// Index (n, n') into the product eigenbasis of the + and - normal modes.
struct ModeIndex {
    int n = 0;        ///< + mode quantum number
    int n_prime = 0;  ///< - mode quantum number
};

struct NormalCoords {
    double plus;   ///< xi+ = (x1+x2)/sqrt(2) [A]
    double minus;  ///< xi- = (x1-x2)/sqrt(2) [A]
};

struct ParticleCoords {
    double x1;
    double x2;
};

/// Rotation to normal coordinates.  Unit Jacobian; preserves x1^2 + x2^2.
NormalCoords to_normal_coords(double x1, double x2);
ParticleCoords from_normal_coords(double xi_plus, double xi_minus);

/// Guidance-field denominator fell below the singularity floor.
class SingularityError : public std::runtime_error {
  public:
    SingularityError(const std::string& what, double t, double x1, double x2)
        : std::runtime_error(what), t(t), x1(x1), x2(x2) {}
    double t;   ///< last safe time [fs]
    double x1;  ///< last safe position of particle 1 [A]
    double x2;  ///< last safe position of particle 2 [A]
};

/// Adaptive step size underflowed before reaching the requested time.
class StepUnderflowError : public std::runtime_error {
  public:
    StepUnderflowError(const std::string& what, double t)
        : std::runtime_error(what), t(t) {}
    double t;  ///< last good time [fs]
};

}  // namespace cho
