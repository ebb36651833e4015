#pragma once

#include <vector>

#include "cho/spectral.hpp"

namespace cho {

enum class Particle { one, two };
enum class ValueSource { closed_form, quadrature };

/// |psi|^2 from either evaluator [A^-2].
double joint_density(const SpectralEvaluator& psi, double x1, double x2, double t);
double joint_density(const FirstOrderEvaluator& psi, double x1, double x2, double t);

/// The expanded first-order closed form of the joint density (the form the
/// marginal integrals are derived from).  Agrees with |first-order psi|^2 to
/// O((dw/wbar)^2).
double joint_density_closed_form(double x1, double x2, double t,
                                 const OscillatorParams& p,
                                 const DerivedFrequencies& f);

/// Closed-form marginal density of one particle at time t [A^-1].
/// Gaussian times an even quartic; may dip slightly negative at large |x|
/// (O((dw/wbar)^2)); reported as-is.
double marginal_closed_form(Particle which, double x, double t,
                            const OscillatorParams& p,
                            const DerivedFrequencies& f);

/// Even-polynomial part of the closed-form marginal: P = g(x) (A + B x^2 + C x^4)
/// with g the unit-norm Gaussian of inverse width m wbar / hbar.
struct MarginalPolynomial {
    double a, b, c;
};
MarginalPolynomial marginal_polynomial(Particle which, double t,
                                       const OscillatorParams& p,
                                       const DerivedFrequencies& f);

/// Cumulative integral of the closed-form marginal from -infinity to x.
double marginal_closed_form_cdf(Particle which, double x, double t,
                                const OscillatorParams& p,
                                const DerivedFrequencies& f);

/// Marginal by 1-D quadrature of |psi|^2 over the other coordinate (oracle).
double marginal_quadrature(Particle which, double x, double t,
                           const SpectralEvaluator& psi, int order = 64);
double marginal_quadrature(Particle which, double x, double t,
                           const FirstOrderEvaluator& psi, int order = 64);

/// Sampled marginal curve with provenance and a negativity diagnostic.
struct MarginalCurve {
    Particle which;
    double t;
    ValueSource source;
    std::vector<double> x;
    std::vector<double> density;
    double min_density = 0.0;  ///< most negative sample (0 if none negative)
};

MarginalCurve marginal_curve_closed_form(Particle which, double t,
                                         const std::vector<double>& grid,
                                         const OscillatorParams& p,
                                         const DerivedFrequencies& f);
MarginalCurve marginal_curve_quadrature(Particle which, double t,
                                        const std::vector<double>& grid,
                                        const SpectralEvaluator& psi,
                                        int order = 64);

/// Per-particle and interaction energy expectations at time t.
struct EnergyReport {
    double t;
    double e1;           ///< <H1> [m_e A^2 fs^-2]
    double e2;           ///< <H2>
    double interaction;  ///< <H_I>
    double total;        ///< e1 + e2 + interaction
    ValueSource source;
};

/// Closed forms: E1 = hbar omega (1/2 + sin^2(dw t)), E2 the cosine mirror,
/// <H_I> = 2 hbar dw.
EnergyReport energy_expectations_closed_form(double t, const OscillatorParams& p,
                                             const DerivedFrequencies& f);

/// Operator expectations on the exact evolved state by 2-D quadrature.
EnergyReport energy_expectations_quadrature(double t, const SpectralEvaluator& psi,
                                            int order = 64);

/// Total energy of the truncated state from the coefficients alone:
/// sum C^2 (E_n + E'_{n'}).  Time independent.
double spectral_total_energy(const SpectralState& st);

/// <n1 n2| H_I |n1 n2> for uncoupled product Fock states: the cross term
/// vanishes, leaving (lambda/2)(<x1^2> + <x2^2>) > 0.
double fock_interaction_energy(int n1, int n2, const OscillatorParams& p,
                               const DerivedFrequencies& f);

/// Interaction energy of a product of coherent states |alpha>|beta> at t = 0,
/// scanned over the relative phase of beta (alpha taken real nonnegative).
struct CoherentScanPoint {
    double relative_phase;  ///< arg(beta) [rad]
    double bare;            ///< (lambda/2)[(<x1>-<x2>)^2 + hbar/(m omega)]
    double normal_ordered;  ///< (lambda/2)(<x1>-<x2>)^2, vacuum term removed
};

struct CoherentScan {
    std::vector<CoherentScanPoint> points;
    CoherentScanPoint minimum_bare;            ///< bare minimizer over the grid
    CoherentScanPoint minimum_normal_ordered;  ///< normal-ordered minimizer
};

CoherentScan coherent_interaction_scan(double alpha_mag, double beta_mag,
                                       int phase_grid, const OscillatorParams& p,
                                       const DerivedFrequencies& f);

}  // namespace cho
