#pragma once

#include <span>

#include "cho/params.hpp"

namespace cho {

/// Physicists' Hermite polynomial H_n(x) by the three-term recurrence
/// H_{n+1} = 2 x H_n - 2 n H_{n-1}.  Rejects n < 0.
double hermite(int n, double x);

enum class Mode {
    plus,   ///< xi+ mode, frequency omega
    minus,  ///< xi- mode, frequency omega'
};

double mode_frequency(Mode mode, const DerivedFrequencies& f);

/// Normalized harmonic-oscillator eigenfunction of the given normal mode,
/// phi_n(xi) = (nu/pi)^{1/4} / sqrt(2^n n!) H_n(sqrt(nu) xi) e^{-nu xi^2/2}
/// with nu = m omega_mode / hbar.  Real-valued; dimension [A^-1/2].
double eigenfunction(Mode mode, int n, double xi, const OscillatorParams& p,
                     const DerivedFrequencies& f);

/// d phi_n / d xi  [A^-3/2]
double eigenfunction_derivative(Mode mode, int n, double xi,
                                const OscillatorParams& p,
                                const DerivedFrequencies& f);

/// E_n = hbar omega (n + 1/2) for +, hbar omega' (n + 1/2) for -.
double eigenvalue(Mode mode, int n, const OscillatorParams& p,
                  const DerivedFrequencies& f);

/// Fills out[0..nmax] with the normalized eigenfunctions of inverse-square
/// length nu = m omega/hbar at the point xi, via the stable normalized
/// recurrence phi_{j+1} = sqrt(2/(j+1)) u phi_j - sqrt(j/(j+1)) phi_{j-1},
/// u = sqrt(nu) xi.  Workhorse for the spectral evaluators and quadrature.
void eigenfunction_table(double nu, double xi, std::span<double> out);

/// Same ladder for the first derivatives d phi_j / d xi, given the value
/// table.  phi'_j = sqrt(nu) (sqrt(2j) phi_{j-1} - u phi_j).
void eigenfunction_derivative_table(double nu, double xi,
                                    std::span<const double> values,
                                    std::span<double> out);

}  // namespace cho
