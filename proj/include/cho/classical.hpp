#pragma once

#include "cho/ode.hpp"
#include "cho/params.hpp"

namespace cho {

/// Initial conditions for the classical pair.  The canonical release scenario
/// (both particles at rest, particle 2 displaced by D) is the one all closed
/// forms below assume; the integrator path accepts anything.
struct ClassicalScenario {
    double x1_0 = 0.0;  ///< [A]
    double x2_0 = 0.0;  ///< [A]
    double v1_0 = 0.0;  ///< [A/fs]
    double v2_0 = 0.0;  ///< [A/fs]

    static ClassicalScenario release(double D) { return {0.0, D, 0.0, 0.0}; }
    bool is_canonical() const { return x1_0 == 0.0 && v1_0 == 0.0 && v2_0 == 0.0; }
    double displacement() const { return x2_0; }
};

/// Integration constants of the closed-form solution x1 = (A/2)cos(w t + th)
/// + (A'/2)cos(w' t + th'), x2 with the minus sign.
struct ClassicalSolution {
    double amplitude_plus;    ///< A  [A]
    double amplitude_minus;   ///< A' [A]
    double phase_plus = 0.0;  ///< theta [rad]
    double phase_minus = 0.0; ///< theta' [rad]
};

/// For the canonical scenario: A = D, A' = -D, phases zero.
ClassicalSolution solve_release(const ClassicalScenario& s);

/// Closed-form positions, two-cosine form:
///   x1 = (D/2)[cos(w t) - cos(w' t)],  x2 = (D/2)[cos(w t) + cos(w' t)].
ParticleCoords classical_positions(double t, const ClassicalScenario& s,
                                   const DerivedFrequencies& f);

/// Beat (envelope) form D sin(dw t) sin(wbar t) / D cos(dw t) cos(wbar t);
/// equals the two-cosine form identically (product identities are exact).
ParticleCoords classical_positions_beat(double t, const ClassicalScenario& s,
                                        const DerivedFrequencies& f);

/// Analytic time derivative of the closed form.
ParticleCoords classical_velocities(double t, const ClassicalScenario& s,
                                    const DerivedFrequencies& f);

struct ClassicalEnergies {
    double e1_first_order;  ///< (kD^2/2) sin^2(dw t)[1 + 4(dw/wbar)cos^2(wbar t)]
    double e2_first_order;  ///< (kD^2/2) cos^2(dw t)[1 + 4(dw/wbar)sin^2(wbar t)]
    double e1_exact;        ///< p1^2/2m + k x1^2/2 from the closed form
    double e2_exact;
};

ClassicalEnergies classical_energies(double t, const ClassicalScenario& s,
                                     const OscillatorParams& p,
                                     const DerivedFrequencies& f);

struct ClassicalTotalEnergy {
    double first_order;   ///< (kD^2/2)(1 + 2 dw/wbar)
    double exact_initial; ///< full Hamiltonian at the initial conditions
};

ClassicalTotalEnergy classical_total_energy(const ClassicalScenario& s,
                                            const OscillatorParams& p,
                                            const DerivedFrequencies& f);

/// Hamiltonian evaluated at a phase-space point (x1, x2, p1, p2).
double hamiltonian_energy(const OscillatorParams& p, double x1, double x2,
                          double p1, double p2);

/// Numerically integrated phase-space path (x1, x2, p1, p2), used as the
/// independent oracle for the closed forms.  Dense output enabled.
OdeSolution integrate_hamilton(const ClassicalScenario& s,
                               const OscillatorParams& p, double t0, double t1,
                               double rtol = 1e-10, double atol = 1e-12);

}  // namespace cho
