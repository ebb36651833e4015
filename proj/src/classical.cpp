#include "cho/classical.hpp"

#include <cmath>
#include <stdexcept>

namespace cho {

namespace {
void require_canonical(const ClassicalScenario& s) {
    if (!s.is_canonical())
        throw std::invalid_argument(
            "classical closed forms require the canonical release scenario "
            "(x1=0, v1=v2=0); use integrate_hamilton for general initial conditions");
}
}  // namespace

ClassicalSolution solve_release(const ClassicalScenario& s) {
    require_canonical(s);
    return {s.displacement(), -s.displacement(), 0.0, 0.0};
}

ParticleCoords classical_positions(double t, const ClassicalScenario& s,
                                   const DerivedFrequencies& f) {
    require_canonical(s);
    const double D = s.displacement();
    const double cw = std::cos(f.omega * t);
    const double cwp = std::cos(f.omega_prime * t);
    return {0.5 * D * (cw - cwp), 0.5 * D * (cw + cwp)};
}

ParticleCoords classical_positions_beat(double t, const ClassicalScenario& s,
                                        const DerivedFrequencies& f) {
    require_canonical(s);
    const double D = s.displacement();
    return {D * std::sin(f.delta_omega * t) * std::sin(f.omega_bar * t),
            D * std::cos(f.delta_omega * t) * std::cos(f.omega_bar * t)};
}

ParticleCoords classical_velocities(double t, const ClassicalScenario& s,
                                    const DerivedFrequencies& f) {
    require_canonical(s);
    const double D = s.displacement();
    const double sw = std::sin(f.omega * t);
    const double swp = std::sin(f.omega_prime * t);
    return {0.5 * D * (-f.omega * sw + f.omega_prime * swp),
            0.5 * D * (-f.omega * sw - f.omega_prime * swp)};
}

ClassicalEnergies classical_energies(double t, const ClassicalScenario& s,
                                     const OscillatorParams& p,
                                     const DerivedFrequencies& f) {
    require_canonical(s);
    const double D = s.displacement();
    const double e0 = 0.5 * p.k * D * D;
    const double sd = std::sin(f.delta_omega * t), cd = std::cos(f.delta_omega * t);
    const double sb = std::sin(f.omega_bar * t), cb = std::cos(f.omega_bar * t);
    const double ratio4 = 4.0 * f.delta_omega / f.omega_bar;

    ClassicalEnergies e;
    e.e1_first_order = e0 * sd * sd * (1.0 + ratio4 * cb * cb);
    e.e2_first_order = e0 * cd * cd * (1.0 + ratio4 * sb * sb);

    const auto x = classical_positions(t, s, f);
    const auto v = classical_velocities(t, s, f);
    e.e1_exact = 0.5 * p.m * v.x1 * v.x1 + 0.5 * p.k * x.x1 * x.x1;
    e.e2_exact = 0.5 * p.m * v.x2 * v.x2 + 0.5 * p.k * x.x2 * x.x2;
    return e;
}

double hamiltonian_energy(const OscillatorParams& p, double x1, double x2,
                          double p1, double p2) {
    const double dx = x1 - x2;
    return (p1 * p1 + p2 * p2) / (2.0 * p.m) +
           0.5 * p.k * (x1 * x1 + x2 * x2) + 0.5 * p.lambda * dx * dx;
}

ClassicalTotalEnergy classical_total_energy(const ClassicalScenario& s,
                                            const OscillatorParams& p,
                                            const DerivedFrequencies& f) {
    ClassicalTotalEnergy e;
    const double D = s.displacement();
    e.first_order = 0.5 * p.k * D * D * (1.0 + 2.0 * f.delta_omega / f.omega_bar);
    e.exact_initial = hamiltonian_energy(p, s.x1_0, s.x2_0, p.m * s.v1_0, p.m * s.v2_0);
    return e;
}

OdeSolution integrate_hamilton(const ClassicalScenario& s,
                               const OscillatorParams& p, double t0, double t1,
                               double rtol, double atol) {
    p.validate();
    OdeProblem prob;
    prob.dimension = 4;
    prob.t0 = t0;
    prob.t1 = t1;
    prob.y0 = {s.x1_0, s.x2_0, p.m * s.v1_0, p.m * s.v2_0};
    const double m = p.m, k = p.k, lam = p.lambda;
    prob.rhs = [m, k, lam](double, std::span<const double> y, std::span<double> d) {
        const double coupling = lam * (y[0] - y[1]);
        d[0] = y[2] / m;
        d[1] = y[3] / m;
        d[2] = -k * y[0] - coupling;
        d[3] = -k * y[1] + coupling;
    };
    OdeOptions opt;
    opt.rtol = rtol;
    opt.atol = atol;
    return solve(prob, opt);
}

}  // namespace cho
