#include "cho/params.hpp"

#include <cmath>

namespace cho {

void OscillatorParams::validate() const {
    if (!(m > 0.0)) throw std::invalid_argument("OscillatorParams: m must be > 0");
    if (!(k > 0.0)) throw std::invalid_argument("OscillatorParams: k must be > 0");
    if (!(hbar > 0.0)) throw std::invalid_argument("OscillatorParams: hbar must be > 0");
    if (!(lambda >= 0.0)) throw std::invalid_argument("OscillatorParams: lambda must be >= 0");
}

DerivedFrequencies derive_frequencies(const OscillatorParams& p) {
    p.validate();
    DerivedFrequencies f;
    f.omega = std::sqrt(p.k / p.m);
    f.omega_prime = std::sqrt((p.k + 2.0 * p.lambda) / p.m);
    f.delta_omega = 0.5 * (f.omega_prime - f.omega);
    f.omega_bar = 0.5 * (f.omega_prime + f.omega);
    f.epsilon = p.epsilon();
    return f;
}

double delta_omega_first_order(const OscillatorParams& p) {
    return p.lambda / (2.0 * std::sqrt(p.k * p.m));
}

OscillatorParams params_from_mode_frequencies(double m, double omega_bar,
                                              double delta_ratio, double hbar) {
    const double delta = delta_ratio * omega_bar;
    const double omega = omega_bar - delta;
    const double omega_prime = omega_bar + delta;
    OscillatorParams p;
    p.m = m;
    p.k = m * omega * omega;
    p.lambda = 0.5 * m * (omega_prime * omega_prime - omega * omega);
    p.hbar = hbar;
    p.validate();
    return p;
}

namespace {
constexpr double kInvSqrt2 = 0.7071067811865475244008443621048490393;
}

NormalCoords to_normal_coords(double x1, double x2) {
    return {(x1 + x2) * kInvSqrt2, (x1 - x2) * kInvSqrt2};
}

ParticleCoords from_normal_coords(double xi_plus, double xi_minus) {
    return {(xi_plus + xi_minus) * kInvSqrt2, (xi_plus - xi_minus) * kInvSqrt2};
}

}  // namespace cho
