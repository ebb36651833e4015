#include "cho/hermite.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace cho {

double hermite(int n, double x) {
    if (n < 0) throw std::invalid_argument("hermite: order must be >= 0");
    if (n == 0) return 1.0;
    double hm = 1.0;        // H_0
    double h = 2.0 * x;     // H_1
    for (int j = 1; j < n; ++j) {
        const double hp = 2.0 * x * h - 2.0 * j * hm;
        hm = h;
        h = hp;
    }
    return h;
}

double mode_frequency(Mode mode, const DerivedFrequencies& f) {
    return mode == Mode::plus ? f.omega : f.omega_prime;
}

void eigenfunction_table(double nu, double xi, std::span<double> out) {
    if (out.empty()) return;
    const double u = std::sqrt(nu) * xi;
    out[0] = std::pow(nu / M_PI, 0.25) * std::exp(-0.5 * u * u);
    if (out.size() == 1) return;
    out[1] = std::sqrt(2.0) * u * out[0];
    for (std::size_t j = 2; j < out.size(); ++j)
        out[j] = std::sqrt(2.0 / j) * u * out[j - 1] -
                 std::sqrt((j - 1.0) / j) * out[j - 2];
}

void eigenfunction_derivative_table(double nu, double xi,
                                    std::span<const double> values,
                                    std::span<double> out) {
    const double su = std::sqrt(nu);
    const double u = su * xi;
    for (std::size_t j = 0; j < out.size(); ++j) {
        const double ladder = j > 0 ? std::sqrt(2.0 * j) * values[j - 1] : 0.0;
        out[j] = su * (ladder - u * values[j]);
    }
}

namespace {
double nu_of(Mode mode, const OscillatorParams& p, const DerivedFrequencies& f) {
    return p.m * mode_frequency(mode, f) / p.hbar;
}
}  // namespace

double eigenfunction(Mode mode, int n, double xi, const OscillatorParams& p,
                     const DerivedFrequencies& f) {
    if (n < 0) throw std::invalid_argument("eigenfunction: n must be >= 0");
    std::vector<double> tab(n + 1);
    eigenfunction_table(nu_of(mode, p, f), xi, tab);
    return tab[n];
}

double eigenfunction_derivative(Mode mode, int n, double xi,
                                const OscillatorParams& p,
                                const DerivedFrequencies& f) {
    if (n < 0) throw std::invalid_argument("eigenfunction_derivative: n must be >= 0");
    std::vector<double> tab(n + 1), dtab(n + 1);
    const double nu = nu_of(mode, p, f);
    eigenfunction_table(nu, xi, tab);
    eigenfunction_derivative_table(nu, xi, tab, dtab);
    return dtab[n];
}

double eigenvalue(Mode mode, int n, const OscillatorParams& p,
                  const DerivedFrequencies& f) {
    if (n < 0) throw std::invalid_argument("eigenvalue: n must be >= 0");
    return p.hbar * mode_frequency(mode, f) * (n + 0.5);
}

}  // namespace cho
