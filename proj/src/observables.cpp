#include "cho/observables.hpp"

#include <cmath>
#include <stdexcept>

namespace cho {

double joint_density(const SpectralEvaluator& psi, double x1, double x2, double t) {
    return std::norm(psi(x1, x2, t).value);
}

double joint_density(const FirstOrderEvaluator& psi, double x1, double x2, double t) {
    return std::norm(psi(x1, x2, t).value);
}

double joint_density_closed_form(double x1, double x2, double t,
                                 const OscillatorParams& p,
                                 const DerivedFrequencies& f) {
    const double g = p.m * f.omega_bar / p.hbar;
    const double r = f.delta_ratio();
    const double dw = f.delta_omega, wb = f.omega_bar;
    const double sd = std::sin(dw * t), cd = std::cos(dw * t);
    const double c1 = std::cos((2 * wb + dw) * t), s1 = std::sin((2 * wb + dw) * t);
    const double c3 = std::cos((2 * wb + 3 * dw) * t), s3 = std::sin((2 * wb + 3 * dw) * t);
    const double u = x1 - x2, v = x1 + x2;
    const double gu2 = g * u * u;

    const double brace =
        4.0 * (x2 * x2 + 2.0 * x1 * x2 * (0.5 - g * x2 * x2) * r) * cd * cd +
        4.0 * (x1 * x1 + 2.0 * x1 * x2 * (0.5 - g * x1 * x1) * r) * sd * sd +
        2.0 * x2 * r * v * (gu2 - 1.0) * cd * c1 -
        2.0 * x2 * r * u * (gu2 - 3.0) * cd * c3 -
        2.0 * x1 * r * v * (gu2 - 1.0) * sd * s1 +
        2.0 * x1 * r * u * (gu2 - 3.0) * sd * s3;

    return (1.0 / (2.0 * M_PI)) * g * g *
           std::exp(-g * (x1 * x1 + x2 * x2)) * brace;
}

MarginalPolynomial marginal_polynomial(Particle which, double t,
                                       const OscillatorParams& p,
                                       const DerivedFrequencies& f) {
    const double g = p.m * f.omega_bar / p.hbar;
    const double r = f.delta_ratio();
    const double dw = f.delta_omega, wb = f.omega_bar;
    const double sd = std::sin(dw * t), cd = std::cos(dw * t);
    const double c1 = std::cos((2 * wb + dw) * t), s1 = std::sin((2 * wb + dw) * t);
    const double c3 = std::cos((2 * wb + 3 * dw) * t), s3 = std::sin((2 * wb + 3 * dw) * t);

    // The sign of the x^2(3/2 - g x^2) ripple term is fixed by requiring the
    // curve to equal the exact one-coordinate integral of
    // joint_density_closed_form (which it does, identically in the first
    // order); the opposite sign breaks that identity at first order.
    MarginalPolynomial mp;
    if (which == Particle::one) {
        const double tc = (3.0 * c3 - c1) * cd;  // cosine ripple combination
        const double ts = (s3 - s1) * sd;        // sine ripple combination
        mp.a = cd * cd - r * 0.25 * tc;
        mp.b = 2.0 * g * sd * sd + r * (0.5 * g * tc - 1.5 * g * ts);
        mp.c = r * g * g * ts;
    } else {
        const double tc = (3.0 * s3 + s1) * sd;
        const double ts = (c3 + c1) * cd;
        mp.a = sd * sd - r * 0.25 * tc;
        mp.b = 2.0 * g * cd * cd + r * (0.5 * g * tc - 1.5 * g * ts);
        mp.c = r * g * g * ts;
    }
    return mp;
}

double marginal_closed_form(Particle which, double x, double t,
                            const OscillatorParams& p,
                            const DerivedFrequencies& f) {
    const double g = p.m * f.omega_bar / p.hbar;
    const double gauss = std::sqrt(g / M_PI) * std::exp(-g * x * x);
    const auto mp = marginal_polynomial(which, t, p, f);
    return gauss * (mp.a + mp.b * x * x + mp.c * x * x * x * x);
}

double marginal_closed_form_cdf(Particle which, double x, double t,
                                const OscillatorParams& p,
                                const DerivedFrequencies& f) {
    const double g = p.m * f.omega_bar / p.hbar;
    const auto mp = marginal_polynomial(which, t, p, f);
    const double phi = 0.5 * (1.0 + std::erf(std::sqrt(g) * x));
    const double gauss = std::sqrt(g / M_PI) * std::exp(-g * x * x);
    // int u^2 gauss = phi/(2g) - x gauss/(2g); int u^4 gauss = 3 phi/(4g^2)
    //   - gauss (x^3/(2g) + 3x/(4g^2))
    const double i2 = phi / (2 * g) - x * gauss / (2 * g);
    const double i4 = 3 * phi / (4 * g * g) - gauss * (x * x * x / (2 * g) + 3 * x / (4 * g * g));
    return mp.a * phi + mp.b * i2 + mp.c * i4;
}

namespace {

template <class Evaluator>
double marginal_quad_impl(Particle which, double x, double t, const Evaluator& psi,
                          const OscillatorParams& p, const DerivedFrequencies& f,
                          int order) {
    // integrate the other coordinate; density decays at least like the
    // narrower mode Gaussian e^{-nu' y^2} in that direction
    const double nu = p.m * f.omega_prime / p.hbar;
    const auto rule = gauss_hermite_rule(order, 1.0 / std::sqrt(nu));
    double acc = 0.0;
    for (int i = 0; i < rule.order(); ++i) {
        const double y = rule.nodes[i];
        const double d = which == Particle::one ? joint_density(psi, x, y, t)
                                                : joint_density(psi, y, x, t);
        acc += rule.total_weights[i] * d;
    }
    return acc;
}

}  // namespace

double marginal_quadrature(Particle which, double x, double t,
                           const SpectralEvaluator& psi, int order) {
    return marginal_quad_impl(which, x, t, psi, psi.state().params,
                              psi.state().freqs, order);
}

double marginal_quadrature(Particle which, double x, double t,
                           const FirstOrderEvaluator& psi, int order) {
    return marginal_quad_impl(which, x, t, psi, psi.params(), psi.freqs(), order);
}

namespace {
MarginalCurve make_curve(Particle which, double t, ValueSource source,
                         const std::vector<double>& grid) {
    MarginalCurve c;
    c.which = which;
    c.t = t;
    c.source = source;
    c.x = grid;
    c.density.reserve(grid.size());
    return c;
}
}  // namespace

MarginalCurve marginal_curve_closed_form(Particle which, double t,
                                         const std::vector<double>& grid,
                                         const OscillatorParams& p,
                                         const DerivedFrequencies& f) {
    auto c = make_curve(which, t, ValueSource::closed_form, grid);
    for (double x : grid) {
        c.density.push_back(marginal_closed_form(which, x, t, p, f));
        c.min_density = std::min(c.min_density, c.density.back());
    }
    return c;
}

MarginalCurve marginal_curve_quadrature(Particle which, double t,
                                        const std::vector<double>& grid,
                                        const SpectralEvaluator& psi, int order) {
    auto c = make_curve(which, t, ValueSource::quadrature, grid);
    for (double x : grid) {
        c.density.push_back(marginal_quadrature(which, x, t, psi, order));
        c.min_density = std::min(c.min_density, c.density.back());
    }
    return c;
}

EnergyReport energy_expectations_closed_form(double t, const OscillatorParams& p,
                                             const DerivedFrequencies& f) {
    const double sd = std::sin(f.delta_omega * t), cd = std::cos(f.delta_omega * t);
    EnergyReport e;
    e.t = t;
    e.source = ValueSource::closed_form;
    e.e1 = p.hbar * f.omega * (0.5 + sd * sd);
    e.e2 = p.hbar * f.omega * (0.5 + cd * cd);
    e.interaction = 2.0 * p.hbar * f.delta_omega;
    e.total = e.e1 + e.e2 + e.interaction;
    return e;
}

EnergyReport energy_expectations_quadrature(double t, const SpectralEvaluator& psi,
                                            int order) {
    const auto& p = psi.state().params;
    const auto& f = psi.state().freqs;
    const double nu_p = p.m * f.omega / p.hbar;
    const double nu_m = p.m * f.omega_prime / p.hbar;
    const auto rp = gauss_hermite_rule(order, 1.0 / std::sqrt(nu_p));
    const auto rm = gauss_hermite_rule(order, 1.0 / std::sqrt(nu_m));

    const double half_k = 0.5 * p.k;
    const double kin = -p.hbar * p.hbar / (2.0 * p.m);
    double e1 = 0.0, e2 = 0.0, ei = 0.0;
    for (int i = 0; i < rp.order(); ++i)
        for (int j = 0; j < rm.order(); ++j) {
            const double w = rp.total_weights[i] * rm.total_weights[j];
            const auto xy = from_normal_coords(rp.nodes[i], rm.nodes[j]);
            const auto h = psi.hessian(xy.x1, xy.x2, t);
            const Complex cv = std::conj(h.value);
            e1 += w * std::real(cv * (kin * h.dxx1 + half_k * xy.x1 * xy.x1 * h.value));
            e2 += w * std::real(cv * (kin * h.dxx2 + half_k * xy.x2 * xy.x2 * h.value));
            const double du = xy.x1 - xy.x2;
            ei += w * 0.5 * p.lambda * du * du * std::norm(h.value);
        }

    EnergyReport e;
    e.t = t;
    e.source = ValueSource::quadrature;
    e.e1 = e1;
    e.e2 = e2;
    e.interaction = ei;
    e.total = e1 + e2 + ei;
    return e;
}

double spectral_total_energy(const SpectralState& st) {
    double acc = 0.0;
    for (int n = 0; n <= st.n_max; ++n)
        for (int np = 0; np <= st.np_max; ++np) {
            const double c = st.coefficient(n, np);
            acc += c * c * st.params.hbar *
                   (st.freqs.omega * (n + 0.5) + st.freqs.omega_prime * (np + 0.5));
        }
    return acc;
}

double fock_interaction_energy(int n1, int n2, const OscillatorParams& p,
                               const DerivedFrequencies& f) {
    if (n1 < 0 || n2 < 0)
        throw std::invalid_argument("fock_interaction_energy: quantum numbers must be >= 0");
    // <x^2>_n = (hbar/m omega)(n + 1/2) for the uncoupled oscillators
    const double x2_1 = p.hbar / (p.m * f.omega) * (n1 + 0.5);
    const double x2_2 = p.hbar / (p.m * f.omega) * (n2 + 0.5);
    return 0.5 * p.lambda * (x2_1 + x2_2);
}

CoherentScan coherent_interaction_scan(double alpha_mag, double beta_mag,
                                       int phase_grid, const OscillatorParams& p,
                                       const DerivedFrequencies& f) {
    if (alpha_mag < 0.0 || beta_mag < 0.0)
        throw std::invalid_argument("coherent_interaction_scan: magnitudes must be >= 0");
    if (phase_grid < 2)
        throw std::invalid_argument("coherent_interaction_scan: need at least 2 phases");

    const double xscale = std::sqrt(2.0 * p.hbar / (p.m * f.omega));
    const double vacuum = p.hbar / (p.m * f.omega);

    CoherentScan scan;
    scan.points.reserve(phase_grid);
    for (int i = 0; i < phase_grid; ++i) {
        const double th = 2.0 * M_PI * i / phase_grid;
        const double dx = xscale * (alpha_mag - beta_mag * std::cos(th));
        CoherentScanPoint pt;
        pt.relative_phase = th;
        pt.normal_ordered = 0.5 * p.lambda * dx * dx;
        pt.bare = pt.normal_ordered + 0.5 * p.lambda * vacuum;
        scan.points.push_back(pt);
        if (i == 0 || pt.bare < scan.minimum_bare.bare) scan.minimum_bare = pt;
        if (i == 0 || pt.normal_ordered < scan.minimum_normal_ordered.normal_ordered)
            scan.minimum_normal_ordered = pt;
    }
    return scan;
}

}  // namespace cho
