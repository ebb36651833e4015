#include "cho/spectral.hpp"

#include <cmath>
#include <stdexcept>

namespace cho {

double initial_state(double x1, double x2, const OscillatorParams& p) {
    const double a = std::sqrt(p.m * p.k) / p.hbar;
    return std::sqrt(2.0 / M_PI) * a * x2 * std::exp(-0.5 * a * (x1 * x1 + x2 * x2));
}

namespace {

std::vector<double> project_once(const std::function<double(double, double)>& initial,
                                 int n_max, int np_max, double nu_plus,
                                 double nu_minus, int order) {
    // per-axis scales matched to basis x initial-state Gaussian decay
    const auto rule_p = gauss_hermite_rule(order, 1.0 / std::sqrt(nu_plus));
    const auto rule_m =
        gauss_hermite_rule(order, std::sqrt(2.0 / (nu_plus + nu_minus)));

    std::vector<double> tab_p(order * (n_max + 1)), tab_m(order * (np_max + 1));
    for (int i = 0; i < order; ++i) {
        eigenfunction_table(nu_plus, rule_p.nodes[i],
                            {tab_p.data() + i * (n_max + 1), std::size_t(n_max + 1)});
        eigenfunction_table(nu_minus, rule_m.nodes[i],
                            {tab_m.data() + i * (np_max + 1), std::size_t(np_max + 1)});
    }

    std::vector<double> c((n_max + 1) * (np_max + 1), 0.0);
    for (int i = 0; i < order; ++i) {
        const double xip = rule_p.nodes[i];
        const double wi = rule_p.total_weights[i];
        for (int j = 0; j < order; ++j) {
            const double xim = rule_m.nodes[j];
            const auto xy = from_normal_coords(xip, xim);
            const double f = wi * rule_m.total_weights[j] * initial(xy.x1, xy.x2);
            if (f == 0.0) continue;
            for (int n = 0; n <= n_max; ++n) {
                const double fp = f * tab_p[i * (n_max + 1) + n];
                for (int np = 0; np <= np_max; ++np)
                    c[n * (np_max + 1) + np] += fp * tab_m[j * (np_max + 1) + np];
            }
        }
    }
    return c;
}

}  // namespace

SpectralState project_coefficients(
    const std::function<double(double, double)>& initial, int n_max, int np_max,
    const OscillatorParams& p, int quadrature_order) {
    p.validate();
    if (n_max < 1 || np_max < 3)
        throw std::invalid_argument("project_coefficients: truncation must be >= (1, 3)");
    if (quadrature_order < 2 * np_max + 16)
        throw std::invalid_argument(
            "project_coefficients: quadrature order must be >= 2 np_max + 16");

    SpectralState st;
    st.params = p;
    st.freqs = derive_frequencies(p);
    st.n_max = n_max;
    st.np_max = np_max;
    const double nu_p = p.m * st.freqs.omega / p.hbar;
    const double nu_m = p.m * st.freqs.omega_prime / p.hbar;

    const auto c1 = project_once(initial, n_max, np_max, nu_p, nu_m, quadrature_order);
    const auto c2 = project_once(initial, n_max, np_max, nu_p, nu_m, 2 * quadrature_order);
    double instability = 0.0;
    for (std::size_t i = 0; i < c1.size(); ++i)
        instability = std::max(instability, std::abs(c1[i] - c2[i]));
    if (instability > 1e-8)
        throw std::runtime_error(
            "project_coefficients: quadrature order too low, coefficients moved by " +
            std::to_string(instability) + " under order doubling");

    st.coeffs = c2;
    st.sum_sq = 0.0;
    for (double c : st.coeffs) st.sum_sq += c * c;
    st.tail_bound = std::max(0.0, 1.0 - st.sum_sq);
    return st;
}

SpectralState project_initial_state(const OscillatorParams& p, int n_max,
                                    int np_max, int quadrature_order) {
    return project_coefficients(
        [&p](double x1, double x2) { return initial_state(x1, x2, p); }, n_max,
        np_max, p, quadrature_order);
}

double coefficient_closed_form(int n, int np, const DerivedFrequencies& f) {
    if (n < 0 || np < 0)
        throw std::invalid_argument("coefficient_closed_form: indices must be >= 0");
    const bool branch_n1 = (n == 1 && np % 2 == 0);
    const bool branch_n0 = (n == 0 && np % 2 == 1);
    if (!branch_n1 && !branch_n0) return 0.0;

    const double w = f.omega, wp = f.omega_prime;
    const double q = (wp - w) / (w + wp);
    // (w / (2^{2n} n!^2))^{1/4} etc. via logs
    const double pref =
        std::sqrt(w) *
        std::pow(w, 0.25) * std::exp(-0.5 * (n * M_LN2 + std::lgamma(n + 1.0))) *
        std::pow(wp, 0.25) * std::exp(-0.5 * (np * M_LN2 + std::lgamma(np + 1.0))) *
        std::sqrt(2.0 / (w + wp));

    if (branch_n1) {
        const int j = np / 2;
        const double fac = std::exp(std::lgamma(2.0 * j + 1.0) - std::lgamma(j + 1.0));
        return pref * std::pow(q, j) * std::sqrt(1.0 / w) * fac;
    }
    const int j = (np - 1) / 2;
    const double fac = std::exp(std::lgamma(2.0 * j + 2.0) - std::lgamma(j + 1.0));
    return -pref * std::pow(q, j) * std::sqrt(2.0 / (w + wp)) * fac *
           std::sqrt(2.0 * wp / (w + wp));
}

SpectralEvaluator::SpectralEvaluator(SpectralState state) : state_(std::move(state)) {
    nu_plus_ = state_.params.m * state_.freqs.omega / state_.params.hbar;
    nu_minus_ = state_.params.m * state_.freqs.omega_prime / state_.params.hbar;
    energies_.resize(state_.coeffs.size());
    for (int n = 0; n <= state_.n_max; ++n)
        for (int np = 0; np <= state_.np_max; ++np)
            energies_[n * (state_.np_max + 1) + np] =
                state_.params.hbar * (state_.freqs.omega * (n + 0.5) +
                                      state_.freqs.omega_prime * (np + 0.5));
}

WavefunctionEval SpectralEvaluator::operator()(double x1, double x2, double t) const {
    const auto xi = to_normal_coords(x1, x2);
    const int NP = state_.n_max + 1, NM = state_.np_max + 1;
    std::vector<double> fp(NP), fm(NM), dfp(NP), dfm(NM);
    eigenfunction_table(nu_plus_, xi.plus, fp);
    eigenfunction_table(nu_minus_, xi.minus, fm);
    eigenfunction_derivative_table(nu_plus_, xi.plus, fp, dfp);
    eigenfunction_derivative_table(nu_minus_, xi.minus, fm, dfm);

    Complex val = 0.0, dplus = 0.0, dminus = 0.0;
    const double inv_hbar = 1.0 / state_.params.hbar;
    for (int n = 0; n < NP; ++n)
        for (int np = 0; np < NM; ++np) {
            const double c = state_.coeffs[n * NM + np];
            if (c == 0.0) continue;
            const Complex phase = std::polar(c, -energies_[n * NM + np] * t * inv_hbar);
            val += phase * fp[n] * fm[np];
            dplus += phase * dfp[n] * fm[np];
            dminus += phase * fp[n] * dfm[np];
        }
    constexpr double inv_sqrt2 = 0.7071067811865475244008443621048490393;
    return {val, (dplus + dminus) * inv_sqrt2, (dplus - dminus) * inv_sqrt2};
}

SpectralEvaluator::Hessian SpectralEvaluator::hessian(double x1, double x2,
                                                      double t) const {
    const auto xi = to_normal_coords(x1, x2);
    const int NP = state_.n_max + 1, NM = state_.np_max + 1;
    std::vector<double> fp(NP), fm(NM), dfp(NP), dfm(NM);
    eigenfunction_table(nu_plus_, xi.plus, fp);
    eigenfunction_table(nu_minus_, xi.minus, fm);
    eigenfunction_derivative_table(nu_plus_, xi.plus, fp, dfp);
    eigenfunction_derivative_table(nu_minus_, xi.minus, fm, dfm);

    // phi'' from the eigenvalue equation: phi_n'' = (nu^2 xi^2 - (2n+1) nu) phi_n
    auto curv = [](double nu, double xi_, int n) {
        return nu * nu * xi_ * xi_ - (2.0 * n + 1.0) * nu;
    };

    Complex val = 0.0, dpp = 0.0, dmm = 0.0, dpm = 0.0;
    const double inv_hbar = 1.0 / state_.params.hbar;
    for (int n = 0; n < NP; ++n)
        for (int np = 0; np < NM; ++np) {
            const double c = state_.coeffs[n * NM + np];
            if (c == 0.0) continue;
            const Complex phase = std::polar(c, -energies_[n * NM + np] * t * inv_hbar);
            val += phase * fp[n] * fm[np];
            dpp += phase * curv(nu_plus_, xi.plus, n) * fp[n] * fm[np];
            dmm += phase * curv(nu_minus_, xi.minus, np) * fp[n] * fm[np];
            dpm += phase * dfp[n] * dfm[np];
        }
    // d2/dx1^2 = (d2/dxi+^2 + 2 d2/dxi+dxi- + d2/dxi-^2)/2, x2 with minus
    return {val, 0.5 * (dpp + 2.0 * dpm + dmm), 0.5 * (dpp - 2.0 * dpm + dmm)};
}

double SpectralEvaluator::norm(double t, int quadrature_order) const {
    const auto rp = gauss_hermite_rule(quadrature_order, 1.0 / std::sqrt(nu_plus_));
    const auto rm = gauss_hermite_rule(quadrature_order, 1.0 / std::sqrt(nu_minus_));
    double acc = 0.0;
    for (int i = 0; i < rp.order(); ++i)
        for (int j = 0; j < rm.order(); ++j) {
            const auto xy = from_normal_coords(rp.nodes[i], rm.nodes[j]);
            const Complex v = (*this)(xy.x1, xy.x2, t).value;
            acc += rp.total_weights[i] * rm.total_weights[j] * std::norm(v);
        }
    return std::sqrt(acc);
}

FirstOrderEvaluator::FirstOrderEvaluator(const OscillatorParams& p,
                                         FirstOrderVariant variant)
    : params_(p), freqs_(derive_frequencies(p)), variant_(variant) {
    p.validate();
}

WavefunctionEval FirstOrderEvaluator::operator()(double x1, double x2, double t) const {
    const double g = params_.m * freqs_.omega_bar / params_.hbar;
    const double r = freqs_.delta_ratio();
    const double wb = freqs_.omega_bar, dw = freqs_.delta_omega;
    const double sgn = variant_ == FirstOrderVariant::closed_form_consistent ? 1.0 : -1.0;

    const double sd = std::sin(dw * t), cd = std::cos(dw * t);
    const Complex e1 = std::polar(1.0, -(2.0 * wb + dw) * t);
    const Complex e3 = std::polar(1.0, -(2.0 * wb + 3.0 * dw) * t);
    const Complex i2sin(0.0, 2.0 * sd);

    const double u = x1 - x2;  // xi- direction
    const double v = x1 + x2;
    const double gu2 = g * u * u;

    const Complex bsin = i2sin * (x1 + sgn * x2 * (0.5 - g * x1 * x1) * r);
    const Complex bcos = 2.0 * cd * (x2 + sgn * x1 * (0.5 - g * x2 * x2) * r);
    const Complex bmode12 = 0.5 * r * v * (gu2 - 1.0) * e1;
    const Complex bmode03 = -0.5 * r * u * (gu2 - 3.0) * e3;
    const Complex brace = bsin + bcos + bmode12 + bmode03;

    const Complex dbsin_dx1 = i2sin * (1.0 - sgn * 2.0 * g * x1 * x2 * r);
    const Complex dbsin_dx2 = i2sin * (sgn * (0.5 - g * x1 * x1) * r);
    const Complex dbcos_dx1 = 2.0 * cd * (sgn * (0.5 - g * x2 * x2) * r);
    const Complex dbcos_dx2 = 2.0 * cd * (1.0 - sgn * 2.0 * g * x1 * x2 * r);
    // d/du [u (g u^2 - 3)] = 3 g u^2 - 3 ; d/dx1 u = +1, d/dx2 u = -1
    const Complex db12_dx1 = 0.5 * r * e1 * ((gu2 - 1.0) + v * 2.0 * g * u);
    const Complex db12_dx2 = 0.5 * r * e1 * ((gu2 - 1.0) - v * 2.0 * g * u);
    const Complex db03_dx1 = -0.5 * r * e3 * (3.0 * gu2 - 3.0);
    const Complex db03_dx2 = 0.5 * r * e3 * (3.0 * gu2 - 3.0);

    const double pref = std::sqrt(1.0 / (2.0 * M_PI)) * g *
                        std::exp(-0.5 * g * (x1 * x1 + x2 * x2));
    const Complex phase = std::polar(pref, -2.0 * wb * t);

    WavefunctionEval out;
    out.value = phase * brace;
    out.grad_x1 = phase * (dbsin_dx1 + dbcos_dx1 + db12_dx1 + db03_dx1 - g * x1 * brace);
    out.grad_x2 = phase * (dbsin_dx2 + dbcos_dx2 + db12_dx2 + db03_dx2 - g * x2 * brace);
    return out;
}

double FirstOrderEvaluator::norm(double t, int quadrature_order) const {
    const double g = params_.m * freqs_.omega_bar / params_.hbar;
    const auto rule = gauss_hermite_rule(quadrature_order, 1.0 / std::sqrt(g));
    double acc = 0.0;
    for (int i = 0; i < rule.order(); ++i)
        for (int j = 0; j < rule.order(); ++j) {
            const Complex v = (*this)(rule.nodes[i], rule.nodes[j], t).value;
            acc += rule.total_weights[i] * rule.total_weights[j] * std::norm(v);
        }
    return std::sqrt(acc);
}

}  // namespace cho
