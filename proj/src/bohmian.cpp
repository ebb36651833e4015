#include "cho/bohmian.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "cho/observables.hpp"

namespace cho {

double guidance_denominator(double x1, double x2, double t,
                            const DerivedFrequencies& f) {
    const double s = std::sin(f.delta_omega * t), c = std::cos(f.delta_omega * t);
    return x1 * x1 * s * s + x2 * x2 * c * c;
}

double singularity_floor(const OscillatorParams& p, const DerivedFrequencies& f) {
    return 1e-10 * p.hbar / (p.m * f.omega_bar);
}

double phase_S(double x1, double x2, double t, const OscillatorParams& p,
               const DerivedFrequencies& f) {
    const double a = x1 * std::sin(f.delta_omega * t);
    const double b = x2 * std::cos(f.delta_omega * t);
    if (a * a + b * b < singularity_floor(p, f))
        throw SingularityError("phase_S: phase undefined at a node of the density",
                               t, x1, x2);
    return 2.0 * p.hbar * f.omega_bar * t - p.hbar * std::atan2(a, b);
}

PhaseGradient grad_phase_S(double x1, double x2, double t,
                           const OscillatorParams& p, const DerivedFrequencies& f) {
    const double s = std::sin(f.delta_omega * t), c = std::cos(f.delta_omega * t);
    const double den = x1 * x1 * s * s + x2 * x2 * c * c;
    if (den < singularity_floor(p, f))
        throw SingularityError("grad_phase_S: denominator below the singularity floor",
                               t, x1, x2);
    return {-p.hbar * x2 * s * c / den, p.hbar * x1 * s * c / den};
}

double PhaseTracker::next(double x1, double x2, double t) {
    const double a = x1 * std::sin(f_.delta_omega * t);
    const double b = x2 * std::cos(f_.delta_omega * t);
    if (a * a + b * b < singularity_floor(p_, f_))
        throw SingularityError("PhaseTracker: phase undefined at a node", t, x1, x2);
    const double angle = std::atan2(a, b);
    if (started_) {
        double jump = angle - last_angle_;
        while (jump > M_PI) jump -= 2.0 * M_PI;
        while (jump < -M_PI) jump += 2.0 * M_PI;
        winding_ += jump;
    } else {
        winding_ = angle;
        started_ = true;
    }
    last_angle_ = angle;
    return 2.0 * p_.hbar * f_.omega_bar * t - p_.hbar * winding_;
}

GuidanceVelocity guidance_field(double x1, double x2, double t,
                                const OscillatorParams& p,
                                const DerivedFrequencies& f) {
    const auto g = grad_phase_S(x1, x2, t, p, f);
    return {g.dx1 / p.m, g.dx2 / p.m};
}

TrajectorySample integrate_trajectory(double x1_0, double x2_0, double t0,
                                      double t1, const OscillatorParams& p,
                                      const DerivedFrequencies& f, double rtol,
                                      double atol, int n_output, bool dense) {
    p.validate();
    const double floor = singularity_floor(p, f);
    const double dw = f.delta_omega, hm = p.hbar / p.m;

    OdeProblem prob;
    prob.dimension = 2;
    prob.t0 = t0;
    prob.t1 = t1;
    prob.y0 = {x1_0, x2_0};
    prob.rhs = [dw, hm](double t, std::span<const double> y, std::span<double> d) {
        const double s = std::sin(dw * t), c = std::cos(dw * t);
        const double den = y[0] * y[0] * s * s + y[1] * y[1] * c * c;
        const double sc = s * c / den;
        d[0] = -hm * y[1] * sc;
        d[1] = hm * y[0] * sc;
    };
    OdeOptions opt;
    opt.rtol = rtol;
    opt.atol = atol;
    opt.dense = dense;
    auto guard = [dw, floor](double t, std::span<const double> y) {
        const double s = std::sin(dw * t), c = std::cos(dw * t);
        return y[0] * y[0] * s * s + y[1] * y[1] * c * c >= floor;
    };

    TrajectorySample sample;
    sample.delta_omega = dw;
    auto sol = solve(prob, opt, guard);
    sample.stats = sol.stats;
    switch (sol.status) {
        case OdeStatus::success:
            break;
        case OdeStatus::guard_triggered:
            throw SingularityError("integrate_trajectory: guidance singularity reached",
                                   sol.t_end(), sol.y_end()[0], sol.y_end()[1]);
        case OdeStatus::step_underflow:
            throw StepUnderflowError("integrate_trajectory: step size underflow",
                                     sol.t_end());
        case OdeStatus::max_steps:
            throw std::runtime_error("integrate_trajectory: step budget exhausted");
    }

    if (n_output >= 2 && dense) {
        sample.points.reserve(n_output);
        for (int i = 0; i < n_output; ++i) {
            const double t = t0 + (t1 - t0) * i / (n_output - 1.0);
            const auto y = sol.eval(t);
            sample.points.push_back({t, y[0], y[1]});
        }
    } else {
        sample.points.push_back({t0, x1_0, x2_0});
        sample.points.push_back({sol.t_end(), sol.y_end()[0], sol.y_end()[1]});
    }
    if (dense) sample.solution = std::move(sol);
    return sample;
}

TrajectorySample scaling_map(const TrajectorySample& sample, double delta_old,
                             double delta_new) {
    if (!(delta_old > 0.0) || !(delta_new > 0.0))
        throw std::invalid_argument("scaling_map: couplings must be > 0");
    const double time_factor = delta_old / delta_new;
    const double space_factor = std::sqrt(delta_old / delta_new);
    TrajectorySample out;
    out.delta_omega = delta_new;
    out.stats = sample.stats;
    out.points.reserve(sample.points.size());
    for (const auto& s : sample.points)
        out.points.push_back({time_factor * s.t, space_factor * s.x1, space_factor * s.x2});
    return out;
}

QuantumPotential quantum_potential(double x1, double x2, double t,
                                   const OscillatorParams& p,
                                   const DerivedFrequencies& f) {
    const double s = std::sin(f.delta_omega * t), c = std::cos(f.delta_omega * t);
    const double a = x1 * x1 * s * s, b = x2 * x2 * c * c;
    const double den = a + b;
    if (den < singularity_floor(p, f))
        throw SingularityError("quantum_potential: denominator below the floor",
                               t, x1, x2);
    const double hw = p.hbar * f.omega_bar;
    const double mw2 = p.m * f.omega_bar * f.omega_bar;
    const double h2m = p.hbar * p.hbar / p.m;
    const double sc2 = s * s * c * c;

    QuantumPotential q;
    q.q1 = hw - 0.5 * mw2 * x1 * x1 + 0.5 * hw * (a - b) / den -
           0.5 * h2m * x2 * x2 * sc2 / (den * den);
    q.q2 = hw - 0.5 * mw2 * x2 * x2 + 0.5 * hw * (b - a) / den -
           0.5 * h2m * x1 * x1 * sc2 / (den * den);
    q.combined = 2.0 * hw - 0.5 * mw2 * (x1 * x1 + x2 * x2) -
                 0.5 * h2m * (x1 * x1 + x2 * x2) * sc2 / (den * den);
    return q;
}

EnergyBreakdown bohmian_energies(const TrajectoryState& st,
                                 const OscillatorParams& p,
                                 const DerivedFrequencies& f) {
    const auto v = guidance_field(st.x1, st.x2, st.t, p, f);
    const auto q = quantum_potential(st.x1, st.x2, st.t, p, f);
    const double s = std::sin(f.delta_omega * st.t), c = std::cos(f.delta_omega * st.t);
    const double a = st.x1 * st.x1 * s * s, b = st.x2 * st.x2 * c * c;
    const double hw = p.hbar * f.omega_bar;
    const double mw2 = p.m * f.omega_bar * f.omega_bar;

    EnergyBreakdown e;
    e.k1 = 0.5 * p.m * v.v1 * v.v1;
    e.k2 = 0.5 * p.m * v.v2 * v.v2;
    e.v1 = 0.5 * mw2 * st.x1 * st.x1;
    e.v2 = 0.5 * mw2 * st.x2 * st.x2;
    e.q1 = q.q1;
    e.q2 = q.q2;
    e.e1 = e.k1 + e.v1 + e.q1;
    e.e2 = e.k2 + e.v2 + e.q2;
    e.e_total = e.e1 + e.e2;
    e.e1_reduced = hw + 0.5 * hw * (a - b) / (a + b);
    e.e2_reduced = hw - 0.5 * hw * (a - b) / (a + b);
    return e;
}

namespace {

// splitmix64: per-index substreams independent of draw order
struct SplitMix64 {
    std::uint64_t state;
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    double uniform() {  // (0, 1)
        return (next() >> 11) * 0x1.0p-53 + 0x1.0p-54;
    }
    double normal() {  // Box-Muller, one value per pair of uniforms
        const double u = uniform(), v = uniform();
        return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * M_PI * v);
    }
};

}  // namespace

std::vector<ParticleCoords> sample_initial_ensemble(const EnsembleSpec& spec,
                                                    const OscillatorParams& p) {
    if (spec.count < 1)
        throw std::invalid_argument("sample_initial_ensemble: count must be >= 1");
    p.validate();
    const auto f = derive_frequencies(p);
    const double sigma = std::sqrt(p.hbar / (2.0 * p.m * f.omega));
    const double sq3 = std::sqrt(3.0);

    std::vector<ParticleCoords> out(spec.count);
    for (int i = 0; i < spec.count; ++i) {
        SplitMix64 rng{spec.seed ^ (0x5851f42d4c957f2dULL * (std::uint64_t(i) + 1))};
        const double x1 = sigma * rng.normal();
        // first-excited density (x^2/sigma^2) g(x): rejection from N(0, 3 sigma^2);
        // acceptance ratio (x/sigma)^2 e^{-x^2/(3 sigma^2)} / (3 sqrt(3)/e) <= 1
        double x2 = 0.0;
        for (;;) {
            const double y = sq3 * sigma * rng.normal();
            const double w = y / sigma;
            const double accept = w * w * std::exp(-w * w / 3.0) * M_E / (3.0 * sq3);
            if (rng.uniform() < accept) {
                x2 = y;
                break;
            }
        }
        out[i] = {x1, x2};
    }
    return out;
}

std::vector<EnsembleEndpoint> evolve_ensemble(const EnsembleSpec& spec,
                                              double t_eval,
                                              const OscillatorParams& p,
                                              double rtol, double atol,
                                              int workers) {
    const auto init = sample_initial_ensemble(spec, p);
    const auto f = derive_frequencies(p);
    std::vector<EnsembleEndpoint> out(init.size());

    if (t_eval <= 0.0) {
        for (std::size_t i = 0; i < init.size(); ++i)
            out[i] = {{0.0, init[i].x1, init[i].x2}, false};
        return out;
    }

    std::atomic<std::size_t> cursor{0};
    auto work = [&]() {
        for (;;) {
            const std::size_t i = cursor.fetch_add(1);
            if (i >= init.size()) return;
            try {
                const auto s = integrate_trajectory(init[i].x1, init[i].x2, 0.0,
                                                    t_eval, p, f, rtol, atol,
                                                    0, /*dense=*/false);
                out[i] = {s.points.back(), false};
            } catch (const SingularityError& e) {
                out[i] = {{e.t, e.x1, e.x2}, true};
            } catch (const StepUnderflowError& e) {
                out[i] = {{e.t, init[i].x1, init[i].x2}, true};
            }
        }
    };

    const int n_workers = std::max(1, workers);
    if (n_workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_workers);
        for (int w = 0; w < n_workers; ++w) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }
    return out;
}

EquivarianceResult equivariance_check(const EnsembleSpec& spec, double t_eval,
                                      const OscillatorParams& p, double rtol,
                                      double atol, int workers) {
    const auto f = derive_frequencies(p);
    const auto endpoints = evolve_ensemble(spec, t_eval, p, rtol, atol, workers);

    EquivarianceResult res;
    res.t_eval = t_eval;
    res.n_total = static_cast<int>(endpoints.size());

    std::vector<double> xs1, xs2;
    xs1.reserve(endpoints.size());
    xs2.reserve(endpoints.size());
    for (const auto& e : endpoints) {
        if (e.lost) {
            ++res.n_lost;
            continue;
        }
        xs1.push_back(e.state.x1);
        xs2.push_back(e.state.x2);
    }
    std::sort(xs1.begin(), xs1.end());
    std::sort(xs2.begin(), xs2.end());

    auto ks = [&](const std::vector<double>& xs, Particle which) {
        const double n = static_cast<double>(xs.size());
        double sup = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const double cdf = marginal_closed_form_cdf(which, xs[i], t_eval, p, f);
            sup = std::max(sup, std::abs(cdf - (i + 1) / n));
            sup = std::max(sup, std::abs(cdf - i / n));
        }
        return sup;
    };
    res.cdf_distance_x1 = ks(xs1, Particle::one);
    res.cdf_distance_x2 = ks(xs2, Particle::two);
    return res;
}

}  // namespace cho
