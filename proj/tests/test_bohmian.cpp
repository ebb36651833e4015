#include <doctest.h>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "cho/bohmian.hpp"
#include "cho/observables.hpp"
#include "cho/spectral.hpp"

using namespace cho;

namespace {

struct Setup {
    explicit Setup(double ratio = 0.1)
        : p(params_from_mode_frequencies(1.0, 1.0, ratio)),
          f(derive_frequencies(p)) {}
    OscillatorParams p;
    DerivedFrequencies f;
};

}  // namespace

TEST_CASE("phase gradient matches finite differences of phase_S") {
    Setup s;
    const double t = 6.3;
    for (auto [x1, x2] : {std::pair{0.8, 1.1}, {-1.4, 2.0}, {2.2, 0.7}}) {
        const auto g = grad_phase_S(x1, x2, t, s.p, s.f);
        auto err_at = [&](double h) {
            const double fd1 =
                (phase_S(x1 + h, x2, t, s.p, s.f) - phase_S(x1 - h, x2, t, s.p, s.f)) / (2 * h);
            const double fd2 =
                (phase_S(x1, x2 + h, t, s.p, s.f) - phase_S(x1, x2 - h, t, s.p, s.f)) / (2 * h);
            return std::abs(g.dx1 - fd1) + std::abs(g.dx2 - fd2);
        };
        const double e1 = err_at(1e-3), e2 = err_at(5e-4);
        CHECK(e1 < 1e-4);
        CHECK(std::log2(e1 / e2) > 1.8);  // O(h^2) convergence
    }
}

TEST_CASE("phase gradient vanishes at t = 0") {
    Setup s;
    for (auto [x1, x2] : {std::pair{1.0, 2.0}, {-0.7, 0.4}}) {
        const auto g = grad_phase_S(x1, x2, 0.0, s.p, s.f);
        CHECK(g.dx1 == 0.0);
        CHECK(g.dx2 == 0.0);
    }
}

TEST_CASE("phase_S spatial differences track the first-order wavefunction") {
    // S = -hbar arg(psi) in this convention, up to spatially constant terms
    // and O(dw/wbar) amplitude corrections
    Setup s;
    const FirstOrderEvaluator fo(s.p);
    const double r = s.f.delta_ratio();
    const double t = 7.9;
    const auto ref = [&](double x1, double x2) {
        return std::arg(fo(x1, x2, t).value);
    };
    const auto a = std::pair{0.9, 1.2}, b = std::pair{1.3, 0.8};
    double darg = ref(a.first, a.second) - ref(b.first, b.second);
    while (darg > M_PI) darg -= 2 * M_PI;
    while (darg < -M_PI) darg += 2 * M_PI;
    const double dS = phase_S(a.first, a.second, t, s.p, s.f) -
                      phase_S(b.first, b.second, t, s.p, s.f);
    CHECK(std::abs(dS - (-s.p.hbar * darg)) < 3.0 * r * s.p.hbar);
}

TEST_CASE("phase_S reports undefined-phase points") {
    Setup s;
    CHECK_THROWS_AS(phase_S(0.0, 0.0, 1.0, s.p, s.f), SingularityError);
    // at t with sin(dw t) != 0 the line x1 = x2 = 0 is the only undefined point
    CHECK_NOTHROW(phase_S(1e-3, 1e-3, 1.0, s.p, s.f));
}

TEST_CASE("phase tracker unwinds the branch along a path") {
    Setup s;
    PhaseTracker tracker(s.p, s.f);
    // walk a circle around the origin at fixed t; S must come back shifted by
    // exactly -2 pi hbar (one winding), not jump at the branch cut
    const double t = 8.0, R = 1.5;
    double prev = tracker.next(R, 0.0, t);
    double max_jump = 0.0;
    const int N = 200;
    for (int i = 1; i <= N; ++i) {
        const double th = 2.0 * M_PI * i / N;
        const double cur =
            tracker.next(R * std::cos(th), R * std::sin(th) / std::tan(s.f.delta_omega * t), t);
        max_jump = std::max(max_jump, std::abs(cur - prev));
        prev = cur;
    }
    CHECK(max_jump < 0.2 * s.p.hbar);  // continuous, no pi-hbar jumps
}

TEST_CASE("guidance field: rest at t = 0 and in the uncoupled limit") {
    Setup s;
    for (auto [x1, x2] : {std::pair{1.0, -2.0}, {0.5, 0.3}}) {
        const auto v0 = guidance_field(x1, x2, 0.0, s.p, s.f);
        CHECK(v0.v1 == 0.0);
        CHECK(v0.v2 == 0.0);
    }
    OscillatorParams p0;
    p0.lambda = 0.0;
    p0.hbar = 10.0;
    const auto f0 = derive_frequencies(p0);
    for (double t : {0.0, 1.7, 12.0}) {
        const auto v = guidance_field(0.4, -1.1, t, p0, f0);
        CHECK(v.v1 == 0.0);
        CHECK(v.v2 == 0.0);
    }
}

TEST_CASE("guidance field closed-form value on the diagonal") {
    Setup s;
    const double a = 0.8;
    const double t = M_PI / (4.0 * s.f.delta_omega);  // dw t = pi/4
    const auto v = guidance_field(a, a, t, s.p, s.f);
    CHECK(v.v1 == doctest::Approx(-s.p.hbar / (2 * s.p.m * a)).epsilon(1e-12));
    CHECK(v.v2 == doctest::Approx(+s.p.hbar / (2 * s.p.m * a)).epsilon(1e-12));
}

TEST_CASE("guidance field throws at the singular set") {
    Setup s;
    const double t = M_PI / (4.0 * s.f.delta_omega);
    CHECK_THROWS_AS(guidance_field(1e-9, 1e-9, t, s.p, s.f), SingularityError);
}

TEST_CASE("uncoupled trajectories are static") {
    OscillatorParams p0;
    p0.lambda = 0.0;
    p0.hbar = 10.0;
    const auto f0 = derive_frequencies(p0);
    const auto s = integrate_trajectory(0.6, -1.2, 0.0, 50.0, p0, f0, 1e-9, 1e-12, 11);
    for (const auto& pt : s.points) {
        CHECK(std::abs(pt.x1 - 0.6) < 1e-11);
        CHECK(std::abs(pt.x2 + 1.2) < 1e-11);
    }
}

TEST_CASE("trajectory self-convergence under tolerance tightening") {
    Setup s;
    const double T = 20.0;
    auto endpoint = [&](double rtol) {
        const auto tr = integrate_trajectory(0.0, -1.0, 0.0, T, s.p, s.f, rtol, rtol * 1e-3);
        return tr.points.back();
    };
    const auto e6 = endpoint(1e-6);
    const auto e8 = endpoint(1e-8);
    const auto e10 = endpoint(1e-10);
    const auto e12 = endpoint(1e-12);
    const double d1 = std::max(std::abs(e6.x1 - e12.x1), std::abs(e6.x2 - e12.x2));
    const double d2 = std::max(std::abs(e8.x1 - e12.x1), std::abs(e8.x2 - e12.x2));
    const double d3 = std::max(std::abs(e10.x1 - e12.x1), std::abs(e10.x2 - e12.x2));
    CHECK(d2 < d1);
    CHECK(d3 < d2);
    CHECK(d3 < 1e-8);
}

TEST_CASE("radius and reduced total energy are conserved along trajectories") {
    Setup s;
    const auto tr = integrate_trajectory(0.3, -1.1, 0.0, 60.0, s.p, s.f, 1e-10, 1e-13, 61);
    const double r0 = 0.3 * 0.3 + 1.1 * 1.1;
    for (const auto& pt : tr.points) {
        CHECK(std::abs(pt.x1 * pt.x1 + pt.x2 * pt.x2 - r0) < 1e-7);
        if (pt.t == 0.0) continue;
        const auto e = bohmian_energies(pt, s.p, s.f);
        CHECK(e.e1_reduced + e.e2_reduced ==
              doctest::Approx(2.0 * s.p.hbar * s.f.omega_bar).epsilon(1e-12));
    }
}

TEST_CASE("parity: negating both coordinates mirrors the trajectory") {
    Setup s;
    const auto a = integrate_trajectory(0.4, -0.9, 0.0, 25.0, s.p, s.f, 1e-10, 1e-13, 26);
    const auto b = integrate_trajectory(-0.4, 0.9, 0.0, 25.0, s.p, s.f, 1e-10, 1e-13, 26);
    for (std::size_t i = 0; i < a.points.size(); ++i) {
        CHECK(a.points[i].x1 == doctest::Approx(-b.points[i].x1).epsilon(1e-9));
        CHECK(a.points[i].x2 == doctest::Approx(-b.points[i].x2).epsilon(1e-9));
    }
}

TEST_CASE("scaling map: identity and ODE form invariance") {
    Setup s;  // dw = 0.1
    const auto tr = integrate_trajectory(0.2, -1.0, 0.0, 30.0, s.p, s.f, 1e-11, 1e-14, 31);

    const auto same = scaling_map(tr, s.f.delta_omega, s.f.delta_omega);
    for (std::size_t i = 0; i < tr.points.size(); ++i) {
        CHECK(same.points[i].t == tr.points[i].t);
        CHECK(same.points[i].x1 == tr.points[i].x1);
    }

    // map to half the coupling and re-integrate directly from the mapped
    // initial condition: the curves must coincide
    const Setup s2(0.05);
    const auto mapped = scaling_map(tr, s.f.delta_omega, s2.f.delta_omega);
    const auto direct = integrate_trajectory(mapped.points.front().x1,
                                             mapped.points.front().x2, 0.0,
                                             mapped.points.back().t, s2.p, s2.f,
                                             1e-11, 1e-14, 31);
    for (std::size_t i = 0; i < mapped.points.size(); ++i) {
        CHECK(std::abs(mapped.points[i].t - direct.points[i].t) < 1e-12);
        CHECK(std::abs(mapped.points[i].x1 - direct.points[i].x1) < 1e-7);
        CHECK(std::abs(mapped.points[i].x2 - direct.points[i].x2) < 1e-7);
    }
    CHECK_THROWS_AS(scaling_map(tr, 0.0, 0.1), std::invalid_argument);
}

TEST_CASE("quantum potential: t = 0 closed forms and the combined identity") {
    Setup s;
    const double hw = s.p.hbar * s.f.omega_bar;
    const double mw2 = s.p.m * s.f.omega_bar * s.f.omega_bar;
    for (auto [x1, x2] : {std::pair{0.7, 1.9}, {-1.2, 0.5}, {0.0, 2.0}}) {
        const auto q = quantum_potential(x1, x2, 0.0, s.p, s.f);
        CHECK(q.q1 == doctest::Approx(0.5 * hw - 0.5 * mw2 * x1 * x1).epsilon(1e-12));
        CHECK(q.q2 == doctest::Approx(1.5 * hw - 0.5 * mw2 * x2 * x2).epsilon(1e-12));
    }
    // q1 + q2 equals the combined closed form pointwise
    for (double t : {0.0, 3.7, 11.0})
        for (auto [x1, x2] : {std::pair{0.7, 1.9}, {-0.4, -1.3}, {2.1, 0.6}}) {
            const auto q = quantum_potential(x1, x2, t, s.p, s.f);
            CHECK(std::abs(q.q1 + q.q2 - q.combined) < 1e-12 * std::abs(q.combined) + 1e-12);
        }
    CHECK_THROWS_AS(quantum_potential(0.0, 0.0, 0.0, s.p, s.f), SingularityError);
}

TEST_CASE("quantum potential vs finite-difference curvature of sqrt(P)") {
    Setup s;
    const FirstOrderEvaluator fo(s.p);
    const double r = s.f.delta_ratio();
    const double hw = s.p.hbar * s.f.omega_bar;
    const double h = 1e-3;
    const double t = 0.35 * M_PI / s.f.delta_omega;

    auto sqrtP = [&](double x1, double x2) {
        return std::abs(fo(x1, x2, t).value);
    };
    // interior points: denominator at least half the natural squared length,
    // i.e. well away from the singular set where the closed form diverges
    const double den_floor = 0.5 * s.p.hbar / (s.p.m * s.f.omega_bar);
    int checked = 0;
    for (double x1 : {-3.0, -2.0, -1.0, 0.5, 1.5, 2.5, 3.5})
        for (double x2 : {-3.4, -2.2, -0.8, 0.7, 1.8, 2.9}) {
            if (guidance_denominator(x1, x2, t, s.f) < den_floor) continue;
            const double R0 = sqrtP(x1, x2);
            if (R0 < 1e-4) continue;
            const double lap =
                (sqrtP(x1 + h, x2) - 2 * R0 + sqrtP(x1 - h, x2)) / (h * h) +
                (sqrtP(x1, x2 + h) - 2 * R0 + sqrtP(x1, x2 - h)) / (h * h);
            const double q_fd = -s.p.hbar * s.p.hbar / (2 * s.p.m) * lap / R0;
            const auto q = quantum_potential(x1, x2, t, s.p, s.f);
            const double rel = std::abs(q_fd - q.combined) / std::max(std::abs(q.combined), hw);
            CHECK(rel < 5.0 * r + 1e-4);
            ++checked;
        }
    CHECK(checked >= 12);
}

TEST_CASE("bohmian energies: swap anchors and the assembled identity") {
    Setup s;
    const double hw = s.p.hbar * s.f.omega_bar;

    const auto e0 = bohmian_energies({0.0, 0.7, -1.3}, s.p, s.f);
    CHECK(e0.e1_reduced == doctest::Approx(0.5 * hw).epsilon(1e-13));
    CHECK(e0.e2_reduced == doctest::Approx(1.5 * hw).epsilon(1e-13));

    const double t_half = M_PI / (2 * s.f.delta_omega);
    const auto eh = bohmian_energies({t_half, 0.7, -1.3}, s.p, s.f);
    CHECK(eh.e1_reduced == doctest::Approx(1.5 * hw).epsilon(1e-9));
    CHECK(eh.e2_reduced == doctest::Approx(0.5 * hw).epsilon(1e-9));

    for (double t : {0.4, 5.0, 13.3})
        for (auto [x1, x2] : {std::pair{0.7, -1.3}, {-0.6, 0.9}}) {
            const auto e = bohmian_energies({t, x1, x2}, s.p, s.f);
            CHECK(e.e1 == doctest::Approx(e.k1 + e.v1 + e.q1).epsilon(1e-14));
            CHECK(e.e_total == doctest::Approx(e.e1 + e.e2).epsilon(1e-14));
            // K + V + Q collapses to the reduced closed form identically
            CHECK(e.e1 == doctest::Approx(e.e1_reduced).epsilon(1e-11));
            CHECK(e.e2 == doctest::Approx(e.e2_reduced).epsilon(1e-11));
            CHECK(e.e1_reduced + e.e2_reduced == doctest::Approx(2 * hw).epsilon(1e-14));
        }
}

TEST_CASE("ensemble sampling: determinism and moments") {
    Setup s;
    EnsembleSpec spec;
    spec.count = 20000;
    spec.seed = 987654321;
    const auto a = sample_initial_ensemble(spec, s.p);
    const auto b = sample_initial_ensemble(spec, s.p);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); i += 997) {
        CHECK(a[i].x1 == b[i].x1);
        CHECK(a[i].x2 == b[i].x2);
    }

    const double sigma2 = s.p.hbar / (2 * s.p.m * s.f.omega);
    double m1 = 0.0, m2sq = 0.0;
    for (const auto& pt : a) {
        m1 += pt.x1;
        m2sq += pt.x2 * pt.x2;
    }
    m1 /= spec.count;
    m2sq /= spec.count;
    CHECK(std::abs(m1) < 5.0 * std::sqrt(sigma2 / spec.count));
    // <x2^2> = 3 sigma^2 with Var(x2^2) = 6 sigma^4
    CHECK(std::abs(m2sq - 3.0 * sigma2) <
          5.0 * std::sqrt(6.0) * sigma2 / std::sqrt(double(spec.count)));
}

TEST_CASE("ensemble evolution is worker-count independent") {
    Setup s;
    EnsembleSpec spec;
    spec.count = 64;
    spec.seed = 42;
    const double t = M_PI / (4 * s.f.delta_omega);
    const auto one = evolve_ensemble(spec, t, s.p, 1e-9, 1e-12, 1);
    const auto four = evolve_ensemble(spec, t, s.p, 1e-9, 1e-12, 4);
    REQUIRE(one.size() == four.size());
    for (std::size_t i = 0; i < one.size(); ++i) {
        CHECK(one[i].state.x1 == four[i].state.x1);
        CHECK(one[i].state.x2 == four[i].state.x2);
        CHECK(one[i].lost == four[i].lost);
    }
}

TEST_CASE("equivariance: sampling noise at t = 0") {
    const Setup s(0.01);  // small coupling so the closed-form width matches
    EnsembleSpec spec;
    spec.count = 4000;
    spec.seed = 777;
    const auto res = equivariance_check(spec, 0.0, s.p);
    CHECK(res.n_lost == 0);
    const double noise = 1.36 / std::sqrt(double(spec.count));
    CHECK(res.cdf_distance_x1 < 2.5 * noise);
    CHECK(res.cdf_distance_x2 < 2.5 * noise);
}

TEST_CASE("equivariance after a quarter beat (reduced ensemble)") {
    Setup s;
    EnsembleSpec spec;
    spec.count = 1500;
    spec.seed = 20260810;
    const double t = M_PI / (2 * s.f.delta_omega);
    const auto res = equivariance_check(spec, t, s.p, 1e-8, 1e-11, 2);
    CHECK(res.n_lost <= spec.count / 1000);
    // sampling noise ~1.36/sqrt(N) = 0.035 plus the O(dw/wbar) formula error
    CHECK(res.cdf_distance_x1 < 0.08);
    CHECK(res.cdf_distance_x2 < 0.08);
}

TEST_CASE("continuity-equation residual shrinks linearly with the coupling") {
    // P from the first-order density, v from the guidance field; the field
    // drops O(dw/wbar) terms so the residual is first order, not zero
    const double hx = 1e-3, ht = 1e-3;
    std::vector<double> ratios = {0.1, 0.05, 0.025};
    std::vector<double> residuals;
    for (double ratio : ratios) {
        const Setup s(ratio);
        const FirstOrderEvaluator fo(s.p);
        const double t = 0.3 * M_PI / s.f.delta_omega;
        auto P = [&](double x1, double x2, double tt) {
            return std::norm(fo(x1, x2, tt).value);
        };
        double worst = 0.0;
        for (double x1 : {-1.5, -0.5, 0.8, 1.7})
            for (double x2 : {-1.8, -0.6, 0.9, 1.4}) {
                const double dpdt = (P(x1, x2, t + ht) - P(x1, x2, t - ht)) / (2 * ht);
                auto flux = [&](double a, double b) {
                    const auto v = guidance_field(a, b, t, s.p, s.f);
                    return std::pair{P(a, b, t) * v.v1, P(a, b, t) * v.v2};
                };
                const double dj1 = (flux(x1 + hx, x2).first - flux(x1 - hx, x2).first) / (2 * hx);
                const double dj2 = (flux(x1, x2 + hx).second - flux(x1, x2 - hx).second) / (2 * hx);
                const double residual = dpdt + dj1 + dj2;
                const double scale = P(x1, x2, t) * s.f.omega_bar + 1e-12;
                worst = std::max(worst, std::abs(residual) / scale);
            }
        residuals.push_back(worst);
    }
    CHECK(residuals[0] / residuals[1] > 1.4);
    CHECK(residuals[1] / residuals[2] > 1.4);
    // first order in dw/wbar with an O(10) polynomial constant on this grid
    // (the fast ripple terms of the density differentiate to 2 wbar factors)
    CHECK(residuals[0] < 50.0 * ratios[0]);
}

TEST_CASE("trajectories freeze linearly as the coupling vanishes") {
    // small enough dw that the displacement (hbar/2m) dw T^2 / x stays well
    // below the coordinate scale, i.e. the linear-response regime
    const double T = 5.0;
    std::vector<double> deltas = {4e-4, 2e-4, 1e-4};
    std::vector<double> moved;
    for (double d : deltas) {
        const Setup s(d);
        const auto tr = integrate_trajectory(0.3, -1.0, 0.0, T, s.p, s.f, 1e-10, 1e-13, 21);
        double worst = 0.0;
        for (const auto& pt : tr.points)
            worst = std::max({worst, std::abs(pt.x1 - 0.3), std::abs(pt.x2 + 1.0)});
        moved.push_back(worst);
    }
    CHECK(moved[0] / moved[1] == doctest::Approx(2.0).epsilon(0.15));
    CHECK(moved[1] / moved[2] == doctest::Approx(2.0).epsilon(0.15));
    CHECK(moved[0] < 0.2);
}
