#include <doctest.h>

#include <cmath>
#include <vector>

#include "cho/observables.hpp"

using namespace cho;

namespace {

// figure parameters: m = 1, wbar = 1 fs^-1, dw/wbar = 1/10, hbar = 10
struct FigureSetup {
    OscillatorParams p = params_from_mode_frequencies(1.0, 1.0, 0.1);
    DerivedFrequencies f = derive_frequencies(p);
    SpectralState st = project_initial_state(p);
    SpectralEvaluator psi{st};
    FirstOrderEvaluator fo{p};
};

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = a + (b - a) * i / (n - 1.0);
    return v;
}

}  // namespace

TEST_CASE("joint density: node at origin, positivity, closed-form consistency") {
    FigureSetup s;
    for (double t : {0.0, 4.2, 17.0}) {
        CHECK(joint_density(s.fo, 0.0, 0.0, t) < 1e-28);
        CHECK(joint_density(s.psi, 0.0, 0.0, t) < 1e-20);
    }
    double sup = 0.0, mx = 0.0;
    const double r = s.f.delta_ratio();
    for (double t : {0.0, 9.3})
        for (double x1 : linspace(-8, 8, 17))
            for (double x2 : linspace(-8, 8, 17)) {
                const double d = joint_density(s.fo, x1, x2, t);
                CHECK(d >= 0.0);
                sup = std::max(sup, std::abs(d - joint_density_closed_form(x1, x2, t, s.p, s.f)));
                mx = std::max(mx, d);
            }
    CHECK(sup < 3.0 * r * r * mx);  // expanded form drops only O(r^2) terms
}

TEST_CASE("marginals at t = 0: ground and first-excited shapes") {
    FigureSetup s;
    const double g = s.p.m * s.f.omega_bar / s.p.hbar;
    for (double x : linspace(-6, 6, 25)) {
        const double gauss = std::sqrt(g / M_PI) * std::exp(-g * x * x);
        // particle 1: ground-state density up to O(dw/wbar)
        CHECK(std::abs(marginal_closed_form(Particle::one, x, 0.0, s.p, s.f) - gauss) <
              0.2 * s.f.delta_ratio());
        // particle 2: x^2 times Gaussian (first excited)
        const double excited = gauss * 2.0 * g * x * x;
        CHECK(std::abs(marginal_closed_form(Particle::two, x, 0.0, s.p, s.f) - excited) <
              0.2 * s.f.delta_ratio());
    }
    // node of the excited marginal
    CHECK(marginal_closed_form(Particle::two, 0.0, 0.0, s.p, s.f) ==
          doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("closed-form marginals integrate to one") {
    FigureSetup s;
    const double r = s.f.delta_ratio();
    const double T = M_PI / s.f.delta_omega;
    const auto grid = linspace(-18.0, 18.0, 3001);
    for (int i = 0; i < 8; ++i) {
        const double t = T * i / 7.0;
        for (Particle which : {Particle::one, Particle::two}) {
            double acc = 0.0;
            for (std::size_t j = 1; j < grid.size(); ++j) {
                const double a = marginal_closed_form(which, grid[j - 1], t, s.p, s.f);
                const double b = marginal_closed_form(which, grid[j], t, s.p, s.f);
                acc += 0.5 * (a + b) * (grid[j] - grid[j - 1]);
            }
            CHECK(std::abs(acc - 1.0) < 2.0 * r * r + 1e-8);
        }
    }
}

TEST_CASE("closed-form marginal cdf matches the trapezoid integral") {
    FigureSetup s;
    const double t = 6.1;
    const auto grid = linspace(-18.0, 4.0, 20001);
    double acc = 0.0;
    for (std::size_t j = 1; j < grid.size(); ++j) {
        const double a = marginal_closed_form(Particle::two, grid[j - 1], t, s.p, s.f);
        const double b = marginal_closed_form(Particle::two, grid[j], t, s.p, s.f);
        acc += 0.5 * (a + b) * (grid[j] - grid[j - 1]);
    }
    CHECK(marginal_closed_form_cdf(Particle::two, 4.0, t, s.p, s.f) ==
          doctest::Approx(acc).epsilon(1e-7));
    // limits
    CHECK(marginal_closed_form_cdf(Particle::one, 30.0, t, s.p, s.f) ==
          doctest::Approx(1.0).epsilon(1e-9));
    CHECK(std::abs(marginal_closed_form_cdf(Particle::one, -30.0, t, s.p, s.f)) < 1e-9);
}

TEST_CASE("closed-form marginal is the integral of the closed-form density") {
    FigureSetup s;
    for (double t : {0.0, 5.3, 12.0})
        for (Particle which : {Particle::one, Particle::two})
            for (double x : {-2.0, 0.0, 1.3, 3.1}) {
                // trapezoid over the other coordinate
                double acc = 0.0;
                const int N = 4001;
                for (int i = 1; i < N; ++i) {
                    const double ya = -20.0 + 40.0 * (i - 1) / (N - 1.0);
                    const double yb = -20.0 + 40.0 * i / (N - 1.0);
                    const auto val = [&](double y) {
                        return which == Particle::one
                                   ? joint_density_closed_form(x, y, t, s.p, s.f)
                                   : joint_density_closed_form(y, x, t, s.p, s.f);
                    };
                    acc += 0.5 * (val(ya) + val(yb)) * (yb - ya);
                }
                CHECK(marginal_closed_form(which, x, t, s.p, s.f) ==
                      doctest::Approx(acc).epsilon(1e-6));
            }
}

TEST_CASE("closed-form marginals vs quadrature of the joint density") {
    FigureSetup s;
    const double r = s.f.delta_ratio();
    const FirstOrderEvaluator& fo = s.fo;
    double sup = 0.0, peak = 0.0;
    for (double t : {0.0, 7.9, M_PI / (2 * s.f.delta_omega)})
        for (double x : linspace(-7, 7, 29))
            for (Particle which : {Particle::one, Particle::two}) {
                const double cf = marginal_closed_form(which, x, t, s.p, s.f);
                const double q = marginal_quadrature(which, x, t, fo);
                sup = std::max(sup, std::abs(cf - q));
                peak = std::max(peak, cf);
            }
    CHECK(sup < 3.0 * r * r * peak);

    // and against the exact state, where the difference is O(r)
    double sup_exact = 0.0;
    for (double x : linspace(-7, 7, 29)) {
        const double cf = marginal_closed_form(Particle::two, x, 7.9, s.p, s.f);
        const double q = marginal_quadrature(Particle::two, x, 7.9, s.psi);
        sup_exact = std::max(sup_exact, std::abs(cf - q));
    }
    CHECK(sup_exact < 2.0 * r * peak);
}

TEST_CASE("marginal role swap") {
    FigureSetup s;
    const double r = s.f.delta_ratio();
    const double t_swap = M_PI / (2.0 * s.f.delta_omega);
    double sup = 0.0, peak = 0.0;
    for (double x : linspace(-10, 10, 401)) {
        sup = std::max(sup, std::abs(marginal_closed_form(Particle::one, x, t_swap, s.p, s.f) -
                                     marginal_closed_form(Particle::two, x, 0.0, s.p, s.f)));
        peak = std::max(peak, marginal_closed_form(Particle::two, x, 0.0, s.p, s.f));
    }
    CHECK(sup < 3.0 * r * peak);

    // at a full half-beat 2 t_swap the marginals are back to their t = 0
    // shapes (the swap is completed at t_swap, undone at 2 t_swap)
    double sup_return = 0.0;
    for (double x : linspace(-10, 10, 401))
        sup_return = std::max(sup_return,
                              std::abs(marginal_closed_form(Particle::one, x, 2 * t_swap, s.p, s.f) -
                                       marginal_closed_form(Particle::one, x, 0.0, s.p, s.f)));
    CHECK(sup_return < 3.0 * r * peak);
}

TEST_CASE("marginal curves carry negativity diagnostics") {
    FigureSetup s;
    const auto grid = linspace(-12, 12, 201);
    const auto c = marginal_curve_closed_form(Particle::one, 8.0, grid, s.p, s.f);
    CHECK(c.x.size() == c.density.size());
    CHECK(c.min_density <= 0.0);  // zero if nowhere negative
    const auto cq = marginal_curve_quadrature(Particle::one, 8.0, grid, s.psi);
    CHECK(cq.min_density >= 0.0);  // |psi|^2 path cannot go negative
}

TEST_CASE("energy expectations: paper-unit anchor values") {
    // m = 1, k = 1 (omega = 1), hbar = 10: E1(0) = 5, E2(0) = 15
    OscillatorParams p;
    p.m = 1.0;
    p.k = 1.0;
    p.lambda = 0.1;
    p.hbar = 10.0;
    const auto f = derive_frequencies(p);
    const auto e0 = energy_expectations_closed_form(0.0, p, f);
    CHECK(e0.e1 == doctest::Approx(5.0).epsilon(1e-14));
    CHECK(e0.e2 == doctest::Approx(15.0).epsilon(1e-14));
    CHECK(e0.total == doctest::Approx(e0.e1 + e0.e2 + e0.interaction).epsilon(1e-15));

    // <H_I> = 2 hbar dw = 2.0 when dw/wbar = 0.1 at wbar = 1, hbar = 10
    const auto pf = params_from_mode_frequencies(1.0, 1.0, 0.1);
    const auto ff = derive_frequencies(pf);
    CHECK(energy_expectations_closed_form(0.0, pf, ff).interaction ==
          doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("quadrature energies on the exact state") {
    FigureSetup s;
    const double r = s.f.delta_ratio();
    const double band = 2.0 * r * s.p.hbar * s.f.omega_bar;
    const double T = 2 * M_PI / s.f.delta_omega;

    // t = 0: the uncoupled eigenstate, so <H1> = hbar omega/2 up to the
    // neglected norm of the (1, 7) truncation
    const auto e0 = energy_expectations_quadrature(0.0, s.psi);
    const double trunc = 100.0 * s.st.tail_bound * s.p.hbar * s.f.omega_bar;
    CHECK(std::abs(e0.e1 - 0.5 * s.p.hbar * s.f.omega) < trunc);
    CHECK(std::abs(e0.e2 - 1.5 * s.p.hbar * s.f.omega) < trunc);

    const double etot_spectral = spectral_total_energy(s.st);
    double worst1 = 0.0, worst2 = 0.0, worsti = 0.0, worst_tot = 0.0;
    for (int i = 0; i <= 16; ++i) {
        const double t = T * i / 16.0;
        const auto eq = energy_expectations_quadrature(t, s.psi);
        const auto ec = energy_expectations_closed_form(t, s.p, s.f);
        worst1 = std::max(worst1, std::abs(eq.e1 - ec.e1));
        worst2 = std::max(worst2, std::abs(eq.e2 - ec.e2));
        worsti = std::max(worsti, std::abs(eq.interaction - ec.interaction));
        worst_tot = std::max(worst_tot, std::abs(eq.total - etot_spectral) / etot_spectral);
    }
    CHECK(worst1 < band);
    CHECK(worst2 < band);
    CHECK(worsti < band);
    CHECK(worst_tot < 1e-10);  // operator quadrature reproduces sum C^2 E

    // closed-form total is time independent and exactly periodic
    const auto ea = energy_expectations_closed_form(1.3, s.p, s.f);
    const auto eb = energy_expectations_closed_form(1.3 + T, s.p, s.f);
    CHECK(ea.e1 == doctest::Approx(eb.e1).epsilon(1e-9));
    CHECK(ea.total == doctest::Approx(2.0 * s.p.hbar * s.f.omega_bar).epsilon(1e-12));
}

TEST_CASE("fock interaction energies") {
    OscillatorParams p;
    p.m = 1.0;
    p.k = 1.0;
    p.lambda = 0.05;  // small coupling so dw ~ lambda/(2 sqrt(km))
    p.hbar = 10.0;
    const auto f = derive_frequencies(p);
    const double hdw = p.hbar * f.delta_omega;

    const double e00 = fock_interaction_energy(0, 0, p, f);
    CHECK(e00 == doctest::Approx(0.5 * p.lambda * p.hbar / (p.m * f.omega)).epsilon(1e-14));
    CHECK(std::abs(e00 - hdw) < 0.1 * hdw);  // hbar dw + O(dw^2)

    const double e01 = fock_interaction_energy(0, 1, p, f);
    CHECK(std::abs(e01 - 2.0 * hdw) < 0.1 * hdw);

    // strictly positive and monotone in n1 + n2
    double prev = 0.0;
    for (int n = 0; n < 6; ++n) {
        const double e = fock_interaction_energy(n, n + 1, p, f);
        CHECK(e > prev);
        prev = e;
    }
    CHECK_THROWS_AS(fock_interaction_energy(-1, 0, p, f), std::invalid_argument);
}

TEST_CASE("coherent-state interaction scan") {
    OscillatorParams p;
    p.m = 1.0;
    p.k = 1.0;
    p.lambda = 0.05;
    p.hbar = 10.0;
    const auto f = derive_frequencies(p);
    const double vacuum_term = 0.5 * p.lambda * p.hbar / (p.m * f.omega);

    SUBCASE("equal magnitude, equal phase: normal-ordered value vanishes") {
        const auto scan = coherent_interaction_scan(1.3, 1.3, 360, p, f);
        CHECK(scan.minimum_normal_ordered.normal_ordered == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(scan.minimum_normal_ordered.relative_phase == doctest::Approx(0.0));
        // bare minimum is the irreducible vacuum term
        CHECK(scan.minimum_bare.bare == doctest::Approx(vacuum_term).epsilon(1e-12));
        // anti-aligned displacements maximize the interaction
        double max_no = 0.0, arg = 0.0;
        for (const auto& pt : scan.points)
            if (pt.normal_ordered > max_no) { max_no = pt.normal_ordered; arg = pt.relative_phase; }
        CHECK(arg == doctest::Approx(M_PI).epsilon(1e-12));
    }

    SUBCASE("bare value never reaches zero") {
        for (double bmag : {0.0, 0.7, 2.0}) {
            const auto scan = coherent_interaction_scan(1.0, bmag, 256, p, f);
            for (const auto& pt : scan.points) CHECK(pt.bare >= vacuum_term - 1e-15);
        }
    }
}
