#include <doctest.h>

#include <cmath>
#include <random>

#include "hom/error.hpp"
#include "hom/spectra.hpp"
#include "oracles.hpp"

using namespace hom;

namespace {

LinearParams fig3() {
    LinearParams p;
    p.kappa = 20.0;
    p.gamma = 0.8;
    p.g = 0.25;
    p.lambda = 8.0;
    p.mu = 0.01;
    p.gamma_m = 1e-6;
    p.nbar = 1e3;
    p.delta_a = -0.6;
    p.delta_c = -39.0;
    return with_effective_coupling(p);
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

TEST_CASE("dressed susceptibility identities") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> w(-5.0, 5.0);
    for (int trial = 0; trial < 20; ++trial) {
        const LinearParams p = oracle::random_linear(rng);
        for (int k = 0; k < 100; ++k) {
            const double om = w(rng);
            const cplx i{0.0, 1.0};
            const cplx chi_c = 1.0 / (p.kappa - i * (om - p.delta_c));
            const cplx chi_a = 1.0 / (p.gamma - i * (om - p.delta_a));
            CHECK(std::abs(chi_bare(Mode::Cavity, p, om) - chi_c) <= 1e-12 * std::abs(chi_c));
            CHECK(std::abs(chi_bare(Mode::Dopant, p, om) - chi_a) <= 1e-12 * std::abs(chi_a));
            const cplx lhs_c = 1.0 / chi_dressed(Mode::Cavity, p, om);
            const cplx lhs_a = 1.0 / chi_dressed(Mode::Dopant, p, om);
            CHECK(std::abs(lhs_c - (1.0 / chi_c + p.lambda * p.lambda * chi_a)) <= 1e-12 * std::abs(lhs_c));
            CHECK(std::abs(lhs_a - (1.0 / chi_a + p.lambda * p.lambda * chi_c)) <= 1e-12 * std::abs(lhs_a));
        }
    }
}

TEST_CASE("force spectrum is non-negative and additive") {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> w(-6.0, 6.0);
    for (int trial = 0; trial < 50; ++trial) {
        const LinearParams p = oracle::random_linear(rng);
        for (int k = 0; k < 20; ++k) {
            const auto s = force_spectrum(p, w(rng));
            CHECK(s.s_kappa >= 0.0);
            CHECK(s.s_gamma >= 0.0);
            CHECK(s.s_f == doctest::Approx(s.s_kappa + s.s_gamma));
        }
    }
}

TEST_CASE("pure radiation pressure reduces to the bare cavity Lorentzian") {
    LinearParams p = fig3();
    p.lambda = 0.0;
    p.mu = 0.0;
    p.delta_c = 1.0;
    p = with_effective_coupling(p);
    for (double om : {-2.0, -1.0, 0.0, 0.5, 1.0, 3.0}) {
        const double expected = 2.0 * p.kappa * p.g * p.g / (p.kappa * p.kappa + (om - p.delta_c) * (om - p.delta_c));
        const auto s = force_spectrum(p, om);
        CHECK(rel(s.s_kappa, expected) < 1e-12);
        CHECK(s.s_gamma == 0.0);
    }
    CHECK(cooling_rate(p) > 0.0);
    p.delta_c = -1.0;
    CHECK(cooling_rate(p) < 0.0);
}

TEST_CASE("resonant closed forms agree with the general spectra") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> w(-4.0, 4.0);
    for (int trial = 0; trial < 50; ++trial) {
        LinearParams p = oracle::random_linear(rng);
        p.delta_c = 0.0;
        p.delta_a = 0.0;
        p = with_effective_coupling(p);
        for (int k = 0; k < 20; ++k) {
            const double om = w(rng);
            const auto a = resonant_spectra(p, om);
            const auto b = force_spectrum(p, om);
            CHECK(std::abs(a.s_kappa - b.s_kappa) <= 1e-10 * std::max(1.0, b.s_kappa));
            CHECK(std::abs(a.s_gamma - b.s_gamma) <= 1e-10 * std::max(1.0, b.s_gamma));
        }
        CHECK(std::abs(resonant_cooling_rate(p) - cooling_rate(p)) <= 1e-10 * std::max(1.0, std::abs(cooling_rate(p))));
    }
    LinearParams off = fig3();
    CHECK_THROWS_AS(resonant_spectra(off, 0.0), Error);
    off.delta_c = 0.0;
    off.delta_a = 1e-12;
    try {
        resonant_cooling_rate(off);
        FAIL("expected DetuningNotZero");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::DetuningNotZero);
    }
}

TEST_CASE("resonant cooling rate carries the sign of g lambda mu") {
    LinearParams p;
    p.kappa = 0.7;
    p.gamma = 0.5;
    p.g = 0.1;
    p.lambda = 1.0;
    p.mu = 0.05;
    p = with_effective_coupling(p);
    CHECK(resonant_cooling_rate(p) > 0.0);
    p.mu = -0.05;
    p = with_effective_coupling(p);
    CHECK(resonant_cooling_rate(p) < 0.0);
    p.mu = 0.0;
    p = with_effective_coupling(p);
    CHECK(resonant_cooling_rate(p) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("polariton energies") {
    std::mt19937_64 rng(14);
    for (int trial = 0; trial < 200; ++trial) {
        const LinearParams p = oracle::random_linear(rng);
        const auto [wp, wm] = polariton_energies(p);
        CHECK(wp >= wm);
        CHECK(wp + wm == doctest::Approx(p.delta_a + p.delta_c));
        CHECK(wp * wm == doctest::Approx(p.delta_a * p.delta_c - p.lambda * p.lambda));
    }
    LinearParams p = fig3();
    p.lambda = 0.0;
    p.delta_c = 2.0;
    p.delta_a = -1.0;
    const auto [wp, wm] = polariton_energies(p);
    CHECK(wp == 2.0);
    CHECK(wm == -1.0);
}

TEST_CASE("optimal cavity detuning") {
    CHECK(optimal_cavity_detuning(2.0, 8.0, 1.0) == doctest::Approx(65.0));
    CHECK(optimal_cavity_detuning(-0.6, 8.0, 1.0) == doctest::Approx(1.0 - 64.0 / 1.6));
    CHECK(optimal_cavity_detuning(0.3, 0.0, 1.0) == 1.0);
    try {
        optimal_cavity_detuning(1.0 + 1e-7, 8.0, 1.0);
        FAIL("expected SingularDetuning");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::SingularDetuning);
    }
    SUBCASE("one polariton sits on the lower sideband") {
        for (double da : {-3.0, -0.6, 0.2, 1.7, 4.0}) {
            LinearParams p = fig3();
            p.delta_a = da;
            p.delta_c = optimal_cavity_detuning(da, p.lambda, 1.0);
            const auto [wp, wm] = polariton_energies(p);
            CHECK(std::min(std::abs(wp - 1.0), std::abs(wm - 1.0)) < 1e-9);
        }
    }
}

TEST_CASE("Fano approximation limits") {
    SUBCASE("no dopant coupling leaves the bare dopant line") {
        LinearParams p = fig3();
        p.lambda = 0.0;
        p.mu = 0.0;
        p.delta_a = 0.3;
        p = with_effective_coupling(p);
        const FanoApprox f = fano_approximation(p);
        CHECK(f.gamma_eff == doctest::Approx(p.gamma));
        CHECK(f.delta_eff == doctest::Approx(p.delta_a));
        CHECK(f.b_amp == doctest::Approx(0.0));
    }
    SUBCASE("strong coupling gives the dopant linewidth on the sideband") {
        LinearParams p = fig3();
        p.lambda = 1e4;
        p.delta_a = 0.3;
        p = with_effective_coupling(p);
        const FanoApprox f = fano_approximation(p);
        CHECK(f.gamma_eff == doctest::Approx(p.gamma).epsilon(1e-6));
        CHECK(f.delta_eff == doctest::Approx(p.omega_m).epsilon(1e-6));
    }
    SUBCASE("spectra are Lorentzian-shaped and non-negative") {
        LinearParams p = fig3();
        const FanoApprox f = fano_approximation(p);
        for (double om = -3.0; om <= 3.0; om += 0.25) {
            CHECK(f.s_kappa(om) >= 0.0);
            CHECK(f.s_gamma(om) >= 0.0);
            CHECK(f.lorentzian(om) == doctest::Approx(1.0 / (f.gamma_eff * f.gamma_eff + (om - f.delta_eff) * (om - f.delta_eff))));
        }
    }
}

TEST_CASE("Fano approximation converges to the exact spectra as kappa grows") {
    const auto max_error = [](double kappa) {
        double worst = 0.0;
        for (double da : {-2.0, -1.5, -0.6, 0.0, 0.5, 1.5, 2.0}) {
            LinearParams p = fig3();
            p.kappa = kappa;
            p.delta_a = da;
            p.delta_c = optimal_cavity_detuning(da, p.lambda, 1.0);
            p = with_effective_coupling(p);
            const FanoApprox f = fano_approximation(p);
            for (double om = -2.0; om <= 2.0 + 1e-12; om += 0.05) {
                const auto s = force_spectrum(p, om);
                const double approx = f.s_kappa(om) + f.s_gamma(om);
                worst = std::max(worst, std::abs(approx - s.s_f) / s.s_f);
            }
        }
        return worst;
    };
    const double e20 = max_error(20.0);
    const double e200 = max_error(200.0);
    const double e2000 = max_error(2000.0);
    CHECK(e200 < e20);
    CHECK(e2000 < e200);
    CHECK(e2000 < 0.02);
}

TEST_CASE("cooling rate of the interference configuration exceeds the bare cavity") {
    const LinearParams p = fig3();
    LinearParams rp = p;
    rp.lambda = 0.0;
    rp.mu = 0.0;
    rp.delta_c = 1.0;
    rp = with_effective_coupling(rp);
    CHECK(cooling_rate(p) > 0.0);
    CHECK(cooling_rate(p) > cooling_rate(rp));
}
