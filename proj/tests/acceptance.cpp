// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "hom/commands.hpp"
#include "hom/config.hpp"
#include "hom/covariance.hpp"
#include "hom/experiments.hpp"
#include "hom/spectra.hpp"
#include "hom/steadystate.hpp"
#include "oracles.hpp"

using namespace hom;

namespace {

constexpr unsigned kWorkers = 8;

struct Outcome {
    bool pass{true};
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!detail.empty()) detail += "; ";
        detail += what;
        if (!ok) {
            pass = false;
            detail += " [x]";
        }
    }
};

std::string fmt(const char* f, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

std::string fmt(const char* f, double a, double b) {
    char buf[160];
    std::snprintf(buf, sizeof buf, f, a, b);
    return buf;
}

bool within_rel(double value, double target, double tol) {
    return std::abs(value - target) <= tol * std::abs(target);
}

double min_n_f(const SweepResult& r) {
    return r.summary.min_n_f.value_or(std::numeric_limits<double>::infinity());
}

double min_where(const SweepResult& r, const std::function<bool(const SweepCell&)>& keep) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& c : r.cells)
        if (c.n_f && keep(c)) best = std::min(best, *c.n_f);
    return best;
}

// Upper polariton sits on the lower mechanical sideband within its linewidth and
// is the polariton closer to it.
bool on_upper_branch(const LinearParams& p) {
    if (!(p.delta_a < p.omega_m)) return false;
    const auto [wp, wm] = polariton_energies(p);
    const double width = fano_approximation(p).gamma_eff;
    return std::abs(wp - p.omega_m) <= width && std::abs(wp - p.omega_m) < std::abs(wm - p.omega_m);
}

double line_min(Strategy s, const LinearParams& base,
                const std::function<bool(const SweepCell&)>& keep = [](const SweepCell&) { return true; }) {
    return min_where(polariton_line_scan(s, base, default_line_grid(400), kWorkers), keep);
}

Outcome criterion1() {
    Outcome o;
    const RunConfig c = preset("fig3");
    const auto t0 = std::chrono::steady_clock::now();
    const SweepResult map = detuning_map(c.linear, c.grid("delta_c")->axis(), c.grid("delta_a")->axis(), kWorkers);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const double global = min_n_f(map);
    o.require(map.cells.size() == 201 * 201, "201x201 grid");
    o.require(std::abs(global - 0.73) <= 0.03, fmt("global min %.4f (0.73+-0.03)", global));
    const bool on_branch = map.summary.min_n_f && on_upper_branch(map.cells[map.summary.index].point);
    o.require(on_branch, fmt("at (dc, da) = (%.2f, %.2f) on upper branch", map.summary.coords[0], map.summary.coords[1]));
    const double branch = line_min(Strategy::Interference, c.linear,
                                   [](const SweepCell& cell) { return cell.point.delta_c < cell.point.omega_m; });
    o.require(std::abs(branch - 0.74) <= 0.03, fmt("upper-branch min %.4f (0.74+-0.03)", branch));
    o.require(seconds <= 60.0, fmt("map runtime %.2f s (<= 60 s)", seconds));
    return o;
}

Outcome criterion2() {
    Outcome o;
    const double lower = line_min(Strategy::Interference, preset("fig3").linear,
                                  [](const SweepCell& cell) { return cell.point.delta_c > cell.point.omega_m; });
    o.require(within_rel(lower, 19.4, 0.15), fmt("lower-branch optimum %.3f (19.4+-15%%)", lower));
    return o;
}

struct StrategyMinima {
    double interference, radiation, dressed, dopant;
};

StrategyMinima strategy_minima(const LinearParams& base) {
    return {line_min(Strategy::Interference, base), line_min(Strategy::RadiationPressure, base),
            line_min(Strategy::DressedCavity, base), line_min(Strategy::Dopant, base)};
}

Outcome criterion3() {
    Outcome o;
    const auto m = strategy_minima(preset("fig4a").linear);
    o.require(within_rel(m.dressed, 1.1, 0.10), fmt("dressed-cavity min %.4f (1.1+-10%%)", m.dressed));
    o.require(m.interference < m.dressed && m.dressed < m.dopant && m.dressed < m.radiation,
              fmt("interference %.4f < dressed < dopant %.4f", m.interference, m.dopant) +
                  fmt(", radiation pressure %.4f", m.radiation));
    return o;
}

Outcome criterion4() {
    Outcome o;
    for (const char* name : {"fig4b", "fig4c"}) {
        const auto m = strategy_minima(preset(name).linear);
        const bool lowest = m.interference < std::min({m.radiation, m.dressed, m.dopant});
        o.require(lowest, std::string(name) + fmt(" interference %.4g lowest (next %.4g)", m.interference,
                                                   std::min({m.radiation, m.dressed, m.dopant})));
    }
    const auto d = preset("fig4d").linear;
    const double inter = line_min(Strategy::Interference, d);
    const double rp = line_min(Strategy::RadiationPressure, d);
    const double ratio = std::max(inter, rp) / std::min(inter, rp);
    o.require(ratio <= 2.0, fmt("fig4d interference %.4f vs radiation pressure %.4f", inter, rp) +
                                fmt(" ratio %.3f (<= 2)", ratio));
    return o;
}

Outcome criterion5() {
    Outcome o;
    const RunConfig b = preset("fig5b");
    const Axis lambda = b.grid("lambda")->axis();
    const Axis g = b.grid("g")->axis();
    const double resonant = min_n_f(resonant_map(b.linear, *b.mu_over_lambda, lambda, g, kWorkers));
    o.require(within_rel(resonant, 0.8, 0.10), fmt("fig5b resonant min %.4f (0.8+-10%%)", resonant));
    const double rp = min_n_f(sideband_reference(b.linear, g, kWorkers));
    o.require(within_rel(rp, 0.14, 0.15), fmt("radiation-pressure reference %.4f (0.14+-15%%)", rp));
    const RunConfig a = preset("fig5a");
    const auto map_a = resonant_map(a.linear, *a.mu_over_lambda, a.grid("lambda")->axis(), a.grid("g")->axis(), kWorkers);
    const auto below = count_below(map_a, 1.0);
    o.require(below > 0, fmt("fig5a cells with n_f < 1: %.0f", static_cast<double>(below)));
    return o;
}

Outcome criterion6() {
    Outcome o;
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> omega(-5.0, 5.0);
    double closed = 0.0;
    for (int t = 0; t < 100; ++t) {
        LinearParams p = oracle::random_linear(rng);
        p.delta_c = p.delta_a = 0.0;
        p = with_effective_coupling(p);
        for (int k = 0; k < 10; ++k) {
            const double w = omega(rng);
            const auto a = resonant_spectra(p, w);
            const auto e = force_spectrum(p, w);
            closed = std::max({closed, std::abs(a.s_kappa - e.s_kappa) / std::max(e.s_kappa, 1e-300),
                               std::abs(a.s_gamma - e.s_gamma) / std::max(e.s_gamma, 1e-300)});
        }
        const double gc = cooling_rate(p);
        closed = std::max(closed, std::abs(resonant_cooling_rate(p) - gc) / std::max(std::abs(gc), 1e-300));
    }
    o.require(closed <= 1e-10, fmt("resonant closed form rel. dev. %.2e (<= 1e-10)", closed));

    double dressed = 0.0;
    double sums = 0.0;
    double sideband = 0.0;
    const cplx i{0.0, 1.0};
    for (int t = 0; t < 100; ++t) {
        const LinearParams p = oracle::random_linear(rng);
        const double w = omega(rng);
        const cplx chi_c = 1.0 / (p.kappa - i * (w - p.delta_c));
        const cplx chi_a = 1.0 / (p.gamma - i * (w - p.delta_a));
        const cplx inv_c = 1.0 / chi_dressed(Mode::Cavity, p, w);
        const cplx inv_a = 1.0 / chi_dressed(Mode::Dopant, p, w);
        dressed = std::max({dressed, std::abs(inv_c - (1.0 / chi_c + p.lambda * p.lambda * chi_a)) / std::abs(inv_c),
                            std::abs(inv_a - (1.0 / chi_a + p.lambda * p.lambda * chi_c)) / std::abs(inv_a)});

        const auto [wp, wm] = polariton_energies(p);
        const double scale = std::max({1.0, std::abs(p.delta_a) + std::abs(p.delta_c), p.lambda * p.lambda});
        sums = std::max({sums, std::abs(wp + wm - (p.delta_a + p.delta_c)) / scale,
                         std::abs(wp * wm - (p.delta_a * p.delta_c - p.lambda * p.lambda)) / (scale * scale)});

        LinearParams q = p;
        if (std::abs(q.delta_a - q.omega_m) < 0.1) q.delta_a += 0.5;
        q.delta_c = optimal_cavity_detuning(q.delta_a, q.lambda, q.omega_m);
        const auto [qp, qm] = polariton_energies(q);
        sideband = std::max(sideband, std::min(std::abs(qp - q.omega_m), std::abs(qm - q.omega_m)));
    }
    o.require(dressed <= 1e-12, fmt("dressed susceptibility %.2e (<= 1e-12)", dressed));
    o.require(sums <= 1e-12, fmt("polariton sum/product %.2e (<= 1e-12)", sums));
    o.require(sideband <= 1e-12, fmt("sideband substitution %.2e (<= 1e-12)", sideband));
    return o;
}

Outcome criterion7() {
    Outcome o;
    std::mt19937_64 rng(7);
    int systems = 0;
    double worst = 0.0;
    double residual = 0.0;
    while (systems < 100) {
        const LinearParams p = oracle::random_linear(rng);
        const DriftMatrix a = drift_matrix(p);
        const double slowest = Eigen::EigenSolver<Mat6>(a.a, false).eigenvalues().real().maxCoeff();
        if (slowest > -0.05) continue;
        const DiffusionMatrix n = diffusion_matrix(p);
        const CovarianceState st = solve_lyapunov(a, n);
        residual = std::max(residual, st.residual);
        const double dt = 0.04 / a.a.cwiseAbs().maxCoeff();
        const CovarianceState ev = evolve_covariance(a, n, Mat6::Identity(), 20.0 / std::abs(slowest), dt);
        worst = std::max(worst, (ev.v - st.v).cwiseAbs().maxCoeff() / st.v.cwiseAbs().maxCoeff());
        ++systems;
    }
    o.require(worst <= 1e-6, fmt("Lyapunov vs time evolution %.2e (<= 1e-6)", worst));
    o.require(residual <= 1e-9, fmt("Lyapunov residual %.2e (<= 1e-9)", residual));

    double decoupled = 0.0;
    for (double nbar : {0.0, 1.0, 1e3, 1e6}) {
        LinearParams p;
        p.kappa = 1.3;
        p.gamma = 0.7;
        p.delta_c = 0.4;
        p.delta_a = -0.2;
        p.gamma_m = 1e-3;
        p.nbar = nbar;
        const auto st = solve_lyapunov(drift_matrix(p), diffusion_matrix(p));
        decoupled = std::max(decoupled, std::abs(final_occupation(st) - nbar) / std::max(1.0, nbar));
    }
    o.require(decoupled <= 1e-8, fmt("decoupled n_f - nbar %.2e (<= 1e-8)", decoupled));
    return o;
}

Outcome criterion8() {
    Outcome o;
    const LinearParams base = preset("fig3").linear;
    std::vector<double> errors;
    for (double kappa : {20.0, 200.0, 2000.0}) {
        double worst = 0.0;
        for (double da : {-2.0, -1.5, -0.6, 0.0, 0.5, 1.5, 2.0}) {
            LinearParams p = base;
            p.kappa = kappa;
            p.lambda = std::sqrt(4.0 * kappa * p.gamma);
            p.delta_a = da;
            p.delta_c = optimal_cavity_detuning(da, p.lambda, p.omega_m);
            p = with_effective_coupling(p);
            const FanoApprox f = fano_approximation(p);
            for (int k = 0; k <= 400; ++k) {
                const double w = -2.0 + 4.0 * k / 400.0;
                const auto s = force_spectrum(p, w);
                worst = std::max({worst, std::abs(f.s_kappa(w) - s.s_kappa) / s.s_kappa,
                                  std::abs(f.s_gamma(w) - s.s_gamma) / s.s_gamma});
            }
        }
        errors.push_back(worst);
    }
    o.require(errors[1] < errors[0] && errors[2] < errors[1],
              fmt("max rel. dev. %.3e, ", errors[0]) + fmt("%.3e, %.3e decreasing", errors[1], errors[2]));
    return o;
}

Outcome criterion9() {
    Outcome o;
    const double c = cooperativity(preset("fig3").linear);
    o.require(c == 4.0, fmt("C = %.17g (== 4)", c));
    return o;
}

Outcome criterion10() {
    Outcome o;
    PhysicalParams p;
    p.kappa = 1.0;
    p.gamma = 1.0;
    p.delta_c = 3.0;
    p.g0 = 0.1;
    p.eta = std::sqrt(295.0);
    p.gamma_m = 0.01;
    const auto roots = oracle::kerr_cubic_roots(p.kappa, p.delta_c, p.g0, p.omega_m, p.eta, 1000.0);
    const auto branches = solve_steady_state(p);
    double kerr = roots.size() == branches.size() ? 0.0 : 1.0;
    for (std::size_t i = 0; i < std::min(roots.size(), branches.size()); ++i)
        kerr = std::max(kerr, std::abs(std::norm(branches[i].cbar) - roots[i]) / roots[i]);
    o.require(branches.size() == 3 && kerr <= 1e-8,
              fmt("Kerr branches %.0f, max rel. root dev. %.2e (<= 1e-8)", static_cast<double>(branches.size()), kerr));

    std::mt19937_64 rng(10);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double trip = 0.0;
    for (int t = 0; t < 100; ++t) {
        PhysicalParams q;
        q.kappa = 0.3 + 2.0 * u(rng);
        q.gamma = 0.3 + 2.0 * u(rng);
        q.delta_c = 4.0 * u(rng) - 2.0;
        q.delta_a = 4.0 * u(rng) - 2.0;
        q.g0 = 0.02 * u(rng);
        q.lambda = 2.0 * u(rng);
        q.mu0 = 0.005 * u(rng);
        q.gamma_m = 1e-3;
        const double c = 1.0 + 40.0 * u(rng);
        std::tie(q.eta, q.phi) = drive_for_amplitude(q, c);
        double best = 1.0;
        for (const auto& b : solve_steady_state(q)) best = std::min(best, std::abs(b.cbar - cplx{c, 0.0}) / c);
        trip = std::max(trip, best);
    }
    o.require(trip <= 1e-8, fmt("round-trip rel. dev. %.2e (<= 1e-8)", trip));
    return o;
}

Outcome criterion11() {
    Outcome o;
    RunConfig map = preset("fig3");
    apply_grid(map, "delta_c=-40:40:81");
    apply_grid(map, "delta_a=-6:6:61");
    o.require(cmd_map2d(map, 1).text == cmd_map2d(map, 8).text, "map2d workers 1 vs 8");
    const RunConfig cmp = preset("fig4a");
    o.require(cmd_compare(cmp, 1).text == cmd_compare(cmp, 8).text, "compare workers 1 vs 8");
    RunConfig res = preset("fig5b");
    apply_grid(res, "lambda=0.1:20:40");
    apply_grid(res, "g=0.01:2:40:log");
    o.require(cmd_resonant_map(res, 1).text == cmd_resonant_map(res, 8).text, "resonant-map workers 1 vs 8");
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, Outcome (*)()>> criteria{
        {"fig3 global and upper-branch minimum", criterion1},
        {"fig3 lower-branch optimum", criterion2},
        {"fig4a dressed cavity and ordering", criterion3},
        {"fig4b-d strategy comparison", criterion4},
        {"fig5 resonant maps", criterion5},
        {"analytic identities", criterion6},
        {"covariance oracles", criterion7},
        {"Fano convergence", criterion8},
        {"cooperativity", criterion9},
        {"steady state", criterion10},
        {"determinism", criterion11},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        failures += o.pass ? 0 : 1;
        std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
