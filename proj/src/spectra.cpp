#include "hom/spectra.hpp"

#include <cmath>
#include <complex>

#include "hom/error.hpp"

namespace hom {
namespace {

constexpr cplx kI{0.0, 1.0};

void require_resonant(const LinearParams& lin) {
    if (lin.delta_c != 0.0 || lin.delta_a != 0.0) {
        throw Error(ErrorKind::DetuningNotZero, "closed form requires delta_c = delta_a = 0");
    }
}

// Shared denominator of the resonant spectra evaluated at frequency w.
double resonant_denominator(const LinearParams& lin, double w) {
    const double l2 = lin.lambda * lin.lambda;
    const double k = lin.kappa;
    const double y = lin.gamma;
    const double head = l2 + y * k;
    return head * head + (y * y + k * k - 2.0 * l2) * w * w + w * w * w * w;
}

}  // namespace

double FanoApprox::amplitude_a(double omega) const {
    return a_coeffs[0] + a_coeffs[1] * omega + a_coeffs[2] * omega * omega;
}

double FanoApprox::lorentzian(double omega) const {
    const double d = omega - delta_eff;
    return 1.0 / (gamma_eff * gamma_eff + d * d);
}

cplx chi_bare(Mode mode, const LinearParams& lin, double omega) {
    if (mode == Mode::Cavity) {
        return 1.0 / cplx{lin.kappa, -(omega - lin.delta_c)};
    }
    return 1.0 / cplx{lin.gamma, -(omega - lin.delta_a)};
}

cplx chi_dressed(Mode mode, const LinearParams& lin, double omega) {
    const Mode other = mode == Mode::Cavity ? Mode::Dopant : Mode::Cavity;
    const cplx inv = 1.0 / chi_bare(mode, lin, omega)
                     + lin.lambda * lin.lambda * chi_bare(other, lin, omega);
    return 1.0 / inv;
}

SpectrumSample force_spectrum(const LinearParams& lin, double omega) {
    const cplx chi_c = chi_bare(Mode::Cavity, lin, omega);
    const cplx chi_a = chi_bare(Mode::Dopant, lin, omega);
    const cplx dressed_c = chi_dressed(Mode::Cavity, lin, omega);
    const cplx dressed_a = chi_dressed(Mode::Dopant, lin, omega);
    const cplx gc = std::conj(lin.g_tilde);

    const cplx cavity_path = gc * dressed_c - kI * lin.lambda * lin.mu * dressed_a * chi_c;
    const cplx dopant_path = lin.mu * dressed_a - kI * gc * lin.lambda * dressed_c * chi_a;

    SpectrumSample s;
    s.omega = omega;
    s.s_kappa = 2.0 * lin.kappa * std::norm(cavity_path);
    s.s_gamma = 2.0 * lin.gamma * std::norm(dopant_path);
    s.s_f = s.s_kappa + s.s_gamma;
    return s;
}

double cooling_rate(const LinearParams& lin) {
    return 0.5 * (force_spectrum(lin, lin.omega_m).s_f - force_spectrum(lin, -lin.omega_m).s_f);
}

std::pair<double, double> polariton_energies(const LinearParams& lin) {
    const double split = std::hypot(lin.delta_a - lin.delta_c, 2.0 * lin.lambda);
    const double mean = lin.delta_a + lin.delta_c;
    return {0.5 * (mean + split), 0.5 * (mean - split)};
}

double optimal_cavity_detuning(double delta_a, double lambda, double omega_m, double guard) {
    const double offset = delta_a - omega_m;
    if (!(std::abs(offset) > guard)) {
        throw Error(ErrorKind::SingularDetuning,
                    "dopant detuning within the guard band of the mechanical frequency");
    }
    return omega_m + lambda * lambda / offset;
}

FanoApprox fano_approximation(const LinearParams& lin) {
    const double wm = lin.omega_m;
    // validates the drive condition; the approximation itself only needs delta_a
    optimal_cavity_detuning(lin.delta_a, lin.lambda, wm);

    const double k = lin.kappa;
    const double y = lin.gamma;
    const double l = lin.lambda;
    const double g = lin.g;
    const double mu = lin.mu;
    const double da = lin.delta_a;
    const double d = da - wm;
    const double l2 = l * l;
    const double l4 = l2 * l2;
    const double den = l4 + k * k * d * d;
    const double dopant_norm = y * y + da * da;

    FanoApprox f;
    f.gamma_eff = (l4 * y + k * (l2 + y * k) * d * d) / den;
    f.delta_eff = (l4 * wm + k * k * da * d * d) / den;

    // A(w) = pref * ({l mu (2 da - w) - g [y^2 - da (w - da)]}^2 + g^2 y^2 w^2)
    // The curly bracket is linear in w: u0 + u1 w.
    const double pref = 2.0 * k * d * d / (dopant_norm * den);
    const double u0 = 2.0 * l * mu * da - g * (y * y + da * da);
    const double u1 = -l * mu + g * da;
    f.a_coeffs = {pref * u0 * u0, pref * 2.0 * u0 * u1, pref * (u1 * u1 + g * g * y * y)};

    const double first = l2 * mu * y - (g * l * y + mu * k * da) * d;
    const double second = l2 * mu * (2.0 * da - wm) - (g * l * da - mu * y * k) * d;
    f.b_amp = 2.0 * y / dopant_norm * (first * first + second * second) / den;
    return f;
}

SpectrumSample resonant_spectra(const LinearParams& lin, double omega) {
    require_resonant(lin);
    const double k = lin.kappa;
    const double y = lin.gamma;
    const double l = lin.lambda;
    const double g = lin.g;
    const double mu = lin.mu;
    const double w = omega;
    const double den = resonant_denominator(lin, w);
    const double head = l * l + y * k;

    const double cav_lin = g * y * y + l * mu * w;
    const double dop_lin = g * l + mu * w;

    SpectrumSample s;
    s.omega = omega;
    s.s_kappa = 2.0 * k / (y * y) * (g * g * y * y * w * w + cav_lin * cav_lin) / den;
    s.s_gamma = 2.0 * y / (y * y) * (mu * mu * head * head + y * y * dop_lin * dop_lin) / den;
    s.s_f = s.s_kappa + s.s_gamma;
    return s;
}

double resonant_cooling_rate(const LinearParams& lin) {
    require_resonant(lin);
    const double wm = lin.omega_m;
    return 4.0 * lin.g * lin.lambda * lin.mu * wm * (lin.gamma + lin.kappa)
           / resonant_denominator(lin, wm);
}

}  // namespace hom
