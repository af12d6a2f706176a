// spectra.hpp: susceptibilities, Langevin force noise spectra, cooling rates,
// polariton structure and the Fano-resonance approximation.

#pragma once

#include <array>
#include <utility>

#include "hom/model.hpp"

namespace hom {

enum class Mode { Cavity, Dopant };

struct SpectrumSample {
    double omega{0.0};
    double s_kappa{0.0};  // cavity input noise contribution
    double s_gamma{0.0};  // dopant input noise contribution
    double s_f{0.0};      // s_kappa + s_gamma
};

/// Leading-order (in omega_m/kappa) description of the spectra under the
/// polariton sideband drive condition.
struct FanoApprox {
    double gamma_eff{0.0};            // polariton linewidth
    double delta_eff{0.0};            // polariton energy
    double b_amp{0.0};                // Lorentzian amplitude of the dopant spectrum
    std::array<double, 3> a_coeffs{}; // A(w) = a0 + a1 w + a2 w^2

    double amplitude_a(double omega) const;
    double lorentzian(double omega) const;  // 1 / (Gamma^2 + (w - Delta)^2)
    double s_kappa(double omega) const { return amplitude_a(omega) * lorentzian(omega); }
    double s_gamma(double omega) const { return b_amp * lorentzian(omega); }
};

inline constexpr double kSingularDetuningGuard = 1e-6;

cplx chi_bare(Mode mode, const LinearParams& lin, double omega);

/// 1/chi~ = 1/chi + lambda^2 chi_other.
cplx chi_dressed(Mode mode, const LinearParams& lin, double omega);

SpectrumSample force_spectrum(const LinearParams& lin, double omega);

/// [S_F(omega_m) - S_F(-omega_m)] / 2; positive means net cooling.
double cooling_rate(const LinearParams& lin);

/// (omega_plus, omega_minus), omega_plus >= omega_minus.
std::pair<double, double> polariton_energies(const LinearParams& lin);

/// Cavity detuning placing one polariton on the lower mechanical sideband.
/// Throws SingularDetuning when |delta_a - omega_m| <= guard.
double optimal_cavity_detuning(double delta_a, double lambda, double omega_m,
                               double guard = kSingularDetuningGuard);

/// Approximation at the polariton drive condition; delta_c of lin is ignored
/// and recomputed from delta_a.
FanoApprox fano_approximation(const LinearParams& lin);

/// Closed-form spectra at delta_c = delta_a = 0. Throws DetuningNotZero.
SpectrumSample resonant_spectra(const LinearParams& lin, double omega);

/// Closed-form cooling rate at delta_c = delta_a = 0. Throws DetuningNotZero.
double resonant_cooling_rate(const LinearParams& lin);

}  // namespace hom
