// model.hpp: parameter records for the doped-membrane cavity system and the
// bridge from the nonlinear model to its linearized description.
//
// All frequencies and rates are measured in units of the mechanical frequency
// once a record has passed through validate(); omega_m is then exactly 1.

#pragma once

#include <complex>

namespace hom {

using cplx = std::complex<double>;

/// Inputs of the full nonlinear model (bare couplings and cavity drive).
struct PhysicalParams {
    double omega_m{1.0};  // mechanical frequency, reference unit
    double gamma_m{0.0};  // mechanical linewidth
    double nbar{0.0};     // thermal bath occupation
    double kappa{1.0};    // cavity amplitude decay
    double gamma{1.0};    // dopant amplitude decay
    double delta_c{0.0};  // cavity detuning from the drive
    double delta_a{0.0};  // dopant detuning from the drive
    double g0{0.0};       // bare radiation-pressure coupling
    double lambda{0.0};   // Tavis-Cummings coupling
    double mu0{0.0};      // bare mechanically modulated coupling
    double eta{0.0};      // drive amplitude
    double phi{0.0};      // drive phase
};

/// Linearized system around a steady state. g_tilde is derived data and is
/// kept consistent by with_effective_coupling() / validate().
struct LinearParams {
    double omega_m{1.0};
    double gamma_m{0.0};
    double nbar{0.0};
    double kappa{1.0};
    double gamma{1.0};
    double delta_c{0.0};
    double delta_a{0.0};
    double g{0.0};
    double lambda{0.0};
    double mu{0.0};
    cplx g_tilde{0.0, 0.0};
};

/// Cavity design figures for the dopant-cavity cooperativity estimate.
/// Lengths may be in any unit as long as mode_area uses its square.
struct DesignInputs {
    double n_emitters{0.0};
    double finesse{0.0};
    double mode_area{0.0};
    double wavelength{0.0};
};

/// Effective cavity-mechanics coupling g - i*lambda*mu/(gamma + i*delta_a).
cplx effective_coupling(double g, double lambda, double mu, double gamma, double delta_a);

/// Returns p with g_tilde recomputed from the other fields.
LinearParams with_effective_coupling(LinearParams p);

/// Checks finiteness and rate positivity and rescales to omega_m = 1.
/// Throws Error{NonFiniteInput | NonPositiveRate}.
PhysicalParams validate(const PhysicalParams& p);
LinearParams validate(const LinearParams& p);

/// Linearize around the intracavity amplitude cbar and displacement qbar.
/// The drive phase is chosen so that cbar is real and non-negative, hence only
/// |cbar| enters: g = g0|cbar|, mu = mu0|cbar|. The static displacement shifts
/// the cavity detuning by g0*qbar and the Tavis-Cummings coupling by mu0*qbar.
LinearParams linearize(const PhysicalParams& p, cplx cbar, double qbar = 0.0);

/// lambda^2 / (kappa * gamma).
double cooperativity(const LinearParams& lin);

/// 3 N F (wavelength / 2pi)^2 / mode_area.
double design_cooperativity(const DesignInputs& d);

}  // namespace hom
