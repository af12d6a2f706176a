#include "hom/model.hpp"

#include <cmath>
#include <initializer_list>
#include <numbers>
#include <string>
#include <utility>

#include "hom/error.hpp"

namespace hom {
namespace {

void require_finite(std::initializer_list<std::pair<const char*, double>> fields) {
    for (const auto& [name, value] : fields) {
        if (!std::isfinite(value)) {
            throw Error(ErrorKind::NonFiniteInput, std::string(name) + " is not finite");
        }
    }
}

void require_positive(const char* name, double value) {
    if (!(value > 0.0)) {
        throw Error(ErrorKind::NonPositiveRate, std::string(name) + " must be > 0");
    }
}

void require_non_negative(const char* name, double value) {
    if (value < 0.0) {
        throw Error(ErrorKind::NonPositiveRate, std::string(name) + " must be >= 0");
    }
}

}  // namespace

cplx effective_coupling(double g, double lambda, double mu, double gamma, double delta_a) {
    const cplx i{0.0, 1.0};
    return g - i * lambda * mu / cplx{gamma, delta_a};
}

LinearParams with_effective_coupling(LinearParams p) {
    p.g_tilde = effective_coupling(p.g, p.lambda, p.mu, p.gamma, p.delta_a);
    return p;
}

PhysicalParams validate(const PhysicalParams& p) {
    require_finite({{"omega_m", p.omega_m}, {"gamma_m", p.gamma_m}, {"nbar", p.nbar},
                    {"kappa", p.kappa}, {"gamma", p.gamma}, {"delta_c", p.delta_c},
                    {"delta_a", p.delta_a}, {"g0", p.g0}, {"lambda", p.lambda},
                    {"mu0", p.mu0}, {"eta", p.eta}, {"phi", p.phi}});
    require_positive("omega_m", p.omega_m);
    require_positive("kappa", p.kappa);
    require_positive("gamma", p.gamma);
    require_non_negative("gamma_m", p.gamma_m);
    require_non_negative("nbar", p.nbar);
    require_non_negative("eta", p.eta);

    const double w = p.omega_m;
    PhysicalParams out = p;
    out.omega_m = 1.0;
    out.gamma_m = p.gamma_m / w;
    out.kappa = p.kappa / w;
    out.gamma = p.gamma / w;
    out.delta_c = p.delta_c / w;
    out.delta_a = p.delta_a / w;
    out.g0 = p.g0 / w;
    out.lambda = p.lambda / w;
    out.mu0 = p.mu0 / w;
    out.eta = p.eta / w;
    return out;
}

LinearParams validate(const LinearParams& p) {
    require_finite({{"omega_m", p.omega_m}, {"gamma_m", p.gamma_m}, {"nbar", p.nbar},
                    {"kappa", p.kappa}, {"gamma", p.gamma}, {"delta_c", p.delta_c},
                    {"delta_a", p.delta_a}, {"g", p.g}, {"lambda", p.lambda},
                    {"mu", p.mu}});
    require_positive("omega_m", p.omega_m);
    require_positive("kappa", p.kappa);
    require_positive("gamma", p.gamma);
    require_non_negative("gamma_m", p.gamma_m);
    require_non_negative("nbar", p.nbar);

    const double w = p.omega_m;
    LinearParams out = p;
    out.omega_m = 1.0;
    out.gamma_m = p.gamma_m / w;
    out.kappa = p.kappa / w;
    out.gamma = p.gamma / w;
    out.delta_c = p.delta_c / w;
    out.delta_a = p.delta_a / w;
    out.g = p.g / w;
    out.lambda = p.lambda / w;
    out.mu = p.mu / w;
    return with_effective_coupling(out);
}

LinearParams linearize(const PhysicalParams& p, cplx cbar, double qbar) {
    if (!std::isfinite(cbar.real()) || !std::isfinite(cbar.imag()) || !std::isfinite(qbar)) {
        throw Error(ErrorKind::NonFiniteInput, "steady-state amplitude is not finite");
    }
    const double amplitude = std::abs(cbar);
    LinearParams lin;
    lin.omega_m = p.omega_m;
    lin.gamma_m = p.gamma_m;
    lin.nbar = p.nbar;
    lin.kappa = p.kappa;
    lin.gamma = p.gamma;
    lin.delta_c = p.delta_c + p.g0 * qbar;
    lin.delta_a = p.delta_a;
    lin.g = p.g0 * amplitude;
    lin.lambda = p.lambda + p.mu0 * qbar;
    lin.mu = p.mu0 * amplitude;
    return with_effective_coupling(lin);
}

double cooperativity(const LinearParams& lin) {
    return lin.lambda * lin.lambda / (lin.kappa * lin.gamma);
}

double design_cooperativity(const DesignInputs& d) {
    require_finite({{"n_emitters", d.n_emitters}, {"finesse", d.finesse},
                    {"mode_area", d.mode_area}, {"wavelength", d.wavelength}});
    require_non_negative("n_emitters", d.n_emitters);
    require_positive("finesse", d.finesse);
    require_positive("mode_area", d.mode_area);
    require_positive("wavelength", d.wavelength);
    const double reduced = d.wavelength / (2.0 * std::numbers::pi);
    return 3.0 * d.n_emitters * d.finesse * reduced * reduced / d.mode_area;
}

}  // namespace hom
