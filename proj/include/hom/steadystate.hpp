// steadystate.hpp: classical steady state of the nonlinear three-mode model.

#pragma once

#include <utility>
#include <vector>

#include "hom/model.hpp"

namespace hom {

struct SteadyBranch {
    cplx cbar{0.0, 0.0};  // intracavity amplitude
    cplx abar{0.0, 0.0};  // dopant amplitude
    double qbar{0.0};     // static mechanical displacement
    double residual{0.0}; // max-norm equation mismatch over max(1, eta, |qbar|)
};

inline constexpr double kSteadyResidualTolerance = 1e-10;
inline constexpr int kNewtonMaxIterations = 50;
inline constexpr double kRootDedupDistance = 1e-8;
inline constexpr double kDegenerateDenominator = 1e-9;

/// All steady-state branches, sorted by |cbar|. The implicit amplitude
/// equation is reduced to a real polynomial in x = |cbar|^2 (degree <= 5),
/// solved through its companion matrix and polished with Newton on the full
/// complex system. Parameters are normalized to omega_m = 1 first.
/// Throws NoConvergence or DegenerateDenominator.
std::vector<SteadyBranch> solve_steady_state(const PhysicalParams& p);

/// Drive (eta, phi) for which a real non-negative amplitude cbar is a steady
/// state. Throws DegenerateDenominator.
std::pair<double, double> drive_for_amplitude(const PhysicalParams& p, double cbar);

/// Linearized parameters around a branch (drive phase rotated so cbar is real).
LinearParams linearize(const PhysicalParams& p, const SteadyBranch& branch);

/// Number of branches whose linearization is dynamically stable.
int count_stable_branches(const PhysicalParams& p, const std::vector<SteadyBranch>& branches);

/// Max-norm mismatch of the three steady-state equations over max(1, eta, |qbar|).
double steady_state_residual(const PhysicalParams& p, const SteadyBranch& b);

}  // namespace hom
