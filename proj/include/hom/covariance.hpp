// covariance.hpp: linear covariance dynamics of the three-mode system.
//
// Quadrature ordering r = (X_c, Y_c, X_a, Y_a, q, p) with X = (c + c^dag)/sqrt2,
// Y = -i(c - c^dag)/sqrt2. Covariances use V_ij = <r_i r_j + r_j r_i> - 2<r_i><r_j>,
// so the vacuum is the identity.

#pragma once

#include <array>
#include <vector>

#include <Eigen/Core>

#include "hom/model.hpp"

namespace hom {

using Mat6 = Eigen::Matrix<double, 6, 6>;

inline constexpr double kStabilityMargin = 1e-9;
inline constexpr double kPhysicalityTolerance = 1e-8;
inline constexpr double kLyapunovResidualTolerance = 1e-9;

struct DriftMatrix {
    Mat6 a{Mat6::Zero()};
};

struct DiffusionMatrix {
    Mat6 n{Mat6::Zero()};
};

struct StabilityReport {
    std::array<double, 6> eigen_real_parts{};  // sorted descending
    bool stable{false};
};

struct CovarianceState {
    Mat6 v{Mat6::Zero()};
    double residual{0.0};  // max|AV + VA^T + N| / max|N|
    bool stable{false};
};

/// lambda*mu / (gamma^2 + delta_a^2), the dispersive part of the dopant-mediated
/// cavity-mechanics coupling.
double mixing_coupling(const LinearParams& lin);

/// Drift matrix of the linearized Langevin equations. The force row is
/// -(g~* dc + g~ dc^dag) - mu (da + da^dag) expressed in quadratures.
DriftMatrix drift_matrix(const LinearParams& lin);

/// diag(2k, 2k, 2y, 2y, 0, 2 gamma_m (2 nbar + 1)).
DiffusionMatrix diffusion_matrix(const LinearParams& lin);

/// Stable iff every eigenvalue has real part below -kStabilityMargin; marginal
/// systems count as unstable. Throws EigenFailure.
StabilityReport dynamical_stability(const DriftMatrix& a);

/// Solves AV + VA^T + N = 0 through the 36x36 Kronecker system.
/// Throws UnstableSystem if A is not stable, SingularSystem if the linear
/// system cannot be solved to tolerance.
CovarianceState solve_lyapunov(const DriftMatrix& a, const DiffusionMatrix& n);

/// (V55 + V66 - 2) / 4.
double final_occupation(const CovarianceState& state);

/// RK4 integration of dV/dt = AV + VA^T + N from v0 up to t_final.
/// Throws StepTooLarge when dt > 0.05 / max|A_ij|.
CovarianceState evolve_covariance(const DriftMatrix& a, const DiffusionMatrix& n, const Mat6& v0,
                                  double t_final, double dt);

/// Symplectic eigenvalues in ascending order (three values).
/// Throws AsymmetricInput when V is not symmetric.
std::vector<double> physicality(const Mat6& v);

/// True when every symplectic eigenvalue is >= 1 - kPhysicalityTolerance.
bool is_physical(const Mat6& v);

}  // namespace hom
