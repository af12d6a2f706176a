#include "hom/covariance.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "hom/error.hpp"

namespace hom {
namespace {

using Mat36 = Eigen::Matrix<double, 36, 36>;
using Vec36 = Eigen::Matrix<double, 36, 1>;

Mat6 lyapunov_rhs(const Mat6& a, const Mat6& v, const Mat6& n) {
    return a * v + v * a.transpose() + n;
}

Mat6 symmetrized(const Mat6& v) { return 0.5 * (v + v.transpose()); }

double relative_residual(const Mat6& a, const Mat6& v, const Mat6& n) {
    const double scale = std::max(n.cwiseAbs().maxCoeff(), 1e-300);
    return lyapunov_rhs(a, v, n).cwiseAbs().maxCoeff() / scale;
}

Mat6 symplectic_form() {
    Mat6 omega = Mat6::Zero();
    for (int k = 0; k < 3; ++k) {
        omega(2 * k, 2 * k + 1) = 1.0;
        omega(2 * k + 1, 2 * k) = -1.0;
    }
    return omega;
}

}  // namespace

double mixing_coupling(const LinearParams& lin) {
    return lin.lambda * lin.mu / (lin.gamma * lin.gamma + lin.delta_a * lin.delta_a);
}

DriftMatrix drift_matrix(const LinearParams& lin) {
    const double s2 = std::sqrt(2.0);
    const double mix = mixing_coupling(lin);
    // g~ = (g - mix*delta_a) - i mix*gamma
    const double gx = s2 * (lin.g - mix * lin.delta_a);
    const double gy = -s2 * mix * lin.gamma;
    const double l = lin.lambda;

    DriftMatrix d;
    Mat6& a = d.a;
    a << -lin.kappa,   lin.delta_c,  0.0,          l,            gy,                   0.0,
         -lin.delta_c, -lin.kappa,   -l,           0.0,          -gx,                  0.0,
         0.0,          l,            -lin.gamma,   lin.delta_a,  0.0,                  0.0,
         -l,           0.0,          -lin.delta_a, -lin.gamma,   -s2 * lin.mu,         0.0,
         0.0,          0.0,          0.0,          0.0,          0.0,                  lin.omega_m,
         -gx,          -gy,          -s2 * lin.mu, 0.0,          -lin.omega_m,         -lin.gamma_m;
    return d;
}

DiffusionMatrix diffusion_matrix(const LinearParams& lin) {
    DiffusionMatrix d;
    d.n.diagonal() << 2.0 * lin.kappa, 2.0 * lin.kappa, 2.0 * lin.gamma, 2.0 * lin.gamma, 0.0,
        2.0 * lin.gamma_m * (2.0 * lin.nbar + 1.0);
    return d;
}

StabilityReport dynamical_stability(const DriftMatrix& a) {
    if (!a.a.allFinite()) {
        throw Error(ErrorKind::EigenFailure, "drift matrix has non-finite entries");
    }
    Eigen::EigenSolver<Mat6> solver(a.a, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorKind::EigenFailure, "eigenvalue iteration did not converge");
    }
    StabilityReport report;
    const auto values = solver.eigenvalues();
    for (int i = 0; i < 6; ++i) report.eigen_real_parts[i] = values[i].real();
    std::sort(report.eigen_real_parts.begin(), report.eigen_real_parts.end(), std::greater<>());
    report.stable = report.eigen_real_parts.front() < -kStabilityMargin;
    return report;
}

CovarianceState solve_lyapunov(const DriftMatrix& a, const DiffusionMatrix& n) {
    if (!dynamical_stability(a).stable) {
        throw Error(ErrorKind::UnstableSystem, "drift matrix has eigenvalues with Re >= 0");
    }
    // Column-major vec: vec(AV) = (I kron A) vec V, vec(VA^T) = (A kron I) vec V.
    Mat36 k = Mat36::Zero();
    for (int j = 0; j < 6; ++j) {
        k.block<6, 6>(6 * j, 6 * j) += a.a;
        for (int i = 0; i < 6; ++i) {
            k.block<6, 6>(6 * i, 6 * j).diagonal().array() += a.a(i, j);
        }
    }
    const Eigen::PartialPivLU<Mat36> lu(k);
    const Vec36 rhs = -Eigen::Map<const Vec36>(n.n.data());
    Vec36 x = lu.solve(rhs);
    // one step of iterative refinement
    x += lu.solve(rhs - k * x);

    CovarianceState state;
    state.v = symmetrized(Eigen::Map<const Mat6>(x.data()));
    state.stable = true;
    state.residual = relative_residual(a.a, state.v, n.n);
    if (!state.v.allFinite() || !(state.residual <= kLyapunovResidualTolerance)) {
        throw Error(ErrorKind::SingularSystem, "Kronecker system could not be solved to tolerance");
    }
    return state;
}

double final_occupation(const CovarianceState& state) {
    return 0.25 * (state.v(4, 4) + state.v(5, 5) - 2.0);
}

CovarianceState evolve_covariance(const DriftMatrix& a, const DiffusionMatrix& n, const Mat6& v0,
                                  double t_final, double dt) {
    const double rate = a.a.cwiseAbs().maxCoeff();
    if (!(dt > 0.0) || (rate > 0.0 && dt > 0.05 / rate)) {
        throw Error(ErrorKind::StepTooLarge, "dt must satisfy 0 < dt <= 0.05 / max|A_ij|");
    }
    const auto steps = static_cast<long long>(std::ceil(t_final / dt));
    const double h = steps > 0 ? t_final / static_cast<double>(steps) : 0.0;

    Mat6 v = symmetrized(v0);
    for (long long s = 0; s < steps; ++s) {
        const Mat6 k1 = lyapunov_rhs(a.a, v, n.n);
        const Mat6 k2 = lyapunov_rhs(a.a, v + 0.5 * h * k1, n.n);
        const Mat6 k3 = lyapunov_rhs(a.a, v + 0.5 * h * k2, n.n);
        const Mat6 k4 = lyapunov_rhs(a.a, v + h * k3, n.n);
        v = symmetrized(v + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
    }

    CovarianceState state;
    state.v = v;
    state.stable = dynamical_stability(a).stable;
    state.residual = relative_residual(a.a, v, n.n);
    return state;
}

std::vector<double> physicality(const Mat6& v) {
    const double scale = std::max(v.cwiseAbs().maxCoeff(), 1.0);
    if ((v - v.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
        throw Error(ErrorKind::AsymmetricInput, "covariance matrix is not symmetric");
    }
    // Eigenvalues of Omega V come in pairs +-i nu for positive V.
    const Mat6 m = symplectic_form() * v;
    Eigen::EigenSolver<Mat6> solver(m, false);
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorKind::EigenFailure, "symplectic spectrum did not converge");
    }
    std::array<double, 6> moduli{};
    for (int i = 0; i < 6; ++i) moduli[i] = std::abs(solver.eigenvalues()[i]);
    std::sort(moduli.begin(), moduli.end());
    // Non-positive V can produce real eigenvalue pairs; a negative sign marks them.
    std::vector<double> nu;
    for (int k = 0; k < 3; ++k) {
        nu.push_back(0.5 * (moduli[2 * k] + moduli[2 * k + 1]));
    }
    const Eigen::SelfAdjointEigenSolver<Mat6> definite(v, Eigen::EigenvaluesOnly);
    if (definite.eigenvalues().minCoeff() <= 0.0) nu.front() = -nu.front();
    std::sort(nu.begin(), nu.end());
    return nu;
}

bool is_physical(const Mat6& v) {
    const auto nu = physicality(v);
    return std::all_of(nu.begin(), nu.end(),
                       [](double x) { return x >= 1.0 - kPhysicalityTolerance; });
}

}  // namespace hom
