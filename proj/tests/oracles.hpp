// Test-only reference computations, kept independent of the library code paths
// they are used to check.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <Eigen/Core>

#include "hom/model.hpp"

namespace oracle {

using Mat6 = Eigen::Matrix<double, 6, 6>;

/// Drift matrix from the quadratic Hamiltonian H = 1/2 r^T M r and the damping
/// rates: A = Omega M - diag(k, k, y, y, 0, gamma_m). Quadratures: c = (X + iY)/sqrt2.
inline Mat6 drift_from_hamiltonian(const hom::LinearParams& p) {
    enum { Xc, Yc, Xa, Ya, Q, P };
    const std::complex<double> gt =
        p.g - std::complex<double>(0.0, 1.0) * p.lambda * p.mu / std::complex<double>(p.gamma, p.delta_a);
    Mat6 m = Mat6::Zero();
    m(Xc, Xc) = m(Yc, Yc) = p.delta_c;          // delta_c c^dag c
    m(Xa, Xa) = m(Ya, Ya) = p.delta_a;          // delta_a a^dag a
    m(Q, Q) = m(P, P) = p.omega_m;              // omega_m (q^2 + p^2)/2
    m(Xc, Xa) = m(Xa, Xc) = p.lambda;           // lambda (a^dag c + c^dag a) = lambda (XcXa + YcYa)
    m(Yc, Ya) = m(Ya, Yc) = p.lambda;
    // (g~* c + g~ c^dag) q = sqrt2 (Re g~ Xc + Im g~ Yc) q
    m(Xc, Q) = m(Q, Xc) = std::sqrt(2.0) * gt.real();
    m(Yc, Q) = m(Q, Yc) = std::sqrt(2.0) * gt.imag();
    m(Xa, Q) = m(Q, Xa) = std::sqrt(2.0) * p.mu;  // mu (a + a^dag) q
    Mat6 omega = Mat6::Zero();
    for (int k = 0; k < 3; ++k) {
        omega(2 * k, 2 * k + 1) = 1.0;
        omega(2 * k + 1, 2 * k) = -1.0;
    }
    Mat6 damping = Mat6::Zero();
    damping.diagonal() << p.kappa, p.kappa, p.gamma, p.gamma, 0.0, p.gamma_m;
    return omega * m - damping;
}

/// Real roots of the dispersive Kerr cubic x [k^2 + (dc - g0^2 x / w)^2] = eta^2,
/// by sign-change bracketing on a fine grid plus bisection.
inline std::vector<double> kerr_cubic_roots(double kappa, double delta_c, double g0, double omega_m,
                                            double eta, double x_max) {
    const auto f = [&](double x) {
        const double d = delta_c - g0 * g0 * x / omega_m;
        return x * (kappa * kappa + d * d) - eta * eta;
    };
    std::vector<double> roots;
    const int n = 200000;
    double a = 0.0;
    double fa = f(a);
    for (int i = 1; i <= n; ++i) {
        const double b = x_max * i / n;
        const double fb = f(b);
        if ((fa < 0.0) != (fb < 0.0)) {
            double lo = a, hi = b, flo = fa;
            for (int it = 0; it < 200; ++it) {
                const double mid = 0.5 * (lo + hi);
                const double fm = f(mid);
                if ((fm < 0.0) == (flo < 0.0)) { lo = mid; flo = fm; } else { hi = mid; }
            }
            roots.push_back(0.5 * (lo + hi));
        }
        a = b;
        fa = fb;
    }
    return roots;
}

inline double max_abs(const Mat6& m) { return m.cwiseAbs().maxCoeff(); }

/// Random linear parameters with moderate rates.
inline hom::LinearParams random_linear(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> rate(0.2, 3.0);
    std::uniform_real_distribution<double> det(-3.0, 3.0);
    std::uniform_real_distribution<double> coup(-1.0, 1.0);
    hom::LinearParams p;
    p.kappa = rate(rng);
    p.gamma = rate(rng);
    p.delta_c = det(rng);
    p.delta_a = det(rng);
    p.g = 0.3 * coup(rng);
    p.lambda = coup(rng);
    p.mu = 0.3 * coup(rng);
    p.gamma_m = 0.05 + 0.2 * std::abs(coup(rng));
    p.nbar = 10.0 * std::abs(coup(rng));
    return hom::with_effective_coupling(p);
}

}  // namespace oracle
