#include "hom/steadystate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <string>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "hom/covariance.hpp"
#include "hom/error.hpp"

namespace hom {
namespace {

constexpr cplx kI{0.0, 1.0};

// Static displacement q(x) = -shift * x / (omega_m - soft * x), x = |cbar|^2.
struct DisplacementLaw {
    double shift{0.0};
    double soft{0.0};
    double omega_m{1.0};

    explicit DisplacementLaw(const PhysicalParams& p) : omega_m(p.omega_m) {
        const double dopant_norm = p.gamma * p.gamma + p.delta_a * p.delta_a;
        shift = p.g0 - 2.0 * p.lambda * p.mu0 * p.delta_a / dopant_norm;
        soft = 2.0 * p.mu0 * p.mu0 * p.delta_a / dopant_norm;
    }

    double denominator(double x) const { return omega_m - soft * x; }
    double displacement(double x) const { return -shift * x / denominator(x); }
};

// Coefficients (ascending) of P(x) = Z(x) * den(x)^2 where
// Z = kappa + i delta_c + i g0 q + (lambda + mu0 q)^2 / (gamma + i delta_a).
std::array<cplx, 3> impedance_numerator(const PhysicalParams& p, const DisplacementLaw& law) {
    const cplx cavity{p.kappa, p.delta_c};
    const cplx dopant = 1.0 / cplx{p.gamma, p.delta_a};
    const double w = law.omega_m;
    const double b = law.soft;
    const double a = law.shift;
    // den^2 = w^2 - 2wb x + b^2 x^2 ; x den = w x - b x^2
    // (lambda den - mu0 a x)^2 = l^2 w^2 + 2 l w (-l b - mu0 a) x + (l b + mu0 a)^2 x^2
    const double l = p.lambda;
    const double t = l * b + p.mu0 * a;
    std::array<cplx, 3> c{};
    c[0] = cavity * (w * w) + dopant * (l * l * w * w);
    c[1] = cavity * (-2.0 * w * b) - kI * p.g0 * a * w + dopant * (-2.0 * l * w * t);
    c[2] = cavity * (b * b) + kI * p.g0 * a * b + dopant * (t * t);
    return c;
}

cplx eval_complex(const std::array<cplx, 3>& c, double x) { return c[0] + x * (c[1] + x * c[2]); }

cplx impedance(const PhysicalParams& p, const DisplacementLaw& law, double x) {
    const double den = law.denominator(x);
    if (std::abs(den) <= kDegenerateDenominator) {
        throw Error(ErrorKind::DegenerateDenominator,
                    "static displacement denominator vanishes at |cbar|^2 = " + std::to_string(x));
    }
    return eval_complex(impedance_numerator(p, law), x) / (den * den);
}

// f(x) = x |P(x)|^2 - eta^2 den(x)^4, ascending real coefficients (degree 5).
std::vector<double> amplitude_polynomial(const PhysicalParams& p, const DisplacementLaw& law) {
    const auto c = impedance_numerator(p, law);
    std::vector<double> f(6, 0.0);
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            f[i + j + 1] += (c[i] * std::conj(c[j])).real();
        }
    }
    // den^4 with den = w - b x
    const double w = law.omega_m;
    const double b = -law.soft;
    const std::array<double, 5> binom{1, 4, 6, 4, 1};
    for (int k = 0; k <= 4; ++k) {
        f[k] -= p.eta * p.eta * binom[k] * std::pow(w, 4 - k) * std::pow(b, k);
    }
    return f;
}

double eval_real(const std::vector<double>& f, double x) {
    double acc = 0.0;
    for (auto it = f.rbegin(); it != f.rend(); ++it) acc = acc * x + *it;
    return acc;
}

double eval_real_derivative(const std::vector<double>& f, double x) {
    double acc = 0.0;
    for (std::size_t k = f.size() - 1; k >= 1; --k) acc = acc * x + static_cast<double>(k) * f[k];
    return acc;
}

// Real roots >= 0 of f via the companion matrix of the rescaled polynomial.
std::vector<double> nonnegative_roots(std::vector<double> f) {
    // tiny leading coefficients still matter at large x; only exact zeros go
    while (f.size() > 1 && f.back() == 0.0) f.pop_back();
    const int degree = static_cast<int>(f.size()) - 1;
    if (degree < 1) return {};

    // x = s y balances the constant and leading coefficients
    const double s = f.front() != 0.0
                         ? std::pow(std::abs(f.front() / f.back()), 1.0 / degree)
                         : 1.0;
    std::vector<double> h(f.size());
    for (int k = 0; k <= degree; ++k) h[k] = f[k] * std::pow(s, k) / (f.back() * std::pow(s, degree));

    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(degree, degree);
    for (int k = 0; k < degree; ++k) companion(0, k) = -h[degree - 1 - k];
    for (int k = 1; k < degree; ++k) companion(k, k - 1) = 1.0;
    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorKind::NoConvergence, "companion eigenvalues did not converge");
    }

    std::vector<double> roots;
    for (int k = 0; k < degree; ++k) {
        const std::complex<double> y = solver.eigenvalues()[k];
        if (std::abs(y.imag()) > 1e-6 * std::max(1.0, std::abs(y))) continue;
        double x = std::max(0.0, y.real() * s);
        for (int it = 0; it < kNewtonMaxIterations; ++it) {
            const double d = eval_real_derivative(f, x);
            if (d == 0.0) break;
            const double step = eval_real(f, x) / d;
            x = std::max(0.0, x - step);
            if (std::abs(step) <= 1e-15 * std::max(1.0, x)) break;
        }
        double magnitude = 0.0;
        for (auto it = f.rbegin(); it != f.rend(); ++it) magnitude = magnitude * x + std::abs(*it);
        if (x > 0.0 && std::abs(eval_real(f, x)) <= 1e-9 * magnitude) roots.push_back(x);
    }
    return roots;
}

// Equations as 5 real components: Re/Im of cavity and dopant equations, force balance.
using Vec5 = Eigen::Matrix<double, 5, 1>;
using Mat5 = Eigen::Matrix<double, 5, 5>;

Vec5 equations(const PhysicalParams& p, cplx c, cplx a, double q) {
    const cplx drive = p.eta * std::exp(-kI * p.phi);
    const double tc = p.lambda + p.mu0 * q;
    const cplx e1 = -cplx{p.kappa, p.delta_c} * c - kI * tc * a - kI * p.g0 * c * q + drive;
    const cplx e2 = -cplx{p.gamma, p.delta_a} * a - kI * tc * c;
    const double e3 = -p.omega_m * q - 2.0 * p.mu0 * (c * std::conj(a)).real() - p.g0 * std::norm(c);
    Vec5 e;
    e << e1.real(), e1.imag(), e2.real(), e2.imag(), e3;
    return e;
}

Mat5 jacobian(const PhysicalParams& p, cplx c, cplx a, double q) {
    const double tc = p.lambda + p.mu0 * q;
    const cplx d1c = -cplx{p.kappa, p.delta_c} - kI * p.g0 * q;
    const cplx d1a = -kI * tc;
    const cplx d1q = -kI * p.mu0 * a - kI * p.g0 * c;
    const cplx d2c = -kI * tc;
    const cplx d2a = -cplx{p.gamma, p.delta_a};
    const cplx d2q = -kI * p.mu0 * c;

    Mat5 j;
    // columns: Re c, Im c, Re a, Im a, q ; d/dIm z = i d/dz for holomorphic parts
    const auto fill = [&](int row, cplx dc, cplx da, cplx dq) {
        const cplx dci = kI * dc;
        const cplx dai = kI * da;
        j(row, 0) = dc.real();  j(row, 1) = dci.real(); j(row, 2) = da.real();
        j(row, 3) = dai.real(); j(row, 4) = dq.real();
        j(row + 1, 0) = dc.imag();  j(row + 1, 1) = dci.imag(); j(row + 1, 2) = da.imag();
        j(row + 1, 3) = dai.imag(); j(row + 1, 4) = dq.imag();
    };
    fill(0, d1c, d1a, d1q);
    fill(2, d2c, d2a, d2q);
    j(4, 0) = -2.0 * p.mu0 * a.real() - 2.0 * p.g0 * c.real();
    j(4, 1) = -2.0 * p.mu0 * a.imag() - 2.0 * p.g0 * c.imag();
    j(4, 2) = -2.0 * p.mu0 * c.real();
    j(4, 3) = -2.0 * p.mu0 * c.imag();
    j(4, 4) = -p.omega_m;
    return j;
}

double mismatch(const PhysicalParams& p, cplx c, cplx a, double q) {
    const double scale = std::max({1.0, p.eta, std::abs(q)});
    return equations(p, c, a, q).cwiseAbs().maxCoeff() / scale;
}

SteadyBranch polish(const PhysicalParams& p, SteadyBranch b) {
    Vec5 u;
    u << b.cbar.real(), b.cbar.imag(), b.abar.real(), b.abar.imag(), b.qbar;
    double best = mismatch(p, b.cbar, b.abar, b.qbar);
    for (int it = 0; it < kNewtonMaxIterations && best > 0.0; ++it) {
        const cplx c{u[0], u[1]};
        const cplx a{u[2], u[3]};
        const Vec5 e = equations(p, c, a, u[4]);
        const Vec5 next = u - jacobian(p, c, a, u[4]).fullPivLu().solve(e);
        const double r = mismatch(p, {next[0], next[1]}, {next[2], next[3]}, next[4]);
        if (!(r < best)) break;
        u = next;
        best = r;
    }
    b.cbar = {u[0], u[1]};
    b.abar = {u[2], u[3]};
    b.qbar = u[4];
    b.residual = best;
    return b;
}

}  // namespace

double steady_state_residual(const PhysicalParams& p, const SteadyBranch& b) {
    return mismatch(validate(p), b.cbar, b.abar, b.qbar);
}

std::vector<SteadyBranch> solve_steady_state(const PhysicalParams& raw) {
    const PhysicalParams p = validate(raw);
    if (p.eta == 0.0) return {SteadyBranch{}};

    const DisplacementLaw law(p);
    const cplx drive = p.eta * std::exp(-kI * p.phi);
    std::vector<SteadyBranch> branches;
    for (const double x : nonnegative_roots(amplitude_polynomial(p, law))) {
        SteadyBranch b;
        b.qbar = law.displacement(x);
        b.cbar = drive / impedance(p, law, x);
        b.abar = -kI * (p.lambda + p.mu0 * b.qbar) * b.cbar / cplx{p.gamma, p.delta_a};
        b = polish(p, b);
        if (!(b.residual <= kSteadyResidualTolerance)) {
            throw Error(ErrorKind::NoConvergence,
                        "Newton polish stalled at relative residual " + std::to_string(b.residual) +
                            " for |cbar| = " + std::to_string(std::abs(b.cbar)));
        }
        branches.push_back(b);
    }
    if (branches.empty()) {
        throw Error(ErrorKind::NoConvergence, "no non-negative amplitude root found");
    }

    std::sort(branches.begin(), branches.end(), [](const SteadyBranch& a, const SteadyBranch& b) {
        return std::abs(a.cbar) < std::abs(b.cbar);
    });
    std::vector<SteadyBranch> unique;
    for (const auto& b : branches) {
        if (!unique.empty()) {
            const double prev = std::abs(unique.back().cbar);
            const double dist = std::abs(b.cbar - unique.back().cbar);
            if (dist <= kRootDedupDistance * std::max(1.0, prev)) continue;
        }
        unique.push_back(b);
    }
    return unique;
}

std::pair<double, double> drive_for_amplitude(const PhysicalParams& raw, double cbar) {
    if (!(cbar >= 0.0)) {
        throw Error(ErrorKind::BadRange, "amplitude must be >= 0");
    }
    const PhysicalParams p = validate(raw);
    if (cbar == 0.0) return {0.0, 0.0};
    const DisplacementLaw law(p);
    const cplx z = impedance(p, law, cbar * cbar);
    // eta e^{-i phi} = Z cbar  =>  eta = |Z| cbar, phi = -arg Z; eta is in units of omega_m
    return {std::abs(z) * cbar * raw.omega_m, -std::arg(z)};
}

LinearParams linearize(const PhysicalParams& p, const SteadyBranch& branch) {
    return linearize(validate(p), branch.cbar, branch.qbar);
}

int count_stable_branches(const PhysicalParams& p, const std::vector<SteadyBranch>& branches) {
    int stable = 0;
    for (const auto& b : branches) {
        if (dynamical_stability(drift_matrix(linearize(p, b))).stable) ++stable;
    }
    return stable;
}

}  // namespace hom
