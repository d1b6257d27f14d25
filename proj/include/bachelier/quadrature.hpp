#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace bachelier {

namespace detail {

// 15-point Kronrod rule with the embedded 7-point Gauss rule (QUADPACK dqk15
// abscissae/weights, positive half).
inline constexpr double kGK15Nodes[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double kGK15WeightsK[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kGK15WeightsG[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <typename F>
void gk15(const F& f, double a, double b, double& kronrod, double& err) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double resg = fc * kGK15WeightsG[3];
    double resk = fc * kGK15WeightsK[7];
    for (int j = 0; j < 7; ++j) {
        const double x = h * kGK15Nodes[j];
        const double fsum = f(c - x) + f(c + x);
        resk += kGK15WeightsK[j] * fsum;
        if (j % 2 == 1)
            resg += kGK15WeightsG[j / 2] * fsum;
    }
    kronrod = resk * h;
    err = std::abs((resk - resg) * h);
}

template <typename F>
double integrate_adaptive(const F& f, double a, double b, double abs_tol, int depth) {
    double value, err;
    gk15(f, a, b, value, err);
    if (err <= abs_tol)
        return value;
    if (depth <= 0)
        throw std::runtime_error("integrate: tolerance not reached (panel error " +
                                 std::to_string(err) + " over [" + std::to_string(a) + ", " +
                                 std::to_string(b) + "])");
    const double m = 0.5 * (a + b);
    return integrate_adaptive(f, a, m, 0.5 * abs_tol, depth - 1) +
           integrate_adaptive(f, m, b, 0.5 * abs_tol, depth - 1);
}

} // namespace detail

/// Adaptive Gauss-Kronrod (G7,K15) integration of f over [a,b] to an
/// absolute tolerance. Throws if the recursion cannot reach the tolerance.
template <typename F>
double integrate(const F& f, double a, double b, double abs_tol = 1e-10) {
    if (a == b)
        return 0.0;
    if (b < a)
        return -integrate(f, b, a, abs_tol);
    constexpr int kMaxDepth = 48;
    return detail::integrate_adaptive(f, a, b, abs_tol, kMaxDepth);
}

/// Integrates f over [a,b], splitting at the supplied interior breakpoints so
/// each adaptive panel sees a smooth integrand.
template <typename F>
double integrate_split(const F& f, double a, double b, const std::vector<double>& breaks,
                       double abs_tol = 1e-10) {
    if (a == b)
        return 0.0;
    if (b < a)
        return -integrate_split(f, b, a, breaks, abs_tol);
    std::vector<double> cuts{a};
    for (double c : breaks)
        if (c > a && c < b)
            cuts.push_back(c);
    cuts.push_back(b);
    double sum = 0.0;
    const double local_tol = abs_tol / static_cast<double>(cuts.size() - 1);
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
        sum += integrate(f, cuts[i], cuts[i + 1], local_tol);
    return sum;
}

/// Nodes and weights for integrals of the form ∫ f(x) e^{-x²} dx.
struct GaussHermiteRule {
    Eigen::VectorXd nodes;
    Eigen::VectorXd weights;
};

/// Gauss-Hermite rule of order n by Golub-Welsch on the Jacobi matrix of the
/// Hermite recurrence (off-diagonal sqrt(k/2), total weight sqrt(pi)).
inline GaussHermiteRule gauss_hermite(int n) {
    if (n < 1)
        throw std::invalid_argument("gauss_hermite: order must be >= 1");
    Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
    for (int k = 1; k < n; ++k) {
        const double off = std::sqrt(0.5 * k);
        jacobi(k, k - 1) = off;
        jacobi(k - 1, k) = off;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);
    GaussHermiteRule rule;
    rule.nodes = solver.eigenvalues();
    rule.weights.resize(n);
    const double sqrt_pi = std::sqrt(M_PI);
    for (int i = 0; i < n; ++i) {
        const double v0 = solver.eigenvectors()(0, i);
        rule.weights[i] = sqrt_pi * v0 * v0;
    }
    return rule;
}

} // namespace bachelier
