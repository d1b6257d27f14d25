#pragma once

#include <vector>

#include "bachelier/coefficient.hpp"
#include "bachelier/price_result.hpp"

namespace bachelier::analytic {

/// Parameters of the mean-reverting simple-rate model
/// dr = (a(t) - b(t) r) dt + v(t) dB under the pricing measure.
///
/// a, b, v are deterministic functions of time (evaluated at x = 0) and must
/// be nonnegative; r0 may have either sign — negative simple rates are a
/// supported regime, not an error.
struct HullWhiteParams {
    CoefficientFn a;
    CoefficientFn b;
    CoefficientFn v;
    double r0 = 0.0;

    HullWhiteParams(CoefficientFn a_fn, CoefficientFn b_fn, CoefficientFn v_fn, double r0_val);

    /// True when all three functions are piecewise constant in time, which
    /// unlocks the closed-form integrals and the exact simulation scheme.
    bool piecewise_constant() const;

    /// Merged breakpoints of a, b, v inside (lo, hi).
    std::vector<double> breakpoints(double lo, double hi) const;
};

/// Cumulative mean reversion b*(t), the integral of b over [0, t]; exact for
/// piecewise-constant b, adaptive quadrature otherwise.
double hw_b_star(const HullWhiteParams& p, double t);

/// c(t,T) = integral over [t,T] of exp(-(b*(v) - b*(t))) dv, the loading of
/// the current short rate in the conditional expectation of its integral.
/// At t = 0 this is the plain integral of exp(-b*).
double hw_c(const HullWhiteParams& p, double t, double T);

/// a(t,T) = integral over [t,T] of exp(b*(v)) a(v) (int_v^T exp(-b*)) dv.
double hw_a_term(const HullWhiteParams& p, double t, double T);

/// Zero-coupon bond price 1 - r_t c(t,T) - a(t,T). No clamping: extreme
/// inputs can price a bond above one or below zero.
double hw_bond_price(const HullWhiteParams& p, double r_t, double t, double T);

/// Joint Gaussian moments of (R_tau, r_tau) where R_tau is the running
/// integral of the rate. The 2x2 covariance is positive semidefinite.
struct HwMoments {
    double mean_R = 0.0;
    double var_R = 0.0;
    double mean_r = 0.0;
    double var_r = 0.0;
    double cov = 0.0;
};

HwMoments hw_moments(const HullWhiteParams& p, double tau);

/// European call on the zero-coupon bond maturing at T_bond, with option
/// expiry tau_opt < T_bond and strike K. The value is the reduced 1-D
/// Gaussian closed form; diagnostics carry the literal 2-D Gauss-Hermite
/// evaluation over the bivariate (R_tau, r_tau) density for cross-checking.
PriceResult hw_bond_call(const HullWhiteParams& p, double T_bond, double tau_opt, double K);

/// No-arbitrage residual a(t) - b(t) r_t + r_t dc/dt + da(t,T)/dt + r_t.
/// Reported for inspection only; it is generally T-dependent and is not
/// solved for.
double hw_noarb_residual(const HullWhiteParams& p, double r_t, double t, double T);

} // namespace bachelier::analytic
