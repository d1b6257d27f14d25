#pragma once

#include <string>

#include "bachelier/price_result.hpp"

namespace bachelier::analytic {

/// Bachelier call price with constant coefficients:
/// lam0 Phi(lam0/lam1) + lam1 phi(lam0/lam1) - r tau, lam0 = A - K + r tau,
/// lam1 = v sqrt(tau). Returns max(A - K, 0) at tau = 0. The -r tau term can
/// push the value negative; it is returned unmodified.
double bachelier_call(double spot, double strike, double rate, double vol, double tau);

/// Bachelier put via parity: put = call - (A - K + r tau).
double bachelier_put(double spot, double strike, double rate, double vol, double tau);

/// Exponent gamma = 1 - v^2 / r of the perpetual claim x^2 + gamma beta_t;
/// r = 0 is a singularity.
double perpetual_gamma(double vol, double rate);

/// T-forward delivery price F(t,T) = A_t - V_t.
double forward_price(double spot, double contract_value);

/// Mark-to-market value of a forward position at s in [t, T], with its
/// replication decomposition: asset leg A_s, rate leg F * E[int r], bond leg
/// F * B(s,T). The decomposition reproduces the value exactly when
/// B(s,T) + E[int r] = 1; inputs violating that identity beyond tolerance
/// are rejected as inconsistent.
struct ForwardValue {
    double value;     // A_s - F
    double asset_leg; // A_s
    double rate_leg;  // F * E[int r]
    double bond_leg;  // F * B(s,T)
};

ForwardValue forward_value_at(double spot_s, double delivery_price, double bond_s_T,
                              double expected_rate_integral, double tolerance = 1e-9);

/// Futures price Phi_t = E_t(A_T) = A_t + int_t^T r du.
double futures_price(double spot, double rate_integral);

/// Delivery price of the marked-to-market forward: Phi_t - A_t.
double futures_delivery_price(double spot, double expected_terminal_spot);

/// Futures-forward payment spread Phi_0 - (F + V) = int_0^T r du, plus the
/// market state implied by comparing Phi_0 against the physical-measure
/// expected terminal price.
enum class MarketState { NormalBackwardation, Contango, Neutral };

struct SpreadResult {
    double spread;
    MarketState state;
};

SpreadResult forward_futures_spread(double rate_integral, double futures_price_0,
                                    double expected_spot_physical);

std::string market_state_name(MarketState s);

} // namespace bachelier::analytic
