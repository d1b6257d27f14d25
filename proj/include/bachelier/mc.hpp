#pragma once

#include <cstdint>
#include <optional>

#include "bachelier/market_model.hpp"
#include "bachelier/path_set.hpp"
#include "bachelier/payoff.hpp"
#include "bachelier/pde.hpp"

namespace bachelier::mc {

/// A Monte Carlo estimate: sample mean, its standard error, and the draw
/// configuration that produced it. Identical (inputs, seed) give identical
/// estimates regardless of the worker count.
struct McEstimate {
    double value = 0.0;
    double stderr_value = 0.0;
    long n_paths = 0;
    std::uint64_t seed = 0;
};

/// Probabilistic solution of the Cauchy problem: simulates the associated
/// diffusion from (x0, t0) to T and averages the discounted source plus the
/// discounted terminal value along each path.
McEstimate fk_price(const pde::CauchySpec& spec, double x0, double t0, const sim::SimConfig& cfg);

/// Risk-neutral claim price: asset paths with drift r; averages
/// g(A_T) - int r(A_s, s) ds.
McEstimate price_ecc_riskneutral(const MarketModel& model, const Payoff& payoff, double T,
                                 const sim::SimConfig& cfg);

/// Dividend-paying claim: the pricing diffusion carries drift -D; averages
/// g(Z_T) - int r(Z_s, s) ds.
McEstimate price_ecc_dividend(const MarketModel& model, const Payoff& payoff, double T,
                              const sim::SimConfig& cfg);

/// Security paying a terminal value plus a cumulative dividend stream:
/// averages X_T + int D ds - int r ds over risk-neutral asset paths, where
/// X_T = terminal(A_T).
McEstimate price_gain_security(const Payoff& terminal, const CoefficientFn& dividend_stream,
                               const MarketModel& model, double T, const sim::SimConfig& cfg);

/// Martingale-representation weights replicating the bond from the asset and
/// the account, estimated by least squares of terminal martingale residuals
/// on the paths' Brownian totals.
struct BondReplication {
    double gamma_b = 0.0;
    double gamma_stderr = 0.0;
    double asset_weight = 0.0;   // gamma_b / v
    double account_weight = 0.0; // 1 - gamma_b / v
};

struct BondMcResult {
    McEstimate estimate;
    std::optional<BondReplication> replication; // present when vol is constant
};

/// Zero-coupon bond by simulation: 1 - mean(int_t^T r ds) over risk-neutral
/// asset paths started at A0 at time t.
BondMcResult bond_price_mc(const MarketModel& model, double t, double T,
                           const sim::SimConfig& cfg);

/// Prices a payoff on an existing path set (common-random-number pricing):
/// mean of payoff(terminal) minus the stored rate integral.
McEstimate price_ecc_on(const sim::PathSet& paths, const Payoff& payoff);

} // namespace bachelier::mc
