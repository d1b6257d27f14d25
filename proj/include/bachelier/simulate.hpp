#pragma once

#include <ostream>

#include "bachelier/coefficient.hpp"
#include "bachelier/hull_white.hpp"
#include "bachelier/market_model.hpp"
#include "bachelier/path_set.hpp"

namespace bachelier::sim {

/// Euler-Maruyama paths of the asset under the physical measure (drift rho)
/// or the risk-neutral measure (drift r). `integrals` is filled with the
/// trapezoidal accumulation of r(A_s, s) along each path.
PathSet simulate_asset(const MarketModel& model, const SimConfig& cfg, Measure measure);

/// Paths of the pricing diffusion dZ = drift dt + vol dB started at x0; pass
/// a zero drift for the driftless case and -D for the dividend case.
PathSet simulate_fk_diffusion(const CoefficientFn& vol, const CoefficientFn& drift, double x0,
                              const SimConfig& cfg);

inline PathSet simulate_fk_diffusion(const CoefficientFn& vol, double x0, const SimConfig& cfg) {
    return simulate_fk_diffusion(vol, CoefficientFn::constant(0.0), x0, cfg);
}

/// Short-rate paths of the mean-reverting model dr = (a - b r) dt + v dB.
/// With scheme = ExactWhereAvailable and piecewise-constant strictly
/// positive b and v, steps use the exact Gaussian transition of the solved
/// process; otherwise Euler. `integrals` accumulates the trapezoid of r.
PathSet simulate_hw_rate(const analytic::HullWhiteParams& params, const SimConfig& cfg);

/// CSV dump, one row per (path, step): header path,time,value[,integral].
void write_csv(const PathSet& paths, std::ostream& out);

} // namespace bachelier::sim
