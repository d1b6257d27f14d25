#pragma once

#include <map>
#include <string>

#include <Eigen/Dense>

#include "bachelier/coefficient.hpp"
#include "bachelier/market_model.hpp"
#include "bachelier/payoff.hpp"
#include "bachelier/price_result.hpp"

namespace bachelier::pde {

/// Cauchy terminal-value problem
///   f_t + mu f_x + (1/2) sigma^2 f_xx - a f + h = 0,  f(x, T) = terminal(x).
struct CauchySpec {
    CoefficientFn mu;
    CoefficientFn sigma;
    CoefficientFn a;
    CoefficientFn h;
    Payoff terminal;
    double T;
};

/// Uniform space-time grid and the theta blend of the time stepper
/// (0 explicit, 1/2 Crank-Nicolson, 1 implicit). Kinked terminals get
/// `rannacher_steps` fully implicit startup steps.
struct GridSpec {
    double x_min = 0.0;
    double x_max = 0.0;
    int n_x = 801;
    int n_t = 200;
    double theta = 0.5;
    int rannacher_steps = 2;

    void validate() const;
    double dx() const { return (x_max - x_min) / (n_x - 1); }
};

struct PdeSolution {
    GridSpec grid;
    Eigen::VectorXd xs;      // n_x nodes
    Eigen::VectorXd times;   // n_t + 1 levels, 0 .. T
    Eigen::MatrixXd surface; // (n_t + 1) x n_x, row i = f(., times[i])
    std::map<std::string, double> diagnostics;

    /// Bilinear interpolation of f(x, t); throws outside the grid.
    double value_at(double x, double t) const;
};

/// Backward theta-scheme with central differences; the zero-second-derivative
/// (linearity) condition closes both ends. If an implicit row loses diagonal
/// dominance the solve restarts fully implicit and flags it in diagnostics.
PdeSolution solve_cauchy(const CauchySpec& spec, const GridSpec& grid);

/// Drift convention for the pricing equation. Driftless omits the
/// first-derivative term (its probabilistic twin is the zero-drift
/// diffusion); RiskNeutral adds mu = r, the form the constant-coefficient
/// closed form satisfies. They differ for r != 0; both are kept and the gap
/// is measured in tests. The CLI exposes them as paper-eq7 and risk-neutral.
enum class DriftMode { Driftless, RiskNeutral };

analytic::PriceResult price_bachelier_pde(const MarketModel& model, const Payoff& payoff,
                                          double T, const GridSpec& grid, DriftMode mode);

/// Dividend-paying variant: mu = -D, h = -r.
analytic::PriceResult price_dividend_pde(const MarketModel& model, const Payoff& payoff,
                                         double T, const GridSpec& grid);

/// Central-difference df/dx of the solved surface at (x, t); one-sided at
/// the grid ends. The replicating position holds -delta units of the asset.
double delta(const PdeSolution& solution, double x, double t);

/// Default domain [A0 - 8 v sqrt(T), A0 + 8 v sqrt(T)]: the truncated tails
/// carry less than 1e-15 of the Gaussian mass.
GridSpec default_grid(const MarketModel& model, double T);

/// Coefficient with the same shape and negated values.
CoefficientFn negate(const CoefficientFn& c);

/// CSV dump of the surface, rows `t,x,f`.
void write_csv(const PdeSolution& solution, std::ostream& out);

} // namespace bachelier::pde
