#pragma once

#include <optional>
#include <ostream>
#include <vector>

#include <Eigen/Dense>

#include "bachelier/coefficient.hpp"
#include "bachelier/hull_white.hpp"
#include "bachelier/path_set.hpp"

namespace bachelier::curve {

/// Discrete bond surface B(t, T) on increasing grids, defined only for
/// t <= T. Entries with T < t are excluded from the API (stored as NaN, and
/// checked access throws): the matured region is not a zero bond price, it
/// is out of domain.
struct BondSurface {
    Eigen::VectorXd t_grid;
    Eigen::VectorXd T_grid;
    Eigen::MatrixXd values; // (t, T); NaN where T < t

    bool defined(Eigen::Index i, Eigen::Index j) const {
        return T_grid[j] >= t_grid[i] - 1e-12;
    }
    double at(Eigen::Index i, Eigen::Index j) const;
    Eigen::Index t_index(double t) const;
    Eigen::Index T_index(double T) const;
};

/// Rate surface over the same layout; `kind` says whether the values are
/// forward rates f(t,T) or no-interest loan rates l(t,T).
struct RateSurface {
    enum class Kind { Forward, Loan };
    Kind kind = Kind::Loan;
    Eigen::VectorXd t_grid;
    Eigen::VectorXd T_grid;
    Eigen::MatrixXd values;

    double at(Eigen::Index i, Eigen::Index j) const;
    Eigen::Index t_index(double t) const;
    Eigen::Index T_index(double T) const;
};

/// Forward rate -d ln B / dT by central difference on the maturity grid.
/// Throws a domain error when a bond in the stencil is <= 0 (the log
/// representation fails there; it is reported, not patched) or when T is not
/// interior.
double forward_rate_from_bonds(const BondSurface& s, double t, double T);

/// Loan rate -dB/dT by central difference; defined for bonds of any sign.
double loan_rate_from_bonds(const BondSurface& s, double t, double T);

/// First-order one-sided recovery of the short rate at the diagonal T = t.
double diagonal_rate_from_bonds(const BondSurface& s, double t);

/// Whole-surface bootstrap; one-sided differences at the diagonal and the
/// last maturity, central elsewhere.
RateSurface rates_from_bonds(const BondSurface& s, RateSurface::Kind kind);

/// B(t,T) = 1 - integral of l(t,u) over [t,T] by trapezoid on the maturity
/// grid; B(t,t) = 1 exactly. Every t-grid node must lie on the maturity grid.
BondSurface bonds_from_loan_rates(const RateSurface& rates);

/// Bachelier forward LIBOR with tenor delta: the average of the loan-rate
/// curve in time-to-maturity coordinates over [tau, tau + delta], integrated
/// exactly against the piecewise-linear interpolant of the stored curve.
double forward_libor(const RateSurface& rates, double t, double tau, double delta);

/// One-factor forward-curve evolution under the pricing measure with drift
/// sigma_f * sigma_f_star; one shared Brownian increment per step moves the
/// whole curve. sigma_f is evaluated as sigma_f(x = T, t).
struct HjmPaths {
    Eigen::VectorXd times;  // simulation steps, a prefix of T_grid
    Eigen::VectorXd T_grid; // uniform maturities from 0
    std::vector<Eigen::MatrixXd> curves; // per step: n_paths x n_T
    Eigen::MatrixXd brownian;            // n_paths x n_steps

    long n_paths() const { return brownian.rows(); }
    int n_steps() const { return static_cast<int>(times.size()) - 1; }
    /// Bond implied by the exponential representation exp(-int f).
    double bond(long path, int step, Eigen::Index maturity) const;
    RateSurface surface(long path) const;
};

HjmPaths hjm_simulate_forward(const CoefficientFn& sigma_f, const Eigen::VectorXd& T_grid,
                              const Eigen::VectorXd& f0, const sim::SimConfig& cfg);

/// No-interest-loan curve model: driftless loan-rate dynamics under the
/// pricing measure with proportional volatility sigma_ell * l(t,T) (or a
/// supplied general sigma(t,T)); under the physical measure the drift is
/// theta_ell * sigma.
struct BhjmSpec {
    double sigma_ell = 0.0;                  // proportional volatility
    std::optional<CoefficientFn> sigma_fn;   // general sigma(x = T, t) hook
    Eigen::VectorXd T_grid;                  // uniform maturities from 0
    Eigen::VectorXd initial_curve;           // l(0, T_j)
    std::optional<double> theta_ell;

    void validate() const;
};

struct BhjmPaths {
    Eigen::VectorXd times;
    Eigen::VectorXd T_grid;
    std::vector<Eigen::MatrixXd> loan_curves; // per step: n_paths x n_T
    Eigen::MatrixXd short_rate;               // n_paths x (n_steps + 1), r_t = l(t,t)
    Eigen::VectorXd rate_integrals;           // trapezoid of the short rate per path
    Eigen::MatrixXd brownian;                 // n_paths x n_steps

    long n_paths() const { return short_rate.rows(); }
    int n_steps() const { return static_cast<int>(times.size()) - 1; }
    /// Bond 1 - int l(t,u) du for one path at one step; maturity must not
    /// precede the step time.
    double bond(long path, int step, Eigen::Index maturity) const;
    RateSurface loan_surface(long path) const;
    BondSurface bond_surface(long path) const;
};

BhjmPaths bhjm_simulate(const BhjmSpec& spec, const sim::SimConfig& cfg, sim::Measure measure);

/// Hull-White bond surface from the closed form. The t = 0 row uses r0; rows
/// with t > 0 are conditional on a supplied short-rate value per t node.
BondSurface hw_curve(const analytic::HullWhiteParams& p, const Eigen::VectorXd& t_grid,
                     const Eigen::VectorXd& T_grid,
                     const std::optional<Eigen::VectorXd>& r_values = std::nullopt);

/// CSV rows `t,T,value` with the surface kind on a leading comment line.
void write_csv(const BondSurface& s, std::ostream& out);
void write_csv(const RateSurface& s, std::ostream& out);

} // namespace bachelier::curve
