#include "bachelier/curve.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "bachelier/parallel.hpp"
#include "bachelier/rng.hpp"

namespace bachelier::curve {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

Eigen::Index locate(const Eigen::VectorXd& grid, double value, const char* what) {
    for (Eigen::Index i = 0; i < grid.size(); ++i)
        if (std::abs(grid[i] - value) <= 1e-9 * std::max(1.0, std::abs(value)))
            return i;
    throw std::domain_error(std::string(what) + ": value not on the grid");
}

void require_uniform_from_zero(const Eigen::VectorXd& grid, const char* what) {
    if (grid.size() < 2 || grid[0] != 0.0)
        throw std::invalid_argument(std::string(what) + ": maturity grid must start at 0");
    const double dt = grid[1] - grid[0];
    for (Eigen::Index j = 1; j < grid.size(); ++j)
        if (std::abs((grid[j] - grid[j - 1]) - dt) > 1e-9 * dt)
            throw std::invalid_argument(std::string(what) + ": maturity grid must be uniform");
}

// steps implied by walking the maturity grid up to cfg.t_end
int implied_steps(const Eigen::VectorXd& T_grid, const sim::SimConfig& cfg, const char* what) {
    if (cfg.t_start != 0.0)
        throw std::invalid_argument(std::string(what) + ": curve evolutions start at t = 0");
    const double dt = T_grid[1] - T_grid[0];
    const int n = static_cast<int>(std::lround(cfg.t_end / dt));
    if (n < 1 || n >= T_grid.size() ||
        std::abs(n * dt - cfg.t_end) > 1e-9 * std::max(1.0, cfg.t_end))
        throw std::invalid_argument(std::string(what) +
                                    ": tEnd must be a maturity-grid node below the horizon");
    return n;
}

} // namespace

double BondSurface::at(Eigen::Index i, Eigen::Index j) const {
    if (i < 0 || i >= t_grid.size() || j < 0 || j >= T_grid.size())
        throw std::out_of_range("BondSurface: index outside the grid");
    if (!defined(i, j))
        throw std::domain_error("BondSurface: B(t,T) is undefined for t > T");
    return values(i, j);
}

Eigen::Index BondSurface::t_index(double t) const { return locate(t_grid, t, "BondSurface t"); }
Eigen::Index BondSurface::T_index(double T) const { return locate(T_grid, T, "BondSurface T"); }

double RateSurface::at(Eigen::Index i, Eigen::Index j) const {
    if (i < 0 || i >= t_grid.size() || j < 0 || j >= T_grid.size())
        throw std::out_of_range("RateSurface: index outside the grid");
    if (T_grid[j] < t_grid[i] - 1e-12)
        throw std::domain_error("RateSurface: rate undefined for T < t");
    return values(i, j);
}

Eigen::Index RateSurface::t_index(double t) const { return locate(t_grid, t, "RateSurface t"); }
Eigen::Index RateSurface::T_index(double T) const { return locate(T_grid, T, "RateSurface T"); }

double forward_rate_from_bonds(const BondSurface& s, double t, double T) {
    const Eigen::Index i = s.t_index(t);
    const Eigen::Index j = s.T_index(T);
    if (j == 0 || j == s.T_grid.size() - 1)
        throw std::domain_error("forward_rate_from_bonds: T must be interior to the grid");
    const double b_lo = s.at(i, j - 1), b_hi = s.at(i, j + 1);
    if (!(b_lo > 0.0) || !(b_hi > 0.0) || !(s.at(i, j) > 0.0))
        throw std::domain_error("forward_rate_from_bonds: bond <= 0 in the stencil");
    const double dT = s.T_grid[j + 1] - s.T_grid[j - 1];
    return -(std::log(b_hi) - std::log(b_lo)) / dT;
}

double loan_rate_from_bonds(const BondSurface& s, double t, double T) {
    const Eigen::Index i = s.t_index(t);
    const Eigen::Index j = s.T_index(T);
    if (j == 0 || j == s.T_grid.size() - 1)
        throw std::domain_error("loan_rate_from_bonds: T must be interior to the grid");
    const double dT = s.T_grid[j + 1] - s.T_grid[j - 1];
    return -(s.at(i, j + 1) - s.at(i, j - 1)) / dT;
}

double diagonal_rate_from_bonds(const BondSurface& s, double t) {
    const Eigen::Index i = s.t_index(t);
    const Eigen::Index j = s.T_index(t);
    if (j + 1 >= s.T_grid.size())
        throw std::domain_error("diagonal_rate_from_bonds: no maturity beyond the diagonal");
    const double dT = s.T_grid[j + 1] - s.T_grid[j];
    return -(s.values(i, j + 1) - s.values(i, j)) / dT;
}

RateSurface rates_from_bonds(const BondSurface& s, RateSurface::Kind kind) {
    RateSurface out;
    out.kind = kind;
    out.t_grid = s.t_grid;
    out.T_grid = s.T_grid;
    out.values.setConstant(s.t_grid.size(), s.T_grid.size(), kNaN);
    const auto deriv = [&](Eigen::Index i, Eigen::Index j_lo, Eigen::Index j_hi) {
        const double dT = s.T_grid[j_hi] - s.T_grid[j_lo];
        if (kind == RateSurface::Kind::Loan)
            return -(s.values(i, j_hi) - s.values(i, j_lo)) / dT;
        if (!(s.values(i, j_hi) > 0.0) || !(s.values(i, j_lo) > 0.0))
            throw std::domain_error("rates_from_bonds: bond <= 0 in a forward-rate stencil");
        return -(std::log(s.values(i, j_hi)) - std::log(s.values(i, j_lo))) / dT;
    };
    for (Eigen::Index i = 0; i < s.t_grid.size(); ++i) {
        for (Eigen::Index j = 0; j < s.T_grid.size(); ++j) {
            if (!s.defined(i, j))
                continue;
            const bool lo_ok = j > 0 && s.defined(i, j - 1);
            const bool hi_ok = j + 1 < s.T_grid.size();
            if (lo_ok && hi_ok)
                out.values(i, j) = deriv(i, j - 1, j + 1);
            else if (hi_ok)
                out.values(i, j) = deriv(i, j, j + 1);
            else if (lo_ok)
                out.values(i, j) = deriv(i, j - 1, j);
        }
    }
    return out;
}

BondSurface bonds_from_loan_rates(const RateSurface& rates) {
    if (rates.kind != RateSurface::Kind::Loan)
        throw std::invalid_argument("bonds_from_loan_rates: surface kind must be loan rates");
    BondSurface out;
    out.t_grid = rates.t_grid;
    out.T_grid = rates.T_grid;
    out.values.setConstant(rates.t_grid.size(), rates.T_grid.size(), kNaN);
    for (Eigen::Index i = 0; i < rates.t_grid.size(); ++i) {
        const Eigen::Index j0 = locate(rates.T_grid, rates.t_grid[i],
                                       "bonds_from_loan_rates: t node on maturity grid");
        double integral = 0.0;
        out.values(i, j0) = 1.0;
        for (Eigen::Index j = j0 + 1; j < rates.T_grid.size(); ++j) {
            const double dT = rates.T_grid[j] - rates.T_grid[j - 1];
            integral += 0.5 * (rates.values(i, j - 1) + rates.values(i, j)) * dT;
            out.values(i, j) = 1.0 - integral;
        }
    }
    return out;
}

double forward_libor(const RateSurface& rates, double t, double tau, double delta) {
    if (!(delta > 0.0))
        throw std::invalid_argument("forward_libor: tenor must be > 0");
    const Eigen::Index i = rates.t_index(t);
    const double lo = t + tau;
    const double hi = t + tau + delta;
    const Eigen::VectorXd& Ts = rates.T_grid;
    if (lo < Ts[0] - 1e-12 || hi > Ts[Ts.size() - 1] + 1e-12)
        throw std::domain_error("forward_libor: window outside the maturity grid");
    // exact integral of the piecewise-linear interpolant of l(t, .)
    const auto value_at = [&](double T) {
        if (T <= Ts[0])
            return rates.values(i, 0);
        if (T >= Ts[Ts.size() - 1])
            return rates.values(i, Ts.size() - 1);
        Eigen::Index j = 0;
        while (T > Ts[j + 1])
            ++j;
        const double w = (T - Ts[j]) / (Ts[j + 1] - Ts[j]);
        return (1.0 - w) * rates.values(i, j) + w * rates.values(i, j + 1);
    };
    double integral = 0.0;
    double x_prev = lo;
    double v_prev = value_at(lo);
    for (Eigen::Index j = 0; j < Ts.size(); ++j) {
        if (Ts[j] <= lo + 1e-15 || Ts[j] >= hi - 1e-15)
            continue;
        integral += 0.5 * (v_prev + rates.values(i, j)) * (Ts[j] - x_prev);
        x_prev = Ts[j];
        v_prev = rates.values(i, j);
    }
    integral += 0.5 * (v_prev + value_at(hi)) * (hi - x_prev);
    return integral / delta;
}

double HjmPaths::bond(long path, int step, Eigen::Index maturity) const {
    if (maturity < step)
        throw std::domain_error("HjmPaths::bond: maturity precedes the step time");
    const double dT = T_grid[1] - T_grid[0];
    double integral = 0.0;
    for (Eigen::Index j = step; j < maturity; ++j)
        integral += 0.5 * (curves[static_cast<std::size_t>(step)](path, j) +
                           curves[static_cast<std::size_t>(step)](path, j + 1)) *
                    dT;
    return std::exp(-integral);
}

RateSurface HjmPaths::surface(long path) const {
    RateSurface s;
    s.kind = RateSurface::Kind::Forward;
    s.t_grid = times;
    s.T_grid = T_grid;
    s.values.setConstant(times.size(), T_grid.size(), kNaN);
    for (int k = 0; k < static_cast<int>(times.size()); ++k)
        for (Eigen::Index j = k; j < T_grid.size(); ++j)
            s.values(k, j) = curves[static_cast<std::size_t>(k)](path, j);
    return s;
}

HjmPaths hjm_simulate_forward(const CoefficientFn& sigma_f, const Eigen::VectorXd& T_grid,
                              const Eigen::VectorXd& f0, const sim::SimConfig& cfg) {
    cfg.validate();
    require_uniform_from_zero(T_grid, "hjm_simulate_forward");
    if (f0.size() != T_grid.size())
        throw std::invalid_argument("hjm_simulate_forward: initial curve size mismatch");
    const int n_steps = implied_steps(T_grid, cfg, "hjm_simulate_forward");
    const double dt = T_grid[1] - T_grid[0];
    const double sqrt_dt = std::sqrt(dt);
    const long n_paths = cfg.n_paths;
    const Eigen::Index n_T = T_grid.size();

    HjmPaths out;
    out.T_grid = T_grid;
    out.times = T_grid.head(n_steps + 1);
    out.brownian.resize(n_paths, n_steps);
    out.curves.assign(static_cast<std::size_t>(n_steps) + 1,
                      Eigen::MatrixXd::Zero(n_paths, n_T));
    for (long p = 0; p < n_paths; ++p)
        out.curves[0].row(p) = f0.transpose();

    sim::for_blocks(static_cast<std::size_t>(n_paths), 1024,
                    [&](std::size_t, std::size_t begin, std::size_t end) {
                        std::vector<double> sigma(n_T);
                        for (std::size_t p = begin; p < end; ++p) {
                            sim::PathRng rng(cfg.seed, p);
                            Eigen::VectorXd curve = f0;
                            for (int k = 0; k < n_steps; ++k) {
                                const double t = T_grid[k];
                                const double dB = sqrt_dt * rng.next_normal();
                                out.brownian(static_cast<long>(p), k) = dB;
                                for (Eigen::Index j = 0; j < n_T; ++j)
                                    sigma[j] = sigma_f(T_grid[j], t);
                                // sigma_star(t, T_j) by running trapezoid from T = t
                                double star = 0.0;
                                for (Eigen::Index j = k + 1; j < n_T; ++j) {
                                    star += 0.5 * (sigma[j - 1] + sigma[j]) * dt;
                                    curve[j] += sigma[j] * star * dt + sigma[j] * dB;
                                }
                                out.curves[static_cast<std::size_t>(k) + 1].row(
                                    static_cast<long>(p)) = curve.transpose();
                            }
                        }
                    });
    return out;
}

void BhjmSpec::validate() const {
    require_uniform_from_zero(T_grid, "BhjmSpec");
    if (initial_curve.size() != T_grid.size())
        throw std::invalid_argument("BhjmSpec: initial curve size mismatch");
    if (!initial_curve.allFinite())
        throw std::invalid_argument("BhjmSpec: initial curve must be finite");
    if (!sigma_fn && !(sigma_ell > 0.0))
        throw std::invalid_argument("BhjmSpec: sigma_ell must be > 0");
}

double BhjmPaths::bond(long path, int step, Eigen::Index maturity) const {
    if (maturity < step)
        throw std::domain_error("BhjmPaths::bond: maturity precedes the step time");
    const double dT = T_grid[1] - T_grid[0];
    const auto& curve = loan_curves[static_cast<std::size_t>(step)];
    double integral = 0.0;
    for (Eigen::Index j = step; j < maturity; ++j)
        integral += 0.5 * (curve(path, j) + curve(path, j + 1)) * dT;
    return 1.0 - integral;
}

RateSurface BhjmPaths::loan_surface(long path) const {
    RateSurface s;
    s.kind = RateSurface::Kind::Loan;
    s.t_grid = times;
    s.T_grid = T_grid;
    s.values.setConstant(times.size(), T_grid.size(), kNaN);
    for (int k = 0; k < static_cast<int>(times.size()); ++k)
        for (Eigen::Index j = k; j < T_grid.size(); ++j)
            s.values(k, j) = loan_curves[static_cast<std::size_t>(k)](path, j);
    return s;
}

BondSurface BhjmPaths::bond_surface(long path) const {
    BondSurface s;
    s.t_grid = times;
    s.T_grid = T_grid;
    s.values.setConstant(times.size(), T_grid.size(), kNaN);
    for (int k = 0; k < static_cast<int>(times.size()); ++k)
        for (Eigen::Index j = k; j < T_grid.size(); ++j)
            s.values(k, j) = bond(path, k, j);
    return s;
}

BhjmPaths bhjm_simulate(const BhjmSpec& spec, const sim::SimConfig& cfg, sim::Measure measure) {
    cfg.validate();
    spec.validate();
    if (measure == sim::Measure::Physical && !spec.theta_ell)
        throw std::invalid_argument("bhjm_simulate: physical measure needs theta_ell");
    const int n_steps = implied_steps(spec.T_grid, cfg, "bhjm_simulate");
    const double dt = spec.T_grid[1] - spec.T_grid[0];
    const double sqrt_dt = std::sqrt(dt);
    const long n_paths = cfg.n_paths;
    const Eigen::Index n_T = spec.T_grid.size();
    const double theta = measure == sim::Measure::Physical ? *spec.theta_ell : 0.0;

    BhjmPaths out;
    out.T_grid = spec.T_grid;
    out.times = spec.T_grid.head(n_steps + 1);
    out.brownian.resize(n_paths, n_steps);
    out.short_rate.resize(n_paths, n_steps + 1);
    out.rate_integrals.resize(n_paths);
    out.loan_curves.assign(static_cast<std::size_t>(n_steps) + 1,
                           Eigen::MatrixXd::Zero(n_paths, n_T));
    for (long p = 0; p < n_paths; ++p)
        out.loan_curves[0].row(p) = spec.initial_curve.transpose();

    sim::for_blocks(
        static_cast<std::size_t>(n_paths), 1024,
        [&](std::size_t, std::size_t begin, std::size_t end) {
            for (std::size_t p = begin; p < end; ++p) {
                sim::PathRng rng(cfg.seed, p);
                Eigen::VectorXd curve = spec.initial_curve;
                out.short_rate(static_cast<long>(p), 0) = curve[0];
                double r_prev = curve[0];
                double r_int = 0.0;
                for (int k = 0; k < n_steps; ++k) {
                    const double t = spec.T_grid[k];
                    const double dB = sqrt_dt * rng.next_normal();
                    out.brownian(static_cast<long>(p), k) = dB;
                    for (Eigen::Index j = k + 1; j < n_T; ++j) {
                        const double sig = spec.sigma_fn ? (*spec.sigma_fn)(spec.T_grid[j], t)
                                                         : spec.sigma_ell * curve[j];
                        curve[j] += theta * sig * dt + sig * dB;
                    }
                    out.loan_curves[static_cast<std::size_t>(k) + 1].row(static_cast<long>(p)) =
                        curve.transpose();
                    const double r_next = curve[k + 1];
                    out.short_rate(static_cast<long>(p), k + 1) = r_next;
                    r_int += 0.5 * (r_prev + r_next) * dt;
                    r_prev = r_next;
                }
                out.rate_integrals[static_cast<long>(p)] = r_int;
            }
        });
    return out;
}

BondSurface hw_curve(const analytic::HullWhiteParams& p, const Eigen::VectorXd& t_grid,
                     const Eigen::VectorXd& T_grid,
                     const std::optional<Eigen::VectorXd>& r_values) {
    BondSurface out;
    out.t_grid = t_grid;
    out.T_grid = T_grid;
    out.values.setConstant(t_grid.size(), T_grid.size(), kNaN);
    for (Eigen::Index i = 0; i < t_grid.size(); ++i) {
        double r_t;
        if (t_grid[i] == 0.0) {
            r_t = p.r0;
        } else {
            if (!r_values || r_values->size() != t_grid.size())
                throw std::invalid_argument(
                    "hw_curve: rows with t > 0 need a supplied short-rate value per t node");
            r_t = (*r_values)[i];
        }
        for (Eigen::Index j = 0; j < T_grid.size(); ++j)
            if (T_grid[j] >= t_grid[i] - 1e-12)
                out.values(i, j) =
                    analytic::hw_bond_price(p, r_t, t_grid[i], std::max(t_grid[i], T_grid[j]));
    }
    return out;
}

namespace {

void write_surface_csv(const Eigen::VectorXd& ts, const Eigen::VectorXd& Ts,
                       const Eigen::MatrixXd& values, const char* kind, std::ostream& out) {
    out << "# kind: " << kind << "\n";
    out << "t,T,value\n";
    char buf[120];
    for (Eigen::Index i = 0; i < ts.size(); ++i)
        for (Eigen::Index j = 0; j < Ts.size(); ++j) {
            if (std::isnan(values(i, j)))
                continue;
            std::snprintf(buf, sizeof buf, "%.9g,%.9g,%.9g\n", ts[i], Ts[j], values(i, j));
            out << buf;
        }
}

} // namespace

void write_csv(const BondSurface& s, std::ostream& out) {
    write_surface_csv(s.t_grid, s.T_grid, s.values, "bond", out);
}

void write_csv(const RateSurface& s, std::ostream& out) {
    write_surface_csv(s.t_grid, s.T_grid, s.values, s.kind == RateSurface::Kind::Loan ? "loan" : "forward",
                      out);
}

} // namespace bachelier::curve
