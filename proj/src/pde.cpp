#include "bachelier/pde.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace bachelier::pde {

namespace {

// Thomas solve of a tridiagonal system; diag/rhs are overwritten.
void solve_tridiagonal(Eigen::VectorXd& lower, Eigen::VectorXd& diag, Eigen::VectorXd& upper,
                       Eigen::VectorXd& rhs, Eigen::VectorXd& out) {
    const Eigen::Index n = diag.size();
    for (Eigen::Index i = 1; i < n; ++i) {
        const double w = lower[i] / diag[i - 1];
        diag[i] -= w * upper[i - 1];
        rhs[i] -= w * rhs[i - 1];
    }
    out[n - 1] = rhs[n - 1] / diag[n - 1];
    for (Eigen::Index i = n - 2; i >= 0; --i)
        out[i] = (rhs[i] - upper[i] * out[i + 1]) / diag[i];
}

struct OperatorRows {
    // L f = lo f_{j-1} + di f_j + up f_{j+1}; boundary rows use the
    // linearity condition f_xx = 0 with a one-sided first derivative.
    Eigen::VectorXd lo, di, up, source;
};

OperatorRows build_rows(const CauchySpec& spec, const Eigen::VectorXd& xs, double t) {
    const Eigen::Index n = xs.size();
    const double dx = xs[1] - xs[0];
    OperatorRows rows;
    rows.lo.resize(n);
    rows.di.resize(n);
    rows.up.resize(n);
    rows.source.resize(n);
    for (Eigen::Index j = 0; j < n; ++j) {
        const double x = xs[j];
        const double mu = spec.mu(x, t);
        const double sig = spec.sigma(x, t);
        const double af = spec.a(x, t);
        rows.source[j] = spec.h(x, t);
        if (j == 0) {
            rows.lo[j] = 0.0;
            rows.di[j] = -mu / dx - af;
            rows.up[j] = mu / dx;
        } else if (j == n - 1) {
            rows.lo[j] = -mu / dx;
            rows.di[j] = mu / dx - af;
            rows.up[j] = 0.0;
        } else {
            const double diff = 0.5 * sig * sig / (dx * dx);
            const double conv = 0.5 * mu / dx;
            rows.lo[j] = diff - conv;
            rows.di[j] = -2.0 * diff - af;
            rows.up[j] = diff + conv;
        }
    }
    return rows;
}

bool diagonally_dominant(const OperatorRows& rows, double theta, double dt) {
    const Eigen::Index n = rows.di.size();
    for (Eigen::Index j = 0; j < n; ++j) {
        const double diag = 1.0 - theta * dt * rows.di[j];
        const double off =
            std::abs(theta * dt * rows.lo[j]) + std::abs(theta * dt * rows.up[j]);
        if (std::abs(diag) < off)
            return false;
    }
    return true;
}

PdeSolution run_scheme(const CauchySpec& spec, const GridSpec& grid, double theta,
                       bool* lost_dominance) {
    const int n_x = grid.n_x;
    const int n_t = grid.n_t;
    PdeSolution sol;
    sol.grid = grid;
    sol.xs.resize(n_x);
    for (int j = 0; j < n_x; ++j)
        sol.xs[j] = grid.x_min + (grid.x_max - grid.x_min) * j / (n_x - 1);
    sol.times.resize(n_t + 1);
    for (int i = 0; i <= n_t; ++i)
        sol.times[i] = spec.T * i / n_t;
    sol.surface.resize(n_t + 1, n_x);
    for (int j = 0; j < n_x; ++j)
        sol.surface(n_t, j) = spec.terminal(sol.xs[j]);

    const double dt = spec.T / n_t;
    Eigen::VectorXd lower(n_x), diag(n_x), upper(n_x), rhs(n_x), next(n_x);
    OperatorRows rows_new = build_rows(spec, sol.xs, sol.times[n_t]);
    *lost_dominance = false;

    for (int i = n_t - 1; i >= 0; --i) {
        const bool startup = (n_t - 1 - i) < grid.rannacher_steps;
        const double th = (startup && theta < 1.0) ? 1.0 : theta;
        OperatorRows rows_old = rows_new; // operator at t_{i+1}
        rows_new = build_rows(spec, sol.xs, sol.times[i]);
        if (!diagonally_dominant(rows_new, th, dt))
            *lost_dominance = true;

        const auto prev = sol.surface.row(i + 1);
        for (int j = 0; j < n_x; ++j) {
            double explicit_part = prev[j];
            if (th < 1.0) {
                const double w = (1.0 - th) * dt;
                double lf = rows_old.di[j] * prev[j];
                if (j > 0)
                    lf += rows_old.lo[j] * prev[j - 1];
                if (j < n_x - 1)
                    lf += rows_old.up[j] * prev[j + 1];
                explicit_part += w * (lf + rows_old.source[j]);
            }
            explicit_part += th * dt * rows_new.source[j];
            rhs[j] = explicit_part;
            lower[j] = -th * dt * rows_new.lo[j];
            diag[j] = 1.0 - th * dt * rows_new.di[j];
            upper[j] = -th * dt * rows_new.up[j];
        }
        solve_tridiagonal(lower, diag, upper, rhs, next);
        sol.surface.row(i) = next;
    }
    return sol;
}

} // namespace

void GridSpec::validate() const {
    if (!(x_max > x_min))
        throw std::invalid_argument("GridSpec: xMax must exceed xMin");
    if (n_x < 3)
        throw std::invalid_argument("GridSpec: nX must be >= 3");
    if (n_t < 1)
        throw std::invalid_argument("GridSpec: nT must be >= 1");
    if (theta < 0.0 || theta > 1.0)
        throw std::invalid_argument("GridSpec: theta must lie in [0,1]");
}

double PdeSolution::value_at(double x, double t) const {
    if (x < xs[0] || x > xs[xs.size() - 1])
        throw std::domain_error("PdeSolution: x outside the grid");
    if (t < 0.0 || t > times[times.size() - 1] * (1.0 + 1e-12))
        throw std::domain_error("PdeSolution: t outside [0, T]");
    const double dt = times[1] - times[0];
    const double dx = xs[1] - xs[0];
    const auto clamp_cell = [](double w, Eigen::Index n) {
        Eigen::Index i = static_cast<Eigen::Index>(std::floor(w));
        if (i < 0)
            i = 0;
        if (i > n - 2)
            i = n - 2;
        return i;
    };
    const Eigen::Index i = clamp_cell(t / dt, times.size());
    const Eigen::Index j = clamp_cell((x - xs[0]) / dx, xs.size());
    const double wt = (t - times[i]) / dt;
    const double wx = (x - xs[j]) / dx;
    return (1 - wt) * ((1 - wx) * surface(i, j) + wx * surface(i, j + 1)) +
           wt * ((1 - wx) * surface(i + 1, j) + wx * surface(i + 1, j + 1));
}

PdeSolution solve_cauchy(const CauchySpec& spec, const GridSpec& grid) {
    grid.validate();
    if (!(spec.T > 0.0))
        throw std::invalid_argument("solve_cauchy: T must be > 0");
    // sigma must be positive on the solve domain (sampled)
    for (int j = 0; j < 16; ++j) {
        const double x = grid.x_min + (grid.x_max - grid.x_min) * j / 15.0;
        if (!(spec.sigma(x, 0.0) > 0.0) || !(spec.sigma(x, spec.T) > 0.0))
            throw std::invalid_argument("solve_cauchy: sigma must be > 0 on the domain");
    }
    bool lost = false;
    PdeSolution sol = run_scheme(spec, grid, grid.theta, &lost);
    if (lost && grid.theta < 1.0) {
        // retry fully implicit, which is unconditionally monotone
        sol = run_scheme(spec, grid, 1.0, &lost);
        sol.diagnostics["theta_switched_to_implicit"] = 1.0;
    }
    return sol;
}

CoefficientFn negate(const CoefficientFn& c) { return c.negated(); }

namespace {

analytic::PriceResult price_from_solution(const PdeSolution& sol, double spot,
                                          const char* mode) {
    analytic::PriceResult res;
    res.method = analytic::Method::Pde;
    res.value = sol.value_at(spot, 0.0);
    res.diagnostics["n_x"] = sol.grid.n_x;
    res.diagnostics["n_t"] = sol.grid.n_t;
    res.diagnostics["theta"] = sol.grid.theta;
    for (const auto& [k, v] : sol.diagnostics)
        res.diagnostics[k] = v;
    res.diagnostics[std::string("drift_mode_") + mode] = 1.0;
    return res;
}

} // namespace

analytic::PriceResult price_bachelier_pde(const MarketModel& model, const Payoff& payoff,
                                          double T, const GridSpec& grid, DriftMode mode) {
    if (model.a0() < grid.x_min || model.a0() > grid.x_max)
        throw std::domain_error("price_bachelier_pde: A0 outside the grid");
    CauchySpec spec{mode == DriftMode::RiskNeutral ? model.rate() : CoefficientFn::constant(0.0),
                    model.vol(), CoefficientFn::constant(0.0), negate(model.rate()), payoff, T};
    const PdeSolution sol = solve_cauchy(spec, grid);
    return price_from_solution(sol, model.a0(),
                               mode == DriftMode::RiskNeutral ? "risk_neutral" : "driftless");
}

analytic::PriceResult price_dividend_pde(const MarketModel& model, const Payoff& payoff,
                                         double T, const GridSpec& grid) {
    if (!model.dividend())
        throw std::invalid_argument("price_dividend_pde: model has no dividend rate");
    if (model.a0() < grid.x_min || model.a0() > grid.x_max)
        throw std::domain_error("price_dividend_pde: A0 outside the grid");
    CauchySpec spec{negate(*model.dividend()), model.vol(), CoefficientFn::constant(0.0),
                    negate(model.rate()), payoff, T};
    const PdeSolution sol = solve_cauchy(spec, grid);
    return price_from_solution(sol, model.a0(), "dividend");
}

double delta(const PdeSolution& solution, double x, double t) {
    const Eigen::Index n = solution.xs.size();
    if (x < solution.xs[0] || x > solution.xs[n - 1])
        throw std::domain_error("delta: x outside the grid");
    const double dx = solution.xs[1] - solution.xs[0];
    // nodal derivative at the two nodes bracketing x, then linear blend
    const auto nodal = [&](Eigen::Index j) {
        const auto row_value = [&](Eigen::Index jj) {
            return solution.value_at(solution.xs[jj], t);
        };
        if (j == 0)
            return (row_value(1) - row_value(0)) / dx;
        if (j == n - 1)
            return (row_value(n - 1) - row_value(n - 2)) / dx;
        return (row_value(j + 1) - row_value(j - 1)) / (2.0 * dx);
    };
    Eigen::Index j = static_cast<Eigen::Index>(std::floor((x - solution.xs[0]) / dx));
    if (j > n - 2)
        j = n - 2;
    const double w = (x - solution.xs[j]) / dx;
    if (w == 0.0)
        return nodal(j);
    return (1.0 - w) * nodal(j) + w * nodal(j + 1);
}

GridSpec default_grid(const MarketModel& model, double T) {
    const double v0 = model.vol()(model.a0(), 0.0);
    const double spread = std::max(8.0 * v0 * std::sqrt(T), 1e-8);
    GridSpec g;
    g.x_min = model.a0() - spread;
    g.x_max = model.a0() + spread;
    g.n_x = 801;
    g.n_t = 200;
    return g;
}

void write_csv(const PdeSolution& solution, std::ostream& out) {
    out << "t,x,f\n";
    char buf[120];
    for (Eigen::Index i = 0; i < solution.times.size(); ++i)
        for (Eigen::Index j = 0; j < solution.xs.size(); ++j) {
            std::snprintf(buf, sizeof buf, "%.9g,%.9g,%.9g\n", solution.times[i], solution.xs[j],
                          solution.surface(i, j));
            out << buf;
        }
}

} // namespace bachelier::pde
