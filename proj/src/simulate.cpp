#include "bachelier/simulate.hpp"

#include <cmath>
#include <cstdio>
#include <vector>

#include "bachelier/parallel.hpp"
#include "bachelier/rng.hpp"

namespace bachelier::sim {

namespace {

constexpr std::size_t kBlock = 4096;

Eigen::VectorXd time_grid(const SimConfig& cfg) {
    Eigen::VectorXd times(cfg.n_steps + 1);
    for (int k = 0; k <= cfg.n_steps; ++k)
        times[k] = cfg.time_at(k);
    return times;
}

// Euler walk of dX = drift dt + vol dB recording every step and, when `rate`
// is non-null, the trapezoid of rate(X_s, s) along the path.
void euler_paths(const CoefficientFn& drift, const CoefficientFn& vol, const CoefficientFn* rate,
                 double x0, const SimConfig& cfg, PathSet& out) {
    const double dt = cfg.dt();
    const double sqrt_dt = std::sqrt(dt);
    const bool fast = drift.is_constant() && vol.is_constant() && (!rate || rate->is_constant());
    const double cdrift = drift.is_constant() ? drift.constant_value() : 0.0;
    const double cvol = vol.is_constant() ? vol.constant_value() : 0.0;
    const double crate = rate && rate->is_constant() ? rate->constant_value() : 0.0;

    for_blocks(static_cast<std::size_t>(cfg.n_paths), kBlock,
               [&](std::size_t, std::size_t begin, std::size_t end) {
                   for (std::size_t p = begin; p < end; ++p) {
                       PathRng rng(cfg.seed, p);
                       double x = x0;
                       double r_int = 0.0;
                       out.values(static_cast<long>(p), 0) = x;
                       if (fast) {
                           for (int k = 0; k < cfg.n_steps; ++k) {
                               x += cdrift * dt + cvol * sqrt_dt * rng.next_normal();
                               out.values(static_cast<long>(p), k + 1) = x;
                           }
                           r_int = crate * (cfg.t_end - cfg.t_start);
                       } else {
                           double r_prev = rate ? (*rate)(x, cfg.t_start) : 0.0;
                           for (int k = 0; k < cfg.n_steps; ++k) {
                               const double t = cfg.time_at(k);
                               x += drift(x, t) * dt + vol(x, t) * sqrt_dt * rng.next_normal();
                               out.values(static_cast<long>(p), k + 1) = x;
                               if (rate) {
                                   const double r_next = (*rate)(x, cfg.time_at(k + 1));
                                   r_int += 0.5 * (r_prev + r_next) * dt;
                                   r_prev = r_next;
                               }
                           }
                       }
                       if (rate)
                           out.integrals[static_cast<long>(p)] = r_int;
                   }
               });
}

} // namespace

PathSet simulate_asset(const MarketModel& model, const SimConfig& cfg, Measure measure) {
    cfg.validate();
    PathSet out;
    out.config = cfg;
    out.times = time_grid(cfg);
    out.values.resize(cfg.n_paths, cfg.n_steps + 1);
    out.integrals.resize(cfg.n_paths);
    out.model_id = measure == Measure::Physical ? "asset:P" : "asset:Q";
    const CoefficientFn& drift = measure == Measure::Physical ? model.rho() : model.rate();
    euler_paths(drift, model.vol(), &model.rate(), model.a0(), cfg, out);
    return out;
}

PathSet simulate_fk_diffusion(const CoefficientFn& vol, const CoefficientFn& drift, double x0,
                              const SimConfig& cfg) {
    cfg.validate();
    PathSet out;
    out.config = cfg;
    out.times = time_grid(cfg);
    out.values.resize(cfg.n_paths, cfg.n_steps + 1);
    out.model_id = "fk";
    euler_paths(drift, vol, nullptr, x0, cfg, out);
    return out;
}

PathSet simulate_hw_rate(const analytic::HullWhiteParams& params, const SimConfig& cfg) {
    cfg.validate();
    const double dt = cfg.dt();
    const double sqrt_dt = std::sqrt(dt);
    const int n = cfg.n_steps;

    PathSet out;
    out.config = cfg;
    out.times = time_grid(cfg);
    out.values.resize(cfg.n_paths, n + 1);
    out.integrals.resize(cfg.n_paths);
    out.model_id = "hw";

    // Per-step transition tables are path independent.
    std::vector<double> mult(n), add(n), sd(n);
    if (cfg.scheme == Scheme::ExactWhereAvailable) {
        if (!params.piecewise_constant())
            throw std::invalid_argument("simulate_hw_rate: exact scheme needs piecewise-constant parameters");
        for (int k = 0; k < n; ++k) {
            const double t0 = out.times[k], t1 = out.times[k + 1];
            if (!(params.b(0.0, 0.5 * (t0 + t1)) > 0.0) || !(params.v(0.0, 0.5 * (t0 + t1)) > 0.0))
                throw std::invalid_argument("simulate_hw_rate: exact scheme needs b > 0 and v > 0");
            const double bs0 = analytic::hw_b_star(params, t0);
            const double bs1 = analytic::hw_b_star(params, t1);
            mult[k] = std::exp(-(bs1 - bs0));
            // e^{-b*(t1)} * integral of e^{b*} a over the step
            double ea = 0.0, ev2 = 0.0;
            {
                // piecewise-constant within the step after breakpoint splitting
                std::vector<double> cuts{t0};
                for (double c : params.breakpoints(t0, t1))
                    cuts.push_back(c);
                cuts.push_back(t1);
                double bs = bs0;
                for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
                    const double mid = 0.5 * (cuts[i] + cuts[i + 1]);
                    const double len = cuts[i + 1] - cuts[i];
                    const double a = params.a(0.0, mid), b = params.b(0.0, mid),
                                 v = params.v(0.0, mid);
                    const double eb = std::exp(bs);
                    ea += a * eb * (b == 0.0 ? len : std::expm1(b * len) / b);
                    ev2 += v * v * eb * eb *
                           (b == 0.0 ? len : std::expm1(2.0 * b * len) / (2.0 * b));
                    bs += b * len;
                }
            }
            add[k] = std::exp(-bs1) * ea;
            sd[k] = std::exp(-bs1) * std::sqrt(ev2);
        }
    } else {
        for (int k = 0; k < n; ++k) {
            const double t = out.times[k];
            add[k] = params.a(0.0, t) * dt;
            mult[k] = 1.0 - params.b(0.0, t) * dt;
            sd[k] = params.v(0.0, t) * sqrt_dt;
        }
    }

    for_blocks(static_cast<std::size_t>(cfg.n_paths), kBlock,
               [&](std::size_t, std::size_t begin, std::size_t end) {
                   for (std::size_t p = begin; p < end; ++p) {
                       PathRng rng(cfg.seed, p);
                       double r = params.r0;
                       double r_int = 0.0;
                       out.values(static_cast<long>(p), 0) = r;
                       for (int k = 0; k < n; ++k) {
                           const double r_next = mult[k] * r + add[k] + sd[k] * rng.next_normal();
                           r_int += 0.5 * (r + r_next) * dt;
                           r = r_next;
                           out.values(static_cast<long>(p), k + 1) = r;
                       }
                       out.integrals[static_cast<long>(p)] = r_int;
                   }
               });
    return out;
}

void write_csv(const PathSet& paths, std::ostream& out) {
    const bool with_integral = paths.has_integrals();
    out << (with_integral ? "path,time,value,integral\n" : "path,time,value\n");
    char buf[160];
    for (long p = 0; p < paths.n_paths(); ++p) {
        for (int k = 0; k <= paths.n_steps(); ++k) {
            if (with_integral)
                std::snprintf(buf, sizeof buf, "%ld,%.9g,%.9g,%.9g\n", p, paths.times[k],
                              paths.values(p, k), paths.integrals[p]);
            else
                std::snprintf(buf, sizeof buf, "%ld,%.9g,%.9g\n", p, paths.times[k],
                              paths.values(p, k));
            out << buf;
        }
    }
}

} // namespace bachelier::sim
