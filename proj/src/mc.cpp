#include "bachelier/mc.hpp"

#include <cmath>
#include <vector>

#include "bachelier/parallel.hpp"
#include "bachelier/rng.hpp"

namespace bachelier::mc {

namespace {

constexpr std::size_t kBlock = 4096;

// Deterministic blocked mean/stderr: per-block pairwise sums combined in
// block order, so the result is independent of the worker count.
template <typename PerPath>
McEstimate estimate_mean(std::uint64_t seed, long n_paths, PerPath&& per_path) {
    const std::size_t n = static_cast<std::size_t>(n_paths);
    const std::size_t n_blocks = (n + kBlock - 1) / kBlock;
    std::vector<double> block_sum(n_blocks), block_sumsq(n_blocks);
    sim::for_blocks(n, kBlock, [&](std::size_t b, std::size_t begin, std::size_t end) {
        std::vector<double> vals(end - begin);
        for (std::size_t p = begin; p < end; ++p)
            vals[p - begin] = per_path(p);
        block_sum[b] = sim::pairwise_sum(vals);
        for (double& v : vals)
            v *= v;
        block_sumsq[b] = sim::pairwise_sum(vals);
    });
    const double sum = sim::pairwise_sum(block_sum);
    const double sumsq = sim::pairwise_sum(block_sumsq);
    McEstimate est;
    est.n_paths = n_paths;
    est.seed = seed;
    est.value = sum / static_cast<double>(n_paths);
    if (n_paths > 1) {
        const double var =
            std::max(0.0, (sumsq - sum * est.value) / static_cast<double>(n_paths - 1));
        est.stderr_value = std::sqrt(var / static_cast<double>(n_paths));
    }
    return est;
}

// Per-path terminal state and trapezoidal rate integral for an Euler walk of
// dX = mu dt + vol dB; rate may be null.
struct WalkSpec {
    const CoefficientFn* mu;
    const CoefficientFn* vol;
    const CoefficientFn* rate;
    double x0;
    sim::SimConfig cfg;
};

struct WalkResult {
    double terminal;
    double rate_integral;
};

template <bool kFast>
WalkResult walk_one(const WalkSpec& w, std::size_t path, double cmu, double cvol, double crate) {
    sim::PathRng rng(w.cfg.seed, path);
    const double dt = w.cfg.dt();
    const double sqrt_dt = std::sqrt(dt);
    double x = w.x0;
    if constexpr (kFast) {
        const double drift_dt = cmu * dt;
        const double vol_sq = cvol * sqrt_dt;
        for (int k = 0; k < w.cfg.n_steps; ++k)
            x += drift_dt + vol_sq * rng.next_normal();
        return {x, crate * (w.cfg.t_end - w.cfg.t_start)};
    } else {
        double r_int = 0.0;
        double r_prev = w.rate ? (*w.rate)(x, w.cfg.t_start) : 0.0;
        for (int k = 0; k < w.cfg.n_steps; ++k) {
            const double t = w.cfg.time_at(k);
            x += (*w.mu)(x, t) * dt + (*w.vol)(x, t) * sqrt_dt * rng.next_normal();
            if (w.rate) {
                const double r_next = (*w.rate)(x, w.cfg.time_at(k + 1));
                r_int += 0.5 * (r_prev + r_next) * dt;
                r_prev = r_next;
            }
        }
        return {x, r_int};
    }
}

template <typename ValueFn>
McEstimate walk_estimate(const WalkSpec& w, ValueFn&& value_of) {
    w.cfg.validate();
    const bool fast = w.mu->is_constant() && w.vol->is_constant() &&
                      (!w.rate || w.rate->is_constant());
    const double cmu = w.mu->is_constant() ? w.mu->constant_value() : 0.0;
    const double cvol = w.vol->is_constant() ? w.vol->constant_value() : 0.0;
    const double crate = w.rate && w.rate->is_constant() ? w.rate->constant_value() : 0.0;
    if (fast)
        return estimate_mean(w.cfg.seed, w.cfg.n_paths, [&](std::size_t p) {
            return value_of(walk_one<true>(w, p, cmu, cvol, crate));
        });
    return estimate_mean(w.cfg.seed, w.cfg.n_paths, [&](std::size_t p) {
        return value_of(walk_one<false>(w, p, cmu, cvol, crate));
    });
}

} // namespace

McEstimate fk_price(const pde::CauchySpec& spec, double x0, double t0,
                    const sim::SimConfig& cfg) {
    sim::SimConfig run = cfg;
    run.t_start = t0;
    run.t_end = spec.T;
    run.validate();
    const double dt = run.dt();
    const double sqrt_dt = std::sqrt(dt);
    const int n = run.n_steps;

    if (spec.a.time_only() && spec.h.time_only()) {
        // discount and source are path independent: tabulate once
        std::vector<double> phi(n + 1), h(n + 1);
        double a_int = 0.0;
        double a_prev = spec.a(0.0, run.time_at(0));
        phi[0] = 1.0;
        h[0] = spec.h(0.0, run.time_at(0));
        for (int k = 1; k <= n; ++k) {
            const double a_next = spec.a(0.0, run.time_at(k));
            a_int += 0.5 * (a_prev + a_next) * dt;
            a_prev = a_next;
            phi[k] = std::exp(-a_int);
            h[k] = spec.h(0.0, run.time_at(k));
        }
        double source = 0.0;
        for (int k = 0; k < n; ++k)
            source += 0.5 * (phi[k] * h[k] + phi[k + 1] * h[k + 1]) * dt;
        const double phi_T = phi[n];

        const bool fast = spec.mu.is_constant() && spec.sigma.is_constant();
        const double cmu = spec.mu.is_constant() ? spec.mu.constant_value() : 0.0;
        const double csig = spec.sigma.is_constant() ? spec.sigma.constant_value() : 0.0;
        auto per_path = [&](auto fast_tag, std::size_t p) {
            sim::PathRng rng(run.seed, p);
            double x = x0;
            if constexpr (decltype(fast_tag)::value) {
                for (int k = 0; k < n; ++k)
                    x += cmu * dt + csig * sqrt_dt * rng.next_normal();
            } else {
                for (int k = 0; k < n; ++k) {
                    const double t = run.time_at(k);
                    x += spec.mu(x, t) * dt + spec.sigma(x, t) * sqrt_dt * rng.next_normal();
                }
            }
            return source + phi_T * spec.terminal(x);
        };
        if (fast)
            return estimate_mean(run.seed, run.n_paths, [&](std::size_t p) {
                return per_path(std::true_type{}, p);
            });
        return estimate_mean(run.seed, run.n_paths, [&](std::size_t p) {
            return per_path(std::false_type{}, p);
        });
    }

    // state-dependent discount or source: accumulate both along each path
    return estimate_mean(run.seed, run.n_paths, [&](std::size_t p) {
        sim::PathRng rng(run.seed, p);
        double x = x0;
        double a_int = 0.0;
        double phi_prev = 1.0;
        double a_prev = spec.a(x, run.time_at(0));
        double h_prev = spec.h(x, run.time_at(0));
        double source = 0.0;
        for (int k = 0; k < n; ++k) {
            const double t = run.time_at(k);
            x += spec.mu(x, t) * dt + spec.sigma(x, t) * sqrt_dt * rng.next_normal();
            const double t1 = run.time_at(k + 1);
            const double a_next = spec.a(x, t1);
            a_int += 0.5 * (a_prev + a_next) * dt;
            const double phi_next = std::exp(-a_int);
            const double h_next = spec.h(x, t1);
            source += 0.5 * (phi_prev * h_prev + phi_next * h_next) * dt;
            a_prev = a_next;
            phi_prev = phi_next;
            h_prev = h_next;
        }
        return source + phi_prev * spec.terminal(x);
    });
}

McEstimate price_ecc_riskneutral(const MarketModel& model, const Payoff& payoff, double T,
                                 const sim::SimConfig& cfg) {
    sim::SimConfig run = cfg;
    run.t_end = run.t_start + T;
    WalkSpec w{&model.rate(), &model.vol(), &model.rate(), model.a0(), run};
    return walk_estimate(w, [&](const WalkResult& r) {
        return payoff(r.terminal) - r.rate_integral;
    });
}

McEstimate price_ecc_dividend(const MarketModel& model, const Payoff& payoff, double T,
                              const sim::SimConfig& cfg) {
    if (!model.dividend())
        throw std::invalid_argument("price_ecc_dividend: model has no dividend rate");
    sim::SimConfig run = cfg;
    run.t_end = run.t_start + T;
    const CoefficientFn minus_div = model.dividend()->negated();
    WalkSpec w{&minus_div, &model.vol(), &model.rate(), model.a0(), run};
    return walk_estimate(w, [&](const WalkResult& r) {
        return payoff(r.terminal) - r.rate_integral;
    });
}

McEstimate price_gain_security(const Payoff& terminal, const CoefficientFn& dividend_stream,
                               const MarketModel& model, double T, const sim::SimConfig& cfg) {
    sim::SimConfig run = cfg;
    run.t_end = run.t_start + T;
    run.validate();
    const double dt = run.dt();
    const double sqrt_dt = std::sqrt(dt);
    const int n = run.n_steps;
    const CoefficientFn& rate = model.rate();
    const CoefficientFn& vol = model.vol();
    return estimate_mean(run.seed, run.n_paths, [&](std::size_t p) {
        sim::PathRng rng(run.seed, p);
        double x = model.a0();
        double r_prev = rate(x, run.time_at(0));
        double d_prev = dividend_stream(x, run.time_at(0));
        double r_int = 0.0, d_int = 0.0;
        for (int k = 0; k < n; ++k) {
            const double t = run.time_at(k);
            x += rate(x, t) * dt + vol(x, t) * sqrt_dt * rng.next_normal();
            const double t1 = run.time_at(k + 1);
            const double r_next = rate(x, t1);
            const double d_next = dividend_stream(x, t1);
            r_int += 0.5 * (r_prev + r_next) * dt;
            d_int += 0.5 * (d_prev + d_next) * dt;
            r_prev = r_next;
            d_prev = d_next;
        }
        return terminal(x) + d_int - r_int;
    });
}

BondMcResult bond_price_mc(const MarketModel& model, double t, double T,
                           const sim::SimConfig& cfg) {
    if (t > T)
        throw std::invalid_argument("bond_price_mc: need t <= T");
    BondMcResult out;
    if (t == T) {
        out.estimate = McEstimate{1.0, 0.0, cfg.n_paths, cfg.seed};
        return out;
    }
    sim::SimConfig run = cfg;
    run.t_start = t;
    run.t_end = T;
    run.validate();
    const double dt = run.dt();
    const double sqrt_dt = std::sqrt(dt);
    const int n = run.n_steps;
    const CoefficientFn& rate = model.rate();
    const CoefficientFn& vol = model.vol();

    const std::size_t n_paths = static_cast<std::size_t>(run.n_paths);
    std::vector<double> r_ints(n_paths), brownian(n_paths);
    sim::for_blocks(n_paths, kBlock, [&](std::size_t, std::size_t begin, std::size_t end) {
        for (std::size_t p = begin; p < end; ++p) {
            sim::PathRng rng(run.seed, p);
            double x = model.a0();
            double w_total = 0.0;
            double r_prev = rate(x, run.time_at(0));
            double r_int = 0.0;
            for (int k = 0; k < n; ++k) {
                const double tk = run.time_at(k);
                const double dw = sqrt_dt * rng.next_normal();
                x += rate(x, tk) * dt + vol(x, tk) * dw;
                w_total += dw;
                const double r_next = rate(x, run.time_at(k + 1));
                r_int += 0.5 * (r_prev + r_next) * dt;
                r_prev = r_next;
            }
            r_ints[p] = r_int;
            brownian[p] = w_total;
        }
    });

    std::vector<double> values(n_paths);
    for (std::size_t p = 0; p < n_paths; ++p)
        values[p] = 1.0 - r_ints[p];
    const double mean = sim::pairwise_sum(values) / static_cast<double>(n_paths);
    double var = 0.0;
    for (double v : values)
        var += (v - mean) * (v - mean);
    var = n_paths > 1 ? var / static_cast<double>(n_paths - 1) : 0.0;
    out.estimate =
        McEstimate{mean, std::sqrt(var / static_cast<double>(n_paths)), run.n_paths, run.seed};

    if (vol.is_constant() && run.n_paths > 2) {
        // terminal martingale residual regressed on the Brownian total
        double sw2 = 0.0, sew = 0.0;
        for (std::size_t p = 0; p < n_paths; ++p) {
            const double e = values[p] - mean;
            sew += e * brownian[p];
            sw2 += brownian[p] * brownian[p];
        }
        BondReplication rep;
        rep.gamma_b = sw2 > 0.0 ? sew / sw2 : 0.0;
        double ss_res = 0.0;
        for (std::size_t p = 0; p < n_paths; ++p) {
            const double resid = (values[p] - mean) - rep.gamma_b * brownian[p];
            ss_res += resid * resid;
        }
        const double s2 = ss_res / static_cast<double>(n_paths - 2);
        rep.gamma_stderr = sw2 > 0.0 ? std::sqrt(s2 / sw2) : 0.0;
        const double v = vol.constant_value();
        rep.asset_weight = rep.gamma_b / v;
        rep.account_weight = 1.0 - rep.gamma_b / v;
        out.replication = rep;
    }
    return out;
}

McEstimate price_ecc_on(const sim::PathSet& paths, const Payoff& payoff) {
    const long n = paths.n_paths();
    if (n < 1)
        throw std::invalid_argument("price_ecc_on: empty path set");
    const bool with_rate = paths.has_integrals();
    std::vector<double> vals(static_cast<std::size_t>(n));
    for (long p = 0; p < n; ++p)
        vals[static_cast<std::size_t>(p)] =
            payoff(paths.terminal(p)) - (with_rate ? paths.integrals[p] : 0.0);
    const double sum = sim::pairwise_sum(vals);
    McEstimate est;
    est.n_paths = n;
    est.seed = paths.config.seed;
    est.value = sum / static_cast<double>(n);
    if (n > 1) {
        for (double& v : vals)
            v *= v;
        const double sumsq = sim::pairwise_sum(vals);
        const double var = std::max(0.0, (sumsq - sum * est.value) / static_cast<double>(n - 1));
        est.stderr_value = std::sqrt(var / static_cast<double>(n));
    }
    return est;
}

} // namespace bachelier::mc
