#include <doctest.h>

#include <cmath>

#include "bachelier/analytic.hpp"
#include "bachelier/mc.hpp"
#include "bachelier/parallel.hpp"
#include "bachelier/simulate.hpp"

using namespace bachelier;
using namespace bachelier::mc;

namespace {

const auto cc = [](double v) { return CoefficientFn::constant(v); };

MarketModel flat_model(double rate, double vol = 10.0) {
    return MarketModel(cc(std::max(rate, 3.0)), cc(vol), cc(rate), 100.0, 1.0);
}

sim::SimConfig cfg_of(std::uint64_t seed, long paths, int steps) {
    sim::SimConfig cfg;
    cfg.seed = seed;
    cfg.n_paths = paths;
    cfg.n_steps = steps;
    return cfg;
}

} // namespace

TEST_CASE("feynman-kac pricer on the plain diffusion") {
    // driftless, no discounting, identity terminal: a martingale mean
    pde::CauchySpec spec{cc(0.0), cc(10.0), cc(0.0), cc(0.0),
                         Payoff::tabulated({-400.0, 600.0}, {-400.0, 600.0}), 1.0};
    const auto est = fk_price(spec, 100.0, 0.0, cfg_of(1, 100000, 20));
    CHECK(std::abs(est.value - 100.0) < 3.0 * est.stderr_value);
    CHECK(est.stderr_value > 0.0);

    // pure discounting: exp(-kappa (T - t0)) with zero variance
    pde::CauchySpec disc{cc(0.0), cc(1.0), cc(0.7), cc(0.0),
                         Payoff::tabulated({-1.0, 1.0}, {1.0, 1.0}), 2.0};
    const auto d = fk_price(disc, 0.0, 0.5, cfg_of(2, 2000, 30));
    CHECK(d.value == doctest::Approx(std::exp(-0.7 * 1.5)).epsilon(1e-12));
    CHECK(d.stderr_value == 0.0);
}

TEST_CASE("feynman-kac with state-dependent discounting") {
    // a(x, t) = 0.01 x through a table; with tiny volatility the path stays
    // at x0, so the discount collapses to exp(-0.01 x0 (T - t0))
    Eigen::VectorXd xs(2), ts(2);
    xs << 0.0, 100.0;
    ts << 0.0, 2.0;
    Eigen::MatrixXd tab(2, 2);
    tab << 0.0, 1.0, 0.0, 1.0;
    const auto a_of_x = CoefficientFn::tabulated(xs, ts, tab);
    pde::CauchySpec spec{cc(0.0), cc(1e-30), a_of_x, cc(0.0),
                         Payoff::tabulated({-1.0, 1.0}, {1.0, 1.0}), 1.0};
    const auto est = fk_price(spec, 50.0, 0.0, cfg_of(27, 200, 16));
    CHECK(est.value == doctest::Approx(std::exp(-0.5)).epsilon(1e-6));

    // same discount level through the time-only fast path agrees
    pde::CauchySpec flat{cc(0.0), cc(1e-30), cc(0.5), cc(0.0),
                         Payoff::tabulated({-1.0, 1.0}, {1.0, 1.0}), 1.0};
    const auto fast = fk_price(flat, 50.0, 0.0, cfg_of(27, 200, 16));
    CHECK(est.value == doctest::Approx(fast.value).epsilon(1e-9));
}

TEST_CASE("feynman-kac with a state-dependent source") {
    // h(x, t) = -0.02 x with a driftless, tiny-noise path at x0 = 50:
    // the source contributes -0.02 * 50 * T on top of the terminal value
    Eigen::VectorXd xs(2), ts(2);
    xs << 0.0, 100.0;
    ts << 0.0, 2.0;
    Eigen::MatrixXd tab(2, 2);
    tab << 0.0, -2.0, 0.0, -2.0;
    const auto h_of_x = CoefficientFn::tabulated(xs, ts, tab);
    pde::CauchySpec spec{cc(0.0), cc(1e-30), cc(0.0), h_of_x,
                         Payoff::tabulated({-100.0, 100.0}, {-100.0, 100.0}), 1.0};
    const auto est = fk_price(spec, 50.0, 0.0, cfg_of(28, 100, 8));
    CHECK(est.value == doctest::Approx(50.0 - 1.0).epsilon(1e-9));
}

TEST_CASE("feynman-kac matches the driftless pde solve") {
    pde::CauchySpec spec{cc(0.0), cc(10.0), cc(0.0), cc(-2.0), Payoff::call(100.0), 1.0};
    pde::GridSpec g;
    g.x_min = 20;
    g.x_max = 180;
    const auto sol_price = pde::solve_cauchy(spec, g).value_at(100.0, 0.0);
    const auto est = fk_price(spec, 100.0, 0.0, cfg_of(3, 100000, 100));
    CHECK(std::abs(est.value - sol_price) < std::max(3.0 * est.stderr_value, 2e-3));
}

TEST_CASE("risk-neutral claim pricing") {
    SUBCASE("call against the closed form") {
        const auto est =
            price_ecc_riskneutral(flat_model(2.0), Payoff::call(100.0), 1.0, cfg_of(4, 200000, 50));
        CHECK(std::abs(est.value - analytic::bachelier_call(100, 100, 2, 10, 1)) <
              3.0 * est.stderr_value);
    }
    SUBCASE("vanishing volatility collapses to the deterministic value") {
        const auto est = price_ecc_riskneutral(flat_model(2.0, 1e-30), Payoff::call(100.0), 1.0,
                                               cfg_of(5, 100, 10));
        CHECK(est.value == doctest::Approx(std::max(100.0 + 2.0 - 100.0, 0.0) - 2.0)
                               .epsilon(1e-12));
        CHECK(est.stderr_value < 1e-12);
    }
    SUBCASE("forward payoff prices to spot minus strike") {
        const auto est = price_ecc_riskneutral(flat_model(2.0), Payoff::forward(90.0), 1.0,
                                               cfg_of(6, 100000, 20));
        CHECK(std::abs(est.value - 10.0) < 3.0 * est.stderr_value);
    }
}

TEST_CASE("dividend claim pricing") {
    SUBCASE("zero dividend equals the driftless pricer draw for draw") {
        const MarketModel m(cc(3.0), cc(10.0), cc(2.0), 100.0, 1.0, cc(0.0));
        const auto a = price_ecc_dividend(m, Payoff::call(100.0), 1.0, cfg_of(7, 20000, 25));
        pde::CauchySpec spec{cc(0.0), cc(10.0), cc(0.0), cc(-2.0), Payoff::call(100.0), 1.0};
        const auto b = fk_price(spec, 100.0, 0.0, cfg_of(7, 20000, 25));
        CHECK(a.value == doctest::Approx(b.value).epsilon(1e-12));
    }
    SUBCASE("tiny volatility follows the drifted characteristic") {
        const MarketModel m(cc(3.0), cc(1e-30), cc(2.0), 100.0, 1.0, cc(1.0));
        const auto est = price_ecc_dividend(m, Payoff::forward(0.0), 1.0, cfg_of(8, 100, 10));
        // x0 - D T - r T
        CHECK(est.value == doctest::Approx(100.0 - 1.0 - 2.0).epsilon(1e-12));
    }
    SUBCASE("missing dividend is rejected") {
        CHECK_THROWS_AS(
            price_ecc_dividend(flat_model(2.0), Payoff::call(100.0), 1.0, cfg_of(9, 10, 2)),
            std::invalid_argument);
    }
}

TEST_CASE("gain-process security pricing") {
    const MarketModel m = flat_model(2.0);
    SUBCASE("no dividend stream reduces to the risk-neutral pricer") {
        const auto a =
            price_gain_security(Payoff::call(100.0), cc(0.0), m, 1.0, cfg_of(10, 20000, 25));
        const auto b = price_ecc_riskneutral(m, Payoff::call(100.0), 1.0, cfg_of(10, 20000, 25));
        CHECK(a.value == doctest::Approx(b.value).epsilon(1e-12));
    }
    SUBCASE("pure dividend stream accrues deterministically") {
        const MarketModel m0 = flat_model(0.0);
        const auto est = price_gain_security(Payoff::tabulated({-1.0, 1.0}, {0.0, 0.0}), cc(0.4),
                                             m0, 2.0, cfg_of(11, 1000, 16));
        CHECK(est.value == doctest::Approx(0.8).epsilon(1e-12));
        CHECK(est.stderr_value < 1e-8);
    }
    SUBCASE("terminal asset plus dividends") {
        const auto est = price_gain_security(Payoff::forward(0.0), cc(1.5), m, 1.0,
                                             cfg_of(12, 100000, 25));
        // A0 + r T + D T - r T
        CHECK(std::abs(est.value - (100.0 + 1.5)) < 3.0 * est.stderr_value);
    }
}

TEST_CASE("bond pricing by simulation") {
    SUBCASE("constant rate integrates exactly with zero variance") {
        const MarketModel m(cc(3.0), cc(10.0), cc(0.03), 100.0, 1.0);
        const auto res = bond_price_mc(m, 0.0, 2.0, cfg_of(13, 2000, 32));
        CHECK(res.estimate.value == doctest::Approx(0.94).epsilon(1e-14));
        CHECK(res.estimate.stderr_value < 1e-12);
        REQUIRE(res.replication.has_value());
        // deterministic integrand: no Brownian exposure, all in the account
        CHECK(std::abs(res.replication->gamma_b) < 1e-12);
        CHECK(res.replication->asset_weight == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(res.replication->account_weight == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("maturity at valuation time is par") {
        const MarketModel m = flat_model(2.0);
        CHECK(bond_price_mc(m, 1.0, 1.0, cfg_of(14, 10, 2)).estimate.value == 1.0);
    }
    SUBCASE("state-dependent rate: two seeds agree within joint error") {
        Eigen::VectorXd xs(2), ts(2);
        xs << -1000.0, 1000.0;
        ts << 0.0, 10.0;
        Eigen::MatrixXd tab(2, 2);
        tab << -0.09, 0.11, -0.09, 0.11; // 0.01 + 0.0001 x
        const MarketModel m(cc(3.0), cc(10.0), CoefficientFn::tabulated(xs, ts, tab), 100.0,
                            1.0);
        const auto a = bond_price_mc(m, 0.0, 1.0, cfg_of(15, 50000, 50));
        const auto b = bond_price_mc(m, 0.0, 1.0, cfg_of(16, 50000, 50));
        const double joint =
            std::hypot(a.estimate.stderr_value, b.estimate.stderr_value);
        CHECK(std::abs(a.estimate.value - b.estimate.value) < 3.0 * joint);
        REQUIRE(a.replication.has_value());
        CHECK(a.replication->asset_weight + a.replication->account_weight ==
              doctest::Approx(1.0).epsilon(1e-12));
        // the rate loads positively on the asset, so the hedge shorts it
        CHECK(a.replication->gamma_b < 0.0);
        CHECK(a.replication->gamma_stderr > 0.0);
    }
}

TEST_CASE("common-random-number parity on one path set") {
    const MarketModel m = flat_model(2.0);
    sim::SimConfig cfg = cfg_of(17, 100000, 50);
    const auto ps = sim::simulate_asset(m, cfg, sim::Measure::RiskNeutral);
    const auto call = price_ecc_on(ps, Payoff::call(100.0));
    const auto put = price_ecc_on(ps, Payoff::put(100.0));
    const auto fwd = price_ecc_on(ps, Payoff::forward(100.0));
    // C - P telescopes against the forward estimate plus the rate integral
    CHECK(std::abs(call.value - put.value - (fwd.value + 2.0)) < 1e-12);
    // and statistically against the closed-form parity level
    CHECK(std::abs(call.value - put.value - 2.0) < 6.0 * fwd.stderr_value);
}

TEST_CASE("seed determinism and seed independence") {
    const MarketModel m = flat_model(2.0);
    const auto a = price_ecc_riskneutral(m, Payoff::call(100.0), 1.0, cfg_of(18, 40000, 25));
    const auto b = price_ecc_riskneutral(m, Payoff::call(100.0), 1.0, cfg_of(18, 40000, 25));
    CHECK(a.value == b.value);
    CHECK(a.stderr_value == b.stderr_value);

    const auto c = price_ecc_riskneutral(m, Payoff::call(100.0), 1.0, cfg_of(19, 40000, 25));
    CHECK(a.value != c.value);
    CHECK(std::abs(a.value - c.value) < 6.0 * std::hypot(a.stderr_value, c.stderr_value));
}

TEST_CASE("estimates are invariant under the worker count") {
    const MarketModel m = flat_model(2.0);
    const unsigned saved = sim::thread_count();
    sim::set_thread_count(1);
    const auto a = price_ecc_riskneutral(m, Payoff::call(100.0), 1.0, cfg_of(20, 30000, 20));
    sim::set_thread_count(3);
    const auto b = price_ecc_riskneutral(m, Payoff::call(100.0), 1.0, cfg_of(20, 30000, 20));
    sim::set_thread_count(saved);
    CHECK(a.value == b.value);
    CHECK(a.stderr_value == b.stderr_value);
}

TEST_CASE("driftless and risk-neutral estimators separate when the rate is nonzero") {
    const MarketModel m2 = flat_model(2.0);
    pde::CauchySpec driftless{cc(0.0), cc(10.0), cc(0.0), cc(-2.0), Payoff::call(100.0), 1.0};
    const auto gap_at = [&](std::uint64_t seed) {
        const auto a = fk_price(driftless, 100.0, 0.0, cfg_of(seed, 100000, 25));
        const auto b =
            price_ecc_riskneutral(m2, Payoff::call(100.0), 1.0, cfg_of(seed + 1, 100000, 25));
        return std::pair{a.value - b.value, std::hypot(a.stderr_value, b.stderr_value)};
    };
    const auto [g1, se1] = gap_at(21);
    const auto [g2, se2] = gap_at(23);
    CHECK(std::abs(g1) > 10.0 * se1);
    CHECK(std::abs(g2) > 10.0 * se2);
    CHECK(g1 * g2 > 0.0); // reproducible sign

    // the gap closes at r = 0
    const MarketModel m0 = flat_model(0.0);
    pde::CauchySpec d0{cc(0.0), cc(10.0), cc(0.0), cc(0.0), Payoff::call(100.0), 1.0};
    const auto a0 = fk_price(d0, 100.0, 0.0, cfg_of(25, 100000, 25));
    const auto b0 = price_ecc_riskneutral(m0, Payoff::call(100.0), 1.0, cfg_of(26, 100000, 25));
    CHECK(std::abs(a0.value - b0.value) < 3.0 * std::hypot(a0.stderr_value, b0.stderr_value));
}
