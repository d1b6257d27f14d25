#include <doctest.h>

#include <cmath>
#include <sstream>

#include "bachelier/parallel.hpp"
#include "bachelier/simulate.hpp"

using namespace bachelier;
using namespace bachelier::sim;

namespace {

const auto cc = [](double v) { return CoefficientFn::constant(v); };

MarketModel flat_model(double rho, double vol, double rate) {
    return MarketModel(cc(rho), cc(vol), cc(rate), 100.0, 1.0);
}

} // namespace

TEST_CASE("config validation") {
    SimConfig cfg;
    cfg.n_paths = 0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = SimConfig{};
    cfg.t_end = cfg.t_start;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = SimConfig{};
    cfg.n_steps = 0;
    CHECK_THROWS_AS(simulate_fk_diffusion(cc(1.0), 0.0, cfg), std::invalid_argument);
}

TEST_CASE("degenerate asset dynamics") {
    SimConfig cfg;
    cfg.n_paths = 16;
    cfg.n_steps = 32;

    // vanishing volatility freezes the paths at the start value
    const auto frozen = simulate_asset(flat_model(0.0, 1e-30, 0.0), cfg, Measure::Physical);
    for (long p = 0; p < frozen.n_paths(); ++p)
        for (int k = 0; k <= frozen.n_steps(); ++k)
            CHECK(frozen.values(p, k) == doctest::Approx(100.0).epsilon(1e-12));

    // pure drift integrates the deterministic flow
    const auto drifted = simulate_asset(flat_model(2.0, 1e-30, 0.0), cfg, Measure::Physical);
    for (long p = 0; p < drifted.n_paths(); ++p)
        CHECK(drifted.terminal(p) == doctest::Approx(102.0).epsilon(1e-12));

    CHECK(frozen.times[0] == 0.0);
    CHECK(frozen.times[frozen.n_steps()] == 1.0);
}

TEST_CASE("risk-neutral asset mean matches the account growth") {
    SimConfig cfg;
    cfg.seed = 31;
    cfg.n_paths = 100000;
    cfg.n_steps = 50;
    const auto ps = simulate_asset(flat_model(3.0, 10.0, 2.0), cfg, Measure::RiskNeutral);
    double mean = 0.0;
    for (long p = 0; p < ps.n_paths(); ++p)
        mean += ps.terminal(p);
    mean /= static_cast<double>(ps.n_paths());
    CHECK(std::abs(mean - 102.0) < 3.0 * 10.0 / std::sqrt(1e5));
    // the stored integral of a constant rate is exact
    CHECK(ps.integrals[0] == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("martingale property of the excess price") {
    SimConfig cfg;
    cfg.seed = 77;
    cfg.n_paths = 100000;
    cfg.n_steps = 50;
    const auto ps = simulate_asset(flat_model(3.0, 10.0, 2.0), cfg, Measure::RiskNeutral);
    double mean = 0.0, var = 0.0;
    for (long p = 0; p < ps.n_paths(); ++p)
        mean += ps.terminal(p) - ps.integrals[p] - 100.0;
    mean /= static_cast<double>(ps.n_paths());
    for (long p = 0; p < ps.n_paths(); ++p) {
        const double e = ps.terminal(p) - ps.integrals[p] - 100.0 - mean;
        var += e * e;
    }
    var /= static_cast<double>(ps.n_paths() - 1);
    CHECK(std::abs(mean) < 3.0 * std::sqrt(var / 1e5));
}

TEST_CASE("driftless diffusion variance and drifted characteristics") {
    SimConfig cfg;
    cfg.seed = 5;
    cfg.n_paths = 100000;
    cfg.n_steps = 50;

    const auto z = simulate_fk_diffusion(cc(10.0), 0.0, cfg);
    double mean = 0.0, var = 0.0;
    for (long p = 0; p < z.n_paths(); ++p)
        mean += z.terminal(p);
    mean /= static_cast<double>(z.n_paths());
    for (long p = 0; p < z.n_paths(); ++p)
        var += (z.terminal(p) - mean) * (z.terminal(p) - mean);
    var /= static_cast<double>(z.n_paths() - 1);
    CHECK(std::abs(var - 100.0) < 5.0); // within 5% of v^2 T

    // exactly zero volatility is allowed here for testing
    const auto still = simulate_fk_diffusion(cc(0.0), 0.0, cfg);
    CHECK(still.terminal(0) == 0.0);

    SimConfig cfg2;
    cfg2.n_paths = 4;
    cfg2.n_steps = 64;
    cfg2.t_end = 2.0;
    const auto drifted = simulate_fk_diffusion(cc(1e-30), cc(-1.0), 5.0, cfg2);
    for (long p = 0; p < drifted.n_paths(); ++p)
        CHECK(drifted.terminal(p) == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("short-rate simulation") {
    SimConfig cfg;
    cfg.n_paths = 8;
    cfg.n_steps = 64;

    SUBCASE("all-zero parameters freeze the rate") {
        const analytic::HullWhiteParams p(cc(0.0), cc(0.0), cc(0.0), 0.03);
        const auto ps = simulate_hw_rate(p, cfg);
        for (long q = 0; q < ps.n_paths(); ++q)
            CHECK(ps.terminal(q) == 0.03);
    }
    SUBCASE("pure drift integrates to t") {
        const analytic::HullWhiteParams p(cc(1.0), cc(0.0), cc(0.0), 0.0);
        const auto ps = simulate_hw_rate(p, cfg);
        CHECK(ps.terminal(0) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(ps.integrals[0] == doctest::Approx(0.5).epsilon(1e-3)); // trapezoid of r = t
    }
    SUBCASE("exact scheme rejects flat parameters") {
        const analytic::HullWhiteParams p(cc(0.1), cc(0.0), cc(0.02), 0.03);
        cfg.scheme = Scheme::ExactWhereAvailable;
        CHECK_THROWS_AS(simulate_hw_rate(p, cfg), std::invalid_argument);
    }
    SUBCASE("exact scheme matches the transition moments") {
        const analytic::HullWhiteParams p(cc(0.1), cc(0.5), cc(0.02), 0.03);
        SimConfig big;
        big.seed = 29;
        big.n_paths = 20000;
        big.n_steps = 16;
        big.scheme = Scheme::ExactWhereAvailable;
        const auto ps = simulate_hw_rate(p, big);
        const auto m = analytic::hw_moments(p, 1.0);
        double mean = 0.0;
        for (long q = 0; q < ps.n_paths(); ++q)
            mean += ps.terminal(q);
        mean /= static_cast<double>(ps.n_paths());
        double var = 0.0;
        for (long q = 0; q < ps.n_paths(); ++q)
            var += (ps.terminal(q) - mean) * (ps.terminal(q) - mean);
        var /= static_cast<double>(ps.n_paths() - 1);
        CHECK(std::abs(mean - m.mean_r) < 3.0 * std::sqrt(var / 2e4));
        CHECK(std::abs(var - m.var_r) < 3.0 * m.var_r * std::sqrt(2.0 / 2e4));
    }
}

TEST_CASE("determinism across thread counts and runs") {
    SimConfig cfg;
    cfg.seed = 123;
    cfg.n_paths = 5000;
    cfg.n_steps = 16;
    const MarketModel m = flat_model(3.0, 10.0, 2.0);

    const unsigned saved = thread_count();
    set_thread_count(1);
    const auto a = simulate_asset(m, cfg, Measure::RiskNeutral);
    set_thread_count(4);
    const auto b = simulate_asset(m, cfg, Measure::RiskNeutral);
    set_thread_count(saved);

    CHECK(a.values == b.values);
    CHECK(a.integrals == b.integrals);

    // different seeds decorrelate
    cfg.seed = 124;
    const auto c = simulate_asset(m, cfg, Measure::RiskNeutral);
    CHECK(a.values(0, a.n_steps()) != c.values(0, c.n_steps()));
}

TEST_CASE("weak convergence sanity: halving the step is below the noise") {
    // state-dependent volatility so the Euler scheme actually has bias
    Eigen::VectorXd xs(3), ts(2);
    xs << 0.0, 100.0, 200.0;
    ts << 0.0, 1.0;
    Eigen::MatrixXd tab(2, 3);
    tab << 6.0, 10.0, 14.0, 6.0, 10.0, 14.0;
    const MarketModel m(cc(3.0), CoefficientFn::tabulated(xs, ts, tab), cc(2.0), 100.0, 1.0);

    const auto price = [&](int steps) {
        SimConfig cfg;
        cfg.seed = 10;
        cfg.n_paths = 100000;
        cfg.n_steps = steps;
        const auto ps = simulate_asset(m, cfg, Measure::RiskNeutral);
        double mean = 0.0, var = 0.0;
        for (long p = 0; p < ps.n_paths(); ++p)
            mean += std::max(ps.terminal(p) - 100.0, 0.0) - ps.integrals[p];
        mean /= static_cast<double>(ps.n_paths());
        for (long p = 0; p < ps.n_paths(); ++p) {
            const double e = std::max(ps.terminal(p) - 100.0, 0.0) - ps.integrals[p] - mean;
            var += e * e;
        }
        var /= static_cast<double>(ps.n_paths() - 1);
        return std::pair{mean, std::sqrt(var / 1e5)};
    };
    const auto [coarse, se_c] = price(50);
    const auto [fine, se_f] = price(100);
    CHECK(std::abs(fine - coarse) < std::max(se_c, se_f));
}

TEST_CASE("csv dump format") {
    SimConfig cfg;
    cfg.n_paths = 2;
    cfg.n_steps = 1;
    const auto ps = simulate_asset(flat_model(0.0, 1e-30, 0.0), cfg, Measure::Physical);
    std::ostringstream out;
    write_csv(ps, out);
    const std::string text = out.str();
    CHECK(text.substr(0, 25) == "path,time,value,integral\n");
    CHECK(text.find("0,0,100,0") != std::string::npos);
    CHECK(text.find("1,1,100,0") != std::string::npos);

    const auto z = simulate_fk_diffusion(cc(1.0), 0.0, cfg);
    std::ostringstream out2;
    write_csv(z, out2);
    CHECK(out2.str().substr(0, 16) == "path,time,value\n");
}
