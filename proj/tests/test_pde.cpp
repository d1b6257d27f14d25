#include <doctest.h>

#include <cmath>
#include <sstream>

#include "bachelier/analytic.hpp"
#include "bachelier/pde.hpp"

using namespace bachelier;
using namespace bachelier::pde;

namespace {

const auto cc = [](double v) { return CoefficientFn::constant(v); };

MarketModel flat_model(double rate, double vol = 10.0) {
    return MarketModel(cc(std::max(rate, 3.0)), cc(vol), cc(rate), 100.0, 1.0);
}

GridSpec grid_for(double center, double halfwidth, int n_x = 401, int n_t = 200) {
    GridSpec g;
    g.x_min = center - halfwidth;
    g.x_max = center + halfwidth;
    g.n_x = n_x;
    g.n_t = n_t;
    return g;
}

} // namespace

TEST_CASE("grid validation") {
    GridSpec g = grid_for(100, 80);
    g.n_x = 2;
    CHECK_THROWS_AS(g.validate(), std::invalid_argument);
    g = grid_for(100, 80);
    g.theta = 1.5;
    CHECK_THROWS_AS(g.validate(), std::invalid_argument);
    g = grid_for(100, -1);
    CHECK_THROWS_AS(g.validate(), std::invalid_argument);
}

TEST_CASE("linear terminal data is invariant under the driftless operator") {
    CauchySpec spec{cc(0.0), cc(7.0), cc(0.0), cc(0.0),
                    Payoff::tabulated({-100.0, 300.0}, {-100.0, 300.0}), 1.0};
    const auto sol = solve_cauchy(spec, grid_for(100, 80, 101, 20));
    for (Eigen::Index i = 0; i < sol.times.size(); ++i)
        for (Eigen::Index j = 0; j < sol.xs.size(); ++j)
            CHECK(sol.surface(i, j) == doctest::Approx(sol.xs[j]).epsilon(1e-11));
}

TEST_CASE("terminal row reproduces the payoff exactly at the nodes") {
    const auto payoff = Payoff::call(97.3);
    CauchySpec spec{cc(0.0), cc(10.0), cc(0.0), cc(-2.0), payoff, 1.0};
    const auto sol = solve_cauchy(spec, grid_for(100, 80, 101, 10));
    for (Eigen::Index j = 0; j < sol.xs.size(); ++j)
        CHECK(sol.surface(sol.times.size() - 1, j) == payoff(sol.xs[j]));
}

TEST_CASE("driftless solve matches the closed form at zero rate") {
    const MarketModel m = flat_model(0.0);
    const auto res = price_bachelier_pde(m, Payoff::call(100.0), 1.0, grid_for(100, 80),
                                         DriftMode::Driftless);
    CHECK(std::abs(res.value - analytic::bachelier_call(100, 100, 0, 10, 1)) < 1e-3);
}

TEST_CASE("quadratic terminal solves the constant-coefficient equation") {
    // with terminal x^2 the solution adds (v^2 - r)(T - t)
    const double v = 10.0, r = 2.0;
    GridSpec g = grid_for(100, 80, 161, 400);
    // tabulated terminals are piecewise linear between their nodes, so put
    // the table nodes exactly on the solve grid: the terminal row then
    // carries the quadratic without interpolation error
    std::vector<double> xs, gs;
    for (int j = 0; j < g.n_x; ++j) {
        const double x = g.x_min + g.dx() * j;
        xs.push_back(x);
        gs.push_back(x * x);
    }
    CauchySpec spec{cc(0.0), cc(v), cc(0.0), cc(-r), Payoff::tabulated(xs, gs), 1.0};
    const auto sol = solve_cauchy(spec, g);
    const double expected = 100.0 * 100.0 + (v * v - r) * 1.0;
    CHECK(sol.value_at(100.0, 0.0) == doctest::Approx(expected).epsilon(2e-6));
}

TEST_CASE("risk-neutral drift mode agrees with the closed form for r != 0") {
    const MarketModel m = flat_model(2.0);
    const auto res = price_bachelier_pde(m, Payoff::call(100.0), 1.0, grid_for(100, 80),
                                         DriftMode::RiskNeutral);
    CHECK(std::abs(res.value - analytic::bachelier_call(100, 100, 2, 10, 1)) < 1e-3);
}

TEST_CASE("the two drift readings differ for r != 0 and coincide at r = 0") {
    const MarketModel m2 = flat_model(2.0);
    const auto g = grid_for(100, 80);
    const auto eq7 = price_bachelier_pde(m2, Payoff::call(100.0), 1.0, g, DriftMode::Driftless);
    const auto rn = price_bachelier_pde(m2, Payoff::call(100.0), 1.0, g, DriftMode::RiskNeutral);
    CHECK(std::abs(eq7.value - rn.value) > 0.5); // a documented, macroscopic gap

    const MarketModel m0 = flat_model(0.0);
    const auto a = price_bachelier_pde(m0, Payoff::call(100.0), 1.0, g, DriftMode::Driftless);
    const auto b = price_bachelier_pde(m0, Payoff::call(100.0), 1.0, g, DriftMode::RiskNeutral);
    CHECK(std::abs(a.value - b.value) < 1e-3);
}

TEST_CASE("dividend pricer") {
    SUBCASE("zero dividend reduces to the driftless mode exactly") {
        const MarketModel with_d(cc(3.0), cc(10.0), cc(2.0), 100.0, 1.0, cc(0.0));
        const MarketModel without(cc(3.0), cc(10.0), cc(2.0), 100.0, 1.0);
        const auto g = grid_for(100, 80, 201, 50);
        const auto a = price_dividend_pde(with_d, Payoff::call(100.0), 1.0, g);
        const auto b = price_bachelier_pde(without, Payoff::call(100.0), 1.0, g,
                                           DriftMode::Driftless);
        CHECK(a.value == b.value); // identical linear systems
    }
    SUBCASE("tiny volatility follows the drifted characteristic") {
        const MarketModel m(cc(1.0), cc(1e-4), cc(0.0), 10.0, 1.0, cc(1.0));
        GridSpec g = grid_for(9, 8, 321, 400);
        const auto res =
            price_dividend_pde(m, Payoff::tabulated({-10.0, 30.0}, {-10.0, 30.0}), 2.0, g);
        CHECK(res.value == doctest::Approx(8.0).epsilon(1e-6));
    }
    SUBCASE("missing dividend is rejected") {
        const MarketModel m = flat_model(2.0);
        CHECK_THROWS_AS(price_dividend_pde(m, Payoff::call(100.0), 1.0, grid_for(100, 80)),
                        std::invalid_argument);
    }
}

TEST_CASE("spot outside the grid is a domain error") {
    const MarketModel m = flat_model(0.0);
    CHECK_THROWS_AS(
        price_bachelier_pde(m, Payoff::call(100.0), 1.0, grid_for(300, 50), DriftMode::Driftless),
        std::domain_error);
}

TEST_CASE("delta of the solved surface") {
    const MarketModel m = flat_model(0.0);
    CauchySpec spec{cc(0.0), cc(10.0), cc(0.0), cc(0.0), Payoff::call(100.0), 1.0};
    const auto sol = solve_cauchy(spec, grid_for(100, 80));

    // terminal slopes
    CHECK(delta(sol, 160.0, 1.0) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(delta(sol, 40.0, 1.0) == doctest::Approx(0.0).epsilon(1e-10));

    // at the money today: oracle is a finite difference of the closed form
    const double h = 1e-4;
    const double oracle = (analytic::bachelier_call(100 + h, 100, 0, 10, 1) -
                           analytic::bachelier_call(100 - h, 100, 0, 10, 1)) /
                          (2 * h);
    CHECK(std::abs(delta(sol, 100.0, 0.0) - oracle) < 1e-2);
    CHECK_THROWS_AS(delta(sol, 500.0, 0.0), std::domain_error);

    // interior time and off-node spot, against the closed-form slope
    const double mid = (analytic::bachelier_call(103.1 + h, 100, 0, 10, 0.5) -
                        analytic::bachelier_call(103.1 - h, 100, 0, 10, 0.5)) /
                       (2 * h);
    CHECK(std::abs(delta(sol, 103.1, 0.5) - mid) < 1e-2);
}

TEST_CASE("comparison principle for the implicit scheme") {
    GridSpec g = grid_for(100, 80, 201, 100);
    g.theta = 1.0;
    CauchySpec s1{cc(0.0), cc(10.0), cc(0.0), cc(0.0), Payoff::call(90.0), 1.0};
    CauchySpec s2{cc(0.0), cc(10.0), cc(0.0), cc(0.0), Payoff::call(110.0), 1.0};
    const auto a = solve_cauchy(s1, g);
    const auto b = solve_cauchy(s2, g);
    for (Eigen::Index i = 0; i < a.times.size(); ++i)
        for (Eigen::Index j = 0; j < a.xs.size(); ++j)
            CHECK(a.surface(i, j) >= b.surface(i, j) - 1e-12);
}

TEST_CASE("grid-shift invariance for constant coefficients") {
    const double shift = 37.25;
    GridSpec g1 = grid_for(100, 80, 201, 100);
    GridSpec g2 = grid_for(100 + shift, 80, 201, 100);
    CauchySpec s1{cc(0.0), cc(10.0), cc(0.0), cc(-2.0), Payoff::call(100.0), 1.0};
    CauchySpec s2{cc(0.0), cc(10.0), cc(0.0), cc(-2.0), Payoff::call(100.0 + shift), 1.0};
    const auto a = solve_cauchy(s1, g1);
    const auto b = solve_cauchy(s2, g2);
    CHECK(std::abs(a.value_at(100.0, 0.0) - b.value_at(100.0 + shift, 0.0)) < 1e-10);
}

TEST_CASE("losing diagonal dominance falls back to the implicit scheme") {
    // strong convection against a nearly flat diffusion on a coarse grid
    CauchySpec spec{cc(100.0), cc(0.05), cc(0.0), cc(0.0),
                    Payoff::tabulated({-200.0, 400.0}, {-200.0, 400.0}), 1.0};
    GridSpec g;
    g.x_min = 0.0;
    g.x_max = 200.0;
    g.n_x = 101;
    g.n_t = 10;
    const auto sol = solve_cauchy(spec, g);
    CHECK(sol.diagnostics.count("theta_switched_to_implicit") == 1);
    // advection of a linear profile stays exact even on the implicit path
    CHECK(sol.value_at(50.0, 0.0) == doctest::Approx(150.0).epsilon(1e-9));
}

TEST_CASE("surface csv dump") {
    CauchySpec spec{cc(0.0), cc(1.0), cc(0.0), cc(0.0),
                    Payoff::tabulated({-10.0, 10.0}, {-10.0, 10.0}), 1.0};
    GridSpec g;
    g.x_min = -2.0;
    g.x_max = 2.0;
    g.n_x = 3;
    g.n_t = 1;
    const auto sol = solve_cauchy(spec, g);
    std::ostringstream os;
    write_csv(sol, os);
    const std::string text = os.str();
    CHECK(text.rfind("t,x,f\n", 0) == 0);
    CHECK(text.find("1,2,2\n") != std::string::npos); // terminal node row
}

TEST_CASE("convergence order of the smooth refinement ladder") {
    const MarketModel m = flat_model(0.0);
    const double exact = analytic::bachelier_call(100, 100, 0, 10, 1);
    double err[3];
    int n_x = 81, n_t = 40;
    for (int level = 0; level < 3; ++level) {
        const auto res = price_bachelier_pde(m, Payoff::call(100.0), 1.0,
                                             grid_for(100, 80, n_x, n_t), DriftMode::Driftless);
        err[level] = std::abs(res.value - exact);
        n_x = 2 * (n_x - 1) + 1;
        n_t *= 2;
    }
    CHECK(err[0] / err[1] > 3.5);
    CHECK(err[0] / err[1] < 4.5);
    CHECK(err[1] / err[2] > 3.5);
    CHECK(err[1] / err[2] < 4.5);
}
