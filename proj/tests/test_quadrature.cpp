#include <doctest.h>

#include <cmath>

#include "bachelier/normal.hpp"
#include "bachelier/quadrature.hpp"

using namespace bachelier;

TEST_CASE("adaptive integration reaches tight tolerances") {
    const double q = integrate([](double x) { return std::exp(-x) * std::sin(3.0 * x); },
                               0.0, 5.0, 1e-12);
    const double exact =
        (3.0 - std::exp(-5.0) * (std::sin(15.0) + 3.0 * std::cos(15.0))) / 10.0;
    CHECK(q == doctest::Approx(exact).epsilon(1e-12));
    CHECK(integrate([](double) { return 1.0; }, 2.0, 2.0) == 0.0);
    // orientation flips the sign
    CHECK(integrate([](double x) { return x; }, 1.0, 0.0) ==
          doctest::Approx(-0.5).epsilon(1e-13));
}

TEST_CASE("unresolvable oscillation is a numerical error, not a silent answer") {
    CHECK_THROWS_AS(integrate([](double x) { return std::sin(1.0 / (x + 1e-300)); },
                              0.0, 1.0, 1e-14),
                    std::runtime_error);
}

TEST_CASE("split integration handles interior kinks") {
    const double v = integrate_split([](double x) { return std::abs(x); }, -1.0, 2.0,
                                     {0.0}, 1e-12);
    CHECK(v == doctest::Approx(2.5).epsilon(1e-12));
}

TEST_CASE("gauss-hermite rule integrates gaussian moments") {
    const auto rule = gauss_hermite(48);
    double m0 = 0.0, m2 = 0.0, m4 = 0.0;
    for (int i = 0; i < rule.nodes.size(); ++i) {
        const double z = rule.nodes[i] * std::sqrt(2.0); // standard normal node
        m0 += rule.weights[i];
        m2 += rule.weights[i] * z * z;
        m4 += rule.weights[i] * z * z * z * z;
    }
    const double sqrt_pi = std::sqrt(M_PI);
    CHECK(m0 / sqrt_pi == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(m2 / sqrt_pi == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(m4 / sqrt_pi == doctest::Approx(3.0).epsilon(1e-12));
    CHECK_THROWS_AS(gauss_hermite(0), std::invalid_argument);
}

TEST_CASE("normal distribution helpers") {
    // cdf against the complementary error function
    double worst = 0.0;
    for (double x = -8.0; x <= 8.0; x += 0.01)
        worst = std::max(worst, std::abs(norm_cdf(x) - 0.5 * std::erfc(-x / std::sqrt(2.0))));
    CHECK(worst < 1e-15);
    CHECK(norm_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(norm_cdf(40.0) == 1.0);
    CHECK(norm_cdf(-40.0) == 0.0);

    // inverse round trip over a wide quantile range
    for (double p = 1e-12; p < 1.0; p = p < 0.5 ? p * 3.7 : 1.0 - (1.0 - p) / 3.7) {
        CHECK(norm_cdf(norm_ppf(p)) == doctest::Approx(p).epsilon(1e-12));
        if (p > 0.999999)
            break;
    }
    CHECK(norm_ppf(0.5) == 0.0);
    CHECK_THROWS_AS(norm_ppf(0.0), std::domain_error);
    CHECK_THROWS_AS(norm_ppf(1.0), std::domain_error);
}
