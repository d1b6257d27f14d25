#include "bachelier/analytic.hpp"

#include <cmath>
#include <stdexcept>

#include "bachelier/normal.hpp"

namespace bachelier::analytic {

double bachelier_call(double spot, double strike, double rate, double vol, double tau) {
    if (!(vol > 0.0))
        throw std::domain_error("bachelier_call: vol must be > 0");
    if (tau < 0.0)
        throw std::domain_error("bachelier_call: tau must be >= 0");
    if (tau == 0.0)
        return std::max(spot - strike, 0.0);
    const double lam0 = spot - strike + rate * tau;
    const double lam1 = vol * std::sqrt(tau);
    const double d = lam0 / lam1;
    return lam0 * norm_cdf(d) + lam1 * norm_pdf(d) - rate * tau;
}

double bachelier_put(double spot, double strike, double rate, double vol, double tau) {
    return bachelier_call(spot, strike, rate, vol, tau) - (spot - strike + rate * tau);
}

double perpetual_gamma(double vol, double rate) {
    if (rate == 0.0)
        throw std::domain_error("perpetual_gamma: rate must be nonzero");
    return 1.0 - vol * vol / rate;
}

double forward_price(double spot, double contract_value) { return spot - contract_value; }

ForwardValue forward_value_at(double spot_s, double delivery_price, double bond_s_T,
                              double expected_rate_integral, double tolerance) {
    if (std::abs(bond_s_T + expected_rate_integral - 1.0) > tolerance)
        throw std::invalid_argument(
            "forward_value_at: bond and rate integral are inconsistent (B + E[int r] != 1)");
    ForwardValue v;
    v.asset_leg = spot_s;
    v.rate_leg = delivery_price * expected_rate_integral;
    v.bond_leg = delivery_price * bond_s_T;
    v.value = spot_s - delivery_price;
    return v;
}

double futures_price(double spot, double rate_integral) { return spot + rate_integral; }

double futures_delivery_price(double spot, double expected_terminal_spot) {
    return expected_terminal_spot - spot;
}

SpreadResult forward_futures_spread(double rate_integral, double futures_price_0,
                                    double expected_spot_physical) {
    SpreadResult r;
    r.spread = rate_integral;
    if (futures_price_0 < expected_spot_physical)
        r.state = MarketState::NormalBackwardation;
    else if (futures_price_0 > expected_spot_physical)
        r.state = MarketState::Contango;
    else
        r.state = MarketState::Neutral;
    return r;
}

std::string market_state_name(MarketState s) {
    switch (s) {
    case MarketState::NormalBackwardation:
        return "normal-backwardation";
    case MarketState::Contango:
        return "contango";
    case MarketState::Neutral:
        return "neutral";
    }
    return "?";
}

} // namespace bachelier::analytic
