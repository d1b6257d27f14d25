#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <utility>

#include "bachelier/coefficient.hpp"

namespace bachelier {

/// Rectangle in (x, t) over which a model's coefficients are exercised; used
/// for the sampled construction checks and as the default PDE domain.
struct ModelDomain {
    double x_min = 0.0;
    double x_max = 0.0;
    double t_max = 0.0;
};

/// The market model: asset drift rho, volatility vol, simple interest rate
/// `rate`, an optional simple dividend rate, and the initial asset/account
/// values A0 > 0 and beta0 > 0.
///
/// Units: the simple rate adds currency per year to the account (the account
/// grows as beta0 + integral of r), it is not a proportional yield. rho and
/// the dividend rate carry the same currency/year units; vol is currency per
/// square-root year.
///
/// Construction enforces A0 > 0, beta0 > 0, vol > 0 and rate <= rho; the
/// coefficient inequalities are checked on a sampled 256x256 grid over the
/// model domain since coefficients are black-box evaluable.
class MarketModel {
public:
    MarketModel(CoefficientFn rho, CoefficientFn vol, CoefficientFn rate, double a0, double beta0,
                std::optional<CoefficientFn> dividend = std::nullopt,
                std::optional<ModelDomain> domain = std::nullopt)
        : rho_(std::move(rho)), vol_(std::move(vol)), rate_(std::move(rate)),
          dividend_(std::move(dividend)), a0_(a0), beta0_(beta0) {
        if (!(a0_ > 0.0))
            throw std::invalid_argument("MarketModel: A0 must be > 0");
        if (!(beta0_ > 0.0))
            throw std::invalid_argument("MarketModel: beta0 must be > 0");
        domain_ = domain ? *domain : default_domain();
        if (!(domain_.x_max > domain_.x_min) || !(domain_.t_max > 0.0))
            throw std::invalid_argument("MarketModel: degenerate domain");
        check_sampled(256);
    }

    const CoefficientFn& rho() const { return rho_; }
    const CoefficientFn& vol() const { return vol_; }
    const CoefficientFn& rate() const { return rate_; }
    const std::optional<CoefficientFn>& dividend() const { return dividend_; }
    double a0() const { return a0_; }
    double beta0() const { return beta0_; }
    const ModelDomain& domain() const { return domain_; }

    bool has_constant_coefficients() const {
        return rho_.is_constant() && vol_.is_constant() && rate_.is_constant() &&
               (!dividend_ || dividend_->is_constant());
    }

private:
    ModelDomain default_domain() const {
        double horizon = std::min({rho_.horizon(), vol_.horizon(), rate_.horizon(),
                                   dividend_ ? dividend_->horizon()
                                             : std::numeric_limits<double>::infinity()});
        if (!std::isfinite(horizon))
            horizon = 100.0;
        const double v0 = std::abs(vol_(a0_, 0.0));
        const double spread = std::max(8.0 * v0 * std::sqrt(horizon), 1.0);
        return ModelDomain{a0_ - spread, a0_ + spread, horizon};
    }

    void check_sampled(int n) const {
        for (int i = 0; i < n; ++i) {
            const double t = domain_.t_max * i / (n - 1);
            for (int j = 0; j < n; ++j) {
                const double x =
                    domain_.x_min + (domain_.x_max - domain_.x_min) * j / (n - 1);
                if (!(vol_(x, t) > 0.0))
                    throw std::invalid_argument("MarketModel: vol must be strictly positive");
                if (rate_(x, t) > rho_(x, t))
                    throw std::invalid_argument("MarketModel: rate exceeds rho on the domain");
            }
        }
    }

    CoefficientFn rho_, vol_, rate_;
    std::optional<CoefficientFn> dividend_;
    double a0_, beta0_;
    ModelDomain domain_;
};

/// Girsanov drift adjustment (rho - r) / v linking the physical and pricing
/// measures. Nonnegative under the construction constraint rate <= rho; it
/// is not required to be strictly positive.
inline double market_price_of_risk(const MarketModel& m, double x, double t) {
    return (m.rho()(x, t) - m.rate()(x, t)) / m.vol()(x, t);
}

/// Inputs for the ESG price adjustment: a positive stock price, the
/// company's relative ESG score and the market's ESG affinity.
struct EsgInputs {
    double stock_price;
    double relative_score;
    double affinity;
};

/// ESG-adjusted price: stockPrice * (1 + affinity * relativeScore). The
/// result ranges over all of R, which is what motivates an arithmetic model.
inline double esg_adjusted_price(const EsgInputs& in) {
    if (!(in.stock_price > 0.0))
        throw std::invalid_argument("esg_adjusted_price: stock price must be > 0");
    return in.stock_price * (1.0 + in.affinity * in.relative_score);
}

} // namespace bachelier
