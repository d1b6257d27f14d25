#pragma once

#include <algorithm>
#include <stdexcept>
#include <utility>
#include <vector>

namespace bachelier {

/// Terminal payoff g(x). Strikes may be negative: the model prices live on
/// the whole real line.
class Payoff {
public:
    enum class Kind { Call, Put, Forward, Tabulated };

    static Payoff call(double strike) { return Payoff(Kind::Call, strike); }
    static Payoff put(double strike) { return Payoff(Kind::Put, strike); }
    static Payoff forward(double strike) { return Payoff(Kind::Forward, strike); }

    /// Tabulated payoff, linear interpolation inside the grid, flat outside.
    static Payoff tabulated(std::vector<double> xs, std::vector<double> gs) {
        if (xs.size() < 2 || xs.size() != gs.size())
            throw std::invalid_argument("Payoff: tabulation needs >= 2 matching nodes");
        for (std::size_t i = 1; i < xs.size(); ++i)
            if (!(xs[i] > xs[i - 1]))
                throw std::invalid_argument("Payoff: x grid must be strictly increasing");
        Payoff p(Kind::Tabulated, 0.0);
        p.xs_ = std::move(xs);
        p.gs_ = std::move(gs);
        return p;
    }

    Kind kind() const { return kind_; }
    double strike() const { return strike_; }
    const std::vector<double>& x_grid() const { return xs_; }
    const std::vector<double>& g_grid() const { return gs_; }

    double operator()(double x) const {
        switch (kind_) {
        case Kind::Call:
            return std::max(x - strike_, 0.0);
        case Kind::Put:
            return std::max(strike_ - x, 0.0);
        case Kind::Forward:
            return x - strike_;
        case Kind::Tabulated: {
            if (x <= xs_.front())
                return gs_.front();
            if (x >= xs_.back())
                return gs_.back();
            const auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
            const std::size_t hi = static_cast<std::size_t>(it - xs_.begin());
            const double w = (x - xs_[hi - 1]) / (xs_[hi] - xs_[hi - 1]);
            return (1.0 - w) * gs_[hi - 1] + w * gs_[hi];
        }
        }
        throw std::logic_error("Payoff: bad kind");
    }

private:
    Payoff(Kind k, double strike) : kind_(k), strike_(strike) {}

    Kind kind_;
    double strike_;
    std::vector<double> xs_, gs_;
};

} // namespace bachelier
