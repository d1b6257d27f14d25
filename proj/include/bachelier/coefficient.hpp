#pragma once

#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace bachelier {

/// A deterministic market coefficient c(x, t).
///
/// Three kinds are supported: a constant, a piecewise-constant function of
/// time, and a table over an (x, t) grid with bilinear interpolation inside
/// the grid and flat extrapolation outside. Evaluation outside [0, horizon]
/// in time is a domain error; evaluation is defined for every real x.
class CoefficientFn {
public:
    enum class Kind { Constant, PiecewiseConstantInTime, Tabulated };

    static CoefficientFn constant(double value) {
        CoefficientFn c;
        c.kind_ = Kind::Constant;
        c.value_ = value;
        return c;
    }

    /// Piecewise constant in time: values[i] applies on [breaks[i-1], breaks[i])
    /// with an implicit first edge at 0; the last value extends to `horizon`.
    static CoefficientFn piecewise(std::vector<double> breaks, std::vector<double> values,
                                   double horizon = std::numeric_limits<double>::infinity()) {
        if (values.size() != breaks.size() + 1)
            throw std::invalid_argument("CoefficientFn: need one more value than breakpoints");
        double prev = 0.0;
        for (double b : breaks) {
            if (!(b > prev))
                throw std::invalid_argument("CoefficientFn: breakpoints must be strictly increasing");
            prev = b;
        }
        if (!(horizon > prev))
            throw std::invalid_argument("CoefficientFn: horizon must exceed the last breakpoint");
        CoefficientFn c;
        c.kind_ = Kind::PiecewiseConstantInTime;
        c.breaks_ = std::move(breaks);
        c.values_ = std::move(values);
        c.horizon_ = horizon;
        return c;
    }

    /// Tabulated over strictly increasing x and t grids; table(i, j) is the
    /// value at (x = x_grid[j], t = t_grid[i]).
    static CoefficientFn tabulated(Eigen::VectorXd x_grid, Eigen::VectorXd t_grid,
                                   Eigen::MatrixXd table) {
        if (x_grid.size() < 1 || t_grid.size() < 1)
            throw std::invalid_argument("CoefficientFn: empty tabulation grid");
        if (table.rows() != t_grid.size() || table.cols() != x_grid.size())
            throw std::invalid_argument("CoefficientFn: table shape must be (t, x)");
        for (Eigen::Index j = 1; j < x_grid.size(); ++j)
            if (!(x_grid[j] > x_grid[j - 1]))
                throw std::invalid_argument("CoefficientFn: x grid must be strictly increasing");
        for (Eigen::Index i = 1; i < t_grid.size(); ++i)
            if (!(t_grid[i] > t_grid[i - 1]))
                throw std::invalid_argument("CoefficientFn: t grid must be strictly increasing");
        CoefficientFn c;
        c.kind_ = Kind::Tabulated;
        c.x_grid_ = std::move(x_grid);
        c.t_grid_ = std::move(t_grid);
        c.table_ = std::move(table);
        c.horizon_ = c.t_grid_[c.t_grid_.size() - 1];
        return c;
    }

    Kind kind() const { return kind_; }
    double horizon() const { return horizon_; }
    bool is_constant() const { return kind_ == Kind::Constant; }
    bool time_only() const { return kind_ != Kind::Tabulated; }

    double constant_value() const {
        if (kind_ != Kind::Constant)
            throw std::logic_error("CoefficientFn: not a constant");
        return value_;
    }

    const std::vector<double>& breakpoints() const { return breaks_; }
    const std::vector<double>& piece_values() const { return values_; }
    const Eigen::VectorXd& table_x_grid() const { return x_grid_; }
    const Eigen::VectorXd& table_t_grid() const { return t_grid_; }
    const Eigen::MatrixXd& table_values() const { return table_; }

    /// Same shape, values negated.
    CoefficientFn negated() const {
        CoefficientFn c = *this;
        c.value_ = -c.value_;
        for (double& v : c.values_)
            v = -v;
        c.table_ = -c.table_;
        return c;
    }

    double operator()(double x, double t) const {
        if (t < 0.0 || t > horizon_)
            throw std::domain_error("CoefficientFn: t outside [0, horizon]");
        switch (kind_) {
        case Kind::Constant:
            return value_;
        case Kind::PiecewiseConstantInTime: {
            std::size_t i = 0;
            while (i < breaks_.size() && t >= breaks_[i])
                ++i;
            return values_[i];
        }
        case Kind::Tabulated:
            return eval_table(x, t);
        }
        throw std::logic_error("CoefficientFn: bad kind");
    }

private:
    double eval_table(double x, double t) const {
        const auto locate = [](const Eigen::VectorXd& g, double v) {
            // clamped cell index and weight: flat beyond the grid edges
            if (g.size() == 1 || v <= g[0])
                return std::pair<Eigen::Index, double>{0, 0.0};
            const Eigen::Index last = g.size() - 1;
            if (v >= g[last])
                return std::pair<Eigen::Index, double>{last - 1, 1.0};
            Eigen::Index lo = 0;
            while (v >= g[lo + 1])
                ++lo;
            return std::pair<Eigen::Index, double>{lo, (v - g[lo]) / (g[lo + 1] - g[lo])};
        };
        const auto [i, wt] = locate(t_grid_, t);
        const auto [j, wx] = locate(x_grid_, x);
        const Eigen::Index i1 = t_grid_.size() == 1 ? i : i + 1;
        const Eigen::Index j1 = x_grid_.size() == 1 ? j : j + 1;
        const double f00 = table_(i, j), f01 = table_(i, j1);
        const double f10 = table_(i1, j), f11 = table_(i1, j1);
        return (1 - wt) * ((1 - wx) * f00 + wx * f01) + wt * ((1 - wx) * f10 + wx * f11);
    }

    Kind kind_ = Kind::Constant;
    double value_ = 0.0;
    double horizon_ = std::numeric_limits<double>::infinity();
    std::vector<double> breaks_;
    std::vector<double> values_;
    Eigen::VectorXd x_grid_, t_grid_;
    Eigen::MatrixXd table_;
};

/// Evaluates a coefficient; identical to calling it directly.
inline double eval_coefficient(const CoefficientFn& c, double x, double t) { return c(x, t); }

} // namespace bachelier
