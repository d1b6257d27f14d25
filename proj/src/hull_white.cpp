#include "bachelier/hull_white.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bachelier/normal.hpp"
#include "bachelier/quadrature.hpp"

namespace bachelier::analytic {

namespace {

constexpr double kQuadTol = 1e-10;

// (1 - e^{-bL}) / b, stable for small b.
double decay_integral(double b, double len) {
    if (b == 0.0)
        return len;
    return -std::expm1(-b * len) / b;
}

// (e^{bL} - 1) / b, stable for small b.
double growth_integral(double b, double len) {
    if (b == 0.0)
        return len;
    return std::expm1(b * len) / b;
}

struct Segment {
    double t0, t1;
    double a, b, v;
    double b_star0; // b*(t0)
};

// Piecewise-constant decomposition of [lo, hi] with cached b*(t0) per piece.
std::vector<Segment> segments(const HullWhiteParams& p, double lo, double hi) {
    std::vector<double> cuts{lo};
    for (double c : p.breakpoints(lo, hi))
        cuts.push_back(c);
    cuts.push_back(hi);
    std::vector<Segment> segs;
    segs.reserve(cuts.size() - 1);
    // b* accumulated exactly from 0 to lo
    double bs = 0.0;
    if (lo > 0.0) {
        std::vector<double> head{0.0};
        for (double c : p.breakpoints(0.0, lo))
            head.push_back(c);
        head.push_back(lo);
        for (std::size_t i = 0; i + 1 < head.size(); ++i) {
            const double mid = 0.5 * (head[i] + head[i + 1]);
            bs += p.b(0.0, mid) * (head[i + 1] - head[i]);
        }
    }
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double mid = 0.5 * (cuts[i] + cuts[i + 1]);
        Segment s{cuts[i], cuts[i + 1], p.a(0.0, mid), p.b(0.0, mid), p.v(0.0, mid), bs};
        segs.push_back(s);
        bs += s.b * (s.t1 - s.t0);
    }
    return segs;
}

double b_star_pc(const HullWhiteParams& p, double t) {
    if (t == 0.0)
        return 0.0;
    const auto segs = segments(p, 0.0, t);
    const auto& last = segs.back();
    return last.b_star0 + last.b * (last.t1 - last.t0);
}

// integral over [lo, hi] of e^{-(b*(v) - b*(lo))} dv, piecewise-constant
// closed form; the relative exponent makes this the coefficient of r_lo in
// the conditional expectation of the rate integral
double c_pc(const HullWhiteParams& p, double lo, double hi) {
    const auto segs = segments(p, lo, hi);
    if (segs.empty())
        return 0.0;
    const double b_star_lo = segs.front().b_star0;
    double sum = 0.0;
    for (const auto& s : segs)
        sum += std::exp(-(s.b_star0 - b_star_lo)) * decay_integral(s.b, s.t1 - s.t0);
    return sum;
}

// integral over [lo, hi] of e^{b*(u)} a(u) du
double ea_pc(const HullWhiteParams& p, double lo, double hi) {
    double sum = 0.0;
    for (const auto& s : segments(p, lo, hi))
        sum += s.a * std::exp(s.b_star0) * growth_integral(s.b, s.t1 - s.t0);
    return sum;
}

// integral over [lo, hi] of e^{2 b*(u)} v(u)^2 du
double ev2_pc(const HullWhiteParams& p, double lo, double hi) {
    double sum = 0.0;
    for (const auto& s : segments(p, lo, hi))
        sum += s.v * s.v * std::exp(2.0 * s.b_star0) * growth_integral(2.0 * s.b, s.t1 - s.t0);
    return sum;
}

// a(t,T) piecewise-constant closed form: per segment the integrand splits
// into an in-segment part and e^{b*} a times the downstream c(s1, T).
double a_term_pc(const HullWhiteParams& p, double lo, double hi) {
    const auto segs = segments(p, lo, hi);
    double sum = 0.0;
    double c_tail = 0.0; // c(s.t1, hi), built from the back
    std::vector<double> tails(segs.size());
    for (std::size_t i = segs.size(); i-- > 0;) {
        tails[i] = c_tail;
        c_tail += std::exp(-segs[i].b_star0) * decay_integral(segs[i].b, segs[i].t1 - segs[i].t0);
    }
    for (std::size_t i = 0; i < segs.size(); ++i) {
        const auto& s = segs[i];
        const double len = s.t1 - s.t0;
        double inner; // integral of e^{b*(v)} (in-segment c(v, s.t1)) dv
        if (s.b == 0.0)
            inner = 0.5 * len * len;
        else
            inner = (len - decay_integral(s.b, len)) / s.b;
        sum += s.a * inner;
        sum += s.a * tails[i] * std::exp(s.b_star0) * growth_integral(s.b, len);
    }
    return sum;
}

} // namespace

HullWhiteParams::HullWhiteParams(CoefficientFn a_fn, CoefficientFn b_fn, CoefficientFn v_fn,
                                 double r0_val)
    : a(std::move(a_fn)), b(std::move(b_fn)), v(std::move(v_fn)), r0(r0_val) {
    double horizon = std::min({a.horizon(), b.horizon(), v.horizon()});
    if (!std::isfinite(horizon))
        horizon = 50.0;
    for (int i = 0; i <= 256; ++i) {
        const double t = horizon * i / 256.0;
        if (a(0.0, t) < 0.0 || b(0.0, t) < 0.0 || v(0.0, t) < 0.0)
            throw std::invalid_argument("HullWhiteParams: a, b, v must be nonnegative");
    }
}

bool HullWhiteParams::piecewise_constant() const {
    return a.time_only() && b.time_only() && v.time_only();
}

std::vector<double> HullWhiteParams::breakpoints(double lo, double hi) const {
    std::vector<double> cuts;
    for (const CoefficientFn* c : {&a, &b, &v})
        if (c->kind() == CoefficientFn::Kind::PiecewiseConstantInTime)
            for (double t : c->breakpoints())
                if (t > lo && t < hi)
                    cuts.push_back(t);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    return cuts;
}

double hw_b_star(const HullWhiteParams& p, double t) {
    if (t < 0.0)
        throw std::domain_error("hw_b_star: t must be >= 0");
    if (p.piecewise_constant())
        return b_star_pc(p, t);
    return integrate([&](double u) { return p.b(0.0, u); }, 0.0, t, kQuadTol);
}

double hw_c(const HullWhiteParams& p, double t, double T) {
    if (t > T)
        throw std::domain_error("hw_c: need t <= T");
    if (p.piecewise_constant())
        return c_pc(p, t, T);
    const double b_star_t = hw_b_star(p, t);
    return integrate([&](double u) { return std::exp(-(hw_b_star(p, u) - b_star_t)); }, t, T,
                     kQuadTol);
}

double hw_a_term(const HullWhiteParams& p, double t, double T) {
    if (t > T)
        throw std::domain_error("hw_a_term: need t <= T");
    if (p.piecewise_constant())
        return a_term_pc(p, t, T);
    // the growth factor e^{b*(v)} is already inside the relative hw_c
    return integrate([&](double v) { return p.a(0.0, v) * hw_c(p, v, T); }, t, T, kQuadTol);
}

double hw_bond_price(const HullWhiteParams& p, double r_t, double t, double T) {
    if (t > T)
        throw std::domain_error("hw_bond_price: need t <= T");
    if (t == T)
        return 1.0;
    return 1.0 - r_t * hw_c(p, t, T) - hw_a_term(p, t, T);
}

HwMoments hw_moments(const HullWhiteParams& p, double tau) {
    if (!(tau >= 0.0))
        throw std::domain_error("hw_moments: tau must be >= 0");
    HwMoments m;
    if (tau == 0.0) {
        m.mean_r = p.r0;
        return m;
    }
    const bool pc = p.piecewise_constant();
    const auto breaks = p.breakpoints(0.0, tau);

    const auto ea = [&](double lo, double hi) {
        if (pc)
            return ea_pc(p, lo, hi);
        return integrate([&](double u) { return std::exp(hw_b_star(p, u)) * p.a(0.0, u); }, lo,
                         hi, kQuadTol);
    };
    const auto cfun = [&](double lo, double hi) { return hw_c(p, lo, hi); };

    const double bs_tau = hw_b_star(p, tau);
    m.mean_r = std::exp(-bs_tau) * (p.r0 + ea(0.0, tau));
    m.var_r = std::exp(-2.0 * bs_tau) *
              (pc ? ev2_pc(p, 0.0, tau)
                  : integrate(
                        [&](double u) {
                            const double vv = p.v(0.0, u);
                            return std::exp(2.0 * hw_b_star(p, u)) * vv * vv;
                        },
                        0.0, tau, kQuadTol));

    m.mean_R = integrate_split(
        [&](double v) { return std::exp(-hw_b_star(p, v)) * (p.r0 + ea(0.0, v)); }, 0.0, tau,
        breaks, kQuadTol);
    // cfun carries the relative exponent e^{b*(u)} already, so the noise
    // loadings below need no extra growth factor
    m.var_R = integrate_split(
        [&](double u) {
            const double vv = p.v(0.0, u);
            const double tail = cfun(u, tau);
            return vv * vv * tail * tail;
        },
        0.0, tau, breaks, kQuadTol);
    m.cov = integrate_split(
        [&](double u) {
            const double vv = p.v(0.0, u);
            return std::exp(-(bs_tau - hw_b_star(p, u))) * vv * vv * cfun(u, tau);
        },
        0.0, tau, breaks, kQuadTol);
    m.var_R = std::max(m.var_R, 0.0);
    m.var_r = std::max(m.var_r, 0.0);
    return m;
}

PriceResult hw_bond_call(const HullWhiteParams& p, double T_bond, double tau_opt, double K) {
    if (!(tau_opt > 0.0 && tau_opt < T_bond))
        throw std::domain_error("hw_bond_call: need 0 < tau_opt < T_bond");
    const HwMoments m = hw_moments(p, tau_opt);
    const double c = hw_c(p, tau_opt, T_bond);
    const double a = hw_a_term(p, tau_opt, T_bond);
    const double q = 1.0 - a - K;
    const double sigma = c * std::sqrt(m.var_r);

    PriceResult res;
    res.method = Method::Closed;
    double expectation; // E (q - c r_tau)^+
    if (sigma > 0.0) {
        const double d = (q - c * m.mean_r) / sigma;
        expectation = (q - c * m.mean_r) * norm_cdf(d) + sigma * norm_pdf(d);
    } else {
        expectation = std::max(q - c * m.mean_r, 0.0);
    }
    res.value = expectation - m.mean_R;

    // literal 2-D evaluation over the bivariate (R, r) density
    double two_d;
    if (m.var_R <= 0.0 && m.var_r <= 0.0) {
        two_d = std::max(q - c * m.mean_r, 0.0) - m.mean_R;
    } else {
        const auto rule = gauss_hermite(64);
        // Cholesky of [[var_R, cov],[cov, var_r]] with a PSD guard
        const double l11 = std::sqrt(std::max(m.var_R, 0.0));
        const double l21 = l11 > 0.0 ? m.cov / l11 : 0.0;
        const double l22 = std::sqrt(std::max(m.var_r - l21 * l21, 0.0));
        const double scale = std::sqrt(2.0);
        double acc = 0.0;
        for (int i = 0; i < rule.nodes.size(); ++i) {
            const double zi = rule.nodes[i];
            double inner = 0.0;
            for (int j = 0; j < rule.nodes.size(); ++j) {
                const double zj = rule.nodes[j];
                const double x = m.mean_R + scale * l11 * zi;
                const double y = m.mean_r + scale * (l21 * zi + l22 * zj);
                inner += rule.weights[j] * (std::max(q - c * y, 0.0) - x);
            }
            acc += rule.weights[i] * inner;
        }
        two_d = acc / M_PI;
    }
    res.diagnostics["two_d_quadrature"] = two_d;
    res.diagnostics["mean_R"] = m.mean_R;
    res.diagnostics["mean_r"] = m.mean_r;
    res.diagnostics["var_r"] = m.var_r;
    res.diagnostics["bond_forward"] = 1.0 - a - c * m.mean_r;
    if (res.value < 0.0)
        res.diagnostics["negative_price"] = 1.0;
    return res;
}

double hw_noarb_residual(const HullWhiteParams& p, double r_t, double t, double T) {
    if (!(t < T))
        throw std::domain_error("hw_noarb_residual: need t < T");
    const double bs = hw_b_star(p, t);
    const double dc_dt = -std::exp(-bs);
    const double da_dt = -p.a(0.0, t) * hw_c(p, t, T); // -e^{b*(t)} a(t) int e^{-b*}
    return p.a(0.0, t) - p.b(0.0, t) * r_t + r_t * dc_dt + da_dt + r_t;
}

} // namespace bachelier::analytic
