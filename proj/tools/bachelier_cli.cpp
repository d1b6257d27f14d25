// Command-line front end: price | curve | forward | futures | simulate | validate.
// Model files use the JSON schema of the library; reports are JSON with all
// computed figures rounded to 9 significant digits; surfaces and paths are CSV.
// Exit codes: 0 success, 1 validation failure, 2 input error, 3 numerical error.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "bachelier/analytic.hpp"
#include "bachelier/curve.hpp"
#include "bachelier/json_io.hpp"
#include "bachelier/mc.hpp"
#include "bachelier/parallel.hpp"
#include "bachelier/pde.hpp"
#include "bachelier/simulate.hpp"
#include "bachelier/validate.hpp"

namespace {

using nlohmann::json;
using namespace bachelier;

double round9(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", x);
    return std::strtod(buf, nullptr);
}

struct Output {
    std::string path; // empty = stdout
    void write(const std::string& text) const {
        if (path.empty()) {
            std::cout << text;
            return;
        }
        std::ofstream f(path, std::ios::binary);
        if (!f)
            throw std::invalid_argument("cannot open output file: " + path);
        f << text;
    }
};

json load_json(const std::string& path) {
    std::ifstream f(path);
    if (!f)
        throw std::invalid_argument("cannot open model file: " + path);
    return json::parse(f);
}

std::uint64_t effective_seed(std::uint64_t flag_seed) {
    if (const char* env = std::getenv("BACHELIER_SEED"))
        return std::strtoull(env, nullptr, 10);
    return flag_seed;
}

struct PriceArgs {
    std::string model_path;
    std::string method = "closed";
    std::string drift_mode = "risk-neutral";
    double maturity = 1.0;
    std::uint64_t seed = 0;
    long paths = 100000;
    int steps = 250;
    int nx = 801;
    int nt = 200;
    double theta = 0.5;
    Output out;
};

int run_price(const PriceArgs& a) {
    const json doc = load_json(a.model_path);
    const MarketModel model = io::model_from_json(doc.at("model"));
    const Payoff payoff = io::payoff_from_json(doc.at("payoff"));
    const std::uint64_t seed = effective_seed(a.seed);

    json report;
    report["command"] = "price";
    report["method"] = a.method;
    report["inputs"]["model"] = doc.at("model");
    report["inputs"]["payoff"] = doc.at("payoff");
    report["inputs"]["maturity"] = a.maturity;

    if (a.method == "closed") {
        if (!model.has_constant_coefficients())
            throw std::invalid_argument("closed form needs constant coefficients");
        if (model.dividend() && model.dividend()->constant_value() != 0.0)
            throw std::invalid_argument("closed form does not price dividends");
        const double r = model.rate().constant_value();
        const double v = model.vol().constant_value();
        double value;
        if (payoff.kind() == Payoff::Kind::Call)
            value = analytic::bachelier_call(model.a0(), payoff.strike(), r, v, a.maturity);
        else if (payoff.kind() == Payoff::Kind::Put)
            value = analytic::bachelier_put(model.a0(), payoff.strike(), r, v, a.maturity);
        else if (payoff.kind() == Payoff::Kind::Forward)
            value = model.a0() - payoff.strike();
        else
            throw std::invalid_argument("closed form prices call, put or forward payoffs");
        report["value"] = round9(value);
    } else if (a.method == "pde") {
        pde::GridSpec grid = pde::default_grid(model, a.maturity);
        grid.n_x = a.nx;
        grid.n_t = a.nt;
        grid.theta = a.theta;
        report["drift_mode"] = a.drift_mode;
        report["inputs"]["n_x"] = a.nx;
        report["inputs"]["n_t"] = a.nt;
        report["inputs"]["theta"] = a.theta;
        analytic::PriceResult res;
        if (model.dividend())
            res = pde::price_dividend_pde(model, payoff, a.maturity, grid);
        else
            res = pde::price_bachelier_pde(model, payoff, a.maturity, grid,
                                           a.drift_mode == "paper-eq7"
                                               ? pde::DriftMode::Driftless
                                               : pde::DriftMode::RiskNeutral);
        report["value"] = round9(res.value);
    } else if (a.method == "mc") {
        sim::SimConfig cfg;
        cfg.seed = seed;
        cfg.n_paths = a.paths;
        cfg.n_steps = a.steps;
        report["inputs"]["seed"] = seed;
        report["inputs"]["paths"] = a.paths;
        report["inputs"]["steps"] = a.steps;
        const mc::McEstimate est =
            model.dividend() ? mc::price_ecc_dividend(model, payoff, a.maturity, cfg)
                             : mc::price_ecc_riskneutral(model, payoff, a.maturity, cfg);
        report["value"] = round9(est.value);
        report["stderr"] = round9(est.stderr_value);
    } else {
        throw std::invalid_argument("unknown method: " + a.method);
    }
    if (report["value"].get<double>() < 0.0)
        report["negative_price"] = true;
    a.out.write(report.dump(2) + "\n");
    return 0;
}

Eigen::VectorXd grid_to(double hi, double step) {
    const int n = static_cast<int>(std::lround(hi / step)) + 1;
    if (n < 2 || std::abs((n - 1) * step - hi) > 1e-9)
        throw std::invalid_argument("horizon must be a multiple of the grid step");
    Eigen::VectorXd g(n);
    for (int i = 0; i < n; ++i)
        g[i] = step * i;
    return g;
}

struct CurveArgs {
    // short-rate model
    double a = 0.0, b = 0.0, v = 0.0, r0 = 0.03;
    // bhjm / hjm
    double sigma = 0.2;
    double level = 0.03, slope = 0.0;
    double t_end = 1.0;
    std::uint64_t seed = 0;
    long paths = 10000;
    std::string what = "bond"; // bhjm output: bond | loan
    std::string measure = "risk-neutral";
    double theta_ell = 0.0;
    bool theta_set = false;
    // bootstrap
    std::string in_path;
    // shared
    double t_max = 2.0;
    double step = 0.25;
    Output out;
};

int run_curve_hw(const CurveArgs& a) {
    const analytic::HullWhiteParams p(CoefficientFn::constant(a.a), CoefficientFn::constant(a.b),
                                      CoefficientFn::constant(a.v), a.r0);
    Eigen::VectorXd t_grid(1);
    t_grid[0] = 0.0;
    const auto surface = curve::hw_curve(p, t_grid, grid_to(a.t_max, a.step));
    std::ostringstream os;
    curve::write_csv(surface, os);
    a.out.write(os.str());
    return 0;
}

int run_curve_bhjm(const CurveArgs& a) {
    curve::BhjmSpec spec;
    spec.sigma_ell = a.sigma;
    spec.T_grid = grid_to(a.t_max, a.step);
    spec.initial_curve.resize(spec.T_grid.size());
    for (Eigen::Index j = 0; j < spec.T_grid.size(); ++j)
        spec.initial_curve[j] = a.level + a.slope * spec.T_grid[j];
    if (a.theta_set)
        spec.theta_ell = a.theta_ell;
    sim::SimConfig cfg;
    cfg.seed = effective_seed(a.seed);
    cfg.n_paths = a.paths;
    cfg.t_end = a.t_end;
    const auto paths = curve::bhjm_simulate(spec, cfg,
                                            a.measure == "physical" ? sim::Measure::Physical
                                                                    : sim::Measure::RiskNeutral);
    // emit the per-node sample mean surface
    const int n_steps = paths.n_steps();
    std::ostringstream os;
    os << "# kind: " << (a.what == "loan" ? "loan" : "bond") << "\n";
    os << "t,T,value\n";
    char buf[120];
    for (int k = 0; k <= n_steps; ++k)
        for (Eigen::Index j = k; j < spec.T_grid.size(); ++j) {
            double mean = 0.0;
            if (a.what == "loan") {
                for (long q = 0; q < paths.n_paths(); ++q)
                    mean += paths.loan_curves[static_cast<std::size_t>(k)](q, j);
            } else {
                for (long q = 0; q < paths.n_paths(); ++q)
                    mean += paths.bond(q, k, j);
            }
            mean /= static_cast<double>(paths.n_paths());
            std::snprintf(buf, sizeof buf, "%.9g,%.9g,%.9g\n", paths.times[k], spec.T_grid[j],
                          mean);
            os << buf;
        }
    a.out.write(os.str());
    return 0;
}

int run_curve_hjm(const CurveArgs& a) {
    const auto T_grid = grid_to(a.t_max, a.step);
    Eigen::VectorXd f0(T_grid.size());
    for (Eigen::Index j = 0; j < T_grid.size(); ++j)
        f0[j] = a.level + a.slope * T_grid[j];
    sim::SimConfig cfg;
    cfg.seed = effective_seed(a.seed);
    cfg.n_paths = std::max<long>(1, a.paths);
    cfg.t_end = a.t_end;
    const auto paths = curve::hjm_simulate_forward(CoefficientFn::constant(a.sigma), T_grid, f0,
                                                   cfg);
    std::ostringstream os;
    curve::write_csv(paths.surface(0), os);
    a.out.write(os.str());
    return 0;
}

int run_curve_bootstrap(const CurveArgs& a) {
    std::ifstream f(a.in_path);
    if (!f)
        throw std::invalid_argument("cannot open surface file: " + a.in_path);
    std::vector<std::tuple<double, double, double>> rows;
    std::string line;
    while (std::getline(f, line)) {
        if (line.empty() || line[0] == '#' || line.rfind("t,", 0) == 0)
            continue;
        double t, T, v;
        if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &t, &T, &v) != 3)
            throw std::invalid_argument("bad surface row: " + line);
        rows.emplace_back(t, T, v);
    }
    if (rows.empty())
        throw std::invalid_argument("empty surface file");
    std::vector<double> ts, Ts;
    for (const auto& [t, T, v] : rows) {
        if (std::find(ts.begin(), ts.end(), t) == ts.end())
            ts.push_back(t);
        if (std::find(Ts.begin(), Ts.end(), T) == Ts.end())
            Ts.push_back(T);
    }
    std::sort(ts.begin(), ts.end());
    std::sort(Ts.begin(), Ts.end());
    curve::BondSurface s;
    s.t_grid = Eigen::Map<Eigen::VectorXd>(ts.data(), static_cast<Eigen::Index>(ts.size()));
    s.T_grid = Eigen::Map<Eigen::VectorXd>(Ts.data(), static_cast<Eigen::Index>(Ts.size()));
    s.values.setConstant(s.t_grid.size(), s.T_grid.size(),
                         std::numeric_limits<double>::quiet_NaN());
    for (const auto& [t, T, v] : rows)
        s.values(s.t_index(t), s.T_index(T)) = v;
    for (Eigen::Index i = 0; i < s.t_grid.size(); ++i) {
        const Eigen::Index jd = s.T_index(s.t_grid[i]);
        if (std::abs(s.values(i, jd) - 1.0) > 1e-9)
            throw std::invalid_argument("bond surface must have B(t,t) = 1");
    }
    const auto rates = curve::rates_from_bonds(
        s, a.what == "forward" ? curve::RateSurface::Kind::Forward
                               : curve::RateSurface::Kind::Loan);
    std::ostringstream os;
    curve::write_csv(rates, os);
    a.out.write(os.str());
    return 0;
}

struct ForwardArgs {
    double spot = 0.0;
    std::optional<double> value;
    std::optional<double> delivery;
    std::optional<double> bond;
    std::optional<double> rint;
    Output out;
};

int run_forward(const ForwardArgs& a) {
    json report;
    report["command"] = "forward";
    report["inputs"]["spot"] = a.spot;
    if (a.delivery || a.bond || a.rint) {
        if (!(a.delivery && a.bond && a.rint))
            throw std::invalid_argument(
                "valuing a forward needs --delivery, --bond and --rint together");
        const auto v = analytic::forward_value_at(a.spot, *a.delivery, *a.bond, *a.rint);
        report["inputs"]["delivery"] = *a.delivery;
        report["inputs"]["bond"] = *a.bond;
        report["inputs"]["rint"] = *a.rint;
        report["value"] = round9(v.value);
        report["decomposition"]["asset_leg"] = round9(v.asset_leg);
        report["decomposition"]["rate_leg"] = round9(v.rate_leg);
        report["decomposition"]["bond_leg"] = round9(v.bond_leg);
    } else {
        const double value = a.value.value_or(0.0);
        report["inputs"]["value"] = value;
        report["delivery_price"] = round9(analytic::forward_price(a.spot, value));
    }
    a.out.write(report.dump(2) + "\n");
    return 0;
}

struct FuturesArgs {
    double spot = 0.0;
    double rint = 0.0;
    std::optional<double> expected_spot_physical;
    Output out;
};

int run_futures(const FuturesArgs& a) {
    json report;
    report["command"] = "futures";
    report["inputs"]["spot"] = a.spot;
    report["inputs"]["rint"] = a.rint;
    const double phi = analytic::futures_price(a.spot, a.rint);
    report["futures_price"] = round9(phi);
    report["delivery_price"] = round9(analytic::futures_delivery_price(a.spot, phi));
    if (a.expected_spot_physical) {
        report["inputs"]["expected_spot_physical"] = *a.expected_spot_physical;
        const auto sp = analytic::forward_futures_spread(a.rint, phi, *a.expected_spot_physical);
        report["spread"] = round9(sp.spread);
        report["market_state"] = analytic::market_state_name(sp.state);
    }
    a.out.write(report.dump(2) + "\n");
    return 0;
}

struct SimArgs {
    std::string model_path;
    std::string kind = "asset"; // asset | fk | hw
    std::string measure = "risk-neutral";
    std::string scheme = "euler";
    double rho = 0.0, vol = 1.0, rate = 0.0, a0 = 100.0;
    std::optional<double> dividend;
    double hw_a = 0.0, hw_b = 0.0, hw_v = 0.0, hw_r0 = 0.03;
    double x0 = 0.0;
    double t0 = 0.0, maturity = 1.0;
    std::uint64_t seed = 0;
    long paths = 1000;
    int steps = 250;
    Output out;
};

int run_simulate(const SimArgs& a) {
    sim::SimConfig cfg;
    cfg.seed = effective_seed(a.seed);
    cfg.n_paths = a.paths;
    cfg.n_steps = a.steps;
    cfg.t_start = a.t0;
    cfg.t_end = a.t0 + a.maturity;
    cfg.scheme = a.scheme == "exact" ? sim::Scheme::ExactWhereAvailable : sim::Scheme::Euler;

    sim::PathSet ps;
    if (a.kind == "hw") {
        const analytic::HullWhiteParams p(CoefficientFn::constant(a.hw_a),
                                          CoefficientFn::constant(a.hw_b),
                                          CoefficientFn::constant(a.hw_v), a.hw_r0);
        ps = sim::simulate_hw_rate(p, cfg);
    } else if (a.kind == "fk") {
        ps = sim::simulate_fk_diffusion(CoefficientFn::constant(a.vol),
                                        CoefficientFn::constant(a.rho), a.x0, cfg);
    } else if (a.kind == "asset") {
        std::optional<MarketModel> model;
        if (!a.model_path.empty()) {
            const json doc = load_json(a.model_path);
            model = io::model_from_json(doc.contains("model") ? doc.at("model") : doc);
        } else {
            std::optional<CoefficientFn> div;
            if (a.dividend)
                div = CoefficientFn::constant(*a.dividend);
            model = MarketModel(CoefficientFn::constant(a.rho), CoefficientFn::constant(a.vol),
                                CoefficientFn::constant(a.rate), a.a0, 1.0, std::move(div));
        }
        ps = sim::simulate_asset(*model, cfg,
                                 a.measure == "physical" ? sim::Measure::Physical
                                                         : sim::Measure::RiskNeutral);
    } else {
        throw std::invalid_argument("unknown simulation kind: " + a.kind);
    }
    std::ostringstream os;
    sim::write_csv(ps, os);
    a.out.write(os.str());
    return 0;
}

struct ValidateArgs {
    std::string filter;
    int inject_fail = 0;
    std::uint64_t seed = 20240901;
    Output out;
};

int run_validate(const ValidateArgs& a) {
    validate::Options opts;
    opts.filter = a.filter;
    opts.inject_fail_id = a.inject_fail;
    opts.seed = effective_seed(a.seed);
    const auto results = validate::run_acceptance(opts);
    std::ostringstream os;
    validate::print_table(results, os);
    a.out.write(os.str());
    return validate::all_passed(results) ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bachelier market-model pricing and term-structure engine"};
    app.require_subcommand(1);

    unsigned threads = 0;
    app.add_option("--threads", threads, "worker threads (0 = all cores)");

    PriceArgs price;
    auto* cmd_price = app.add_subcommand("price", "price a claim from a model file");
    cmd_price->add_option("--model", price.model_path, "model + payoff JSON file")->required();
    cmd_price->add_option("--method", price.method, "closed | pde | mc");
    cmd_price->add_option("--maturity", price.maturity, "claim maturity in years");
    cmd_price->add_option("--seed", price.seed, "rng seed (mc)");
    cmd_price->add_option("--paths", price.paths, "mc paths");
    cmd_price->add_option("--steps", price.steps, "mc steps");
    cmd_price->add_option("--nx", price.nx, "pde space nodes");
    cmd_price->add_option("--nt", price.nt, "pde time steps");
    cmd_price->add_option("--theta", price.theta, "pde time blend");
    cmd_price->add_option("--drift-mode", price.drift_mode, "paper-eq7 | risk-neutral");
    cmd_price->add_option("--output", price.out.path, "write the report here");

    CurveArgs curve_args;
    auto* cmd_curve = app.add_subcommand("curve", "term-structure surfaces");
    cmd_curve->require_subcommand(1);
    auto* hw = cmd_curve->add_subcommand("hw", "mean-reverting short-rate bond surface");
    hw->add_option("--a", curve_args.a, "drift level");
    hw->add_option("--b", curve_args.b, "mean reversion");
    hw->add_option("--v", curve_args.v, "rate volatility");
    hw->add_option("--r0", curve_args.r0, "initial rate");
    hw->add_option("--tmax", curve_args.t_max, "horizon");
    hw->add_option("--dT", curve_args.step, "grid step");
    hw->add_option("--output", curve_args.out.path);
    auto* bhjm = cmd_curve->add_subcommand("bhjm", "no-interest-loan curve simulation");
    bhjm->add_option("--sigma", curve_args.sigma, "proportional loan-rate volatility");
    bhjm->add_option("--l0", curve_args.level, "initial curve level");
    bhjm->add_option("--l-slope", curve_args.slope, "initial curve slope");
    bhjm->add_option("--tmax", curve_args.t_max);
    bhjm->add_option("--dT", curve_args.step);
    bhjm->add_option("--t-end", curve_args.t_end, "simulation end time");
    bhjm->add_option("--seed", curve_args.seed);
    bhjm->add_option("--paths", curve_args.paths);
    bhjm->add_option("--what", curve_args.what, "bond | loan");
    bhjm->add_option("--measure", curve_args.measure, "risk-neutral | physical");
    auto* otheta = bhjm->add_option("--theta-ell", curve_args.theta_ell, "market price of risk");
    bhjm->add_option("--output", curve_args.out.path);
    auto* hjm = cmd_curve->add_subcommand("hjm", "forward-rate curve sample");
    hjm->add_option("--sigma", curve_args.sigma, "forward-rate volatility");
    hjm->add_option("--f0", curve_args.level, "initial curve level");
    hjm->add_option("--f-slope", curve_args.slope, "initial curve slope");
    hjm->add_option("--tmax", curve_args.t_max);
    hjm->add_option("--dT", curve_args.step);
    hjm->add_option("--t-end", curve_args.t_end);
    hjm->add_option("--seed", curve_args.seed);
    hjm->add_option("--paths", curve_args.paths);
    hjm->add_option("--output", curve_args.out.path);
    auto* boot = cmd_curve->add_subcommand("bootstrap", "rates from a bond surface");
    boot->add_option("--in", curve_args.in_path, "bond surface CSV")->required();
    boot->add_option("--what", curve_args.what, "loan | forward");
    boot->add_option("--output", curve_args.out.path);

    ForwardArgs fwd;
    auto* cmd_forward = app.add_subcommand("forward", "forward prices and values");
    cmd_forward->add_option("--spot", fwd.spot)->required();
    double fwd_value = 0.0, fwd_delivery = 0.0, fwd_bond = 0.0, fwd_rint = 0.0;
    auto* ov = cmd_forward->add_option("--value", fwd_value, "contract value at initiation");
    auto* od = cmd_forward->add_option("--delivery", fwd_delivery, "delivery price");
    auto* ob = cmd_forward->add_option("--bond", fwd_bond, "zero-coupon bond B(s,T)");
    auto* oi = cmd_forward->add_option("--rint", fwd_rint, "expected rate integral over [s,T]");
    cmd_forward->add_option("--output", fwd.out.path);

    FuturesArgs fut;
    auto* cmd_futures = app.add_subcommand("futures", "futures price and spread");
    cmd_futures->add_option("--spot", fut.spot)->required();
    cmd_futures->add_option("--rint", fut.rint, "rate integral to maturity")->required();
    double fut_exp = 0.0;
    auto* oe = cmd_futures->add_option("--expected-spot-physical", fut_exp,
                                       "physical-measure expected terminal price");
    cmd_futures->add_option("--output", fut.out.path);

    SimArgs simargs;
    auto* cmd_sim = app.add_subcommand("simulate", "dump simulated paths as CSV");
    cmd_sim->add_option("--model", simargs.model_path, "model JSON file (asset kind)");
    cmd_sim->add_option("--kind", simargs.kind, "asset | fk | hw");
    cmd_sim->add_option("--measure", simargs.measure, "physical | risk-neutral");
    cmd_sim->add_option("--scheme", simargs.scheme, "euler | exact");
    cmd_sim->add_option("--rho", simargs.rho);
    cmd_sim->add_option("--vol", simargs.vol);
    cmd_sim->add_option("--rate", simargs.rate);
    cmd_sim->add_option("--A0", simargs.a0);
    double sim_div = 0.0;
    auto* osd = cmd_sim->add_option("--dividend", sim_div);
    cmd_sim->add_option("--a", simargs.hw_a);
    cmd_sim->add_option("--b", simargs.hw_b);
    cmd_sim->add_option("--v", simargs.hw_v);
    cmd_sim->add_option("--r0", simargs.hw_r0);
    cmd_sim->add_option("--x0", simargs.x0);
    cmd_sim->add_option("--t0", simargs.t0);
    cmd_sim->add_option("--maturity", simargs.maturity);
    cmd_sim->add_option("--seed", simargs.seed);
    cmd_sim->add_option("--paths", simargs.paths);
    cmd_sim->add_option("--steps", simargs.steps);
    cmd_sim->add_option("--output", simargs.out.path);

    ValidateArgs val;
    auto* cmd_validate = app.add_subcommand("validate", "run the validation suite");
    cmd_validate->add_option("--filter", val.filter, "run only matching criteria");
    cmd_validate->add_option("--seed", val.seed);
    cmd_validate->add_option("--inject-fail", val.inject_fail, "test hook: force a failure")
        ->group(""); // hidden
    cmd_validate->add_option("--output", val.out.path);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (threads != 0)
        sim::set_thread_count(threads);

    try {
        if (cmd_price->parsed())
            return run_price(price);
        if (cmd_curve->parsed()) {
            if (otheta->count())
                curve_args.theta_set = true;
            if (hw->parsed())
                return run_curve_hw(curve_args);
            if (bhjm->parsed())
                return run_curve_bhjm(curve_args);
            if (hjm->parsed())
                return run_curve_hjm(curve_args);
            if (boot->parsed())
                return run_curve_bootstrap(curve_args);
        }
        if (cmd_forward->parsed()) {
            if (ov->count())
                fwd.value = fwd_value;
            if (od->count())
                fwd.delivery = fwd_delivery;
            if (ob->count())
                fwd.bond = fwd_bond;
            if (oi->count())
                fwd.rint = fwd_rint;
            return run_forward(fwd);
        }
        if (cmd_futures->parsed()) {
            if (oe->count())
                fut.expected_spot_physical = fut_exp;
            return run_futures(fut);
        }
        if (cmd_sim->parsed()) {
            if (osd->count())
                simargs.dividend = sim_div;
            return run_simulate(simargs);
        }
        if (cmd_validate->parsed())
            return run_validate(val);
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
