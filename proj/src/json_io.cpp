#include "bachelier/json_io.hpp"

#include <cmath>
#include <stdexcept>

namespace bachelier::io {

using nlohmann::json;

json coefficient_to_json(const CoefficientFn& c) {
    json j;
    switch (c.kind()) {
    case CoefficientFn::Kind::Constant:
        j["kind"] = "constant";
        j["value"] = c.constant_value();
        break;
    case CoefficientFn::Kind::PiecewiseConstantInTime:
        j["kind"] = "piecewise";
        j["breaks"] = c.breakpoints();
        j["values"] = c.piece_values();
        if (std::isfinite(c.horizon()))
            j["horizon"] = c.horizon();
        break;
    case CoefficientFn::Kind::Tabulated: {
        j["kind"] = "tabulated";
        const auto& xs = c.table_x_grid();
        const auto& ts = c.table_t_grid();
        const auto& tab = c.table_values();
        j["x"] = std::vector<double>(xs.data(), xs.data() + xs.size());
        j["t"] = std::vector<double>(ts.data(), ts.data() + ts.size());
        json rows = json::array();
        for (Eigen::Index i = 0; i < tab.rows(); ++i) {
            json row = json::array();
            for (Eigen::Index k = 0; k < tab.cols(); ++k)
                row.push_back(tab(i, k));
            rows.push_back(row);
        }
        j["values"] = rows;
        break;
    }
    }
    return j;
}

CoefficientFn coefficient_from_json(const json& j) {
    if (j.is_number())
        return CoefficientFn::constant(j.get<double>());
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "constant")
        return CoefficientFn::constant(j.at("value").get<double>());
    if (kind == "piecewise") {
        const double horizon = j.contains("horizon")
                                   ? j.at("horizon").get<double>()
                                   : std::numeric_limits<double>::infinity();
        return CoefficientFn::piecewise(j.at("breaks").get<std::vector<double>>(),
                                        j.at("values").get<std::vector<double>>(), horizon);
    }
    if (kind == "tabulated") {
        const auto xv = j.at("x").get<std::vector<double>>();
        const auto tv = j.at("t").get<std::vector<double>>();
        const auto rows = j.at("values");
        Eigen::VectorXd xs = Eigen::Map<const Eigen::VectorXd>(xv.data(), xv.size());
        Eigen::VectorXd ts = Eigen::Map<const Eigen::VectorXd>(tv.data(), tv.size());
        Eigen::MatrixXd tab(ts.size(), xs.size());
        if (rows.size() != static_cast<std::size_t>(ts.size()))
            throw std::invalid_argument("coefficient: values must have one row per t node");
        for (Eigen::Index i = 0; i < ts.size(); ++i) {
            const auto row = rows[static_cast<std::size_t>(i)].get<std::vector<double>>();
            if (row.size() != static_cast<std::size_t>(xs.size()))
                throw std::invalid_argument("coefficient: row length must match x grid");
            for (Eigen::Index k = 0; k < xs.size(); ++k)
                tab(i, k) = row[static_cast<std::size_t>(k)];
        }
        return CoefficientFn::tabulated(std::move(xs), std::move(ts), std::move(tab));
    }
    throw std::invalid_argument("coefficient: unknown kind '" + kind + "'");
}

json model_to_json(const MarketModel& m) {
    json j;
    j["rho"] = coefficient_to_json(m.rho());
    j["vol"] = coefficient_to_json(m.vol());
    j["rate"] = coefficient_to_json(m.rate());
    if (m.dividend())
        j["dividend"] = coefficient_to_json(*m.dividend());
    j["A0"] = m.a0();
    j["beta0"] = m.beta0();
    return j;
}

MarketModel model_from_json(const json& j) {
    std::optional<CoefficientFn> dividend;
    if (j.contains("dividend") && !j.at("dividend").is_null())
        dividend = coefficient_from_json(j.at("dividend"));
    return MarketModel(coefficient_from_json(j.at("rho")), coefficient_from_json(j.at("vol")),
                       coefficient_from_json(j.at("rate")), j.at("A0").get<double>(),
                       j.at("beta0").get<double>(), std::move(dividend));
}

json payoff_to_json(const Payoff& p) {
    json j;
    switch (p.kind()) {
    case Payoff::Kind::Call:
        j["kind"] = "call";
        j["strike"] = p.strike();
        break;
    case Payoff::Kind::Put:
        j["kind"] = "put";
        j["strike"] = p.strike();
        break;
    case Payoff::Kind::Forward:
        j["kind"] = "forward";
        j["strike"] = p.strike();
        break;
    case Payoff::Kind::Tabulated:
        j["kind"] = "tabulated";
        j["x"] = p.x_grid();
        j["g"] = p.g_grid();
        break;
    }
    return j;
}

Payoff payoff_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "call")
        return Payoff::call(j.at("strike").get<double>());
    if (kind == "put")
        return Payoff::put(j.at("strike").get<double>());
    if (kind == "forward")
        return Payoff::forward(j.at("strike").get<double>());
    if (kind == "tabulated")
        return Payoff::tabulated(j.at("x").get<std::vector<double>>(),
                                 j.at("g").get<std::vector<double>>());
    throw std::invalid_argument("payoff: unknown kind '" + kind + "'");
}

} // namespace bachelier::io
