#pragma once

#include <json.hpp>

#include "bachelier/market_model.hpp"
#include "bachelier/payoff.hpp"

namespace bachelier::io {

/// JSON forms. Coefficients are tagged unions on "kind":
///   {"kind":"constant","value":v}
///   {"kind":"piecewise","breaks":[...],"values":[...],"horizon":h?}
///   {"kind":"tabulated","x":[...],"t":[...],"values":[[row per t]...]}
/// A model document is {"model":{rho,vol,rate,dividend?,A0,beta0},
/// "payoff":{"kind":...,"strike"|"x","g"}}.

nlohmann::json coefficient_to_json(const CoefficientFn& c);
CoefficientFn coefficient_from_json(const nlohmann::json& j);

nlohmann::json model_to_json(const MarketModel& m);
MarketModel model_from_json(const nlohmann::json& j);

nlohmann::json payoff_to_json(const Payoff& p);
Payoff payoff_from_json(const nlohmann::json& j);

} // namespace bachelier::io
