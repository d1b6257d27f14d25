#pragma once

#include <map>
#include <optional>
#include <string>

namespace bachelier::analytic {

enum class Method { Closed, Pde, Mc, Quadrature };

inline const char* method_name(Method m) {
    switch (m) {
    case Method::Closed:
        return "closed";
    case Method::Pde:
        return "pde";
    case Method::Mc:
        return "mc";
    case Method::Quadrature:
        return "quadrature";
    }
    return "?";
}

/// A priced value with an optional Monte Carlo standard error and free-form
/// numeric diagnostics (convergence info, cross-checks, flags).
struct PriceResult {
    double value = 0.0;
    std::optional<double> stderr_value;
    Method method = Method::Closed;
    std::map<std::string, double> diagnostics;
};

} // namespace bachelier::analytic
