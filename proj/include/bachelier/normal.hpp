#pragma once

#include <cmath>
#include <stdexcept>

namespace bachelier {

/// Standard normal density.
template <typename T = double>
inline T norm_pdf(T x) {
    constexpr double inv_sqrt_2pi = 0.3989422804014326779;
    return T(inv_sqrt_2pi) * std::exp(T(-0.5) * x * x);
}

/// Standard normal CDF via the Hart rational approximation (double precision
/// variant of West 2005). Absolute error below 1e-15 on the whole line; used
/// instead of erfc so that printed example values reproduce bit-stably.
template <typename T = double>
inline T norm_cdf(T x) {
    const T z = std::abs(x);
    T c;
    if (z > T(37.0)) {
        c = T(0);
    } else {
        const T e = std::exp(-z * z / T(2));
        if (z < T(7.07106781186547)) {
            T b = T(3.52624965998911e-02) * z + T(0.700383064443688);
            b = b * z + T(6.37396220353165);
            b = b * z + T(33.912866078383);
            b = b * z + T(112.079291497871);
            b = b * z + T(221.213596169931);
            b = b * z + T(220.206867912376);
            T d = T(8.83883476483184e-02) * z + T(1.75566716318264);
            d = d * z + T(16.064177579207);
            d = d * z + T(86.7807322029461);
            d = d * z + T(296.564248779674);
            d = d * z + T(637.333633378831);
            d = d * z + T(793.826512519948);
            d = d * z + T(440.413735824752);
            c = e * b / d;
        } else {
            T b = z + T(0.65);
            b = z + T(4) / b;
            b = z + T(3) / b;
            b = z + T(2) / b;
            b = z + T(1) / b;
            c = e / (b * T(2.506628274631000502));
        }
    }
    return x > T(0) ? T(1) - c : c;
}

/// Inverse of the standard normal CDF, Wichura's algorithm AS 241 (PPND16).
/// Relative error around 1e-16 away from the endpoints.
inline double norm_ppf(double p) {
    if (!(p > 0.0 && p < 1.0))
        throw std::domain_error("norm_ppf: p must be in (0,1)");
    const double q = p - 0.5;
    if (std::abs(q) <= 0.425) {
        const double r = 0.180625 - q * q;
        return q *
               (((((((2.5090809287301226727e+3 * r + 3.3430575583588128105e+4) * r +
                     6.7265770927008700853e+4) * r + 4.5921953931549871457e+4) * r +
                   1.3731693765509461125e+4) * r + 1.9715909503065514427e+3) * r +
                 1.3314166789178437745e+2) * r + 3.3871328727963666080e+0) /
               (((((((5.2264952788528545610e+3 * r + 2.8729085735721942674e+4) * r +
                     3.9307895800092710610e+4) * r + 2.1213794301586595867e+4) * r +
                   5.3941960214247511077e+3) * r + 6.8718700749205790830e+2) * r +
                 4.2313330701600911252e+1) * r + 1.0);
    }
    double r = q < 0.0 ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    double x;
    if (r <= 5.0) {
        r -= 1.6;
        x = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                  2.41780725177450611770e-1) * r + 1.27045825245236838258e+0) * r +
                3.64784832476320460504e+0) * r + 5.76949722146069140550e+0) * r +
              4.63033784615654529590e+0) * r + 1.42343711074968357734e+0) /
            (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                  1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
                6.89767334985100004550e-1) * r + 1.67638483018380384940e+0) * r +
              2.05319162663775882187e+0) * r + 1.0);
    } else {
        r -= 5.0;
        x = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                  1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
                2.96560571828504891230e-1) * r + 1.78482653991729133580e+0) * r +
              5.46378491116411436990e+0) * r + 6.65790464350110377720e+0) /
            (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                  1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
                1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
              5.99832206555887937690e-1) * r + 1.0);
    }
    return q < 0.0 ? -x : x;
}

} // namespace bachelier
