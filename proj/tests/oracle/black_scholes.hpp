#pragma once

#include <cmath>

namespace oracle {

inline double norm_cdf(double x)
{
    return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

// European call, constant volatility and rate.
inline double bs_call(double s, double k, double vol, double r, double t)
{
    if (s <= 0.0)
        return 0.0;
    const double sd = vol * std::sqrt(t);
    const double d1 = (std::log(s / k) + (r + 0.5 * vol * vol) * t) / sd;
    return s * norm_cdf(d1) - k * std::exp(-r * t) * norm_cdf(d1 - sd);
}

} // namespace oracle
