#pragma once

// Per-node arithmetic shared by the serial and OpenMP kernels, so both
// accumulate in exactly the same order.

#include <cstddef>
#include <span>

#include "fourfactor/operators.hpp"

namespace ff::kernels::detail {

inline double axis_term(const AxisOperator& ax, std::size_t stride, std::span<const double> in,
                        std::size_t p)
{
    double t = ax.diag[p] * in[p];
    if (ax.lower[p] != 0.0)
        t += ax.lower[p] * in[p - stride];
    if (ax.upper[p] != 0.0)
        t += ax.upper[p] * in[p + stride];
    return t;
}

inline double mixed_term(double w, std::size_t sa, std::size_t sb, std::span<const double> in,
                         std::size_t p)
{
    return w * ((in[p + sa + sb] + in[p - sa - sb]) - (in[p + sa - sb] + in[p - sa + sb]));
}

// Start of line `line` along an axis with the given stride and node count.
inline std::size_t line_start(std::size_t line, std::size_t stride, std::size_t n)
{
    return (line / stride) * n * stride + line % stride;
}

struct LineBuffers {
    std::vector<double> lo, di, up, rhs, x, scratch;

    explicit LineBuffers(std::size_t n) : lo(n), di(n), up(n), rhs(n), x(n), scratch(n) {}
};

void solve_line(const AxisOperator& ax, double theta, std::size_t p0, std::size_t stride,
                std::size_t n, std::span<double> data, LineBuffers& buf);

} // namespace ff::kernels::detail
