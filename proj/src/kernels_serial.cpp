#include "fourfactor/tridiagonal.hpp"
#include "kernel_terms.hpp"

namespace ff::kernels {

namespace detail {

void solve_line(const AxisOperator& ax, double theta, std::size_t p0, std::size_t stride,
                std::size_t n, std::span<double> data, LineBuffers& buf)
{
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t p = p0 + k * stride;
        buf.lo[k] = -theta * ax.lower[p];
        buf.di[k] = 1.0 - theta * ax.diag[p];
        buf.up[k] = -theta * ax.upper[p];
        buf.rhs[k] = data[p];
    }
    // Tied ends: a copy end becomes the row y_b - y_in = 0. An extrapolated
    // end y_b = 2 y_in - y_in2 is substituted into its neighbour's row, the
    // rest is solved without it and y_b filled in afterwards.
    std::size_t first = 0, last = n;
    const int tie_lo = theta > 0.0 && n > 1 ? ax.tie[p0] : 0;
    const int tie_hi = theta > 0.0 && n > 1 ? ax.tie[p0 + (n - 1) * stride] : 0;
    if (tie_lo == 1) {
        buf.di[0] = 1.0;
        buf.up[0] = -1.0;
        buf.rhs[0] = 0.0;
    } else if (tie_lo == 2 && n >= 4) {
        buf.di[1] += 2.0 * buf.lo[1];
        buf.up[1] -= buf.lo[1];
        first = 1;
    }
    if (tie_hi == 1) {
        buf.lo[n - 1] = -1.0;
        buf.di[n - 1] = 1.0;
        buf.rhs[n - 1] = 0.0;
    } else if (tie_hi == 2 && n >= 4) {
        buf.di[n - 2] += 2.0 * buf.up[n - 2];
        buf.lo[n - 2] -= buf.up[n - 2];
        last = n - 1;
    }
    const std::size_t m = last - first;
    const auto sub = [&](std::vector<double>& v) { return std::span<double>(v).subspan(first, m); };
    solve_tridiagonal(sub(buf.lo), sub(buf.di), sub(buf.up), sub(buf.rhs), sub(buf.x), sub(buf.scratch));
    if (first == 1)
        buf.x[0] = 2.0 * buf.x[1] - buf.x[2];
    if (last == n - 1)
        buf.x[n - 1] = 2.0 * buf.x[n - 2] - buf.x[n - 3];
    for (std::size_t k = 0; k < n; ++k)
        data[p0 + k * stride] = buf.x[k];
}

} // namespace detail

namespace serial {

void apply_axis(const OperatorSet& ops, int axis, std::span<const double> in, std::span<double> out)
{
    const auto& ax = ops.axes[axis];
    const std::size_t st = ops.grid.stride(axis);
    for (std::size_t p = 0; p < in.size(); ++p)
        out[p] = ops.active[p] ? detail::axis_term(ax, st, in, p) : 0.0;
}

void apply_explicit(const OperatorSet& ops, std::span<const double> in, std::span<double> out)
{
    const Grid& g = ops.grid;
    const std::size_t size = in.size();
    for (std::size_t p = 0; p < size; ++p)
        out[p] = 0.0;
    for (int a = 0; a < g.rank(); ++a) {
        const std::size_t st = g.stride(a);
        for (std::size_t p = 0; p < size; ++p)
            if (ops.active[p])
                out[p] += detail::axis_term(ops.axes[a], st, in, p);
    }
    for (int k = 0; k < 6; ++k) {
        const auto& w = ops.mixed.weight[k];
        if (w.empty())
            continue;
        const auto [a, b] = MixedOperator::pairs[k];
        const std::size_t sa = g.stride(a), sb = g.stride(b);
        for (std::size_t p = 0; p < size; ++p)
            if (ops.active[p] && w[p] != 0.0)
                out[p] += detail::mixed_term(w[p], sa, sb, in, p);
    }
}

void solve_axis(const OperatorSet& ops, int axis, double theta, std::span<double> rhs)
{
    const std::size_t st = ops.grid.stride(axis);
    const std::size_t n = static_cast<std::size_t>(ops.grid.count(axis));
    const std::size_t lines = ops.grid.size() / n;
    detail::LineBuffers buf(n);
    for (std::size_t line = 0; line < lines; ++line)
        detail::solve_line(ops.axes[axis], theta, detail::line_start(line, st, n), st, n, rhs, buf);
}

} // namespace serial
} // namespace ff::kernels
