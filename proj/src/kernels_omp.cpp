#include <exception>

#include "kernel_terms.hpp"

namespace ff::kernels::omp {

void apply_axis(const OperatorSet& ops, int axis, std::span<const double> in, std::span<double> out)
{
    const auto& ax = ops.axes[axis];
    const std::size_t st = ops.grid.stride(axis);
    const std::ptrdiff_t size = static_cast<std::ptrdiff_t>(in.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < size; ++i) {
        const auto p = static_cast<std::size_t>(i);
        out[p] = ops.active[p] ? detail::axis_term(ax, st, in, p) : 0.0;
    }
}

void apply_explicit(const OperatorSet& ops, std::span<const double> in, std::span<double> out)
{
    const Grid& g = ops.grid;
    const int rank = g.rank();
    const std::ptrdiff_t size = static_cast<std::ptrdiff_t>(in.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < size; ++i) {
        const auto p = static_cast<std::size_t>(i);
        if (!ops.active[p]) {
            out[p] = 0.0;
            continue;
        }
        double acc = 0.0;
        for (int a = 0; a < rank; ++a)
            acc += detail::axis_term(ops.axes[a], g.stride(a), in, p);
        for (int k = 0; k < 6; ++k) {
            const auto& w = ops.mixed.weight[k];
            if (w.empty() || w[p] == 0.0)
                continue;
            const auto [a, b] = MixedOperator::pairs[k];
            acc += detail::mixed_term(w[p], g.stride(a), g.stride(b), in, p);
        }
        out[p] = acc;
    }
}

void solve_axis(const OperatorSet& ops, int axis, double theta, std::span<double> rhs)
{
    const std::size_t st = ops.grid.stride(axis);
    const std::size_t n = static_cast<std::size_t>(ops.grid.count(axis));
    const std::ptrdiff_t lines = static_cast<std::ptrdiff_t>(ops.grid.size() / n);
    std::exception_ptr failure;
#pragma omp parallel
    {
        detail::LineBuffers buf(n);
#pragma omp for schedule(static)
        for (std::ptrdiff_t line = 0; line < lines; ++line) {
            try {
                detail::solve_line(ops.axes[axis], theta,
                                   detail::line_start(static_cast<std::size_t>(line), st, n), st, n,
                                   rhs, buf);
            } catch (...) {
#pragma omp critical
                if (!failure)
                    failure = std::current_exception();
            }
        }
    }
    if (failure)
        std::rethrow_exception(failure);
}

} // namespace ff::kernels::omp
