#include "fourfactor/tridiagonal.hpp"

#include <cmath>
#include <string>

namespace ff {

void solve_tridiagonal(std::span<const double> lower, std::span<const double> diag,
                       std::span<const double> upper, std::span<const double> rhs,
                       std::span<double> x, std::span<double> c)
{
    const std::size_t n = diag.size();
    if (n == 0 || lower.size() != n || upper.size() != n || rhs.size() != n || x.size() != n ||
        c.size() < n)
        throw std::invalid_argument("solve_tridiagonal: size mismatch");

    auto pivot_ok = [](double piv, double scale) {
        return std::isfinite(piv) && std::abs(piv) > 1e-14 * scale;
    };

    double piv = diag[0];
    if (!pivot_ok(piv, std::abs(diag[0]) + std::abs(upper[0])))
        throw SolverFault("solve_tridiagonal: zero pivot at row 0");
    c[0] = n > 1 ? upper[0] / piv : 0.0;
    x[0] = rhs[0] / piv;
    for (std::size_t i = 1; i < n; ++i) {
        piv = diag[i] - lower[i] * c[i - 1];
        const double scale = std::abs(diag[i]) + std::abs(lower[i]) + std::abs(upper[i]);
        if (!pivot_ok(piv, scale))
            throw SolverFault("solve_tridiagonal: zero pivot at row " + std::to_string(i));
        c[i] = i + 1 < n ? upper[i] / piv : 0.0;
        x[i] = (rhs[i] - lower[i] * x[i - 1]) / piv;
    }
    for (std::size_t i = n - 1; i-- > 0;)
        x[i] -= c[i] * x[i + 1];
}

std::vector<double> solve_tridiagonal(std::span<const double> lower, std::span<const double> diag,
                                      std::span<const double> upper, std::span<const double> rhs)
{
    std::vector<double> x(diag.size()), scratch(diag.size());
    solve_tridiagonal(lower, diag, upper, rhs, x, scratch);
    return x;
}

} // namespace ff
