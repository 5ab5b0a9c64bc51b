#pragma once

#include <span>
#include <stdexcept>
#include <vector>

namespace ff {

class SolverFault : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Thomas algorithm. lower[0] and upper[n-1] are ignored. `scratch` must hold
// n doubles. Throws SolverFault on a vanishing pivot.
void solve_tridiagonal(std::span<const double> lower, std::span<const double> diag,
                       std::span<const double> upper, std::span<const double> rhs,
                       std::span<double> solution, std::span<double> scratch);

std::vector<double> solve_tridiagonal(std::span<const double> lower, std::span<const double> diag,
                                      std::span<const double> upper, std::span<const double> rhs);

} // namespace ff
