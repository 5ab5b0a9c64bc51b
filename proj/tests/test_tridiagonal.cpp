#include "doctest.h"

#include <cmath>
#include <random>

#include "fourfactor/tridiagonal.hpp"

using namespace ff;

TEST_SUITE("tridiagonal") {

TEST_CASE("identity")
{
    const std::vector<double> lo(4, 0.0), di(4, 1.0), up(4, 0.0), rhs{1, -2, 3, 4.5};
    CHECK(solve_tridiagonal(lo, di, up, rhs) == rhs);
}

TEST_CASE("discrete Laplacian")
{
    const int n = 20;
    std::vector<double> x(n), lo(n, -1.0), di(n, 2.0), up(n, -1.0), rhs(n);
    for (int i = 0; i < n; ++i)
        x[i] = std::sin(0.3 * i) + 0.1 * i;
    for (int i = 0; i < n; ++i)
        rhs[i] = 2 * x[i] - (i > 0 ? x[i - 1] : 0.0) - (i + 1 < n ? x[i + 1] : 0.0);
    const auto got = solve_tridiagonal(lo, di, up, rhs);
    for (int i = 0; i < n; ++i)
        CHECK(got[i] == doctest::Approx(x[i]).epsilon(1e-12));
}

TEST_CASE("random diagonally dominant system")
{
    const int n = 50;
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-1, 1);
    std::vector<double> lo(n), di(n), up(n), b(n);
    for (int i = 0; i < n; ++i) {
        lo[i] = i > 0 ? u(rng) : 0.0;
        up[i] = i + 1 < n ? u(rng) : 0.0;
        di[i] = std::abs(lo[i]) + std::abs(up[i]) + 0.5 + std::abs(u(rng));
        b[i] = u(rng);
    }
    const auto x = solve_tridiagonal(lo, di, up, b);
    double res = 0.0, bmax = 0.0;
    for (int i = 0; i < n; ++i) {
        const double ax = di[i] * x[i] + (i > 0 ? lo[i] * x[i - 1] : 0.0) + (i + 1 < n ? up[i] * x[i + 1] : 0.0);
        res = std::max(res, std::abs(ax - b[i]));
        bmax = std::max(bmax, std::abs(b[i]));
    }
    CHECK(res < 1e-12 * bmax);
}

TEST_CASE("zero pivot")
{
    const std::vector<double> lo{0, 1}, di{0, 1}, up{1, 0}, rhs{1, 1};
    CHECK_THROWS_AS(solve_tridiagonal(lo, di, up, rhs), SolverFault);
    const std::vector<double> lo2{0, 1}, di2{1, 1}, up2{1, 0};
    CHECK_THROWS_AS(solve_tridiagonal(lo2, di2, up2, rhs), SolverFault);
}

TEST_CASE("length one")
{
    const std::vector<double> lo{0}, di{4}, up{0}, rhs{2};
    CHECK(solve_tridiagonal(lo, di, up, rhs)[0] == 0.5);
}

}
