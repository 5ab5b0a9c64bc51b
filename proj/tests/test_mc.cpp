#include "doctest.h"

#include <algorithm>
#include <cmath>

#include <omp.h>

#include "black_scholes.hpp"
#include "fourfactor/mc.hpp"

using namespace ff;

namespace {

McConfig config(std::size_t paths, int steps, std::uint64_t seed = 7)
{
    McConfig c;
    c.n_paths = paths;
    c.n_steps = steps;
    c.seed = seed;
    return c;
}

ModelParams quiet()
{
    ModelParams p;
    p.sigma_x = p.eta = p.sigma_r = 0.0;
    return p;
}

} // namespace

TEST_SUITE("mc") {

TEST_CASE("without noise the stock follows the rate ODE")
{
    // v = 0 stays put and dR = R^2 dt, so R(t) = R0 / (1 - R0 t) and
    // S(T) = S0 / (1 - R0 T).
    const ModelParams p = quiet();
    const State s0{5.0, 0.0, 0.0, 0.02};
    const auto paths = simulate_paths(p, s0, config(4, 2000), 1.0);
    for (const auto& path : paths) {
        CHECK(path.s_final == doctest::Approx(5.0 / (1.0 - 0.02)).epsilon(1e-5));
        CHECK(path.final_state.r == doctest::Approx(0.02 / (1.0 - 0.02)).epsilon(1e-4));
        CHECK(path.discount * path.s_final == doctest::Approx(5.0).epsilon(1e-6));
    }
}

TEST_CASE("a unit payoff at zero rate is worth one, with no error")
{
    const ModelParams p = quiet();
    const auto paths = simulate_paths(p, State{5.0, 0.16, 0.1, 0.0}, config(200, 50), 1.0);
    const std::vector<PathPayoff> one{[](const PathSummary&) { return 1.0; }};
    const auto est = mc_expectations(paths, one, false);
    CHECK(est[0].price == 1.0);
    CHECK(est[0].std_error == 0.0);
    CHECK(est[0].n_effective == 200);
}

TEST_CASE("the discounted stock is a martingale")
{
    const ModelParams p;
    const State s0{6.0, 0.28, 0.1, 0.02};
    const auto paths = simulate_paths(p, s0, config(40000, 100), 1.0);
    const std::vector<PathPayoff> disc_s{[](const PathSummary& s) { return s.s_final; }};
    const auto est = mc_expectations(paths, disc_s, false);
    CHECK(std::abs(est[0].price - 6.0) < 3.0 * est[0].std_error);
}

TEST_CASE("constant volatility and zero rate reproduce Black-Scholes")
{
    ModelParams p = quiet();
    const State s0{5.0, 0.09, 0.0, 0.0};
    McConfig c = config(60000, 200);
    c.antithetic = true;
    const auto est = mc_price(p, s0, PayoffSpec::european(5.5), c, 1.0);
    const double bs = oracle::bs_call(5.0, 5.5, 0.3, 0.0, 1.0);
    CAPTURE(est.price);
    CAPTURE(bs);
    CHECK(std::abs(est.price - bs) < 3.0 * est.std_error);
}

TEST_CASE("fixed seeds reproduce, independent of the thread count")
{
    const ModelParams p;
    const State s0{8.0, 0.28, 0.1, 0.02};
    const McConfig c = config(2000, 50, 99);
    const int saved = omp_get_max_threads();
    omp_set_num_threads(1);
    const auto a = mc_price(p, s0, PayoffSpec::european(5), c, 1.0);
    omp_set_num_threads(3);
    const auto b = mc_price(p, s0, PayoffSpec::european(5), c, 1.0);
    omp_set_num_threads(saved);
    CHECK(a.price == b.price);
    CHECK(a.std_error == b.std_error);
    const auto other = mc_price(p, s0, PayoffSpec::european(5), config(2000, 50, 100), 1.0);
    CHECK(other.price != a.price);
}

TEST_CASE("antithetic pairs reduce the standard error of a monotone payoff")
{
    const ModelParams p;
    const State s0{6.0, 0.28, 0.0, 0.02};
    McConfig plain = config(20000, 50);
    McConfig anti = plain;
    anti.antithetic = true;
    const auto a = mc_price(p, s0, PayoffSpec::european(5), plain, 1.0);
    const auto b = mc_price(p, s0, PayoffSpec::european(5), anti, 1.0);
    CHECK(b.n_effective == 10000);
    CHECK(b.std_error < a.std_error);
}

TEST_CASE("knock-out never pays more than the vanilla call")
{
    const ModelParams p;
    const State s0{6.0, 0.28, 0.0, 0.02};
    const auto paths = simulate_paths(p, s0, config(5000, 50), 1.0);
    const PathPayoff vanilla = payoff_functional(PayoffSpec::european(5), 1.0);
    const PathPayoff barrier = payoff_functional(PayoffSpec::up_and_out(5, 8), 1.0);
    int knocked = 0;
    for (const auto& path : paths) {
        CHECK(barrier(path) <= vanilla(path));
        if (path.s_peak >= 8.0) {
            CHECK(barrier(path) == 0.0);
            ++knocked;
        }
    }
    CHECK(knocked > 0);
}

TEST_CASE("asian payoff averages the running sum")
{
    PathSummary s;
    s.running_sum = 6.0;
    CHECK(payoff_functional(PayoffSpec::asian(5), 1.0)(s) == doctest::Approx(1.0));
    CHECK(payoff_functional(PayoffSpec::asian(5), 0.5, McPayoffTerms{2.0, 1.0})(s) == doctest::Approx(3.0));
}

TEST_CASE("rate clamp")
{
    ModelParams p;
    p.sigma_r = 0.3;
    McConfig c = config(500, 50);
    c.r_clamp = 0.1;
    const auto paths = simulate_paths(p, State{5.0, 0.16, 0.0, 0.02}, c, 1.0);
    int clamped = 0;
    for (const auto& path : paths) {
        CHECK(std::abs(path.final_state.r) <= 0.1);
        clamped += path.clamps > 0;
    }
    CHECK(clamped > 0);
    CHECK(mc_price(p, State{5.0, 0.16, 0.0, 0.02}, PayoffSpec::european(5), c, 1.0).clamp_fraction > 0.0);
}

TEST_CASE("config validation")
{
    CHECK_THROWS_AS(config(1, 10).validate(), std::invalid_argument);
    CHECK_THROWS_AS(config(10, 0).validate(), std::invalid_argument);
    McConfig c = config(10, 10);
    c.r_clamp = 0.0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}

}
