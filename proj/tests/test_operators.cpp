#include "doctest.h"

#include <cmath>
#include <random>

#include "dense.hpp"
#include "fourfactor/operators.hpp"

using namespace ff;

namespace {

Field random_field(const Grid& g, unsigned seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Field f(g.size());
    for (double& x : f.values)
        x = u(rng);
    return f;
}

template <class Fn>
Field sample(const Grid& g, Fn fn)
{
    Field f(g.size());
    for (std::size_t p = 0; p < g.size(); ++p) {
        const Index i = g.unravel(p);
        f[p] = fn(g.coord(kS, i[0]), g.coord(kV, i[1]), g.coord(kX, i[2]), g.coord(kR, i[3]));
    }
    return f;
}

// Cross-derivative part alone.
Field mixed_only(const OperatorSet& ops, const Field& f)
{
    const Grid& g = ops.grid;
    Field out(g.size());
    for (int k = 0; k < 6; ++k) {
        const auto& w = ops.mixed.weight[k];
        if (w.empty())
            continue;
        const auto [a, b] = MixedOperator::pairs[k];
        const std::size_t sa = g.stride(a), sb = g.stride(b);
        for (std::size_t p = 0; p < g.size(); ++p)
            if (w[p] != 0.0)
                out[p] += w[p] * (f[p + sa + sb] + f[p - sa - sb] - f[p + sa - sb] - f[p - sa + sb]);
    }
    return out;
}

// Pricing generator from the model's drift and covariance; derivatives in
// axis order (s, v, x, r).
double generator(const ModelParams& p, const State& st, double f, const double grad[4], const double hess[4][4])
{
    constexpr int sde[4] = {0, 2, 1, 3};
    const auto dd = risk_neutral_drift_diffusion(p, st);
    const auto cov = covariance(dd.diffusion);
    double out = -st.r * f;
    for (int a = 0; a < 4; ++a) {
        out += dd.drift[sde[a]] * grad[a];
        for (int b = 0; b < 4; ++b)
            out += 0.5 * cov[sde[a]][sde[b]] * hess[a][b];
    }
    return out;
}

bool interior(const Grid& g, std::size_t p)
{
    return face_of(p, g).empty();
}

} // namespace

TEST_SUITE("operators") {

TEST_CASE("v = 0 nodes carry no s diffusion and no v-dependent cross terms")
{
    const ModelParams p;
    const Grid g = build_grid(GridSpec::box(4, 1, 1, 0.2, 5, 5, 5, 5));
    BoundaryRules rules = BoundaryRules::homogeneous();
    rules.face[kVLo] = FaceRule::Pde;
    const double dt = 0.01;
    const OperatorSet ops = assemble(p, g, dt, rules);
    const std::size_t q = g.index(2, 0, 2, 3);
    REQUIRE(ops.active[q]);
    const double r = g.coord(kR, 3), s = g.coord(kS, 2);
    const double h = g.spacing(kS);
    CHECK(ops.axes[kS].lower[q] == doctest::Approx(-dt * r * s / (2 * h)));
    CHECK(ops.axes[kS].upper[q] == doctest::Approx(dt * r * s / (2 * h)));
    CHECK(ops.axes[kS].diag[q] == doctest::Approx(-0.25 * r * dt));
    for (int k = 0; k < 5; ++k)
        CHECK(ops.mixed.weight[k][q] == 0.0);
    CHECK(ops.mixed.weight[5][q] != 0.0);
}

TEST_CASE("without volatility the v, x, r operators are advection and reaction only")
{
    ModelParams p;
    p.sigma_x = p.eta = p.sigma_r = 0.0;
    const Grid g = build_grid(GridSpec::box(4, 1, 1, 0.2, 5, 5, 5, 5));
    const OperatorSet ops = assemble(p, g, 0.01);
    for (int a : {kV, kX, kR})
        for (std::size_t q = 0; q < g.size(); ++q)
            if (ops.active[q]) {
                CHECK(ops.axes[a].lower[q] + ops.axes[a].upper[q] == doctest::Approx(0.0));
                const double r = g.coord(kR, g.along(q, kR));
                CHECK(ops.axes[a].diag[q] == doctest::Approx(-0.25 * r * 0.01));
            }
    for (const auto& w : ops.mixed.weight)
        for (double x : w)
            CHECK(x == 0.0);
}

TEST_CASE("quadratics are differentiated exactly")
{
    const ModelParams p;
    const Grid g = build_grid(GridSpec::box(4, 1, 1, 0.2, 5, 5, 5, 5));
    const OperatorSet ops = assemble(p, g, 1.0);
    // q = c + b.y + y^T H y / 2 in axis order (s, v, x, r).
    const double b[4] = {1.0, -2.0, 0.3, 0.5};
    const double h[4][4] = {{0.6, 0.2, 0.7, 0.1}, {0.2, 2.2, 0.4, -0.3}, {0.7, 0.4, 0.9, -0.5}, {0.1, -0.3, -0.5, 0.8}};
    auto q = [&](double s, double v, double x, double r) {
        const double y[4] = {s, v, x, r};
        double out = 3.0;
        for (int i = 0; i < 4; ++i) {
            out += b[i] * y[i];
            for (int j = 0; j < 4; ++j)
                out += 0.5 * h[i][j] * y[i] * y[j];
        }
        return out;
    };
    const Field out = apply_explicit(ops, sample(g, q));
    for (std::size_t n = 0; n < g.size(); ++n) {
        if (!interior(g, n))
            continue;
        const Index i = g.unravel(n);
        const State st{g.coord(kS, i[0]), g.coord(kV, i[1]), g.coord(kX, i[2]), g.coord(kR, i[3])};
        const double y[4] = {st.s, st.v, st.x, st.r};
        double grad[4];
        for (int a = 0; a < 4; ++a) {
            grad[a] = b[a];
            for (int c = 0; c < 4; ++c)
                grad[a] += h[a][c] * y[c];
        }
        CHECK(out[n] == doctest::Approx(generator(p, st, q(st.s, st.v, st.x, st.r), grad, h)).epsilon(1e-10));
    }
}

TEST_CASE("second-order consistency on a smooth function")
{
    const ModelParams p;
    const double k[4] = {0.4, 0.9, 0.6, 1.3};
    auto f = [&](double s, double v, double x, double r) { return std::exp(k[0] * s + k[1] * v + k[2] * x + k[3] * r); };
    const State st{2, 0.5, 0, 0.1};
    const double f0 = f(st.s, st.v, st.x, st.r);
    double grad[4], hess[4][4];
    for (int a = 0; a < 4; ++a) {
        grad[a] = k[a] * f0;
        for (int c = 0; c < 4; ++c)
            hess[a][c] = k[a] * k[c] * f0;
    }
    const double exact = generator(p, st, f0, grad, hess);
    double err[2];
    for (int level = 0; level < 2; ++level) {
        const int n = level == 0 ? 5 : 9;
        const Grid g = build_grid(GridSpec::box(4, 1, 1, 0.2, n, n, n, n));
        const OperatorSet ops = assemble(p, g, 1.0);
        const Field out = apply_explicit(ops, sample(g, f));
        const int c = (n - 1) / 2;
        const std::size_t q = g.index(c, c, c, (3 * (n - 1)) / 4);
        REQUIRE(g.coord(kR, g.along(q, kR)) == doctest::Approx(st.r));
        err[level] = std::abs(out[q] - exact);
    }
    CHECK(err[0] / err[1] == doctest::Approx(4.0).epsilon(0.15));
}

TEST_CASE("zero and constant fields")
{
    const ModelParams p;
    GridSpec spec = GridSpec::box(4, 1, 1, 0.2, 5, 5, 5, 5);
    spec[kR] = AxisSpec::pinned(0.03);
    const Grid g = build_grid(spec);
    const double dt = 0.02;
    const OperatorSet ops = assemble(p, g, dt);
    const Field z = apply_explicit(ops, Field(g.size()));
    for (double x : z.values)
        CHECK(x == 0.0);
    const Field c = apply_explicit(ops, Field(g.size(), 2.5));
    for (std::size_t q = 0; q < g.size(); ++q) {
        if (ops.active[q])
            CHECK(c[q] == doctest::Approx(-0.03 * 2.5 * dt).epsilon(1e-13));
        else
            CHECK(c[q] == 0.0);
    }
}

TEST_CASE("the four reaction quarters add up to -r")
{
    const ModelParams p;
    const Grid g = build_grid(GridSpec::box(4, 1, 1, 0.2, 5, 5, 5, 5));
    const double dt = 0.1;
    const OperatorSet ops = assemble(p, g, dt);
    for (std::size_t q = 0; q < g.size(); ++q) {
        if (!ops.active[q])
            continue;
        double b = 0.0;
        for (int a = 0; a < 4; ++a)
            b += ops.axes[a].lower[q] + ops.axes[a].diag[q] + ops.axes[a].upper[q];
        CHECK(b == doctest::Approx(-g.coord(kR, g.along(q, kR)) * dt));
    }
}

TEST_CASE("dense oracle: explicit product")
{
    const ModelParams p;
    const Grid g = build_grid(GridSpec::box(4, 1, 1, 0.2, 5, 5, 5, 5));
    const double dt = 0.01;
    const OperatorSet ops = assemble(p, g, dt);
    const Field f = random_field(g, 42);
    const Field got = apply_explicit(ops, f);
    const auto dense = oracle::build_dense(p, g, dt);
    const Eigen::VectorXd want = dense.full() * oracle::to_vector(f);
    CHECK((oracle::to_vector(got) - want).norm() <= 1e-12 * want.norm());
}

TEST_CASE("cross stencils")
{
    const ModelParams p;
    const Grid g = build_grid(GridSpec::box(4, 1, 1, 0.2, 5, 5, 5, 5));
    const OperatorSet ops = assemble(p, g, 1.0);
    // f = s*v: only the s-v cross term survives, exactly.
    const Field sv = mixed_only(ops, sample(g, [](double s, double v, double, double) { return s * v; }));
    for (std::size_t q = 0; q < g.size(); ++q)
        if (ops.active[q]) {
            const double s = g.coord(kS, g.along(q, kS)), v = g.coord(kV, g.along(q, kV));
            CHECK(sv[q] == doctest::Approx(p.rho_s * p.eta * v * s).epsilon(1e-12));
        }
    // Functions of one variable, constants included, are annihilated.
    for (int a = 0; a < 4; ++a) {
        const Field out = mixed_only(ops, sample(g, [a](double s, double v, double x, double r) {
            const double c[] = {s, v, x, r};
            return std::exp(c[a]) + 3.0;
        }));
        for (double x : out.values)
            CHECK(x == doctest::Approx(0.0).epsilon(1e-13));
    }
}

TEST_CASE("hybrid advection")
{
    const ModelParams p;
    const Grid g = build_grid(GridSpec::box(16, 1, 1, 0.25, 9, 7, 5, 5));
    const auto rules = BoundaryRules::for_payoff(PayoffSpec::european(5));
    const OperatorSet central = assemble(p, g, 0.01, rules);
    const OperatorSet hybrid = assemble(p, g, 0.01, rules, AssemblyOptions{true, Advection::Hybrid});
    int switched = 0;
    for (int a = 0; a < 4; ++a)
        for (std::size_t q = 0; q < g.size(); ++q) {
            const auto& c = central.axes[a];
            const auto& h = hybrid.axes[a];
            // Off-diagonals nonnegative, row sums unchanged (the reaction share).
            CHECK(h.lower[q] >= 0.0);
            CHECK(h.upper[q] >= 0.0);
            CHECK(h.lower[q] + h.diag[q] + h.upper[q] ==
                  doctest::Approx(c.lower[q] + c.diag[q] + c.upper[q]).epsilon(1e-12));
            if (c.lower[q] >= 0.0 && c.upper[q] >= 0.0) {
                CHECK(h.lower[q] == c.lower[q]);
                CHECK(h.upper[q] == c.upper[q]);
            } else {
                ++switched;
            }
        }
    CHECK(switched > 0);
    CHECK(hybrid.mixed.weight == central.mixed.weight);
}

TEST_CASE("assembly is deterministic")
{
    const ModelParams p;
    const Grid g = build_grid(GridSpec::box(16, 1, 1, 0.25, 9, 7, 5, 5));
    const auto rules = BoundaryRules::for_payoff(PayoffSpec::european(5));
    const OperatorSet a = assemble(p, g, 0.01, rules), b = assemble(p, g, 0.01, rules);
    for (int k = 0; k < 4; ++k) {
        CHECK(a.axes[k].lower == b.axes[k].lower);
        CHECK(a.axes[k].diag == b.axes[k].diag);
        CHECK(a.axes[k].upper == b.axes[k].upper);
    }
    CHECK(a.mixed.weight == b.mixed.weight);
    CHECK(a.active == b.active);
}

TEST_CASE("an active node without a needed neighbour is an assembly error")
{
    const ModelParams p;
    const Grid g = build_grid(GridSpec::box(4, 1, 1, 0.2, 5, 5, 5, 5));
    BoundaryRules rules = BoundaryRules::homogeneous();
    rules.face[kXLo] = FaceRule::Pde;
    CHECK_THROWS_AS(assemble(p, g, 0.01, rules), std::logic_error);
    CHECK_THROWS_AS(assemble(p, g, 0.0), std::invalid_argument);
}

TEST_CASE("serial and OpenMP kernels agree bitwise")
{
    const ModelParams p;
    const Grid g = build_grid(GridSpec::box(16, 1, 1, 0.25, 9, 7, 6, 5));
    const OperatorSet ops = assemble(p, g, 0.01, BoundaryRules::for_payoff(PayoffSpec::european(5)));
    const Field f = random_field(g, 9);
    std::vector<double> a(g.size()), b(g.size());
    kernels::serial::apply_explicit(ops, f.values, a);
    kernels::omp::apply_explicit(ops, f.values, b);
    CHECK(a == b);
    for (int ax = 0; ax < 4; ++ax) {
        kernels::serial::apply_axis(ops, ax, f.values, a);
        kernels::omp::apply_axis(ops, ax, f.values, b);
        CHECK(a == b);
        for (double theta : {0.0, 0.5, 1.0}) {
            a = f.values;
            b = f.values;
            kernels::serial::solve_axis(ops, ax, theta, a);
            kernels::omp::solve_axis(ops, ax, theta, b);
            CHECK(a == b);
        }
    }
}

}
