#include "fourfactor/mc.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace ff {

void McConfig::validate() const
{
    if (n_paths < 2)
        throw std::invalid_argument("mc: n_paths must be >= 2");
    if (n_steps < 1)
        throw std::invalid_argument("mc: n_steps must be >= 1");
    if (!(r_clamp > 0.0))
        throw std::invalid_argument("mc: r_clamp must be > 0");
}

namespace {

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

struct PathState {
    State st;
    PathSummary sum;
};

void advance(PathState& ps, const ModelParams& p, const McConfig& cfg, double dt,
             const std::array<double, 4>& dw)
{
    State& st = ps.st;
    State trunc = st;
    trunc.v = std::max(st.v, 0.0);
    const DriftDiffusion dd = drift_diffusion(cfg.measure, p, trunc);

    std::array<double, 4> inc{};
    for (int i = 0; i < 4; ++i) {
        double acc = dd.drift[i] * dt;
        for (int j = 0; j <= i; ++j)
            acc += dd.diffusion[i][j] * dw[j];
        inc[i] = acc;
    }
    const double s_old = st.s;
    ps.sum.discount *= std::exp(-st.r * dt);
    st.s = std::max(st.s + inc[0], 0.0);
    st.x += inc[1];
    st.v += inc[2];
    st.r += inc[3];
    if (std::abs(st.r) > cfg.r_clamp) {
        st.r = std::copysign(cfg.r_clamp, st.r);
        ++ps.sum.clamps;
    }
    ps.sum.running_sum += 0.5 * (s_old + st.s) * dt;
    ps.sum.s_peak = std::max(ps.sum.s_peak, st.s);
}

void finish(PathState& ps)
{
    ps.sum.s_final = ps.st.s;
    ps.sum.final_state = ps.st;
    ps.sum.final_state.v = std::max(ps.st.v, 0.0);
}

PathState start(const State& s0)
{
    PathState ps;
    ps.st = s0;
    ps.sum.s_peak = s0.s;
    return ps;
}

// Neumaier-compensated sum in index order.
struct CompensatedSum {
    double sum = 0.0, c = 0.0;
    void add(double x)
    {
        const double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            c += (sum - t) + x;
        else
            c += (x - t) + sum;
        sum = t;
    }
    double value() const { return sum + c; }
};

} // namespace

std::vector<PathSummary> simulate_paths(const ModelParams& p, const State& s0,
                                        const McConfig& cfg, double horizon)
{
    cfg.validate();
    p.validate();
    if (!(s0.v >= 0.0))
        throw DomainError("simulate_paths: initial variance must be >= 0");
    if (!(horizon > 0.0))
        throw std::invalid_argument("simulate_paths: horizon must be > 0");

    const double dt = horizon / cfg.n_steps;
    const double sdt = std::sqrt(dt);
    const std::size_t streams = cfg.antithetic ? cfg.n_paths / 2 : cfg.n_paths;
    const std::size_t per_stream = cfg.antithetic ? 2 : 1;
    std::vector<PathSummary> out(streams * per_stream);

    const auto n_streams = static_cast<std::ptrdiff_t>(streams);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t k = 0; k < n_streams; ++k) {
        std::mt19937_64 rng(splitmix64(cfg.seed ^ splitmix64(static_cast<std::uint64_t>(k))));
        std::normal_distribution<double> normal;
        PathState a = start(s0), b = start(s0);
        std::array<double, 4> dw{}, neg{};
        for (int step = 0; step < cfg.n_steps; ++step) {
            for (int j = 0; j < 4; ++j) {
                dw[j] = sdt * normal(rng);
                neg[j] = -dw[j];
            }
            advance(a, p, cfg, dt, dw);
            if (cfg.antithetic)
                advance(b, p, cfg, dt, neg);
        }
        finish(a);
        out[static_cast<std::size_t>(k) * per_stream] = a.sum;
        if (cfg.antithetic) {
            finish(b);
            out[static_cast<std::size_t>(k) * per_stream + 1] = b.sum;
        }
    }
    return out;
}

std::vector<McEstimate> mc_expectations(std::span<const PathSummary> paths,
                                        std::span<const PathPayoff> payoffs, bool antithetic)
{
    const std::size_t group = antithetic ? 2 : 1;
    const std::size_t samples = paths.size() / group;
    if (samples < 2)
        throw std::invalid_argument("mc_expectations: need at least two samples");

    std::size_t clamped = 0;
    for (const auto& ps : paths)
        clamped += ps.clamps > 0 ? 1 : 0;

    std::vector<McEstimate> out;
    out.reserve(payoffs.size());
    for (const auto& payoff : payoffs) {
        std::vector<double> x(samples);
        for (std::size_t k = 0; k < samples; ++k) {
            double acc = 0.0;
            for (std::size_t g = 0; g < group; ++g) {
                const PathSummary& ps = paths[k * group + g];
                acc += ps.discount * payoff(ps);
            }
            x[k] = acc / static_cast<double>(group);
        }
        CompensatedSum total;
        for (double v : x)
            total.add(v);
        const double mean = total.value() / static_cast<double>(samples);
        CompensatedSum sq;
        for (double v : x)
            sq.add((v - mean) * (v - mean));
        const double var = sq.value() / static_cast<double>(samples - 1);
        McEstimate e;
        e.price = mean;
        e.std_error = std::sqrt(var / static_cast<double>(samples));
        e.n_effective = samples;
        e.clamp_fraction = static_cast<double>(clamped) / static_cast<double>(paths.size());
        out.push_back(e);
    }
    return out;
}

PathPayoff payoff_functional(const PayoffSpec& payoff, double horizon, const McPayoffTerms& terms)
{
    payoff.validate();
    const double k = payoff.strike;
    switch (payoff.kind) {
    case PayoffSpec::Kind::EuropeanCall:
        return [k](const PathSummary& ps) { return std::max(ps.s_final - k, 0.0); };
    case PayoffSpec::Kind::UpAndOutCall: {
        const double b = payoff.barrier;
        return [k, b](const PathSummary& ps) {
            return ps.s_peak >= b ? 0.0 : std::max(ps.s_final - k, 0.0);
        };
    }
    case PayoffSpec::Kind::FixedStrikeAsianCall: {
        const double period = terms.period > 0.0 ? terms.period : horizon;
        const double i0 = terms.i0;
        return [k, period, i0](const PathSummary& ps) {
            return std::max((i0 + ps.running_sum) / period - k, 0.0);
        };
    }
    }
    throw std::logic_error("payoff_functional: unknown payoff");
}

McEstimate mc_price(const ModelParams& p, const State& s0, const PayoffSpec& payoff,
                    const McConfig& cfg, double horizon, const McPayoffTerms& terms)
{
    const auto paths = simulate_paths(p, s0, cfg, horizon);
    const PathPayoff f = payoff_functional(payoff, horizon, terms);
    return mc_expectations(paths, std::span<const PathPayoff>(&f, 1), cfg.antithetic).front();
}

} // namespace ff
