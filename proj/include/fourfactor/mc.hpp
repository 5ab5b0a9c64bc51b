#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "fourfactor/boundaries.hpp"
#include "fourfactor/model.hpp"

namespace ff {

struct McConfig {
    std::size_t n_paths = 100'000;
    int n_steps = 250;
    std::uint64_t seed = 20230601;
    bool antithetic = false;
    // |R| is clamped here after every step; the clamp count is reported.
    double r_clamp = std::numeric_limits<double>::infinity();
    Measure measure = Measure::RiskNeutral;

    void validate() const;
};

// What the payoffs need from one path.
struct PathSummary {
    double s_final = 0.0;
    double s_peak = 0.0;      // max over monitoring dates, t = 0 included
    double running_sum = 0.0; // trapezoid integral of S over the horizon
    double discount = 1.0;    // exp(-sum R_k dt)
    State final_state;
    int clamps = 0;
};

// Euler-Maruyama with full truncation of v. Paths are generated from
// per-path (or per-pair) streams, so the ensemble does not depend on the
// thread count. With antithetic sampling paths 2k and 2k+1 share normals
// with opposite signs.
std::vector<PathSummary> simulate_paths(const ModelParams& p, const State& s0,
                                        const McConfig& cfg, double horizon);

struct McEstimate {
    double price = 0.0;
    double std_error = 0.0;
    std::size_t n_effective = 0; // independent samples (pairs when antithetic)
    double clamp_fraction = 0.0; // share of paths whose rate was clamped at least once
};

using PathPayoff = std::function<double(const PathSummary&)>;

// Discounted payoff statistics for several payoffs over one shared ensemble.
std::vector<McEstimate> mc_expectations(std::span<const PathSummary> paths,
                                        std::span<const PathPayoff> payoffs, bool antithetic);

struct McPayoffTerms {
    double i0 = 0.0;     // Asian: running sum already accumulated
    double period = 0.0; // Asian: averaging period; 0 means the horizon
};

// Barrier: discrete monitoring at the simulation dates, knocked out when
// S >= B. Asian: arithmetic average of (i0 + running_sum) over the period.
PathPayoff payoff_functional(const PayoffSpec& payoff, double horizon, const McPayoffTerms& terms = {});

McEstimate mc_price(const ModelParams& p, const State& s0, const PayoffSpec& payoff,
                    const McConfig& cfg, double horizon, const McPayoffTerms& terms = {});

} // namespace ff
