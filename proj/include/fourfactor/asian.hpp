#pragma once

#include <cstddef>
#include <stdexcept>

#include "fourfactor/operators.hpp"
#include "fourfactor/pricer.hpp"

namespace ff {

// Base grid plus the running sum I = int_{T0}^t S dtau on [0, i_max].
struct AsianGridSpec {
    GridSpec base;
    double i_max = 16.0;
    int n_i = 12;

    // i_max must cover s_max * averaging_period.
    void validate(double averaging_period) const;
};

Grid build_asian_grid(const AsianGridSpec& spec);

class NodeCapExceeded : public std::length_error {
public:
    using std::length_error::length_error;
};

OperatorSet assemble_asian(const ModelParams& p, const Grid& grid, double dt,
                           const AssemblyOptions& opts = {});

// max(I / (T - T0) - K, 0) at every node.
Field asian_terminal(double strike, const Grid& grid, double T, double T0);

struct AsianOptions {
    double t0 = 0.0;
    std::size_t node_cap = 4'000'000;
    bool i_advection = true;
};

// Marches from T = scheme.maturity back to T0 on a rank-5 grid.
Solution price_asian(const ModelParams& p, const AsianGridSpec& spec, const SchemeConfig& scheme,
                     double strike, const AsianOptions& opts = {});

// Same machinery on an explicit rank-5 grid with any payoff; a vanilla payoff
// with the I axis pinned and advection off reduces to the 4D engine.
Solution price_on_asian_grid(const ModelParams& p, const Grid& grid, const SchemeConfig& scheme,
                             const PayoffSpec& payoff, const AsianOptions& opts = {});

} // namespace ff
