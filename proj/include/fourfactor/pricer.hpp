#pragma once

#include "fourfactor/boundaries.hpp"
#include "fourfactor/grid.hpp"
#include "fourfactor/stepper.hpp"

namespace ff {

struct Solution {
    Grid grid;
    Field field; // t = 0 values
};

// Terminal condition, boundary rules and march for a vanilla or barrier
// payoff on a rank-4 (or I-independent rank-5) grid.
Solution price(const ModelParams& p, const Grid& grid, const SchemeConfig& scheme,
               const PayoffSpec& payoff, const MarchOptions& opts = {});

} // namespace ff
