#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "fourfactor/asian.hpp"
#include "fourfactor/boundaries.hpp"
#include "fourfactor/grid.hpp"
#include "fourfactor/mc.hpp"
#include "fourfactor/model.hpp"
#include "fourfactor/stepper.hpp"

namespace ff {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr const char* kEnvPrefix = "FOURFACTOR_";

// Domain extents and node counts as they appear in a config file. x and r
// are symmetric about 0. An axis with n = 1 is pinned at its *_pin value.
struct GridKeys {
    double s_max = 16.0, v_max = 1.0, x_max = 1.0, r_max = 0.25;
    int n_s = 16, n_v = 12, n_x = 9, n_r = 11;
    std::array<double, 4> pin{std::numeric_limits<double>::quiet_NaN(), 0.16, 0.0, 0.02};

    GridSpec spec() const;
};

struct RunConfig {
    ModelParams model;
    GridKeys grid;
    SchemeConfig scheme = SchemeConfig::crank_nicolson(220, 1.0);
    PayoffSpec payoff = PayoffSpec::european(5.0);

    // Query points: 4 coordinates (s v x r), or 5 with the running sum I.
    std::vector<std::vector<double>> probes{
        {8.0, 0.28, 0.1, 0.02}, {3.3, 0.4, -0.3, -0.16}, {7.3, 0.8, -0.6, 0.06}, {6.0, 0.16, -0.2, 0.1}};
    std::vector<double> convergence_probe{8.5, 0.28, 0.0, 0.02};
    std::vector<int> convergence_steps{10, 20, 40, 80, 160};

    McConfig mc;
    double mc_steps_per_year = 250.0;

    double i_max = 16.0;
    int n_i = 12;
    double asian_t0 = 0.0;
    std::size_t node_cap = 4'000'000;
    std::vector<std::vector<double>> asian_probes{{8.0, 0.28, 0.0, 0.02, 0.0}, {8.0, 0.28, 0.0, 0.02, 4.0}};

    // Slice: two free axes, the others held at slice_at (indexed by axis).
    std::array<int, 2> slice_axes{kS, kV};
    std::array<double, 4> slice_at{8.0, 0.28, 0.5, 0.04};

    std::string out;

    GridSpec grid_spec() const { return grid.spec(); }
    AsianGridSpec asian_spec() const { return {grid.spec(), i_max, n_i}; }
    AsianOptions asian_options() const;
    // n_steps from mc_steps_per_year and the horizon; r_clamp defaults to r_max.
    McConfig mc_config() const;

    void validate() const;
};

// Keys understood by set_key, in file order of `describe`.
const std::vector<std::string>& config_keys();

// Throws ConfigError naming the key on unknown keys or bad values.
void set_key(RunConfig& cfg, const std::string& key, const std::string& value);

// Flat "key = value" text; '#' starts a comment. `origin` prefixes diagnostics.
RunConfig parse_config(std::istream& in, const std::string& origin = "<config>");
RunConfig load_config(const std::string& path);

// For every key, FOURFACTOR_<KEY> (dots become underscores, upper case)
// overrides the current value.
void apply_env_overrides(RunConfig& cfg);

// Writes every key with its current value; parse_config reads it back.
void describe(std::ostream& os, const RunConfig& cfg);

std::string env_name(const std::string& key);

} // namespace ff
