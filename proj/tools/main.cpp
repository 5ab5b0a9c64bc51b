#include <iostream>
#include <optional>
#include <string>

#include <omp.h>

#include "CLI11.hpp"
#include "fourfactor/commands.hpp"

namespace {

struct Flags {
    std::string config;
    int threads = 0;
    std::optional<std::string> out;
    std::optional<std::string> scheme;
    std::optional<double> theta;
    std::optional<int> steps;
    std::optional<std::uint64_t> seed;
    bool print_config = false;
};

void add_common(CLI::App* cmd, Flags& f)
{
    cmd->add_option("--config", f.config, "Config file (key = value)");
    cmd->add_option("--threads", f.threads, "Worker threads (0: all cores)")->check(CLI::NonNegativeNumber);
    cmd->add_option("--out", f.out, "Output file");
    cmd->add_option("--scheme", f.scheme, "Time scheme")->check(CLI::IsMember({"fe", "be", "cn"}));
    cmd->add_option("--theta", f.theta, "Splitting weight in [0,1]; implies the theta scheme");
    cmd->add_option("--steps", f.steps, "Time steps");
    cmd->add_option("--seed", f.seed, "Monte Carlo seed");
    cmd->add_flag("--print-config", f.print_config, "Print the resolved config to stderr");
}

ff::RunConfig resolve(const Flags& f)
{
    ff::RunConfig cfg = f.config.empty() ? ff::RunConfig{} : ff::load_config(f.config);
    ff::apply_env_overrides(cfg);
    if (f.scheme)
        ff::set_key(cfg, "scheme.name", *f.scheme);
    if (f.theta) {
        ff::set_key(cfg, "scheme.name", "theta");
        cfg.scheme.theta = *f.theta;
    }
    if (f.steps)
        cfg.scheme.n_t = *f.steps;
    if (f.seed)
        cfg.mc.seed = *f.seed;
    if (f.out)
        cfg.out = *f.out;
    cfg.validate();
    if (f.print_config)
        ff::describe(std::cerr, cfg);
    return cfg;
}

// compare/convergence run all three schemes unless one was asked for.
std::vector<ff::SchemeConfig> scheme_set(const Flags& f, const ff::RunConfig& cfg)
{
    if (f.scheme || f.theta)
        return {cfg.scheme};
    const int n = cfg.scheme.n_t;
    const double T = cfg.scheme.maturity;
    std::vector<ff::SchemeConfig> set{ff::SchemeConfig::forward_euler(n, T), ff::SchemeConfig::backward_euler(n, T),
                                      ff::SchemeConfig::crank_nicolson(n, T)};
    for (auto& s : set)
        s.advection = cfg.scheme.advection;
    return set;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Finite-difference pricer for a four-factor equity model"};
    app.require_subcommand(1);
    Flags f;

    auto* price = app.add_subcommand("price", "Price at the probe points; --out writes the full field");
    auto* compare = app.add_subcommand("compare", "FE, BE and CN side by side at the probes");
    auto* conv = app.add_subcommand("convergence", "Probe price against the number of time steps");
    auto* mc = app.add_subcommand("mc-check", "PDE price against a Monte Carlo estimate");
    auto* slice = app.add_subcommand("slice", "Two-axis slice of the t = 0 field as CSV");
    auto* asian = app.add_subcommand("asian-price", "Fixed-strike Asian call on the 5D grid");
    for (auto* c : {price, compare, conv, mc, slice, asian})
        add_common(c, f);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? ff::kExitOk : ff::kExitUsage;
    }

    try {
        ff::RunConfig cfg = resolve(f);
        if (f.threads > 0)
            omp_set_num_threads(f.threads);
        if (*asian) {
            if (cfg.payoff.kind != ff::PayoffSpec::Kind::FixedStrikeAsianCall) {
                cfg.payoff.kind = ff::PayoffSpec::Kind::FixedStrikeAsianCall;
                cfg.validate();
            }
            ff::cmd_asian_price(cfg, std::cout);
        } else if (*price) {
            ff::cmd_price(cfg, std::cout);
        } else if (*compare) {
            ff::cmd_compare(cfg, scheme_set(f, cfg), std::cout);
        } else if (*conv) {
            ff::cmd_convergence(cfg, scheme_set(f, cfg), std::cout);
        } else if (*mc) {
            ff::cmd_mc_check(cfg, std::cout);
        } else if (*slice) {
            ff::cmd_slice(cfg, std::cout);
        }
        std::cout.flush();
        if (!std::cout)
            throw ff::IoError("error writing to stdout");
        return ff::kExitOk;
    } catch (...) {
        return ff::report_failure(std::cerr);
    }
}
