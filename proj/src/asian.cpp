#include "fourfactor/asian.hpp"

#include <algorithm>
#include <string>

namespace ff {

void AsianGridSpec::validate(double averaging_period) const
{
    base.validate();
    if (n_i < 3)
        throw GridError("asian grid: n_i must be >= 3");
    const double s_max = base[kS].hi;
    if (!(i_max >= s_max * averaging_period * (1.0 - 1e-12)))
        throw GridError("asian grid: i_max must be >= s_max * (T - T0)");
}

Grid build_asian_grid(const AsianGridSpec& spec)
{
    std::vector<AxisSpec> axes(spec.base.axes.begin(), spec.base.axes.end());
    axes.push_back(AxisSpec::uniform(0.0, spec.i_max, spec.n_i));
    return Grid(std::move(axes));
}

OperatorSet assemble_asian(const ModelParams& p, const Grid& grid, double dt,
                           const AssemblyOptions& opts)
{
    if (grid.rank() != 5)
        throw std::invalid_argument("assemble_asian: rank-5 grid required");
    return assemble(p, grid, dt, BoundaryRules::for_payoff(PayoffSpec::asian(1.0)), opts);
}

Field asian_terminal(double strike, const Grid& grid, double T, double T0)
{
    if (!(T > T0))
        throw std::invalid_argument("asian_terminal: T must exceed T0");
    if (grid.rank() != 5)
        throw std::invalid_argument("asian_terminal: rank-5 grid required");
    const double period = T - T0;
    Field f(grid.size());
    for (std::size_t q = 0; q < grid.size(); ++q)
        f[q] = std::max(grid.coord(kI, grid.along(q, kI)) / period - strike, 0.0);
    return f;
}

Solution price_on_asian_grid(const ModelParams& p, const Grid& grid, const SchemeConfig& scheme,
                             const PayoffSpec& payoff, const AsianOptions& opts)
{
    if (grid.rank() != 5)
        throw std::invalid_argument("price_on_asian_grid: rank-5 grid required");
    if (grid.size() > opts.node_cap)
        throw NodeCapExceeded("asian grid has " + std::to_string(grid.size()) +
                              " nodes, cap is " + std::to_string(opts.node_cap));
    payoff.validate();
    scheme.validate();
    const BoundaryRules rules = BoundaryRules::for_payoff(payoff);
    Field terminal = payoff.kind == PayoffSpec::Kind::FixedStrikeAsianCall
                         ? asian_terminal(payoff.strike, grid, scheme.maturity, opts.t0)
                         : terminal_condition(payoff, grid);
    const double dt = (scheme.maturity - opts.t0) / scheme.n_t;
    SchemeConfig local = scheme;
    local.maturity = scheme.maturity - opts.t0;
    const OperatorSet ops = assemble(p, grid, dt, rules, AssemblyOptions{opts.i_advection, scheme.advection});
    apply_static_faces(rules, terminal, grid);
    Field v = march(local, ops, std::move(terminal), make_boundary_hook(rules, grid, p, dt, scheme.advection));
    return {grid, std::move(v)};
}

Solution price_asian(const ModelParams& p, const AsianGridSpec& spec, const SchemeConfig& scheme,
                     double strike, const AsianOptions& opts)
{
    spec.validate(scheme.maturity - opts.t0);
    return price_on_asian_grid(p, build_asian_grid(spec), scheme, PayoffSpec::asian(strike), opts);
}

} // namespace ff
