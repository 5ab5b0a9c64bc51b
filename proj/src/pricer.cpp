#include "fourfactor/pricer.hpp"

namespace ff {

Solution price(const ModelParams& p, const Grid& grid, const SchemeConfig& scheme,
               const PayoffSpec& payoff, const MarchOptions& opts)
{
    payoff.validate();
    const BoundaryRules rules = BoundaryRules::for_payoff(payoff);
    Field terminal = terminal_condition(payoff, grid);
    if (scheme.n_t == 0)
        return {grid, std::move(terminal)};
    scheme.validate();
    const double dt = scheme.dt();
    const OperatorSet ops = assemble(p, grid, dt, rules, AssemblyOptions{true, scheme.advection});
    // the terminal data must satisfy the static faces too (e.g. V = s at v_max)
    apply_static_faces(rules, terminal, grid);
    Field v = march(scheme, ops, std::move(terminal), make_boundary_hook(rules, grid, p, dt, scheme.advection), opts);
    return {grid, std::move(v)};
}

} // namespace ff
