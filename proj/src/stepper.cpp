#include "fourfactor/stepper.hpp"

#include <algorithm>
#include <cmath>

namespace ff {

const char* scheme_name(Scheme s)
{
    switch (s) {
    case Scheme::ForwardEuler: return "forward-euler";
    case Scheme::BackwardEuler: return "backward-euler";
    case Scheme::Splitting: return "splitting";
    }
    return "?";
}

void SchemeConfig::validate() const
{
    if (n_t < 1)
        throw std::invalid_argument("scheme: n_t must be >= 1");
    if (!(theta >= 0.0 && theta <= 1.0))
        throw std::invalid_argument("scheme: theta must lie in [0, 1]");
    if (!(maturity > 0.0))
        throw std::invalid_argument("scheme: maturity must be > 0");
}

BoundaryHook make_boundary_hook(const BoundaryRules& rules, const Grid& grid,
                                const ModelParams& p, double dt, Advection adv)
{
    return [rules, grid, p, dt, adv](Field& f) { apply_boundaries(rules, f, grid, p, dt, adv); };
}

namespace {

void require_finite(const Field& f)
{
    if (!f.all_finite())
        throw InstabilityFault(0, "non-finite value after step (explicit step too large?)");
}

} // namespace

Field step_forward_euler(const OperatorSet& ops, const Field& field, const BoundaryHook& bc)
{
    check_shape(field, ops.grid);
    Field next(field.size());
    kernels::omp::apply_explicit(ops, field.values, next.values);
    for (std::size_t p = 0; p < next.size(); ++p)
        next[p] = field[p] + next[p];
    require_finite(next);
    if (bc)
        bc(next);
    return next;
}

Field step_splitting(const OperatorSet& ops, const Field& field, double theta,
                     const BoundaryHook& bc)
{
    if (!(theta >= 0.0 && theta <= 1.0))
        throw std::invalid_argument("step_splitting: theta must lie in [0, 1]");
    check_shape(field, ops.grid);
    Field next(field.size());
    kernels::omp::apply_explicit(ops, field.values, next.values);
    for (int a = 0; a < ops.grid.rank(); ++a)
        kernels::omp::solve_axis(ops, a, theta, next.values);
    for (std::size_t p = 0; p < next.size(); ++p)
        next[p] = field[p] + next[p];
    require_finite(next);
    if (bc)
        bc(next);
    return next;
}

Field step_backward_euler(const OperatorSet& ops, const Field& field, const BoundaryHook& bc)
{
    return step_splitting(ops, field, 1.0, bc);
}

double cfl_estimate(const ModelParams& p, const Grid& grid, const BoundaryRules& rules)
{
    const OperatorSet ops = assemble(p, grid, 1.0, rules);
    double worst = 0.0;
    for (std::size_t q = 0; q < grid.size(); ++q) {
        if (!ops.active[q])
            continue;
        double rate = 0.0, reaction = 0.0;
        for (int a = 0; a < std::min(grid.rank(), 4); ++a) {
            const auto& ax = ops.axes[a];
            rate += (ax.lower[q] + ax.upper[q]) + std::abs(ax.upper[q] - ax.lower[q]);
            reaction += ax.lower[q] + ax.diag[q] + ax.upper[q];
        }
        rate += std::abs(reaction);
        if (grid.rank() == 5)
            rate += std::abs(ops.axes[kI].diag[q]);
        for (const auto& w : ops.mixed.weight)
            if (!w.empty())
                rate += 2.0 * std::abs(w[q]);
        worst = std::max(worst, rate);
    }
    return worst > 0.0 ? 1.0 / worst : std::numeric_limits<double>::infinity();
}

int cfl_min_steps(const ModelParams& p, const Grid& grid, double maturity,
                  const BoundaryRules& rules)
{
    const double bound = cfl_estimate(p, grid, rules);
    if (!std::isfinite(bound))
        return 1;
    return std::max(1, static_cast<int>(std::ceil(maturity / bound)));
}

Field march(const SchemeConfig& scheme, const OperatorSet& ops, Field terminal,
            const BoundaryHook& bc, const MarchOptions& opts)
{
    check_shape(terminal, ops.grid);
    if (opts.snapshots && opts.snapshot_every > 0)
        opts.snapshots->push_back(terminal);
    if (scheme.n_t == 0)
        return terminal;
    scheme.validate();
    if (std::abs(ops.dt - scheme.dt()) > 1e-12 * scheme.dt())
        throw std::invalid_argument("march: operators were assembled with a different dt");

    double scale = 1.0;
    for (double v : terminal.values)
        scale = std::max(scale, std::abs(v));
    const double limit = opts.blowup_factor * scale;

    Field v = std::move(terminal);
    for (int h = 1; h <= scheme.n_t; ++h) {
        try {
            switch (scheme.scheme) {
            case Scheme::ForwardEuler: v = step_forward_euler(ops, v, bc); break;
            case Scheme::BackwardEuler: v = step_backward_euler(ops, v, bc); break;
            case Scheme::Splitting: v = step_splitting(ops, v, scheme.theta, bc); break;
            }
        } catch (const InstabilityFault& f) {
            throw InstabilityFault(h, std::string(scheme_name(scheme.scheme)) + ": step " +
                                          std::to_string(h) + ": " + f.what());
        }
        double peak = 0.0;
        for (double x : v.values)
            peak = std::max(peak, std::abs(x));
        if (!(peak <= limit))
            throw InstabilityFault(h, std::string(scheme_name(scheme.scheme)) + ": step " +
                                          std::to_string(h) + ": solution blew up (|V| = " +
                                          std::to_string(peak) + ")");
        if (opts.snapshots && opts.snapshot_every > 0 && h % opts.snapshot_every == 0)
            opts.snapshots->push_back(v);
    }
    return v;
}

} // namespace ff
