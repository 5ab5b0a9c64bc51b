#include "fourfactor/operators.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ff {

namespace {

struct AxisCoeffs {
    double diffusion = 0.0; // multiplies V_aa
    double advection = 0.0; // multiplies V_a
};

// Coefficients of V_tau = L V at (s, v, x, r), read off the pricing PDE with
// the time derivative moved to the other side.
AxisCoeffs axis_coeffs(const ModelParams& p, int axis, double s, double v, double x, double r)
{
    switch (axis) {
    case kS: return {0.5 * v * s * s, r * s};
    case kV: return {0.5 * p.eta * p.eta * v, r * v};
    case kX: return {0.5 * p.sigma_x * p.sigma_x, r * x};
    case kR: return {0.5 * p.sigma_r * p.sigma_r, r * r};
    default: return {};
    }
}

double mixed_coeff(const ModelParams& p, int pair, double s, double v)
{
    const double sv = std::sqrt(v);
    switch (pair) {
    case 0: return p.rho_s * p.eta * v * s;
    case 1: return p.rho_x * p.sigma_x * sv * s;
    case 2: return p.rho_r * p.sigma_r * sv * s;
    case 3: return p.rho_x * p.rho_s * p.sigma_x * p.eta * sv;
    case 4: return p.rho_s * p.rho_r * p.eta * p.sigma_r * sv;
    case 5: return p.rho_x * p.rho_r * p.sigma_x * p.sigma_r;
    default: return 0.0;
    }
}

[[noreturn]] void missing_neighbour(int axis)
{
    throw std::logic_error(std::string("assemble: active node on a PDE face of axis ") +
                           axis_name(axis) + " needs a one-sided stencil");
}

} // namespace

OperatorSet assemble(const ModelParams& p, const Grid& grid, double dt,
                     const BoundaryRules& rules, const AssemblyOptions& opts)
{
    if (!(dt > 0.0))
        throw std::invalid_argument("assemble: dt must be > 0");
    p.validate();

    OperatorSet ops;
    ops.grid = grid;
    ops.dt = dt;
    ops.active = active_mask(grid, rules);
    const std::size_t size = grid.size();
    const int rank = grid.rank();

    ops.axes.resize(rank);
    for (int a = 0; a < rank; ++a) {
        auto& ax = ops.axes[a];
        ax.axis = a;
        ax.lower.assign(size, 0.0);
        ax.diag.assign(size, 0.0);
        ax.upper.assign(size, 0.0);
        ax.tie = tied_nodes(grid, rules, a);
    }
    for (int k = 0; k < 6; ++k) {
        const auto [a, b] = MixedOperator::pairs[k];
        if (!grid.collapsed(a) && !grid.collapsed(b))
            ops.mixed.weight[k].assign(size, 0.0);
    }

    const bool i_axis = rank == 5 && opts.i_advection && !grid.collapsed(kI);

    for (std::size_t q = 0; q < size; ++q) {
        if (!ops.active[q])
            continue;
        const Index idx = grid.unravel(q);
        const double s = grid.coord(kS, idx[kS]);
        const double v = grid.coord(kV, idx[kV]);
        const double x = grid.coord(kX, idx[kX]);
        const double r = grid.coord(kR, idx[kR]);

        for (int a = 0; a < 4; ++a) {
            auto& ax = ops.axes[a];
            ax.diag[q] = -0.25 * r * dt;
            if (grid.collapsed(a))
                continue;
            const AxisCoeffs c = axis_coeffs(p, a, s, v, x, r);
            const double h = grid.spacing(a);
            const double dif = c.diffusion / (h * h);
            const double adv = c.advection / (2.0 * h);
            double lo = dt * (dif - adv);
            double up = dt * (dif + adv);
            ax.diag[q] -= dt * 2.0 * dif;
            if (opts.advection == Advection::Hybrid && std::abs(c.advection) * h > 2.0 * c.diffusion) {
                const double u = dt * std::abs(c.advection) / h;
                lo = dt * dif + (c.advection < 0.0 ? u : 0.0);
                up = dt * dif + (c.advection > 0.0 ? u : 0.0);
                ax.diag[q] -= u;
            }
            if (idx[a] == 0) {
                if (lo != 0.0)
                    missing_neighbour(a);
                lo = 0.0;
            }
            if (idx[a] == grid.count(a) - 1) {
                if (up != 0.0)
                    missing_neighbour(a);
                up = 0.0;
            }
            ax.lower[q] = lo;
            ax.upper[q] = up;
        }

        if (i_axis) {
            auto& ax = ops.axes[kI];
            const double c = dt * s / grid.spacing(kI);
            if (idx[kI] == grid.count(kI) - 1 && c != 0.0)
                missing_neighbour(kI);
            ax.diag[q] = -c;
            ax.upper[q] = c;
        }

        for (int k = 0; k < 6; ++k) {
            auto& w = ops.mixed.weight[k];
            if (w.empty())
                continue;
            const auto [a, b] = MixedOperator::pairs[k];
            const double coef = mixed_coeff(p, k, s, v);
            if (coef == 0.0)
                continue;
            if (idx[a] == 0 || idx[a] == grid.count(a) - 1)
                missing_neighbour(a);
            if (idx[b] == 0 || idx[b] == grid.count(b) - 1)
                missing_neighbour(b);
            w[q] = dt * coef / (4.0 * grid.spacing(a) * grid.spacing(b));
        }
    }
    return ops;
}

Field apply_explicit(const OperatorSet& ops, const Field& field)
{
    check_shape(field, ops.grid);
    Field out(field.size());
    kernels::omp::apply_explicit(ops, field.values, out.values);
    return out;
}

} // namespace ff
