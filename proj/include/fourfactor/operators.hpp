#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "fourfactor/boundaries.hpp"
#include "fourfactor/grid.hpp"
#include "fourfactor/model.hpp"

namespace ff {

// Tridiagonal stencil along one axis, one row per node, already scaled by dt.
// Rows of nodes the boundary module owns are zero, so (I - theta*M) is the
// identity there. lower/upper are zero wherever the neighbour does not exist.
struct AxisOperator {
    int axis = 0;
    std::vector<double> lower, diag, upper;
    // Face nodes of this axis with a Neumann-type rule (see tied_nodes). With
    // theta > 0 the implicit stage ties their increment to the inner nodes
    // instead of freezing it for the step.
    std::vector<std::uint8_t> tie;
};

// The six cross-derivative stencils. weight[k][p] multiplies
// V(+a,+b) + V(-a,-b) - V(+a,-b) - V(-a,+b) around node p for pair k, i.e.
// coefficient * dt / (4 da db). A vector is empty when its pair is inactive.
struct MixedOperator {
    static constexpr std::array<std::pair<int, int>, 6> pairs{
        {{kS, kV}, {kS, kX}, {kS, kR}, {kV, kX}, {kV, kR}, {kX, kR}}};
    std::array<std::vector<double>, 6> weight;
};

// Discretisation of V_tau = L V with tau = T - t: the per-axis operators
// (first and second derivatives plus a quarter of the -rV reaction each) and
// the explicit mixed part.
struct OperatorSet {
    Grid grid;
    double dt = 0.0;
    std::vector<AxisOperator> axes; // one per grid axis, in axis order
    MixedOperator mixed;
    std::vector<std::uint8_t> active;
};

struct AssemblyOptions {
    // Running-sum advection S V_I on rank-5 grids (first-order upwind).
    bool i_advection = true;
    Advection advection = Advection::Central;
};

// Default rules own every face, so only strictly interior nodes evolve.
OperatorSet assemble(const ModelParams& p, const Grid& grid, double dt,
                     const BoundaryRules& rules = BoundaryRules::homogeneous(),
                     const AssemblyOptions& opts = {});

// (A + B) V on active nodes, zero elsewhere.
Field apply_explicit(const OperatorSet& ops, const Field& field);

// Data-parallel kernels behind the steppers. `omp` and `serial` produce
// identical results; the serial versions are the reference for tests and the
// benchmark.
namespace kernels {
namespace omp {
void apply_explicit(const OperatorSet& ops, std::span<const double> in, std::span<double> out);
void apply_axis(const OperatorSet& ops, int axis, std::span<const double> in, std::span<double> out);
// Overwrites rhs with the solution of (I - theta M_axis) y = rhs.
void solve_axis(const OperatorSet& ops, int axis, double theta, std::span<double> rhs);
} // namespace omp
namespace serial {
void apply_explicit(const OperatorSet& ops, std::span<const double> in, std::span<double> out);
void apply_axis(const OperatorSet& ops, int axis, std::span<const double> in, std::span<double> out);
void solve_axis(const OperatorSet& ops, int axis, double theta, std::span<double> rhs);
} // namespace serial
} // namespace kernels

} // namespace ff
