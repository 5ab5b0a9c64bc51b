#pragma once

#include <array>
#include <optional>

#include "fourfactor/grid.hpp"
#include "fourfactor/model.hpp"

namespace ff {

struct PayoffSpec {
    enum class Kind { EuropeanCall, UpAndOutCall, FixedStrikeAsianCall };

    Kind kind = Kind::EuropeanCall;
    double strike = 5.0;
    double barrier = 0.0; // up-and-out only

    static PayoffSpec european(double k) { return {Kind::EuropeanCall, k, 0.0}; }
    static PayoffSpec up_and_out(double k, double b) { return {Kind::UpAndOutCall, k, b}; }
    static PayoffSpec asian(double k) { return {Kind::FixedStrikeAsianCall, k, 0.0}; }

    void validate() const;
};

// How a face node gets its value after each step.
enum class FaceRule {
    Pde,         // not a boundary: the interior operator evolves it
    Zero,        // V = 0
    EqualS,      // V = s
    UnitSlopeS,  // V_s = 1: V = V(s - ds) + ds, swept in increasing s
    Copy,        // zero normal derivative
    Extrapolate, // zero second normal derivative
    ReducedPde,  // v = 0 face: one explicit step of the PDE restricted to v = 0
};

struct BoundaryRules {
    std::array<FaceRule, kFaceCount> face{};
    std::optional<double> knockout; // V = 0 wherever s >= knockout

    static BoundaryRules for_payoff(const PayoffSpec& payoff);
    // Every face is a zero Dirichlet face; used by tests and the dense oracle.
    static BoundaryRules homogeneous();

    bool owns(Face f) const { return face[f] != FaceRule::Pde; }
};

// Differencing of first-derivative (advection) terms. Hybrid switches a node
// to first-order upwinding when the cell Peclet number |c| h / D exceeds 2,
// which keeps the axis operators monotone where diffusion is too weak to
// damp central-difference oscillations.
enum class Advection { Central, Hybrid };

// Nodes the interior operators must leave alone: those on any owned face.
std::vector<std::uint8_t> active_mask(const Grid& grid, const BoundaryRules& rules);

// Marks nodes on a Neumann-type face of `axis` that no Dirichlet, reduced or
// knockout rule claims: 1 for copy (or unit slope along s), 2 for
// extrapolation. Zero elsewhere.
std::vector<std::uint8_t> tied_nodes(const Grid& grid, const BoundaryRules& rules, int axis);

Field terminal_condition(const PayoffSpec& payoff, const Grid& grid);

// One explicit step of the v = 0 reduced equation, reading the v = 0 layer as
// it stands (the steppers never move it). Applied exactly once per time step.
void advance_reduced_face(const BoundaryRules& rules, Field& field, const Grid& grid,
                          const ModelParams& p, double dt, Advection adv = Advection::Central);

// Dirichlet, copy and extrapolation faces plus the knockout zone. Idempotent.
void apply_static_faces(const BoundaryRules& rules, Field& field, const Grid& grid);

void apply_boundaries(const BoundaryRules& rules, Field& field, const Grid& grid,
                      const ModelParams& p, double dt, Advection adv = Advection::Central);
void apply_boundaries(const PayoffSpec& payoff, Field& field, const Grid& grid,
                      const ModelParams& p, double dt, Advection adv = Advection::Central);

} // namespace ff
