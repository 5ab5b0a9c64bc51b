#pragma once

#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "fourfactor/operators.hpp"
#include "fourfactor/tridiagonal.hpp"

namespace ff {

enum class Scheme { ForwardEuler, BackwardEuler, Splitting };

const char* scheme_name(Scheme s);

struct SchemeConfig {
    Scheme scheme = Scheme::Splitting;
    double theta = 0.5;
    int n_t = 100;
    double maturity = 1.0;
    Advection advection = Advection::Central;

    static SchemeConfig forward_euler(int n_t, double T) { return {Scheme::ForwardEuler, 0.0, n_t, T}; }
    static SchemeConfig backward_euler(int n_t, double T) { return {Scheme::BackwardEuler, 1.0, n_t, T}; }
    static SchemeConfig crank_nicolson(int n_t, double T) { return {Scheme::Splitting, 0.5, n_t, T}; }

    double dt() const { return maturity / n_t; }
    void validate() const;
};

// Raised when a step produces a non-finite value or the field grows past the
// march's blow-up limit; `step` is 1-based within the march (0 for a lone step).
class InstabilityFault : public std::runtime_error {
public:
    InstabilityFault(int step, const std::string& what)
        : std::runtime_error(what), step_(step) {}
    int step() const { return step_; }

private:
    int step_;
};

// Re-imposes boundary data after a step. An empty hook leaves faces alone.
using BoundaryHook = std::function<void(Field&)>;

BoundaryHook make_boundary_hook(const BoundaryRules& rules, const Grid& grid,
                                const ModelParams& p, double dt,
                                Advection adv = Advection::Central);

Field step_forward_euler(const OperatorSet& ops, const Field& field, const BoundaryHook& bc = {});
Field step_backward_euler(const OperatorSet& ops, const Field& field, const BoundaryHook& bc = {});
// Y1 = (I - theta M_s)^-1 (A + B) V, Y_k = (I - theta M_k)^-1 Y_{k-1} for the
// remaining axes, V' = V + Y_last.
Field step_splitting(const OperatorSet& ops, const Field& field, double theta,
                     const BoundaryHook& bc = {});

// Conservative explicit step bound over active nodes:
// 1 / max(sum 2D/h^2 + sum |c|/h + |r| + sum |mixed|/(2 ha hb)). +inf when
// nothing constrains the step.
double cfl_estimate(const ModelParams& p, const Grid& grid,
                    const BoundaryRules& rules = BoundaryRules::homogeneous());
// Smallest step count over [0, T] that satisfies cfl_estimate.
int cfl_min_steps(const ModelParams& p, const Grid& grid, double maturity,
                  const BoundaryRules& rules = BoundaryRules::homogeneous());

struct MarchOptions {
    // Blow-up limit as a multiple of max(1, max |terminal|).
    double blowup_factor = 1e8;
    // Record the field every `snapshot_every` steps (0: never). The terminal
    // field is always the first snapshot when recording.
    int snapshot_every = 0;
    std::vector<Field>* snapshots = nullptr;
};

Field march(const SchemeConfig& scheme, const OperatorSet& ops, Field terminal,
            const BoundaryHook& bc = {}, const MarchOptions& opts = {});

} // namespace ff
