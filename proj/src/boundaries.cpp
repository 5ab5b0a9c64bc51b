#include "fourfactor/boundaries.hpp"

#include <cmath>
#include <stdexcept>

namespace ff {

namespace {

bool is_dirichlet(FaceRule r) { return r == FaceRule::Zero || r == FaceRule::EqualS; }
bool is_neumann(FaceRule r)
{
    return r == FaceRule::UnitSlopeS || r == FaceRule::Copy || r == FaceRule::Extrapolate;
}

bool knocked_out(double s, double barrier) { return s >= barrier * (1.0 - 1e-12); }

// Calls fn(p) for every node on one face, in increasing flat order.
template <class Fn>
void for_each_on_face(const Grid& g, int axis, bool high, Fn&& fn)
{
    const std::size_t st = g.stride(axis);
    const std::size_t n = static_cast<std::size_t>(g.count(axis));
    const std::size_t k0 = high ? n - 1 : 0;
    const std::size_t outer_count = g.size() / (n * st);
    for (std::size_t outer = 0; outer < outer_count; ++outer)
        for (std::size_t inner = 0; inner < st; ++inner)
            fn(outer * n * st + k0 * st + inner);
}

// True when a node is governed by something stronger than a Neumann face.
bool dominated(std::size_t p, const Grid& g, const BoundaryRules& rules)
{
    if (rules.knockout && knocked_out(g.coord(kS, g.along(p, kS)), *rules.knockout))
        return true;
    for (int a = 0; a < g.rank(); ++a) {
        if (g.collapsed(a))
            continue;
        const int k = g.along(p, a);
        FaceRule r = FaceRule::Pde;
        if (k == 0)
            r = rules.face[low_face(a)];
        else if (k == g.count(a) - 1)
            r = rules.face[high_face(a)];
        if (is_dirichlet(r) || r == FaceRule::ReducedPde)
            return true;
    }
    return false;
}

struct Stencil {
    std::array<int, 3> off{};
    std::array<double, 3> w{};
};

// Central in the interior, second-order one-sided at the ends.
Stencil first_derivative(int k, int n, double h)
{
    if (k == 0)
        return {{0, 1, 2}, {-1.5 / h, 2.0 / h, -0.5 / h}};
    if (k == n - 1)
        return {{0, -1, -2}, {1.5 / h, -2.0 / h, 0.5 / h}};
    return {{-1, 0, 1}, {-0.5 / h, 0.0, 0.5 / h}};
}

// Central in the interior, first-order one-sided at the ends.
Stencil second_derivative(int k, int n, double h)
{
    const double ih2 = 1.0 / (h * h);
    if (k == 0)
        return {{0, 1, 2}, {ih2, -2.0 * ih2, ih2}};
    if (k == n - 1)
        return {{0, -1, -2}, {ih2, -2.0 * ih2, ih2}};
    return {{-1, 0, 1}, {ih2, -2.0 * ih2, ih2}};
}

// First derivative for an advection term c V_a with diffusion D along the
// same axis: upwind (forward for c > 0, since V_tau = c V_a carries values
// down from larger a) when hybrid differencing applies.
Stencil advective_derivative(int k, int n, double h, double c, double diffusion, Advection adv)
{
    if (adv == Advection::Hybrid && std::abs(c) * h > 2.0 * diffusion) {
        if (c > 0.0 && k + 1 < n)
            return {{0, 1, 0}, {-1.0 / h, 1.0 / h, 0.0}};
        if (c < 0.0 && k > 0)
            return {{0, -1, 0}, {1.0 / h, -1.0 / h, 0.0}};
    }
    return first_derivative(k, n, h);
}

double apply_stencil(const Stencil& st, const std::vector<double>& v, std::size_t p,
                     std::size_t stride)
{
    double acc = 0.0;
    for (int q = 0; q < 3; ++q) {
        const std::ptrdiff_t offset = static_cast<std::ptrdiff_t>(st.off[q]) *
                                      static_cast<std::ptrdiff_t>(stride);
        acc += st.w[q] * v[static_cast<std::size_t>(static_cast<std::ptrdiff_t>(p) + offset)];
    }
    return acc;
}

} // namespace

void PayoffSpec::validate() const
{
    if (!(strike > 0.0))
        throw std::invalid_argument("payoff: strike must be > 0");
    if (kind == Kind::UpAndOutCall && !(barrier > 0.0))
        throw std::invalid_argument("payoff: barrier must be > 0");
}

BoundaryRules BoundaryRules::for_payoff(const PayoffSpec& payoff)
{
    BoundaryRules r;
    using R = FaceRule;
    switch (payoff.kind) {
    case PayoffSpec::Kind::EuropeanCall:
    case PayoffSpec::Kind::UpAndOutCall:
        r.face = {R::Zero, R::UnitSlopeS, R::ReducedPde, R::EqualS, R::Zero,
                  R::UnitSlopeS, R::Copy, R::Copy, R::Pde, R::Extrapolate};
        if (payoff.kind == PayoffSpec::Kind::UpAndOutCall) {
            r.face[kVHi] = R::Copy;
            r.knockout = payoff.barrier;
        }
        break;
    case PayoffSpec::Kind::FixedStrikeAsianCall:
        // s = 0 is left to the operator: every s-term carries a factor s.
        r.face = {R::Pde, R::Extrapolate, R::ReducedPde, R::Copy, R::Copy,
                  R::Copy, R::Copy, R::Copy, R::Pde, R::Extrapolate};
        break;
    }
    return r;
}

BoundaryRules BoundaryRules::homogeneous()
{
    BoundaryRules r;
    r.face.fill(FaceRule::Zero);
    return r;
}

std::vector<std::uint8_t> active_mask(const Grid& grid, const BoundaryRules& rules)
{
    std::vector<std::uint8_t> active(grid.size(), 1);
    for (int a = 0; a < grid.rank(); ++a) {
        if (grid.collapsed(a))
            continue;
        for (bool high : {false, true}) {
            const Face f = high ? high_face(a) : low_face(a);
            if (!rules.owns(f))
                continue;
            for_each_on_face(grid, a, high, [&](std::size_t p) { active[p] = 0; });
        }
    }
    return active;
}

Field terminal_condition(const PayoffSpec& payoff, const Grid& grid)
{
    payoff.validate();
    if (payoff.kind == PayoffSpec::Kind::FixedStrikeAsianCall)
        throw std::invalid_argument("terminal_condition: Asian payoff needs asian_terminal");
    Field f(grid.size());
    for (std::size_t p = 0; p < grid.size(); ++p) {
        const double s = grid.coord(kS, grid.along(p, kS));
        double v = std::max(s - payoff.strike, 0.0);
        if (payoff.kind == PayoffSpec::Kind::UpAndOutCall && knocked_out(s, payoff.barrier))
            v = 0.0;
        f[p] = v;
    }
    return f;
}

void advance_reduced_face(const BoundaryRules& rules, Field& field, const Grid& g,
                          const ModelParams& p, double dt, Advection adv)
{
    check_shape(field, g);
    if (g.collapsed(kV) || rules.face[kVLo] != FaceRule::ReducedPde)
        return;
    const std::vector<double> old = field.values;
    const bool has_i = g.rank() == 5 && !g.collapsed(kI);
    const double mixed_xr = p.rho_x * p.rho_r * p.sigma_x * p.sigma_r;

    for_each_on_face(g, kV, false, [&](std::size_t q) {
        const double s = g.coord(kS, g.along(q, kS));
        const double x = g.coord(kX, g.along(q, kX));
        const double r = g.coord(kR, g.along(q, kR));
        double lv = -r * old[q];
        if (!g.collapsed(kS)) {
            const auto d1 =
                advective_derivative(g.along(q, kS), g.count(kS), g.spacing(kS), r * s, 0.0, adv);
            lv += r * s * apply_stencil(d1, old, q, g.stride(kS));
        }
        if (!g.collapsed(kX)) {
            const int k = g.along(q, kX);
            const double h = g.spacing(kX);
            const double diff_x = 0.5 * p.sigma_x * p.sigma_x;
            lv += r * x * apply_stencil(advective_derivative(k, g.count(kX), h, r * x, diff_x, adv), old, q,
                                        g.stride(kX));
            lv += diff_x * apply_stencil(second_derivative(k, g.count(kX), h), old, q, g.stride(kX));
        }
        if (!g.collapsed(kR)) {
            const int k = g.along(q, kR);
            const double h = g.spacing(kR);
            const double diff_r = 0.5 * p.sigma_r * p.sigma_r;
            lv += r * r * apply_stencil(advective_derivative(k, g.count(kR), h, r * r, diff_r, adv), old, q,
                                        g.stride(kR));
            lv += diff_r * apply_stencil(second_derivative(k, g.count(kR), h), old, q, g.stride(kR));
        }
        if (!g.collapsed(kX) && !g.collapsed(kR) && mixed_xr != 0.0) {
            const auto dx = first_derivative(g.along(q, kX), g.count(kX), g.spacing(kX));
            const auto dr = first_derivative(g.along(q, kR), g.count(kR), g.spacing(kR));
            double cross = 0.0;
            for (int a = 0; a < 3; ++a)
                for (int b = 0; b < 3; ++b) {
                    const std::ptrdiff_t off =
                        dx.off[a] * static_cast<std::ptrdiff_t>(g.stride(kX)) +
                        dr.off[b] * static_cast<std::ptrdiff_t>(g.stride(kR));
                    cross += dx.w[a] * dr.w[b] *
                             old[static_cast<std::size_t>(static_cast<std::ptrdiff_t>(q) + off)];
                }
            lv += mixed_xr * cross;
        }
        if (has_i) {
            // S V_I, upwinded toward larger I
            const int k = g.along(q, kI);
            const std::size_t st = g.stride(kI);
            const double h = g.spacing(kI);
            const double slope = k + 1 < g.count(kI) ? (old[q + st] - old[q]) / h
                                                     : (old[q] - old[q - st]) / h;
            lv += s * slope;
        }
        field[q] = old[q] + dt * lv;
    });
}

void apply_static_faces(const BoundaryRules& rules, Field& field, const Grid& g)
{
    check_shape(field, g);
    auto faces_with = [&](auto pred, auto&& fn) {
        for (int a = 0; a < g.rank(); ++a) {
            if (g.collapsed(a))
                continue;
            for (bool high : {false, true}) {
                const Face f = high ? high_face(a) : low_face(a);
                if (pred(f))
                    fn(a, high, rules.face[f]);
            }
        }
    };

    // Dirichlet data, weakest first so stronger faces overwrite corners:
    // V = s, then zero faces, then s = 0, then the knockout zone.
    faces_with([&](Face f) { return rules.face[f] == FaceRule::EqualS; },
               [&](int a, bool high, FaceRule) {
                   for_each_on_face(g, a, high, [&](std::size_t q) {
                       field[q] = g.coord(kS, g.along(q, kS));
                   });
               });
    faces_with([&](Face f) { return f != kSLo && rules.face[f] == FaceRule::Zero; },
               [&](int a, bool high, FaceRule) {
                   for_each_on_face(g, a, high, [&](std::size_t q) { field[q] = 0.0; });
               });
    if (!g.collapsed(kS) && rules.face[kSLo] == FaceRule::Zero)
        for_each_on_face(g, kS, false, [&](std::size_t q) { field[q] = 0.0; });
    if (rules.knockout) {
        const double b = *rules.knockout;
        for (std::size_t q = 0; q < g.size(); ++q)
            if (knocked_out(g.coord(kS, g.along(q, kS)), b))
                field[q] = 0.0;
    }

    // Neumann-type faces, one axis at a time; where two meet, the later axis wins.
    faces_with([&](Face f) { return is_neumann(rules.face[f]); },
               [&](int a, bool high, FaceRule rule) {
                   const std::size_t st = g.stride(a);
                   for_each_on_face(g, a, high, [&](std::size_t q) {
                       if (dominated(q, g, rules))
                           return;
                       switch (rule) {
                       case FaceRule::Copy:
                           field[q] = high ? field[q - st] : field[q + st];
                           break;
                       case FaceRule::Extrapolate:
                           field[q] = high ? 2.0 * field[q - st] - field[q - 2 * st]
                                           : 2.0 * field[q + st] - field[q + 2 * st];
                           break;
                       case FaceRule::UnitSlopeS:
                           if (!g.collapsed(kS) && g.along(q, kS) > 0)
                               field[q] = field[q - g.stride(kS)] + g.spacing(kS);
                           break;
                       default:
                           break;
                       }
                   });
               });
}

std::vector<std::uint8_t> tied_nodes(const Grid& grid, const BoundaryRules& rules, int axis)
{
    std::vector<std::uint8_t> out(grid.size(), 0);
    if (grid.collapsed(axis))
        return out;
    for (const bool high : {false, true}) {
        const FaceRule rule = rules.face[high ? high_face(axis) : low_face(axis)];
        std::uint8_t code = 0;
        if (rule == FaceRule::Copy || (rule == FaceRule::UnitSlopeS && axis == kS))
            code = 1;
        else if (rule == FaceRule::Extrapolate && grid.count(axis) >= 4)
            code = 2;
        if (code == 0)
            continue;
        for_each_on_face(grid, axis, high, [&](std::size_t q) {
            if (!dominated(q, grid, rules))
                out[q] = code;
        });
    }
    return out;
}

void apply_boundaries(const BoundaryRules& rules, Field& field, const Grid& grid,
                      const ModelParams& p, double dt, Advection adv)
{
    advance_reduced_face(rules, field, grid, p, dt, adv);
    apply_static_faces(rules, field, grid);
}

void apply_boundaries(const PayoffSpec& payoff, Field& field, const Grid& grid,
                      const ModelParams& p, double dt, Advection adv)
{
    apply_boundaries(BoundaryRules::for_payoff(payoff), field, grid, p, dt, adv);
}

} // namespace ff
