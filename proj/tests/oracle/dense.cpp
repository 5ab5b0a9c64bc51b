#include "dense.hpp"

#include <cmath>

namespace oracle {

namespace {

// SDE component order is (S, X, v, R); grid axes are (s, v, x, r).
constexpr int sde_of_axis[4] = {0, 2, 1, 3};

bool interior(const ff::Grid& g, std::size_t p)
{
    for (int a = 0; a < g.rank(); ++a) {
        if (g.collapsed(a))
            continue;
        const int k = g.along(p, a);
        if (k == 0 || k == g.count(a) - 1)
            return false;
    }
    return true;
}

} // namespace

Eigen::MatrixXd DenseOperators::diagonal_part() const
{
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(mixed.rows(), mixed.cols());
    for (const auto& m : axis)
        b += m;
    return b;
}

Eigen::MatrixXd DenseOperators::full() const
{
    return diagonal_part() + mixed;
}

DenseOperators build_dense(const ff::ModelParams& p, const ff::Grid& g, double dt, bool i_advection)
{
    const auto n = static_cast<Eigen::Index>(g.size());
    DenseOperators ops;
    ops.axis.assign(g.rank(), Eigen::MatrixXd::Zero(n, n));
    ops.mixed = Eigen::MatrixXd::Zero(n, n);

    for (std::size_t q = 0; q < g.size(); ++q) {
        if (!interior(g, q))
            continue;
        const auto row = static_cast<Eigen::Index>(q);
        const ff::State st{g.coord(ff::kS, g.along(q, ff::kS)), g.coord(ff::kV, g.along(q, ff::kV)),
                           g.coord(ff::kX, g.along(q, ff::kX)), g.coord(ff::kR, g.along(q, ff::kR))};
        const auto dd = ff::risk_neutral_drift_diffusion(p, st);
        const auto cov = ff::covariance(dd.diffusion);

        for (int a = 0; a < 4; ++a) {
            ops.axis[a](row, row) += -0.25 * st.r * dt;
            if (g.collapsed(a))
                continue;
            const int i = sde_of_axis[a];
            const double h = g.spacing(a);
            const auto up = static_cast<Eigen::Index>(q + g.stride(a));
            const auto dn = static_cast<Eigen::Index>(q - g.stride(a));
            const double d2 = 0.5 * cov[i][i] * dt / (h * h);
            const double d1 = dd.drift[i] * dt / (2.0 * h);
            ops.axis[a](row, up) += d2 + d1;
            ops.axis[a](row, dn) += d2 - d1;
            ops.axis[a](row, row) += -2.0 * d2;
        }
        for (int a = 0; a < 4; ++a)
            for (int b = a + 1; b < 4; ++b) {
                if (g.collapsed(a) || g.collapsed(b))
                    continue;
                const double c = cov[sde_of_axis[a]][sde_of_axis[b]];
                const double w = c * dt / (4.0 * g.spacing(a) * g.spacing(b));
                const std::size_t sa = g.stride(a), sb = g.stride(b);
                ops.mixed(row, static_cast<Eigen::Index>(q + sa + sb)) += w;
                ops.mixed(row, static_cast<Eigen::Index>(q - sa - sb)) += w;
                ops.mixed(row, static_cast<Eigen::Index>(q + sa - sb)) -= w;
                ops.mixed(row, static_cast<Eigen::Index>(q - sa + sb)) -= w;
            }
        if (g.rank() == 5 && i_advection && !g.collapsed(ff::kI)) {
            const double c = st.s * dt / g.spacing(ff::kI);
            ops.axis[ff::kI](row, row) -= c;
            ops.axis[ff::kI](row, static_cast<Eigen::Index>(q + g.stride(ff::kI))) += c;
        }
    }
    return ops;
}

Eigen::VectorXd to_vector(const ff::Field& f)
{
    return Eigen::Map<const Eigen::VectorXd>(f.values.data(), static_cast<Eigen::Index>(f.size()));
}

Eigen::VectorXd forward_euler(const DenseOperators& ops, const Eigen::VectorXd& v)
{
    return v + ops.full() * v;
}

Eigen::VectorXd factored_step(const DenseOperators& ops, const Eigen::VectorXd& v, double theta)
{
    const auto n = v.size();
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
    Eigen::VectorXd y = ops.full() * v;
    for (const auto& m : ops.axis)
        y = (id - theta * m).partialPivLu().solve(y);
    return v + y;
}

Eigen::VectorXd unsplit_step(const DenseOperators& ops, const Eigen::VectorXd& v, double theta)
{
    const auto n = v.size();
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
    return v + (id - theta * ops.diagonal_part()).partialPivLu().solve(ops.full() * v);
}

} // namespace oracle
