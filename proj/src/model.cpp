#include "fourfactor/model.hpp"

#include <cmath>
#include <string>

namespace ff {

namespace {

void require(bool ok, const char* what)
{
    if (!ok)
        throw std::invalid_argument(std::string("ModelParams: ") + what);
}

bool open_unit(double rho) { return rho > -1.0 && rho < 1.0; }

Mat4 loadings(const ModelParams& p, const State& st)
{
    if (!(st.v >= 0.0))
        throw DomainError("negative variance passed to drift/diffusion; truncate first");
    const double sv = std::sqrt(st.v);
    Mat4 d{};
    d[0][0] = sv * st.s;
    d[1][0] = p.sigma_x * p.rho_x;
    d[1][1] = p.sigma_x * std::sqrt(1.0 - p.rho_x * p.rho_x);
    d[2][0] = p.eta * sv * p.rho_s;
    d[2][2] = p.eta * sv * std::sqrt(1.0 - p.rho_s * p.rho_s);
    d[3][0] = p.sigma_r * p.rho_r;
    d[3][3] = p.sigma_r * std::sqrt(1.0 - p.rho_r * p.rho_r);
    return d;
}

} // namespace

void ModelParams::validate() const
{
    require(open_unit(rho_x), "rho_x must lie in (-1, 1)");
    require(open_unit(rho_s), "rho_s must lie in (-1, 1)");
    require(open_unit(rho_r), "rho_r must lie in (-1, 1)");
    require(sigma_x >= 0.0, "sigma_x must be >= 0");
    require(eta >= 0.0, "eta must be >= 0");
    require(sigma_r >= 0.0, "sigma_r must be >= 0");
    require(sigma_bar >= 0.0, "sigma_bar must be >= 0");
    require(kappa_x >= 0.0, "kappa_x must be >= 0");
    require(kappa_s >= 0.0, "kappa_s must be >= 0");
    require(kappa_r >= 0.0, "kappa_r must be >= 0");
    require(std::isfinite(mu) && std::isfinite(r_bar), "mu and r_bar must be finite");
}

DriftDiffusion physical_drift_diffusion(const ModelParams& p, const State& st)
{
    DriftDiffusion out;
    out.diffusion = loadings(p, st);
    out.drift = {(p.mu + st.x + st.r) * st.s,
                 -p.kappa_x * st.x,
                 p.kappa_s * (p.sigma_bar - st.v),
                 p.kappa_r * (p.r_bar - st.r)};
    return out;
}

DriftDiffusion risk_neutral_drift_diffusion(const ModelParams& p, const State& st)
{
    DriftDiffusion out;
    out.diffusion = loadings(p, st);
    out.drift = {st.r * st.s, st.r * st.x, st.r * st.v, st.r * st.r};
    return out;
}

DriftDiffusion drift_diffusion(Measure m, const ModelParams& p, const State& st)
{
    return m == Measure::Physical ? physical_drift_diffusion(p, st)
                                  : risk_neutral_drift_diffusion(p, st);
}

Mat4 covariance(const Mat4& d)
{
    Mat4 c{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                c[i][j] += d[i][k] * d[j][k];
    return c;
}

} // namespace ff
