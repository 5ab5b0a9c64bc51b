#pragma once

#include <array>
#include <stdexcept>

namespace ff {

// Coefficients of the four-factor dynamics: stock S, equity-premium
// deviation X, instantaneous variance v (Heston) and short rate R (Vasicek).
// X, v and R are correlated with each other only through the stock driver W1.
struct ModelParams {
    double mu = 0.04;        // long-term equity premium
    double kappa_x = 0.3;
    double sigma_x = 0.011;
    double kappa_s = 1.0;
    double sigma_bar = 0.16; // long-term variance
    double eta = 0.027;      // vol of variance
    double kappa_r = 0.3;
    double r_bar = 0.02;
    double sigma_r = 0.019;
    double rho_x = 0.23;
    double rho_s = 0.18;
    double rho_r = 0.21;

    // Throws std::invalid_argument on a violated invariant.
    void validate() const;
};

struct State {
    double s = 0.0;
    double v = 0.0;
    double x = 0.0;
    double r = 0.0;
};

// Component order of the vectors below is (S, X, v, R), the order in which
// the SDE system is written; Brownian columns are W1..W4.
using Vec4 = std::array<double, 4>;
using Mat4 = std::array<std::array<double, 4>, 4>;

struct DriftDiffusion {
    Vec4 drift{};
    Mat4 diffusion{}; // lower triangular
};

enum class Measure { Physical, RiskNeutral };

class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

DriftDiffusion physical_drift_diffusion(const ModelParams& p, const State& st);
DriftDiffusion risk_neutral_drift_diffusion(const ModelParams& p, const State& st);
DriftDiffusion drift_diffusion(Measure m, const ModelParams& p, const State& st);

// diffusion * diffusion^T
Mat4 covariance(const Mat4& diffusion);

} // namespace ff
