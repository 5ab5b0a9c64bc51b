#pragma once

// Brute-force reference for the discrete operators on tiny grids. The PDE
// coefficients are rebuilt from the SDE (risk-neutral drift and covariance),
// not from the production assembly, and every stage is a dense LU solve.

#include <vector>

#include <Eigen/Dense>

#include "fourfactor/grid.hpp"
#include "fourfactor/model.hpp"

namespace oracle {

struct DenseOperators {
    std::vector<Eigen::MatrixXd> axis; // one per grid axis, dt included
    Eigen::MatrixXd mixed;             // sum of the cross terms, dt included

    Eigen::MatrixXd diagonal_part() const; // B
    Eigen::MatrixXd full() const;          // A + B
};

// Rows are nonzero only at strictly interior nodes (every face is a zero
// Dirichlet face). The reaction -r is split in four over s, v, x, r; the I
// axis of a rank-5 grid carries the first-order upwind s * V_I.
DenseOperators build_dense(const ff::ModelParams& p, const ff::Grid& g, double dt,
                           bool i_advection = true);

Eigen::VectorXd to_vector(const ff::Field& f);

Eigen::VectorXd forward_euler(const DenseOperators& ops, const Eigen::VectorXd& v);
// V + prod_k (I - theta M_k)^-1 (A + B) V, stages in axis order.
Eigen::VectorXd factored_step(const DenseOperators& ops, const Eigen::VectorXd& v, double theta);
// V + (I - theta B)^-1 (A + B) V.
Eigen::VectorXd unsplit_step(const DenseOperators& ops, const Eigen::VectorXd& v, double theta);

} // namespace oracle
