// Bus and branch admittance matrices (pi-model with taps and shifts).
#pragma once

#include <complex>

#include <Eigen/SparseCore>

#include "gridveil/network.hpp"

namespace gridveil {

using cplx = std::complex<double>;
using SparseC = Eigen::SparseMatrix<cplx>;

struct AdmittanceSet {
    SparseC y_bus;   // n_bus x n_bus
    SparseC y_from;  // n_branch x n_bus
    SparseC y_to;    // n_branch x n_bus

    // Per-branch two-port coefficients, same information as the rows of
    // y_from/y_to: i_from = yff*Vf + yft*Vt, i_to = ytf*Vf + ytt*Vt.
    Eigen::VectorXcd yff, yft, ytf, ytt;
};

/// Standard pi-model assembly. Series admittance 1/(r+jx); half of the
/// charging at each terminal; from-side quantities scaled by the tap;
/// bus shunts added to the y_bus diagonal.
/// Throws ValidationError for an in-service branch with r == x == 0.
AdmittanceSet build_admittance(const Network& net);

}  // namespace gridveil
