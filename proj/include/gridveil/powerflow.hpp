// Newton-Raphson AC power flow and state evaluation primitives.
#pragma once

#include <Eigen/Dense>

#include "gridveil/admittance.hpp"
#include "gridveil/network.hpp"

namespace gridveil {

struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct VoltageState {
    Eigen::VectorXd v_mag;  // pu, by bus index
    Eigen::VectorXd v_ang;  // radians
};

struct PfOptions {
    double tolerance = 1e-8;  // infinity norm of the pu mismatch
    int max_iterations = 20;
    bool flat_start = true;
};

struct BranchFlows {
    Eigen::VectorXd p_from, q_from, p_to, q_to;  // pu, by branch index
};

struct OperatingPoint {
    VoltageState state;
    BranchFlows flows;
    Eigen::VectorXd p_inj, q_inj;    // pu net bus injections (shunts included)
    Eigen::VectorXcd i_from, i_to;   // pu branch currents
    bool converged = false;
    int iterations = 0;
    double max_mismatch = 0.0;
};

/// Exact evaluation of the pi-model flow equations at the given state.
BranchFlows branch_flows(const Network& net, const AdmittanceSet& adm, const VoltageState& state);

/// i_from = y_from * V, i_to = y_to * V with V = v_mag .* exp(j v_ang).
std::pair<Eigen::VectorXcd, Eigen::VectorXcd> branch_currents(const AdmittanceSet& adm,
                                                              const VoltageState& state);

/// Net injection per bus: shunt term plus incident from/to-side flows,
/// computed as V .* conj(y_bus V).
std::pair<Eigen::VectorXd, Eigen::VectorXd> bus_injections(const Network& net,
                                                           const AdmittanceSet& adm,
                                                           const VoltageState& state);

/// Full Newton-Raphson solve with fixed PV-bus voltage setpoints (no
/// reactive-limit switching). Throws NumericError on non-convergence or a
/// singular Jacobian; the message carries the last mismatch norm.
OperatingPoint solve_power_flow(const Network& net, const AdmittanceSet& adm,
                                const PfOptions& opts = {});

/// Evaluate all operating-point quantities for an externally supplied state.
OperatingPoint evaluate_state(const Network& net, const AdmittanceSet& adm,
                              const VoltageState& state);

/// Wrap an angle to (-pi, pi].
double principal_angle(double a);

}  // namespace gridveil
