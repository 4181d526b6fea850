#include "gridveil/powerflow.hpp"

#include <cmath>

#include <Eigen/SparseLU>

namespace gridveil {

namespace {
constexpr double kPi = 3.14159265358979323846;

Eigen::VectorXcd complex_voltage(const VoltageState& s) {
    const auto n = s.v_mag.size();
    Eigen::VectorXcd V(n);
    for (Eigen::Index i = 0; i < n; ++i) V[i] = std::polar(s.v_mag[i], s.v_ang[i]);
    return V;
}
}  // namespace

double principal_angle(double a) {
    a = std::remainder(a, 2.0 * kPi);
    if (a <= -kPi) a += 2.0 * kPi;
    return a;
}

BranchFlows branch_flows(const Network& net, const AdmittanceSet& adm, const VoltageState& state) {
    const int m = net.n_branch();
    BranchFlows fl;
    fl.p_from.resize(m);
    fl.q_from.resize(m);
    fl.p_to.resize(m);
    fl.q_to.resize(m);
    const Eigen::VectorXcd V = complex_voltage(state);
    for (int k = 0; k < m; ++k) {
        const Branch& br = net.branches()[k];
        const cplx Vf = V[net.index_of(br.from_bus)];
        const cplx Vt = V[net.index_of(br.to_bus)];
        const cplx Sf = Vf * std::conj(adm.yff[k] * Vf + adm.yft[k] * Vt);
        const cplx St = Vt * std::conj(adm.ytf[k] * Vf + adm.ytt[k] * Vt);
        fl.p_from[k] = Sf.real();
        fl.q_from[k] = Sf.imag();
        fl.p_to[k] = St.real();
        fl.q_to[k] = St.imag();
    }
    return fl;
}

std::pair<Eigen::VectorXcd, Eigen::VectorXcd> branch_currents(const AdmittanceSet& adm,
                                                              const VoltageState& state) {
    const Eigen::VectorXcd V = complex_voltage(state);
    return {adm.y_from * V, adm.y_to * V};
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> bus_injections(const Network& net,
                                                           const AdmittanceSet& adm,
                                                           const VoltageState& state) {
    const Eigen::VectorXcd V = complex_voltage(state);
    const Eigen::VectorXcd S = V.cwiseProduct((adm.y_bus * V).conjugate());
    (void)net;
    return {S.real(), S.imag()};
}

OperatingPoint evaluate_state(const Network& net, const AdmittanceSet& adm,
                              const VoltageState& state) {
    OperatingPoint op;
    op.state = state;
    op.flows = branch_flows(net, adm, state);
    std::tie(op.p_inj, op.q_inj) = bus_injections(net, adm, state);
    std::tie(op.i_from, op.i_to) = branch_currents(adm, state);
    return op;
}

OperatingPoint solve_power_flow(const Network& net, const AdmittanceSet& adm,
                                const PfOptions& opts) {
    if (!(opts.tolerance > 0)) throw NumericError("power flow tolerance must be positive");
    const int n = net.n_bus();
    const int slack = net.slack_index();

    // scheduled injections and bus classes
    Eigen::VectorXd p_sched(n), q_sched(n);
    std::vector<char> is_pv(n, 0);
    Eigen::VectorXd v_set = Eigen::VectorXd::Ones(n);
    for (int i = 0; i < n; ++i) {
        const Bus& b = net.buses()[i];
        auto [ps, qs] = net.scheduled_injection(b.id);
        p_sched[i] = ps;
        q_sched[i] = qs;
        if (auto vs = net.v_setpoint_at(b.id)) {
            is_pv[i] = 1;
            v_set[i] = *vs;
        }
    }
    is_pv[slack] = 1;
    if (net.v_setpoint_at(net.slack_id()))
        v_set[slack] = *net.v_setpoint_at(net.slack_id());
    else
        v_set[slack] = net.buses()[slack].vm_init;

    std::vector<int> pvpq, pq;  // mismatch/variable orderings
    for (int i = 0; i < n; ++i)
        if (i != slack && is_pv[i]) pvpq.push_back(i);
    for (int i = 0; i < n; ++i)
        if (!is_pv[i]) {
            pvpq.push_back(i);
            pq.push_back(i);
        }
    std::vector<int> pos_th(n, -1), pos_v(n, -1);
    for (size_t a = 0; a < pvpq.size(); ++a) pos_th[pvpq[a]] = static_cast<int>(a);
    for (size_t a = 0; a < pq.size(); ++a) pos_v[pq[a]] = static_cast<int>(pvpq.size() + a);
    const int nx = static_cast<int>(pvpq.size() + pq.size());

    VoltageState st;
    st.v_ang = Eigen::VectorXd::Constant(n, net.buses()[slack].va_init);
    st.v_mag = Eigen::VectorXd::Ones(n);
    for (int i = 0; i < n; ++i)
        if (is_pv[i]) st.v_mag[i] = v_set[i];
    if (!opts.flat_start) {
        for (int i = 0; i < n; ++i) {
            st.v_ang[i] = net.buses()[i].va_init;
            if (!is_pv[i]) st.v_mag[i] = net.buses()[i].vm_init;
        }
    }

    OperatingPoint op;
    double mis_norm = 0.0;
    for (int iter = 0; iter <= opts.max_iterations; ++iter) {
        const Eigen::VectorXcd V = complex_voltage(st);
        const Eigen::VectorXcd I = adm.y_bus * V;
        const Eigen::VectorXcd S = V.cwiseProduct(I.conjugate());

        Eigen::VectorXd mis(nx);
        for (size_t a = 0; a < pvpq.size(); ++a) mis[a] = p_sched[pvpq[a]] - S[pvpq[a]].real();
        for (size_t a = 0; a < pq.size(); ++a)
            mis[pvpq.size() + a] = q_sched[pq[a]] - S[pq[a]].imag();
        mis_norm = nx > 0 ? mis.cwiseAbs().maxCoeff() : 0.0;

        if (mis_norm < opts.tolerance) {
            op = evaluate_state(net, adm, st);
            op.converged = true;
            op.iterations = iter;
            op.max_mismatch = mis_norm;
            return op;
        }
        if (iter == opts.max_iterations) break;

        // polar Jacobian rows: dP(pvpq), dQ(pq); cols: theta(pvpq), v(pq)
        std::vector<Eigen::Triplet<double>> trip;
        trip.reserve(static_cast<size_t>(adm.y_bus.nonZeros()) * 4);
        for (int col = 0; col < adm.y_bus.outerSize(); ++col) {
            for (SparseC::InnerIterator it(adm.y_bus, col); it; ++it) {
                const int i = static_cast<int>(it.row());
                const int j = static_cast<int>(it.col());
                cplx dS_dth, dS_dv;  // partials of S_i wrt theta_j, v_j
                if (i == j) {
                    dS_dth = cplx(0, 1) * V[i] * std::conj(I[i] - it.value() * V[i]);
                    dS_dv = V[i] / st.v_mag[i] * std::conj(I[i]) +
                            V[i] * std::conj(it.value() * V[i] / st.v_mag[i]);
                } else {
                    dS_dth = cplx(0, -1) * V[i] * std::conj(it.value() * V[j]);
                    dS_dv = V[i] * std::conj(it.value() * V[j] / st.v_mag[j]);
                }
                if (pos_th[i] >= 0 && pos_th[j] >= 0)
                    trip.emplace_back(pos_th[i], pos_th[j], dS_dth.real());
                if (pos_th[i] >= 0 && pos_v[j] >= 0)
                    trip.emplace_back(pos_th[i], pos_v[j], dS_dv.real());
                if (pos_v[i] >= 0 && pos_th[j] >= 0)
                    trip.emplace_back(pos_v[i], pos_th[j], dS_dth.imag());
                if (pos_v[i] >= 0 && pos_v[j] >= 0)
                    trip.emplace_back(pos_v[i], pos_v[j], dS_dv.imag());
            }
        }
        Eigen::SparseMatrix<double> J(nx, nx);
        J.setFromTriplets(trip.begin(), trip.end());
        J.makeCompressed();
        Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
        lu.compute(J);
        if (lu.info() != Eigen::Success)
            throw NumericError("singular power-flow Jacobian at iteration " +
                               std::to_string(iter));
        const Eigen::VectorXd dx = lu.solve(mis);
        for (size_t a = 0; a < pvpq.size(); ++a)
            st.v_ang[pvpq[a]] = principal_angle(st.v_ang[pvpq[a]] + dx[a]);
        for (size_t a = 0; a < pq.size(); ++a) st.v_mag[pq[a]] += dx[pvpq.size() + a];
    }
    throw NumericError("power flow did not converge in " + std::to_string(opts.max_iterations) +
                       " iterations; last mismatch " + std::to_string(mis_norm));
}

}  // namespace gridveil
