#include "gridveil/admittance.hpp"

#include <vector>

namespace gridveil {

AdmittanceSet build_admittance(const Network& net) {
    const int n = net.n_bus();
    const int m = net.n_branch();
    AdmittanceSet adm;
    adm.y_bus.resize(n, n);
    adm.y_from.resize(m, n);
    adm.y_to.resize(m, n);
    adm.yff.resize(m);
    adm.yft.resize(m);
    adm.ytf.resize(m);
    adm.ytt.resize(m);

    std::vector<Eigen::Triplet<cplx>> tb, tf, tt;
    tb.reserve(4 * m + n);
    for (int k = 0; k < m; ++k) {
        const Branch& br = net.branches()[k];
        if (br.r == 0.0 && br.x == 0.0)
            throw ValidationError("branch " + std::to_string(br.id) + " has zero impedance");
        const int f = net.index_of(br.from_bus);
        const int t = net.index_of(br.to_bus);
        const cplx ys = 1.0 / cplx(br.r, br.x);
        const cplx ych(0.0, br.b_charging / 2.0);
        const double tap = br.tap_ratio;
        const cplx shift = std::polar(1.0, br.phase_shift);
        const cplx T = tap * shift;

        adm.yff[k] = (ys + ych) / (tap * tap);
        adm.yft[k] = -ys / std::conj(T);
        adm.ytf[k] = -ys / T;
        adm.ytt[k] = ys + ych;

        tf.emplace_back(k, f, adm.yff[k]);
        tf.emplace_back(k, t, adm.yft[k]);
        tt.emplace_back(k, f, adm.ytf[k]);
        tt.emplace_back(k, t, adm.ytt[k]);

        tb.emplace_back(f, f, adm.yff[k]);
        tb.emplace_back(f, t, adm.yft[k]);
        tb.emplace_back(t, f, adm.ytf[k]);
        tb.emplace_back(t, t, adm.ytt[k]);
    }
    for (int i = 0; i < n; ++i) {
        const Bus& b = net.buses()[i];
        if (b.g_shunt != 0.0 || b.b_shunt != 0.0)
            tb.emplace_back(i, i, cplx(b.g_shunt, b.b_shunt));
    }
    adm.y_bus.setFromTriplets(tb.begin(), tb.end());
    adm.y_from.setFromTriplets(tf.begin(), tf.end());
    adm.y_to.setFromTriplets(tt.begin(), tt.end());
    return adm;
}

}  // namespace gridveil
