#include "gridveil/attack_zone.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include <nlohmann/json.hpp>

namespace gridveil {

bool AttackZone::is_interior(int bus_id) const {
    return std::binary_search(interior.begin(), interior.end(), bus_id);
}

bool AttackZone::in_zone(int bus_id) const {
    return is_interior(bus_id) || std::binary_search(boundary.begin(), boundary.end(), bus_id);
}

InjectionClass classify_buses(const Network& net, double tol) {
    if (tol < 0) throw ValidationError("zero-injection tolerance must be >= 0");
    InjectionClass cls;
    cls.kind.resize(net.n_bus());
    for (int i = 0; i < net.n_bus(); ++i) {
        const Bus& b = net.buses()[i];
        auto [ps, qs] = net.scheduled_injection(b.id);
        const bool zero = std::abs(ps) <= tol && std::abs(qs) <= tol &&
                          std::abs(b.g_shunt) <= tol && std::abs(b.b_shunt) <= tol &&
                          !net.has_generator(b.id);
        cls.kind[i] = zero ? InjectionKind::zero_injection : InjectionKind::nonzero_injection;
    }
    return cls;
}

AttackZone build_zone(const Network& net, const InjectionClass& cls,
                      const std::set<int>& targets) {
    if (targets.empty()) throw ValidationError("build_zone: empty target set");
    for (int t : targets) {
        if (!net.has_bus(t)) throw ValidationError("build_zone: unknown target bus " + std::to_string(t));
        if (t == net.slack_id())
            throw ValidationError("build_zone: target bus " + std::to_string(t) +
                                  " is the slack bus; its state must stay fixed");
    }

    std::set<int> interior(targets.begin(), targets.end());
    std::set<int> boundary;
    std::deque<int> frontier(targets.begin(), targets.end());
    while (!frontier.empty()) {
        const int b = frontier.front();
        frontier.pop_front();
        for (int ord : net.branches_at(b)) {
            const Branch& br = net.branches()[ord - 1];
            const int nb = br.from_bus == b ? br.to_bus : br.from_bus;
            if (interior.count(nb) || boundary.count(nb)) continue;
            if (cls.is_zero(net, nb)) {
                if (nb == net.slack_id())
                    throw ValidationError("build_zone: expansion reached the slack bus " +
                                          std::to_string(nb));
                interior.insert(nb);
                frontier.push_back(nb);
            } else {
                boundary.insert(nb);
            }
        }
    }
    if (static_cast<int>(interior.size() + boundary.size()) >= net.n_bus())
        throw ValidationError("build_zone: zone swallows the entire network");

    AttackZone zone;
    zone.interior.assign(interior.begin(), interior.end());
    zone.boundary.assign(boundary.begin(), boundary.end());
    for (const Branch& br : net.branches()) {
        const bool fi = interior.count(br.from_bus) != 0;
        const bool ti = interior.count(br.to_bus) != 0;
        if (fi || ti) zone.zone_branches.push_back(br.id);
    }
    return zone;
}

ZoneReport zone_report(const AttackZone& zone, const Network& net, const InjectionClass& cls) {
    ZoneReport rep;
    rep.n_interior = static_cast<int>(zone.interior.size());
    rep.n_boundary = static_cast<int>(zone.boundary.size());
    rep.n_zone_branches = static_cast<int>(zone.zone_branches.size());
    for (int b : zone.interior)
        if (cls.is_zero(net, b)) ++rep.n_interior_zero_injection;
    rep.n_nonzero_zone_buses =
        rep.n_interior + rep.n_boundary - rep.n_interior_zero_injection;
    rep.dim_v_mag = rep.dim_v_ang = rep.n_interior;
    rep.dim_p_inj = rep.dim_q_inj = rep.n_nonzero_zone_buses;
    rep.dim_p_flow = rep.dim_q_flow = rep.dim_i_mag = rep.n_zone_branches;
    return rep;
}

AttackZone zone_from_json(const std::string& text, const Network& net) {
    const auto j = nlohmann::json::parse(text);
    AttackZone zone;
    zone.interior = j.at("interior").get<std::vector<int>>();
    zone.boundary = j.at("boundary").get<std::vector<int>>();
    std::sort(zone.interior.begin(), zone.interior.end());
    std::sort(zone.boundary.begin(), zone.boundary.end());
    for (int b : zone.interior)
        if (!net.has_bus(b)) throw ValidationError("zone fixture: unknown bus " + std::to_string(b));
    for (const Branch& br : net.branches())
        if (zone.is_interior(br.from_bus) || zone.is_interior(br.to_bus))
            zone.zone_branches.push_back(br.id);
    if (j.contains("target_line")) {
        const int f = j["target_line"].at("from").get<int>();
        const int t = j["target_line"].at("to").get<int>();
        for (const Branch& br : net.branches())
            if (br.from_bus == f && br.to_bus == t) {
                zone.target_line = br.id;
                break;
            }
        if (!zone.target_line)
            throw ValidationError("zone fixture: no in-service branch " + std::to_string(f) + "-" +
                                  std::to_string(t));
    }
    return zone;
}

std::string zone_to_json(const AttackZone& zone, const Network& net) {
    nlohmann::ordered_json j;
    j["interior"] = zone.interior;
    j["boundary"] = zone.boundary;
    if (zone.target_line) {
        const Branch& br = net.branches()[*zone.target_line - 1];
        j["target_line"] = {{"from", br.from_bus}, {"to", br.to_bus}};
    }
    return j.dump(1);
}

}  // namespace gridveil
