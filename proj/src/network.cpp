#include "gridveil/network.hpp"

#include <algorithm>
#include <queue>

namespace gridveil {

Network::Network(double base_mva, std::vector<Bus> buses, std::vector<Branch> branches,
                 std::vector<Generator> generators)
    : base_mva_(base_mva),
      buses_(std::move(buses)),
      branches_(std::move(branches)),
      generators_(std::move(generators)) {
    for (int i = 0; i < static_cast<int>(buses_.size()); ++i) {
        id_to_index_.emplace(buses_[i].id, i);
        if (buses_[i].bus_type == BusType::slack && slack_index_ < 0) slack_index_ = i;
    }
    for (const auto& g : generators_) gens_by_bus_[g.bus_id].push_back(&g);
    incident_.resize(buses_.size());
    for (const auto& br : branches_) {
        auto f = id_to_index_.find(br.from_bus);
        auto t = id_to_index_.find(br.to_bus);
        if (f != id_to_index_.end()) incident_[f->second].push_back(br.id);
        if (t != id_to_index_.end()) incident_[t->second].push_back(br.id);
    }
}

int Network::index_of(int bus_id) const {
    auto it = id_to_index_.find(bus_id);
    if (it == id_to_index_.end())
        throw ValidationError("unknown bus id " + std::to_string(bus_id));
    return it->second;
}

bool Network::has_generator(int bus_id) const {
    auto it = gens_by_bus_.find(bus_id);
    return it != gens_by_bus_.end() && !it->second.empty();
}

double Network::p_gen_at(int bus_id) const {
    double p = 0.0;
    auto it = gens_by_bus_.find(bus_id);
    if (it != gens_by_bus_.end())
        for (const auto* g : it->second) p += g->p_gen;
    return p;
}

double Network::q_gen_at(int bus_id) const {
    double q = 0.0;
    auto it = gens_by_bus_.find(bus_id);
    if (it != gens_by_bus_.end())
        for (const auto* g : it->second) q += g->q_gen;
    return q;
}

std::optional<double> Network::v_setpoint_at(int bus_id) const {
    auto it = gens_by_bus_.find(bus_id);
    if (it == gens_by_bus_.end() || it->second.empty()) return std::nullopt;
    return it->second.front()->v_setpoint;
}

std::pair<double, double> Network::scheduled_injection(int bus_id) const {
    const Bus& b = bus(bus_id);
    return {p_gen_at(bus_id) - b.p_demand, q_gen_at(bus_id) - b.q_demand};
}

const std::vector<int>& Network::branches_at(int bus_id) const {
    return incident_[index_of(bus_id)];
}

std::vector<std::string> validate_network(const Network& net) {
    std::vector<std::string> diags;
    int n_slack = 0;
    for (const auto& b : net.buses()) {
        if (b.bus_type == BusType::slack) ++n_slack;
        if (b.v_min > b.v_max)
            diags.push_back("bus " + std::to_string(b.id) + ": v_min > v_max");
    }
    if (n_slack == 0) diags.push_back("no slack bus");
    if (n_slack > 1) diags.push_back("more than one slack bus (" + std::to_string(n_slack) + ")");

    for (const auto& br : net.branches()) {
        if (br.r == 0.0 && br.x == 0.0)
            diags.push_back("branch " + std::to_string(br.id) + " (" + std::to_string(br.from_bus) +
                            "-" + std::to_string(br.to_bus) + "): zero impedance");
        if (br.from_bus == br.to_bus)
            diags.push_back("branch " + std::to_string(br.id) + ": from and to are both bus " +
                            std::to_string(br.from_bus));
    }
    for (const auto& g : net.generators()) {
        if (!net.has_bus(g.bus_id))
            diags.push_back("generator at unknown bus " + std::to_string(g.bus_id));
    }

    // connectivity over in-service branches
    if (net.n_bus() > 0) {
        std::vector<char> seen(net.n_bus(), 0);
        std::queue<int> q;
        q.push(0);
        seen[0] = 1;
        int reached = 1;
        while (!q.empty()) {
            int i = q.front();
            q.pop();
            for (int ord : net.branches_at(net.buses()[i].id)) {
                const Branch& br = net.branches()[ord - 1];
                for (int other : {br.from_bus, br.to_bus}) {
                    int j = net.index_of(other);
                    if (!seen[j]) {
                        seen[j] = 1;
                        ++reached;
                        q.push(j);
                    }
                }
            }
        }
        if (reached != net.n_bus()) {
            std::string who;
            int shown = 0;
            for (int i = 0; i < net.n_bus(); ++i)
                if (!seen[i] && shown++ < 8) who += " " + std::to_string(net.buses()[i].id);
            diags.push_back("network is disconnected; unreachable buses:" + who);
        }
    }
    return diags;
}

}  // namespace gridveil
