// Immutable per-unit network model: buses, branches, generators.
#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace gridveil {

enum class BusType { slack, pv, pq };

struct Bus {
    int id = 0;                 // external bus number, unique
    BusType bus_type = BusType::pq;
    double p_demand = 0.0;      // pu on system base
    double q_demand = 0.0;
    double g_shunt = 0.0;       // pu shunt conductance / susceptance
    double b_shunt = 0.0;
    double v_min = 0.0;
    double v_max = 0.0;
    double base_kv = 0.0;
    double vm_init = 1.0;       // stored case voltage, used for warm starts
    double va_init = 0.0;       // radians; fixes the slack angle
};

struct Generator {
    int bus_id = 0;
    double p_gen = 0.0;         // pu setpoints
    double q_gen = 0.0;
    double p_min = 0.0, p_max = 0.0;
    double q_min = 0.0, q_max = 0.0;
    double v_setpoint = 1.0;    // regulated voltage at the bus
};

struct Branch {
    int id = 0;                 // 1-based ordinal among in-service branches
    int from_bus = 0;
    int to_bus = 0;
    double r = 0.0;             // pu series impedance
    double x = 0.0;
    double b_charging = 0.0;    // pu total line charging
    double tap_ratio = 1.0;     // 1.0 when absent in the source table
    double phase_shift = 0.0;   // radians
    double rate_a = 0.0;        // pu; 0 = unlimited
    bool in_service = true;
};

class Network {
public:
    Network(double base_mva, std::vector<Bus> buses, std::vector<Branch> branches,
            std::vector<Generator> generators);

    double base_mva() const { return base_mva_; }
    const std::vector<Bus>& buses() const { return buses_; }
    const std::vector<Branch>& branches() const { return branches_; }
    const std::vector<Generator>& generators() const { return generators_; }

    int n_bus() const { return static_cast<int>(buses_.size()); }
    int n_branch() const { return static_cast<int>(branches_.size()); }

    /// Internal index (0-based, file order) for an external bus id.
    int index_of(int bus_id) const;
    bool has_bus(int bus_id) const { return id_to_index_.count(bus_id) != 0; }
    const Bus& bus(int bus_id) const { return buses_[index_of(bus_id)]; }

    int slack_index() const { return slack_index_; }
    int slack_id() const { return buses_[slack_index_].id; }

    // Per-bus generator aggregates (multiple units collapse to one net injection).
    bool has_generator(int bus_id) const;
    double p_gen_at(int bus_id) const;
    double q_gen_at(int bus_id) const;
    /// Regulated voltage for pv/slack buses (first unit at the bus wins).
    std::optional<double> v_setpoint_at(int bus_id) const;

    /// Scheduled net injection Pg-Pd, Qg-Qd in pu from the case data.
    std::pair<double, double> scheduled_injection(int bus_id) const;

    /// Branch ordinals (1-based) incident to a bus, file order.
    const std::vector<int>& branches_at(int bus_id) const;

private:
    double base_mva_;
    std::vector<Bus> buses_;
    std::vector<Branch> branches_;
    std::vector<Generator> generators_;
    std::unordered_map<int, int> id_to_index_;
    std::unordered_map<int, std::vector<const Generator*>> gens_by_bus_;
    std::vector<std::vector<int>> incident_;   // by bus index
    int slack_index_ = -1;
};

/// All invariant violations, one human-readable diagnostic per entry.
/// Empty result means the network is well-formed.
std::vector<std::string> validate_network(const Network& net);

struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace gridveil
