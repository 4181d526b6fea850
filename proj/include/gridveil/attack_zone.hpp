// Zone growth: expand from target buses through zero-injection buses,
// stopping at non-zero-injection boundary buses whose voltages stay fixed.
#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gridveil/network.hpp"

namespace gridveil {

enum class InjectionKind { zero_injection, nonzero_injection };

struct InjectionClass {
    std::vector<InjectionKind> kind;  // by bus index
    bool is_zero(const Network& net, int bus_id) const {
        return kind[net.index_of(bus_id)] == InjectionKind::zero_injection;
    }
};

struct AttackZone {
    std::vector<int> interior;        // bus ids, ascending
    std::vector<int> boundary;        // bus ids, ascending
    std::vector<int> zone_branches;   // branch ordinals, ascending
    std::optional<int> target_line;   // branch ordinal, when a fixture names one

    bool is_interior(int bus_id) const;
    bool in_zone(int bus_id) const;
};

struct ZoneReport {
    int n_interior = 0;
    int n_boundary = 0;
    int n_zone_branches = 0;
    int n_interior_zero_injection = 0;
    int n_nonzero_zone_buses = 0;
    // attack-vector block size forecast
    int dim_v_mag = 0, dim_v_ang = 0;
    int dim_p_inj = 0, dim_q_inj = 0;
    int dim_p_flow = 0, dim_q_flow = 0, dim_i_mag = 0;
};

/// A bus is zero-injection when its scheduled |Pg-Pd|, |Qg-Qd| and its shunt
/// are all below tol. A bus carrying any shunt counts as non-zero injection
/// since its injection varies with voltage.
InjectionClass classify_buses(const Network& net, double tol = 1e-9);

/// Breadth-first growth from the target buses. Zero-injection neighbours join
/// the interior and are explored; non-zero-injection neighbours become the
/// fixed-voltage boundary. Throws ValidationError when a target is the slack
/// bus or when the zone swallows the whole network.
AttackZone build_zone(const Network& net, const InjectionClass& cls,
                      const std::set<int>& targets);

ZoneReport zone_report(const AttackZone& zone, const Network& net, const InjectionClass& cls);

/// JSON fixture round-trip: {"interior": [...], "boundary": [...],
///  "target_line": {"from": f, "to": t}}.
AttackZone zone_from_json(const std::string& text, const Network& net);
std::string zone_to_json(const AttackZone& zone, const Network& net);

}  // namespace gridveil
