// Spoofed-state design: equality-constrained minimisation of the state
// deviation subject to in-zone AC physics and a forced line overload, plus
// the non-optimising variant, boundary injection crafting, and assembly of
// the measurement-space attack vector.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gridveil/attack_zone.hpp"
#include "gridveil/powerflow.hpp"

namespace gridveil {

struct TargetOverload {
    int branch_ordinal = 0;  // must be a zone branch
    double w = 1.0;          // multiplier on the pre-attack sending-end flow
};

struct DesignerOptions {
    double feasibility_tol = 1e-8;
    double stationarity_tol = 1e-6;
    int max_outer_iterations = 100;
    std::uint64_t nonoptimal_seed = 1;
    double nonoptimal_perturbation = 0.05;  // pu / rad
};

enum class DesignVariant { optimal, nonoptimal };

struct SpoofedState {
    VoltageState state;           // full network; boundary/external untouched
    double objective = 0.0;       // sum of squared interior deviations
    double constraint_norm = 0.0; // infinity norm at the returned state
    int iterations = 0;
    DesignVariant variant = DesignVariant::optimal;
    bool feasible = false;
    bool voltage_warning = false; // any interior magnitude left [0.8, 1.2] pu

    /// Interior deviations (dv, dtheta) by ascending interior bus id.
    std::vector<std::pair<double, double>> deviation(const Network& net, const AttackZone& zone,
                                                     const OperatingPoint& pre) const;
};

enum class AvBlock { p_flow, q_flow, p_inj, q_inj, v_mag, v_ang, i_mag, i_ang };

struct AvEntry {
    AvBlock block;
    std::string id;     // stable descriptor, e.g. "pf:15-19#26" or "pinj:34"
    int location = 0;   // branch ordinal or bus id
    double pre = 0.0;
    double post = 0.0;
    double delta = 0.0;
};

struct AttackVector {
    std::vector<AvEntry> entries;  // block-ordered

    std::vector<const AvEntry*> block(AvBlock b) const;
    std::size_t size() const { return entries.size(); }
    double block_norm(AvBlock b) const;
};

struct BoundaryInjection {
    int bus_id = 0;
    double p = 0.0, q = 0.0;          // crafted post-attack injection
    double p_pre = 0.0, q_pre = 0.0;  // pre-attack injection
};

/// Minimise the interior deviation subject to zero-injection balances and the
/// target-line overload. Throws NumericError when the problem is infeasible
/// or the iteration limit is hit (message carries the best constraint norm).
SpoofedState design_optimal(const Network& net, const AdmittanceSet& adm,
                            const OperatingPoint& pre, const AttackZone& zone,
                            const TargetOverload& overload, const DesignerOptions& opts = {});

/// Constraint-feasible state with no deviation minimisation: Gauss-Newton on
/// the constraint residual from a seeded random perturbation of the interior.
SpoofedState design_nonoptimal(const Network& net, const AdmittanceSet& adm,
                               const OperatingPoint& pre, const AttackZone& zone,
                               const TargetOverload& overload, const DesignerOptions& opts = {});

/// Crafted injections for every non-zero-injection zone bus: the pre-attack
/// injection plus the flow changes of incident zone branches at that bus.
std::vector<BoundaryInjection> boundary_injections(const Network& net, const AdmittanceSet& adm,
                                                   const OperatingPoint& pre,
                                                   const AttackZone& zone,
                                                   const SpoofedState& spoofed);

/// Measurement-space deltas between the spoofed and pre-attack states.
/// Flow/current blocks cover the zone branches (sending end), injection
/// blocks the non-zero-injection zone buses, voltage blocks the interior.
AttackVector assemble_attack_vector(const Network& net, const AdmittanceSet& adm,
                                    const OperatingPoint& pre, const AttackZone& zone,
                                    const SpoofedState& spoofed);

std::string attack_vector_to_json(const AttackVector& av);
/// CSV (block, id, pre, post, delta); by default only the blocks a
/// measurement plan can consume (current angles excluded).
std::string attack_vector_to_csv(const AttackVector& av, bool include_i_ang = false);
AttackVector attack_vector_from_json(const std::string& text);

const char* block_name(AvBlock b);

}  // namespace gridveil
