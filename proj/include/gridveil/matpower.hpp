// MATPOWER case-format reader and canonical writers.
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "gridveil/network.hpp"

namespace gridveil {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Parse MATPOWER case text (mpc.baseMVA, mpc.bus, mpc.gen, mpc.branch).
/// Quantities are converted to per-unit on baseMVA; out-of-service branches
/// are dropped; gencost and any other tables are ignored.
/// Throws ParseError naming the offending line/field, or ValidationError when
/// the parsed tables violate a network invariant (duplicate ids, no slack,
/// disconnected graph).
Network parse_case(std::string_view case_text);

/// parse_case on a file; consults the GRIDVEIL_CASE_DIR search path when the
/// given path does not exist as written.
Network parse_case_file(const std::string& path);

/// Canonical MATPOWER-format text for a parsed network. Parsing the output
/// reproduces the network exactly (values printed with 17 significant digits).
std::string to_matpower(const Network& net);

/// Canonical JSON dump (buses/branches/generators arrays, per-unit values,
/// 17 significant digits) for golden-file comparisons.
std::string to_json(const Network& net);

}  // namespace gridveil
