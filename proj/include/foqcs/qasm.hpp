#pragma once

#include <string>

#include "foqcs/circuit.hpp"

namespace foqcs {

/// Serializes a lowered circuit as OpenQASM-3-style text, one gate per
/// line, registers flattened into a single qubit array with a header
/// comment mapping names to index ranges. Post-selection markers are kept
/// as directive comments so the text round-trips.
std::string emit_qasm(const Circuit& circuit);

/// Parses text produced by emit_qasm back into a circuit.
Circuit parse_qasm(const std::string& text);

}  // namespace foqcs
