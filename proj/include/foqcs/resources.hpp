#pragma once

#include <string>
#include <vector>

#include "foqcs/circuit.hpp"
#include "foqcs/pauli.hpp"

namespace foqcs {

enum class CircuitKind { PR, ControlledPR, Foqcs, ControlledFoqcs, Poly, ControlledPoly };

/// One affine resource formula  value = dn*d*n + n*n + d*d + c.
struct Formula {
  int dn = 0, n = 0, d = 0, c = 0;
  long long eval(int nn, int dd) const {
    return static_cast<long long>(dn) * dd * nn + static_cast<long long>(n) * nn +
           static_cast<long long>(d) * dd + c;
  }
};

/// Reference closed-form resource tables, stored as data; never
/// adjusted to what the builders measure.
struct FormulaSet {
  Formula cnot_count;
  Formula cnot_depth;
  Formula qubit_count;
};

const FormulaSet& formula_set(ModelKind model, CircuitKind kind,
                              Connectivity conn);

ResourceReport formula_eval(ModelKind model, CircuitKind kind,
                            Connectivity conn, int n, int d);

struct ComparisonRecord {
  ModelKind model;
  CircuitKind kind;
  Connectivity conn;
  int n = 0, d = 0;
  ResourceReport formula;
  ResourceReport measured;
  bool count_match = false;
  bool depth_match = false;
  bool qubits_match = false;
  bool match() const { return count_match && depth_match && qubits_match; }
};

/// Builds the circuit (generic couplings), lowers it, measures, and
/// compares against the stored formulas. Mismatches are reported with both
/// numbers, never absorbed.
ComparisonRecord measure_vs_formula(ModelKind model, CircuitKind kind,
                                    Connectivity conn, int n, int d);

/// TSV rows "n\td\tdepth" of the square-grid polynomial depth formula.
std::string emit_heatmap(ModelKind model, const std::vector<int>& n_values,
                         const std::vector<int>& d_values, Connectivity conn);

std::string circuit_kind_name(CircuitKind k);
std::string comparison_json(const std::vector<ComparisonRecord>& records);

/// Generic coupling values used for resource measurements (all sections of
/// the model circuits active, no degenerate angles).
ModelSpec reference_model(ModelKind kind, int n);

}  // namespace foqcs
