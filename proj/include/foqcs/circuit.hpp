#pragma once

#include <string>
#include <vector>

#include "foqcs/matrix.hpp"

namespace foqcs {

enum class GateKind {
  X,
  H,
  Ry,
  Phase,
  CNOT,
  CZ,
  CRy,
  Swap,
  Barrier,
  PostSelectZero,
};

/// One gate. q1 < 0 for single-qubit kinds; for controlled kinds q0 is the
/// control. Barrier spans all qubits and carries no operands.
struct Gate {
  GateKind kind = GateKind::X;
  int q0 = 0;
  int q1 = -1;
  double param = 0.0;

  bool is_two_qubit() const {
    return kind == GateKind::CNOT || kind == GateKind::CZ ||
           kind == GateKind::CRy || kind == GateKind::Swap;
  }
  bool operator==(const Gate&) const = default;
};

struct Register {
  std::string name;
  int first = 0;
  int size = 0;
};

enum class Connectivity { AllToAll, SquareGrid };

struct ResourceReport {
  long long cnot_count = 0;
  long long cnot_depth = 0;
  long long qubit_count = 0;
  Connectivity connectivity = Connectivity::AllToAll;
};

class Circuit {
public:
  Circuit() = default;
  explicit Circuit(int num_qubits) : num_qubits_(num_qubits) {}

  int num_qubits() const { return num_qubits_; }
  const std::vector<Gate>& gates() const { return gates_; }
  std::vector<Gate>& gates() { return gates_; }
  const std::vector<Register>& registers() const { return registers_; }

  void add_register(const std::string& name, int first, int size);
  const Register* find_register(const std::string& name) const;

  void push(const Gate& g);
  void x(int q) { push({GateKind::X, q, -1, 0.0}); }
  void h(int q) { push({GateKind::H, q, -1, 0.0}); }
  void ry(int q, double theta) { push({GateKind::Ry, q, -1, theta}); }
  void phase(int q, double phi) { push({GateKind::Phase, q, -1, phi}); }
  void cnot(int c, int t) { push({GateKind::CNOT, c, t, 0.0}); }
  void cz(int a, int b) { push({GateKind::CZ, a, b, 0.0}); }
  void cry(int c, int t, double theta) { push({GateKind::CRy, c, t, theta}); }
  void swap(int a, int b) { push({GateKind::Swap, a, b, 0.0}); }
  void barrier() { push({GateKind::Barrier, -1, -1, 0.0}); }
  void post_select_zero(int q) { push({GateKind::PostSelectZero, q, -1, 0.0}); }

  /// Appends another circuit's gates verbatim (same qubit space).
  void append(const Circuit& other);

  /// Gate-list adjoint: reversed order, negated rotation parameters.
  Circuit adjoint() const;

private:
  int num_qubits_ = 0;
  std::vector<Gate> gates_;
  std::vector<Register> registers_;
};

/// Rewrites to the {X, H, Ry, Phase, CNOT} basis (Barriers and
/// PostSelectZero markers pass through). Unitary preserved up to global
/// phase. Peephole merges applied to adjacent same-pair gates:
///   [Swap; CNOT]            -> 2 CNOTs
///   [CZ; Swap]              -> 2 CNOTs + Hadamards
///   [CRy(a->b); CNOT(b->a)] -> 2 CNOTs + single-qubit rotations
///   [CNOT(b->a); CRy(a->b)] -> 2 CNOTs + single-qubit rotations
Circuit lower(const Circuit& circuit);

/// CNOT count and ASAP CNOT depth. Lowers internally when the circuit
/// still contains non-basis gates. Single-qubit gates are depth-free;
/// a Barrier synchronizes all qubits.
ResourceReport cnot_metrics(const Circuit& circuit,
                            Connectivity conn = Connectivity::AllToAll);

/// Gate list of `a` followed by `b`, with b's qubit q mapped to
/// qubit_map[q]. Registers of b are carried over under the mapping;
/// a register-name collision on distinct ranges is an error.
Circuit compose(const Circuit& a, const Circuit& b,
                const std::vector<int>& qubit_map);

/// Dense unitary of the circuit (test oracle; <= 12 qubits).
/// PostSelectZero markers are ignored.
CMatrix circuit_unitary(const Circuit& circuit);

std::string gate_kind_name(GateKind k);

}  // namespace foqcs
