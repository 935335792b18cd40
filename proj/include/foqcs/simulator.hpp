#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "foqcs/circuit.hpp"
#include "foqcs/matrix.hpp"
#include "foqcs/pauli.hpp"

namespace foqcs {

/// Dense statevector over N qubits. Qubit 0 is the most significant bit of
/// the amplitude index, matching the check-matrix packing in pauli.hpp.
struct StateVector {
  int n = 0;
  std::vector<cplx> amp;

  static StateVector zero(int n);
  static StateVector basis(int n, std::uint64_t index);
  /// From a computational basis string like "010".
  static StateVector from_bitstring(const std::string& bits);

  double norm() const;
  void normalize();
};

/// Ancilla indices to project onto |0...0> plus the system indices.
struct BlockSpec {
  std::vector<int> ancillas;
  std::vector<int> system;
};

/// Applies the circuit gate by gate. PostSelectZero markers are skipped
/// (projection is a separate, explicit step).
StateVector apply(const Circuit& circuit, const StateVector& state);

/// Unnormalized projection of the listed qubits onto |0>.
StateVector project_zero(const StateVector& state,
                         const std::vector<int>& qubits);

/// <0|_anc U |0>_anc as a 2^s x 2^s matrix over the system register.
CMatrix extract_block(const Circuit& circuit, const BlockSpec& spec);

/// Dense unitary of the whole circuit (<= 12 qubits).
CMatrix circuit_unitary(const Circuit& circuit);

/// BlockSpec of a circuit that carries PostSelectZero markers: ancillas are
/// the marked qubits, the system is everything else minus `exclude`.
BlockSpec block_spec_from_markers(const Circuit& circuit,
                                  const std::vector<int>& exclude = {});

enum class MeasureBasis { X, Y };

/// Hadamard-test estimate of Re (X basis) or Im (Y basis) of
/// <phi| H |phi> / lambda through the controlled block encoding.
/// Exact mode when shots is absent; otherwise a seeded Monte-Carlo estimate.
double hadamard_test(const ModelSpec& spec, const StateVector& phi,
                     MeasureBasis basis,
                     std::optional<long long> shots = std::nullopt,
                     std::uint64_t seed = 0);

/// <phi| p_d(H) |phi> with Taylor coefficients a_k = (-it)^k / k!,
/// evaluated through the controlled polynomial block encoding.
cplx loschmidt_echo(const ModelSpec& spec, double t, int d,
                    const StateVector& phi);

/// Probability that every post-selected ancilla measures 0 when the
/// circuit runs on |0>_anc (x) |phi>.
double success_probability(const Circuit& circuit, const StateVector& phi);

}  // namespace foqcs
