#pragma once

#include <utility>
#include <vector>

#include "foqcs/circuit.hpp"
#include "foqcs/pauli.hpp"

namespace foqcs {

enum class PrepSide { Right, Left };

/// Activation / body factorization of a state-preparation oracle:
/// `activation` is O(1) single-qubit gates, `body` fixes |0...0>.
struct OracleSplit {
  Circuit activation;
  Circuit body;
};

struct FoqcsCircuit {
  Circuit circuit;
  double lambda = 0.0;
};

/// SELECT oracle on 3n qubits (registers i, j, system): a layer of
/// CNOT(i_l -> system_l) followed by a layer of CZ(j_l, system_l).
Circuit build_select(int n);

/// Generic 2n-qubit preparation of the coefficient state by binary-tree
/// rotation synthesis (exponential; verification fallback, n <= 6).
/// Right side carries the coefficient phases, Left side moduli only.
Circuit build_pr_exact(const CoefficientTable& table, PrepSide side);

/// Model-optimized PR/PL for the XYZ, XXZ and Ising chains, built from
/// ladder sections that scale to arbitrary n >= 2.
Circuit build_pr_model(const ModelSpec& spec, PrepSide side);

/// Splits a model PR into its single leading X gate and the remainder.
OracleSplit split_activation(const Circuit& pr);

/// Full block encoding PR . SELECT . PL^dag with post-selection markers.
/// With controlled = true the control qubit (index 0) drives only the
/// activation X of PR and of PL^dag, one CNOT each.
FoqcsCircuit build_foqcs(const ModelSpec& spec, bool controlled);

/// Brute-force controlled version of an arbitrary circuit: a fresh control
/// qubit is prepended at index 0 and every gate is controlled on it.
/// Verification-grade (Toffoli-based), not resource-optimal.
Circuit control_circuit(const Circuit& circuit);

/// Controlled product B_s A_s ... B_1 A_1 realized by controlling only the
/// A factors. Every B must fix the reference family (listed qubits at |0>,
/// the rest arbitrary), which is checked by simulation up to 13 qubits.
Circuit controlled_from_decomposition(
    const std::vector<std::pair<Circuit, Circuit>>& parts,
    const std::vector<int>& reference_zero_qubits);

/// Branch-table rotation angles of the model PR oracles (exposed for tests).
double pr_theta_activation(const ModelSpec& spec, PrepSide side);
double pr_theta_zfirst(const ModelSpec& spec);
double pr_theta_zsplit(const ModelSpec& spec, PrepSide side);
double pr_theta_xy(const ModelSpec& spec, PrepSide side);

}  // namespace foqcs
