#pragma once

#include <string>
#include <utility>
#include <vector>

#include "foqcs/circuit.hpp"
#include "foqcs/pauli.hpp"
#include "foqcs/poly.hpp"

namespace foqcs {

/// Square-grid assignment. Circuit qubits produced by the map_* functions
/// index physical cells (row * cols + col); `placement` is the initial
/// logical -> cell map and `relabel_out` the final one (registers drift
/// through the SELECT swaps).
struct GridLayout {
  int rows = 0;
  int cols = 0;
  std::vector<int> placement;    ///< logical qubit -> physical cell
  std::vector<int> relabel_out;  ///< logical qubit -> physical cell at exit

  int cell(int r, int c) const { return r * cols + c; }
};

/// FOQCS block encoding on the 3 x n grid (Ising/XXZ/XYZ chains).
/// Logical order matches build_foqcs: [control?] i j system.
std::pair<Circuit, GridLayout> map_foqcs_grid(const ModelSpec& spec,
                                              bool controlled);

/// Matrix-polynomial pipeline on the (2d+1) x (n+1) grid.
std::pair<Circuit, GridLayout> map_poly_grid(const ModelSpec& spec,
                                             const PolySpec& poly,
                                             bool controlled);

/// PR/PL oracle alone on the grid (rows i, j of the FOQCS layout).
std::pair<Circuit, GridLayout> map_pr_grid(const ModelSpec& spec,
                                           PrepSide side, bool controlled);

/// SELECT oracle alone on the 3 x n grid: merged swap/CNOT and CZ/swap
/// boundary layers, 4n CNOTs at CNOT depth 4.
std::pair<Circuit, GridLayout> map_select_grid(int n);

/// Empty iff every two-qubit gate acts on horizontally or vertically
/// adjacent cells. Messages name the offending gate and cells.
std::vector<std::string> validate_connectivity(const Circuit& circuit,
                                               const GridLayout& layout);

/// Rows/cols, placement table and per-timestep gate lists (ASAP layering).
std::string layout_report_json(const Circuit& circuit,
                               const GridLayout& layout);

}  // namespace foqcs
