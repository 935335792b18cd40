#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "foqcs/matrix.hpp"

namespace foqcs {

/// A Pauli string in check-matrix form Z^j X^i.
///
/// Bit packing: site 0 is the most significant bit of the integer index,
/// i.e. site l occupies bit (n-1-l). The same convention is used by the
/// simulator and the circuit builders.
struct PauliString {
  std::uint32_t x_bits = 0;  ///< X exponents i_l
  std::uint32_t z_bits = 0;  ///< Z exponents j_l
  int n = 0;

  bool site_x(int l) const { return (x_bits >> (n - 1 - l)) & 1u; }
  bool site_z(int l) const { return (z_bits >> (n - 1 - l)) & 1u; }
};

/// Sparse map (i, j) -> coefficient for H = sum alpha~_{ij} Z^j X^i,
/// with lambda = sum |alpha~_{ij}|. Stored zeros are dropped.
struct CoefficientTable {
  int n = 0;
  std::map<std::pair<std::uint32_t, std::uint32_t>, cplx> entries;
  double lambda = 0.0;
};

enum class ModelKind { XYZ, XXZ, Ising, Custom };

struct ModelSpec {
  ModelKind kind = ModelKind::Custom;
  int n = 0;
  double g = 0.0;
  double jx = 0.0;
  double jy = 0.0;
  double jz = 0.0;
  double j = 0.0;  // XXZ / Ising coupling
  std::vector<std::pair<std::string, cplx>> custom_terms;
};

/// Converts a Pauli label ("XYZI...") with coefficient into check form.
/// Each Y contributes a -i factor (Y = -i Z X), so that
/// coeff * P == alpha~ * prod_l Z^{j_l} X^{i_l} holds exactly.
std::pair<PauliString, cplx> pauli_to_check_form(const std::string& label,
                                                 cplx coeff);

/// Assembles the sparse coefficient table for a model Hamiltonian.
/// Duplicate terms merge; entries that cancel to zero are dropped.
CoefficientTable build_table(const ModelSpec& spec);

/// Dense 2^n x 2^n matrix of the table (verification oracle; n <= 12).
CMatrix dense_matrix(const CoefficientTable& table);

/// Dense matrix of a single check-form term, coeff * Z^j X^i.
CMatrix dense_term(const PauliString& p, cplx coeff);

/// Parses the model-spec JSON (strict: unknown fields are rejected).
ModelSpec model_from_json(const std::string& text);

std::string model_kind_name(ModelKind k);

}  // namespace foqcs
