#pragma once

#include <vector>

#include "foqcs/builders.hpp"
#include "foqcs/circuit.hpp"
#include "foqcs/pauli.hpp"

namespace foqcs {

/// Polynomial coefficients a_0..a_d, ascending degree.
struct PolySpec {
  std::vector<cplx> coeffs;
  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
};

/// Loading parameters of the unary outer LCU.
struct PolyParams {
  std::vector<double> wbar;   ///< normalized weights w_k / sqrt(W)
  std::vector<double> theta;  ///< theta_0 .. theta_{d-1}
  std::vector<double> phi;    ///< phi_0 .. phi_{d-1}
  double big_w = 0.0;         ///< W = sum |a_k| lambda^k
  double lambda = 0.0;
};

/// Weighted coefficients, rotation angles and phase differences for the
/// outer state-preparation oracles. theta_k = 0 once the remaining weight
/// vanishes; arg(0) := 0.
PolyParams poly_params(const PolySpec& poly, double lambda);

/// d-qubit unary loader: Ry(theta_0), the controlled-Ry ladder, and (Right
/// side only) the parallel phase layer.
Circuit build_poly_r(const PolyParams& params);
Circuit build_poly_l(const PolyParams& params);

/// Block encoding of H^k: k ancilla register pairs prepared in parallel,
/// k SELECT blocks on the shared system register.
Circuit build_power_be(const ModelSpec& spec, int k);

/// Block encoding of M_k ... M_2 M_1 (first spec applied first).
Circuit build_product_be(const std::vector<ModelSpec>& specs);

/// Block encoding of p_d(H)/W with the unary outer LCU. simplified = true
/// uses the activation split (named models); controlled = true adds a
/// control on the boundary Ry rotations only.
Circuit build_poly_be(const ModelSpec& spec, const PolySpec& poly,
                      bool controlled, bool simplified);

/// Truncated Taylor coefficients of e^{-iHt}: a_k = (-it)^k / k!.
PolySpec taylor_coeffs(double t, int d);

}  // namespace foqcs
