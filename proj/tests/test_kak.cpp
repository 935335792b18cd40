#include <cmath>
#include <random>

#include "doctest.h"
#include "foqcs/kak.hpp"

using namespace foqcs;

namespace {

Mat4 gate_matrix_2q(const Gate& g) {
  // qubit 0 = first factor; resynth output uses qubits {0, 1}
  Mat4 u{};
  const auto set_single = [&](int q, cplx m00, cplx m01, cplx m10, cplx m11) {
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) u[i][j] = 0.0;
    if (q == 0) {
      u[0][0] = m00; u[0][2] = m01; u[2][0] = m10; u[2][2] = m11;
      u[1][1] = m00; u[1][3] = m01; u[3][1] = m10; u[3][3] = m11;
    } else {
      u[0][0] = m00; u[0][1] = m01; u[1][0] = m10; u[1][1] = m11;
      u[2][2] = m00; u[2][3] = m01; u[3][2] = m10; u[3][3] = m11;
    }
  };
  switch (g.kind) {
    case GateKind::Ry: {
      const double c = std::cos(g.param / 2), s = std::sin(g.param / 2);
      set_single(g.q0, c, -s, s, c);
      break;
    }
    case GateKind::Phase:
      set_single(g.q0, 1.0, 0.0, 0.0, std::polar(1.0, g.param));
      break;
    case GateKind::CNOT: {
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) u[i][j] = 0.0;
      u[0][0] = 1; u[1][1] = 1; u[2][3] = 1; u[3][2] = 1;  // control q0
      break;
    }
    default:
      REQUIRE(false);
  }
  return u;
}

Mat4 product(const std::vector<Gate>& gates) {
  Mat4 u{};
  for (int i = 0; i < 4; ++i) u[i][i] = 1.0;
  for (const auto& g : gates) {
    const Mat4 m = gate_matrix_2q(g);
    Mat4 r{};
    for (int i = 0; i < 4; ++i)
      for (int k = 0; k < 4; ++k)
        for (int j = 0; j < 4; ++j) r[i][j] += m[i][k] * u[k][j];
    u = r;
  }
  return u;
}

double diff_up_to_phase(const Mat4& a, const Mat4& b) {
  int bi = 0, bj = 0;
  double bm = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (std::abs(b[i][j]) > bm) {
        bm = std::abs(b[i][j]);
        bi = i;
        bj = j;
      }
  const cplx ph = a[bi][bj] / b[bi][bj];
  const cplx unit = ph / std::abs(ph);
  double m = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m = std::max(m, std::abs(a[i][j] - unit * b[i][j]));
  return m;
}

}  // namespace

TEST_CASE("split block resynthesis is exact with 2 CNOTs") {
  for (double theta = -6.2; theta < 6.3; theta += 0.11) {
    if (std::abs(std::sin(theta / 2)) < 1e-6) continue;
    for (const bool rev : {false, true}) {
      const Mat4 target =
          rev ? split_block_matrix_rev(theta) : split_block_matrix(theta);
      const auto gates = resynth_two_cnot(target, 0, 1);
      int cnots = 0;
      for (const auto& g : gates)
        if (g.kind == GateKind::CNOT) ++cnots;
      CHECK(cnots == 2);
      CHECK(diff_up_to_phase(product(gates), target) < 1e-10);
    }
  }
}

TEST_CASE("resynthesis rejects generic 3-CNOT gates") {
  // a Haar-ish random unitary has all three canonical coordinates nonzero
  std::mt19937 rng(11);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Mat4 a{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) a[i][j] = cplx{gauss(rng), gauss(rng)};
  // Gram-Schmidt
  for (int c = 0; c < 4; ++c) {
    for (int p = 0; p < c; ++p) {
      cplx dot{0, 0};
      for (int r = 0; r < 4; ++r) dot += std::conj(a[r][p]) * a[r][c];
      for (int r = 0; r < 4; ++r) a[r][c] -= dot * a[r][p];
    }
    double nrm = 0.0;
    for (int r = 0; r < 4; ++r) nrm += std::norm(a[r][c]);
    nrm = std::sqrt(nrm);
    for (int r = 0; r < 4; ++r) a[r][c] /= nrm;
  }
  CHECK_THROWS(resynth_two_cnot(a, 0, 1));
}
