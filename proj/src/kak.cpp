#include "foqcs/kak.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace foqcs {

namespace {

constexpr double kPi = std::numbers::pi;

using Mat2 = std::array<std::array<cplx, 2>, 2>;
using RMat4 = std::array<std::array<double, 4>, 4>;

Mat4 mul(const Mat4& a, const Mat4& b) {
  Mat4 c{};
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) {
      if (a[i][k] == cplx{0.0, 0.0}) continue;
      for (int j = 0; j < 4; ++j) c[i][j] += a[i][k] * b[k][j];
    }
  return c;
}

Mat4 dagger(const Mat4& a) {
  Mat4 c{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) c[i][j] = std::conj(a[j][i]);
  return c;
}

Mat4 kron2(const Mat2& a, const Mat2& b) {
  Mat4 c{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) c[2 * i + k][2 * j + l] = a[i][j] * b[k][l];
  return c;
}

Mat2 m_ry(double t) {
  const double c = std::cos(t / 2), s = std::sin(t / 2);
  return {{{cplx{c, 0}, cplx{-s, 0}}, {cplx{s, 0}, cplx{c, 0}}}};
}
Mat2 m_rz(double t) {
  return {{{std::polar(1.0, -t / 2), cplx{0, 0}},
           {cplx{0, 0}, std::polar(1.0, t / 2)}}};
}
Mat2 m_rx(double t) {
  const double c = std::cos(t / 2), s = std::sin(t / 2);
  return {{{cplx{c, 0}, cplx{0, -s}}, {cplx{0, -s}, cplx{c, 0}}}};
}
Mat2 mul2(const Mat2& a, const Mat2& b) {
  Mat2 c{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
  return c;
}

const Mat4 kCX = {{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}}};

// magic basis columns (|00>+|11>, -i(|00>-|11>), |01>-|10>, -i(|01>+|10>))/sqrt2
const cplx kI{0.0, 1.0};
Mat4 magic_q() {
  const double r = 1.0 / std::sqrt(2.0);
  Mat4 q{};
  q[0][0] = r;  q[0][1] = -kI * r;
  q[3][0] = r;  q[3][1] = kI * r;
  q[1][2] = r;  q[1][3] = -kI * r;
  q[2][2] = -r; q[2][3] = -kI * r;
  return q;
}

// one cyclic Jacobi pass; diagonalizes real symmetric 4x4
void jacobi_sym(RMat4& a, RMat4& v) {
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) v[i][j] = (i == j) ? 1.0 : 0.0;
  for (int sweep = 0; sweep < 40; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < 4; ++p)
      for (int q = p + 1; q < 4; ++q) off = std::max(off, std::abs(a[p][q]));
    if (off < 1e-15) break;
    for (int p = 0; p < 4; ++p)
      for (int q = p + 1; q < 4; ++q) {
        if (std::abs(a[p][q]) < 1e-18) continue;
        const double phi = 0.5 * std::atan2(2.0 * a[p][q], a[q][q] - a[p][p]);
        const double c = std::cos(phi), s = std::sin(phi);
        for (int k = 0; k < 4; ++k) {
          const double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (int k = 0; k < 4; ++k) {
          const double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
        for (int k = 0; k < 4; ++k) {
          const double vkp = v[k][p], vkq = v[k][q];
          v[k][p] = c * vkp - s * vkq;
          v[k][q] = s * vkp + c * vkq;
        }
      }
  }
}

// simultaneous eigenbasis of the commuting real-symmetric parts of M
RMat4 simdiag(const Mat4& m) {
  static const double ws[] = {0.3190391, 0.5230047, 0.8710113, 1.6180339};
  for (const double w : ws) {
    RMat4 a{}, v{};
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        a[i][j] = m[i][j].real() + w * m[i][j].imag();
    jacobi_sym(a, v);
    // check that v also diagonalizes both parts
    double offmax = 0.0;
    for (int part = 0; part < 2; ++part) {
      RMat4 s{};
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
          s[i][j] = part == 0 ? m[i][j].real() : m[i][j].imag();
      // t = v^T s v
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
          if (i == j) continue;
          double t = 0.0;
          for (int k = 0; k < 4; ++k)
            for (int l = 0; l < 4; ++l) t += v[k][i] * s[k][l] * v[l][j];
          offmax = std::max(offmax, std::abs(t));
        }
    }
    if (offmax < 1e-10) return v;
  }
  throw std::runtime_error("two-qubit resynthesis: eigenbasis not found");
}

double det4_real(const RMat4& m) {
  // Laplace along first row of the 4x4
  auto det3 = [&](int r0, int r1, int r2, int c0, int c1, int c2) {
    return m[r0][c0] * (m[r1][c1] * m[r2][c2] - m[r1][c2] * m[r2][c1]) -
           m[r0][c1] * (m[r1][c0] * m[r2][c2] - m[r1][c2] * m[r2][c0]) +
           m[r0][c2] * (m[r1][c0] * m[r2][c1] - m[r1][c1] * m[r2][c0]);
  };
  return m[0][0] * det3(1, 2, 3, 1, 2, 3) - m[0][1] * det3(1, 2, 3, 0, 2, 3) +
         m[0][2] * det3(1, 2, 3, 0, 1, 3) - m[0][3] * det3(1, 2, 3, 0, 1, 2);
}

cplx det4(const Mat4& in) {
  Mat4 m = in;
  cplx det{1.0, 0.0};
  for (int c = 0; c < 4; ++c) {
    int piv = c;
    for (int r = c + 1; r < 4; ++r)
      if (std::abs(m[r][c]) > std::abs(m[piv][c])) piv = r;
    if (std::abs(m[piv][c]) < 1e-300) return {0.0, 0.0};
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (int r = c + 1; r < 4; ++r) {
      const cplx f = m[r][c] / m[c][c];
      for (int k = c; k < 4; ++k) m[r][k] -= f * m[c][k];
    }
  }
  return det;
}

// rank-1 factorization of a Kronecker product K = A (x) B, dets normalized
void unkron(const Mat4& k, Mat2& a, Mat2& b) {
  // r[(i,j)][(p,q)] = K[2i+p][2j+q] = A[i][j] * B[p][q]
  cplx r[4][4];
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int p = 0; p < 2; ++p)
        for (int q = 0; q < 2; ++q) r[2 * i + j][2 * p + q] = k[2 * i + p][2 * j + q];
  int br = 0, bc = 0;
  double bm = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (std::abs(r[i][j]) > bm) {
        bm = std::abs(r[i][j]);
        br = i;
        bc = j;
      }
  cplx avec[4], bvec[4];
  for (int j = 0; j < 4; ++j) bvec[j] = r[br][j];
  for (int i = 0; i < 4; ++i) avec[i] = r[i][bc] / bvec[bc];
  a = {{{avec[0], avec[1]}, {avec[2], avec[3]}}};
  b = {{{bvec[0], bvec[1]}, {bvec[2], bvec[3]}}};
  const cplx da = a[0][0] * a[1][1] - a[0][1] * a[1][0];
  const cplx db = b[0][0] * b[1][1] - b[0][1] * b[1][0];
  const cplx sa = std::sqrt(da), sb = std::sqrt(db);
  for (auto& row : a)
    for (auto& v : row) v /= sa;
  for (auto& row : b)
    for (auto& v : row) v /= sb;
}

// SU(2) Euler angles: v = Rz(a) Ry(b) Rz(c) up to the normalized phase
void zyz(Mat2 v, double& a, double& b, double& c) {
  const cplx det = v[0][0] * v[1][1] - v[0][1] * v[1][0];
  const cplx s = std::sqrt(det);
  for (auto& row : v)
    for (auto& x : row) x /= s;
  b = 2.0 * std::atan2(std::abs(v[1][0]), std::abs(v[0][0]));
  if (std::abs(v[0][0]) > 1e-12 && std::abs(v[1][0]) > 1e-12) {
    const double apc = 2.0 * std::arg(v[1][1]);
    const double amc = 2.0 * std::arg(v[1][0]);
    a = (apc + amc) / 2.0;
    c = (apc - amc) / 2.0;
  } else if (std::abs(v[0][0]) > 1e-12) {
    a = 2.0 * std::arg(v[1][1]);
    c = 0.0;
  } else {
    a = 2.0 * std::arg(v[1][0]);
    c = 0.0;
  }
}

void emit_single(std::vector<Gate>& out, int q, const Mat2& v) {
  double a, b, c;
  zyz(v, a, b, c);
  const double tol = 1e-11;
  if (std::abs(c) > tol) out.push_back({GateKind::Phase, q, -1, c});
  if (std::abs(b) > tol) out.push_back({GateKind::Ry, q, -1, b});
  if (std::abs(a) > tol) out.push_back({GateKind::Phase, q, -1, a});
}

double max_diff_phase_free(const Mat4& u, const Mat4& w) {
  int bi = 0, bj = 0;
  double bm = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (std::abs(w[i][j]) > bm) {
        bm = std::abs(w[i][j]);
        bi = i;
        bj = j;
      }
  const cplx ph = u[bi][bj] / w[bi][bj];
  const cplx unit = ph / std::abs(ph);
  double m = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m = std::max(m, std::abs(u[i][j] - unit * w[i][j]));
  return m;
}

Mat4 gates_to_matrix(const std::vector<Gate>& gs) {
  // local 2-qubit space: q0 of the caller mapped to factor a, q1 to b.
  Mat4 u{};
  for (int i = 0; i < 4; ++i) u[i][i] = 1.0;
  for (const auto& g : gs) {
    Mat4 m{};
    const bool on_a = g.q1 < 0 && g.q0 == 0;
    switch (g.kind) {
      case GateKind::Ry:
        m = on_a ? kron2(m_ry(g.param), {{{1, 0}, {0, 1}}})
                 : kron2({{{1, 0}, {0, 1}}}, m_ry(g.param));
        break;
      case GateKind::Phase: {
        Mat2 p = {{{cplx{1, 0}, cplx{0, 0}}, {cplx{0, 0}, std::polar(1.0, g.param)}}};
        m = on_a ? kron2(p, {{{1, 0}, {0, 1}}}) : kron2({{{1, 0}, {0, 1}}}, p);
        break;
      }
      case GateKind::CNOT:
        m = kCX;  // control a, target b (resynth only emits this orientation)
        break;
      default:
        throw std::logic_error("unexpected gate in resynth check");
    }
    u = mul(m, u);
  }
  return u;
}

}  // namespace

Mat4 split_block_matrix(double theta) {
  // CX(b->a) . CRy(theta)(a->b)
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  Mat4 u{};
  u[0][0] = 1.0;
  u[1][2] = s;
  u[1][3] = c;
  u[2][2] = c;
  u[2][3] = -s;
  u[3][1] = 1.0;
  return u;
}

Mat4 split_block_matrix_rev(double theta) {
  // CRy(theta)(a->b) . CX(b->a)
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  Mat4 v{};
  v[0][0] = 1.0;
  v[2][1] = -s;
  v[3][1] = c;
  v[2][2] = c;
  v[3][2] = s;
  v[1][3] = 1.0;
  return v;
}

std::vector<Gate> resynth_two_cnot(const Mat4& u, int qa, int qb) {
  const Mat4 q = magic_q();
  const Mat4 qd = dagger(q);

  const cplx du = det4(u);
  const cplx dephase = std::polar(1.0, -std::arg(du) / 4.0);
  Mat4 v{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) v[i][j] = u[i][j] * dephase;

  const Mat4 ub = mul(qd, mul(v, q));
  const Mat4 m = mul([&] {
    Mat4 t{};
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) t[i][j] = ub[j][i];
    return t;
  }(), ub);

  RMat4 p = simdiag(m);
  {
    double d = det4_real(p);
    if (d < 0)
      for (int i = 0; i < 4; ++i) p[i][0] = -p[i][0];
  }

  // W = UB P; columns are real vectors times a phase e^{i beta_k}
  Mat4 w{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      cplx s{0.0, 0.0};
      for (int k = 0; k < 4; ++k) s += ub[i][k] * p[k][j];
      w[i][j] = s;
    }
  double beta[4];
  for (int k = 0; k < 4; ++k) {
    int bi = 0;
    double bm = 0.0;
    for (int i = 0; i < 4; ++i)
      if (std::abs(w[i][k]) > bm) {
        bm = std::abs(w[i][k]);
        bi = i;
      }
    beta[k] = std::arg(w[bi][k]);
  }
  RMat4 ar{};
  auto realize = [&]() {
    double im = 0.0;
    for (int i = 0; i < 4; ++i)
      for (int k = 0; k < 4; ++k) {
        const cplx x = w[i][k] * std::polar(1.0, -beta[k]);
        ar[i][k] = x.real();
        im = std::max(im, std::abs(x.imag()));
      }
    return im;
  };
  if (realize() > 1e-9)
    throw std::runtime_error("two-qubit resynthesis: eigenphase extraction failed");
  if (det4_real(ar) < 0) {
    beta[0] += kPi;
    realize();
  }

  // eigenvalue rows of (1, XX, YY, ZZ) in the magic basis
  static const double xv[4] = {1, -1, -1, 1};
  static const double yv[4] = {-1, 1, -1, 1};
  static const double zv[4] = {1, 1, -1, -1};
  double c1 = 0, c2 = 0, c3 = 0;
  for (int k = 0; k < 4; ++k) {
    c1 += xv[k] * beta[k] / 4.0;
    c2 += yv[k] * beta[k] / 4.0;
    c3 += zv[k] * beta[k] / 4.0;
  }

  // K1 = Q Ar Qdag, K2 = Q P^T Qdag
  Mat4 k1{}, k2{};
  {
    Mat4 arc{}, ptc{};
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        arc[i][j] = ar[i][j];
        ptc[i][j] = p[j][i];
      }
    k1 = mul(q, mul(arc, qd));
    k2 = mul(q, mul(ptc, qd));
  }

  // reduce coordinates into (-pi/4, pi/4] by absorbing (i s(x)s)^m into K2
  const Mat2 sx = {{{cplx{0, 0}, cplx{1, 0}}, {cplx{1, 0}, cplx{0, 0}}}};
  const Mat2 sy = {{{cplx{0, 0}, cplx{0, -1}}, {cplx{0, 1}, cplx{0, 0}}}};
  const Mat2 sz = {{{cplx{1, 0}, cplx{0, 0}}, {cplx{0, 0}, cplx{-1, 0}}}};
  const Mat2 paulis[3] = {sx, sy, sz};
  double cc[3] = {c1, c2, c3};
  for (int k = 0; k < 3; ++k) {
    const int mshift = static_cast<int>(std::floor(cc[k] / (kPi / 2) + 0.5));
    if (mshift == 0) continue;
    cc[k] -= mshift * kPi / 2;
    Mat4 f = kron2(paulis[k], paulis[k]);
    Mat4 fm{};
    for (int i = 0; i < 4; ++i) fm[i][i] = 1.0;
    for (int r = 0; r < std::abs(mshift); ++r) {
      Mat4 step{};
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
          step[i][j] = (mshift > 0 ? kI : -kI) * f[i][j];
      fm = mul(fm, step);
    }
    k2 = mul(fm, k2);
  }

  int zero = 0;
  for (int k = 1; k < 3; ++k)
    if (std::abs(cc[k]) < std::abs(cc[zero])) zero = k;
  if (std::abs(cc[zero]) > 1e-9)
    throw std::runtime_error("two-qubit resynthesis: gate needs 3 CNOTs");

  // core of the middle factor, with single-qubit dressings folded outward
  Mat2 la = {{{cplx{1, 0}, cplx{0, 0}}, {cplx{0, 0}, cplx{1, 0}}}};
  Mat2 lb = la, ra = la, rb = la, ma{}, mb{};
  if (zero == 1) {  // exp(i c1 XX) exp(i c3 ZZ)
    ma = m_rx(-2 * cc[0]);
    mb = m_rz(-2 * cc[2]);
  } else if (zero == 2) {  // exp(i c1 XX) exp(i c2 YY)
    la = m_rx(kPi / 2);
    lb = m_rx(kPi / 2);
    ra = m_rx(-kPi / 2);
    rb = m_rx(-kPi / 2);
    ma = m_rx(-2 * cc[0]);
    mb = m_rz(-2 * cc[1]);
  } else {  // exp(i c2 YY) exp(i c3 ZZ)
    la = m_rz(-kPi / 2);
    lb = m_rz(-kPi / 2);
    ra = m_rz(kPi / 2);
    rb = m_rz(kPi / 2);
    ma = m_rx(-2 * cc[1]);
    mb = m_rz(-2 * cc[2]);
  }

  Mat2 k1a, k1b, k2a, k2b;
  unkron(k1, k1a, k1b);
  unkron(k2, k2a, k2b);
  const Mat2 left_a = mul2(k1a, la), left_b = mul2(k1b, lb);
  const Mat2 right_a = mul2(ra, k2a), right_b = mul2(rb, k2b);

  std::vector<Gate> out;
  emit_single(out, 1, right_b);
  emit_single(out, 0, right_a);
  out.push_back({GateKind::CNOT, 0, 1, 0.0});
  emit_single(out, 1, mb);
  emit_single(out, 0, ma);
  out.push_back({GateKind::CNOT, 0, 1, 0.0});
  emit_single(out, 1, left_b);
  emit_single(out, 0, left_a);

  // verify and remap to the caller's qubits
  const Mat4 built = gates_to_matrix(out);
  if (max_diff_phase_free(built, u) > 1e-9)
    throw std::runtime_error("two-qubit resynthesis: verification failed");
  for (auto& g : out) {
    if (g.kind == GateKind::CNOT) {
      g.q0 = qa;
      g.q1 = qb;
    } else {
      g.q0 = (g.q0 == 0) ? qa : qb;
    }
  }
  return out;
}

}  // namespace foqcs
