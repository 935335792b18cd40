#include "foqcs/matrix.hpp"

#include <cmath>
#include <stdexcept>

namespace foqcs {

double CMatrix::max_diff_up_to_phase(const CMatrix& o) const {
  assert(rows_ == o.rows_ && cols_ == o.cols_);
  std::size_t best = 0;
  double bm = 0.0;
  for (std::size_t i = 0; i < a_.size(); ++i)
    if (std::abs(o.a_[i]) > bm) {
      bm = std::abs(o.a_[i]);
      best = i;
    }
  if (bm < 1e-300) return max_diff(o);
  const cplx phase = a_[best] / o.a_[best];
  const double mag = std::abs(phase);
  const cplx unit = mag < 1e-300 ? cplx{1.0, 0.0} : phase / mag;
  double m = 0.0;
  for (std::size_t i = 0; i < a_.size(); ++i)
    m = std::max(m, std::abs(a_[i] - unit * o.a_[i]));
  return m;
}

double CMatrix::norm_2() const {
  // power iteration on A^dagger A
  const CMatrix ata = adjoint() * (*this);
  std::vector<cplx> v(ata.rows(), cplx{1.0, 0.0});
  double lam = 0.0;
  for (int it = 0; it < 200; ++it) {
    std::vector<cplx> w(v.size(), cplx{0.0, 0.0});
    for (std::size_t i = 0; i < ata.rows(); ++i)
      for (std::size_t j = 0; j < ata.cols(); ++j) w[i] += ata(i, j) * v[j];
    double nrm = 0.0;
    for (const auto& x : w) nrm += std::norm(x);
    nrm = std::sqrt(nrm);
    if (nrm < 1e-300) return 0.0;
    for (auto& x : w) x /= nrm;
    lam = nrm;
    v = std::move(w);
  }
  return std::sqrt(lam);
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const cplx aij = a(i, j);
      if (aij == cplx{0.0, 0.0}) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return out;
}

CMatrix expm(const CMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("expm: square only");
  // scale so that the max-norm argument is small, then Taylor + squaring
  double scale = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      scale = std::max(scale, std::abs(m(i, j)));
  scale *= static_cast<double>(m.rows());
  int k = 0;
  while (scale > 0.25 && k < 40) {
    scale /= 2.0;
    ++k;
  }
  CMatrix x = m * cplx{std::ldexp(1.0, -k), 0.0};
  CMatrix term = CMatrix::identity(m.rows());
  CMatrix sum = term;
  for (int p = 1; p <= 24; ++p) {
    term = term * x;
    term = term * cplx{1.0 / p, 0.0};
    sum = sum + term;
  }
  for (int i = 0; i < k; ++i) sum = sum * sum;
  return sum;
}

}  // namespace foqcs
