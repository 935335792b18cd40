#pragma once

#include <cassert>
#include <complex>
#include <cstddef>
#include <vector>

namespace foqcs {

using cplx = std::complex<double>;

/// Dense row-major complex matrix. Sized for verification oracles
/// (block extraction, Kronecker builds), not for performance.
class CMatrix {
public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols, cplx{0.0, 0.0}) {}

  static CMatrix identity(std::size_t n) {
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  cplx& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const {
    return a_[r * cols_ + c];
  }

  CMatrix operator*(const CMatrix& o) const {
    assert(cols_ == o.rows_);
    CMatrix out(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const cplx aik = a_[i * cols_ + k];
        if (aik == cplx{0.0, 0.0}) continue;
        for (std::size_t j = 0; j < o.cols_; ++j)
          out(i, j) += aik * o(k, j);
      }
    return out;
  }

  CMatrix operator+(const CMatrix& o) const {
    assert(rows_ == o.rows_ && cols_ == o.cols_);
    CMatrix out = *this;
    for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] += o.a_[i];
    return out;
  }

  CMatrix operator-(const CMatrix& o) const {
    assert(rows_ == o.rows_ && cols_ == o.cols_);
    CMatrix out = *this;
    for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] -= o.a_[i];
    return out;
  }

  CMatrix operator*(cplx s) const {
    CMatrix out = *this;
    for (auto& v : out.a_) v *= s;
    return out;
  }

  CMatrix adjoint() const {
    CMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        out(j, i) = std::conj(a_[i * cols_ + j]);
    return out;
  }

  /// max |entry| of (this - o)
  double max_diff(const CMatrix& o) const {
    assert(rows_ == o.rows_ && cols_ == o.cols_);
    double m = 0.0;
    for (std::size_t i = 0; i < a_.size(); ++i)
      m = std::max(m, std::abs(a_[i] - o.a_[i]));
    return m;
  }

  /// max |entry| of (this - e^{i phase_align} o), phase chosen from the
  /// largest entry. For equality contracts that ignore global phase.
  double max_diff_up_to_phase(const CMatrix& o) const;

  double norm_max() const {
    double m = 0.0;
    for (const auto& v : a_) m = std::max(m, std::abs(v));
    return m;
  }

  /// Frobenius norm.
  double norm_fro() const {
    double s = 0.0;
    for (const auto& v : a_) s += std::norm(v);
    return std::sqrt(s);
  }

  /// Spectral norm via power iteration on A^dagger A (oracle use only).
  double norm_2() const;

private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<cplx> a_;
};

CMatrix kron(const CMatrix& a, const CMatrix& b);

/// exp(M) by scaling-and-squaring with a Taylor kernel; exact to ~1e-13 for
/// the small matrices used in test oracles.
CMatrix expm(const CMatrix& m);

}  // namespace foqcs
