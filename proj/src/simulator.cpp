#include "foqcs/simulator.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "foqcs/builders.hpp"
#include "foqcs/poly.hpp"

namespace foqcs {

namespace {

constexpr int kMaxQubits = 26;

inline std::size_t bit_of(int n, int q) { return std::size_t{1} << (n - 1 - q); }

// visits every index with target bit 0, pairing it with target bit 1;
// disjoint writes per iteration, so the parallel result is bit-identical
template <typename Fn>
inline void for_target_pairs(std::size_t dim, std::size_t tmask, Fn&& fn) {
  const std::size_t half = dim / 2;
  const std::size_t low = tmask - 1;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (half > (std::size_t{1} << 16))
#endif
  for (long long k = 0; k < static_cast<long long>(half); ++k) {
    const std::size_t ku = static_cast<std::size_t>(k);
    const std::size_t x = ((ku & ~low) << 1) | (ku & low);
    fn(x, x | tmask);
  }
}

void apply_single(std::vector<cplx>& a, int n, int q, const cplx m00,
                  const cplx m01, const cplx m10, const cplx m11) {
  const std::size_t mask = bit_of(n, q);
  for_target_pairs(a.size(), mask, [&](std::size_t x, std::size_t y) {
    const cplx a0 = a[x], a1 = a[y];
    a[x] = m00 * a0 + m01 * a1;
    a[y] = m10 * a0 + m11 * a1;
  });
}

}  // namespace

StateVector StateVector::zero(int n) { return basis(n, 0); }

StateVector StateVector::basis(int n, std::uint64_t index) {
  if (n < 1 || n > kMaxQubits) throw std::invalid_argument("bad qubit count");
  StateVector sv;
  sv.n = n;
  sv.amp.assign(std::size_t{1} << n, cplx{0.0, 0.0});
  sv.amp.at(index) = 1.0;
  return sv;
}

StateVector StateVector::from_bitstring(const std::string& bits) {
  std::uint64_t idx = 0;
  for (const char c : bits) {
    if (c != '0' && c != '1') throw std::invalid_argument("bad basis string");
    idx = (idx << 1) | (c == '1' ? 1u : 0u);
  }
  return basis(static_cast<int>(bits.size()), idx);
}

double StateVector::norm() const {
  double s = 0.0;
  for (const auto& v : amp) s += std::norm(v);
  return std::sqrt(s);
}

void StateVector::normalize() {
  const double nn = norm();
  if (nn < 1e-300) throw std::runtime_error("cannot normalize zero state");
  for (auto& v : amp) v /= nn;
}

StateVector apply(const Circuit& circuit, const StateVector& state) {
  if (circuit.num_qubits() != state.n)
    throw std::invalid_argument("apply: qubit count mismatch");
  StateVector out = state;
  auto& a = out.amp;
  const int n = state.n;
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

  for (const auto& g : circuit.gates()) {
    switch (g.kind) {
      case GateKind::X:
        apply_single(a, n, g.q0, 0.0, 1.0, 1.0, 0.0);
        break;
      case GateKind::H:
        apply_single(a, n, g.q0, inv_sqrt2, inv_sqrt2, inv_sqrt2, -inv_sqrt2);
        break;
      case GateKind::Ry: {
        const double c = std::cos(g.param / 2), s = std::sin(g.param / 2);
        apply_single(a, n, g.q0, c, -s, s, c);
        break;
      }
      case GateKind::Phase:
        apply_single(a, n, g.q0, 1.0, 0.0, 0.0, std::polar(1.0, g.param));
        break;
      case GateKind::CNOT: {
        const std::size_t cm = bit_of(n, g.q0), tm = bit_of(n, g.q1);
        for_target_pairs(a.size(), tm, [&](std::size_t x, std::size_t y) {
          if (x & cm) std::swap(a[x], a[y]);
        });
        break;
      }
      case GateKind::CZ: {
        const std::size_t cm = bit_of(n, g.q0), tm = bit_of(n, g.q1);
        for_target_pairs(a.size(), tm, [&](std::size_t x, std::size_t y) {
          (void)x;
          if (y & cm) a[y] = -a[y];
        });
        break;
      }
      case GateKind::CRy: {
        const double c = std::cos(g.param / 2), s = std::sin(g.param / 2);
        const std::size_t cm = bit_of(n, g.q0), tm = bit_of(n, g.q1);
        for_target_pairs(a.size(), tm, [&](std::size_t x, std::size_t y) {
          if (!(x & cm)) return;
          const cplx a0 = a[x], a1 = a[y];
          a[x] = c * a0 - s * a1;
          a[y] = s * a0 + c * a1;
        });
        break;
      }
      case GateKind::Swap: {
        const std::size_t am = bit_of(n, g.q0), bm = bit_of(n, g.q1);
        for_target_pairs(a.size(), bm, [&](std::size_t x, std::size_t y) {
          (void)y;
          if (x & am) std::swap(a[x], a[(x ^ am) | bm]);
        });
        break;
      }
      case GateKind::Barrier:
      case GateKind::PostSelectZero:
        break;
    }
  }
  return out;
}

StateVector project_zero(const StateVector& state,
                         const std::vector<int>& qubits) {
  StateVector out = state;
  std::size_t mask = 0;
  for (const int q : qubits) mask |= bit_of(state.n, q);
  for (std::size_t x = 0; x < out.amp.size(); ++x)
    if (x & mask) out.amp[x] = 0.0;
  return out;
}

BlockSpec block_spec_from_markers(const Circuit& circuit,
                                  const std::vector<int>& exclude) {
  BlockSpec spec;
  std::vector<char> is_anc(circuit.num_qubits(), 0), skip(circuit.num_qubits(), 0);
  for (const int q : exclude) skip[q] = 1;
  for (const auto& g : circuit.gates())
    if (g.kind == GateKind::PostSelectZero) is_anc[g.q0] = 1;
  for (int q = 0; q < circuit.num_qubits(); ++q) {
    if (is_anc[q])
      spec.ancillas.push_back(q);
    else if (!skip[q])
      spec.system.push_back(q);
  }
  return spec;
}

CMatrix extract_block(const Circuit& circuit, const BlockSpec& spec) {
  const int n = circuit.num_qubits();
  if (n > 24) throw std::invalid_argument("extract_block: too many qubits");
  const int s = static_cast<int>(spec.system.size());
  const std::size_t dim = std::size_t{1} << s;
  CMatrix block(dim, dim);
  for (std::size_t col = 0; col < dim; ++col) {
    std::uint64_t idx = 0;
    for (int k = 0; k < s; ++k)
      if ((col >> (s - 1 - k)) & 1) idx |= bit_of(n, spec.system[k]);
    const StateVector in = StateVector::basis(n, idx);
    const StateVector outv = apply(circuit, in);
    for (std::size_t row = 0; row < dim; ++row) {
      std::uint64_t ridx = 0;
      for (int k = 0; k < s; ++k)
        if ((row >> (s - 1 - k)) & 1) ridx |= bit_of(n, spec.system[k]);
      block(row, col) = outv.amp[ridx];
    }
  }
  return block;
}

CMatrix circuit_unitary(const Circuit& circuit) {
  const int n = circuit.num_qubits();
  if (n > 12) throw std::invalid_argument("circuit_unitary: too many qubits");
  const std::size_t dim = std::size_t{1} << n;
  CMatrix u(dim, dim);
  for (std::size_t col = 0; col < dim; ++col) {
    const StateVector out = apply(circuit, StateVector::basis(n, col));
    for (std::size_t row = 0; row < dim; ++row) u(row, col) = out.amp[row];
  }
  return u;
}

namespace {

// exact joint probabilities P(control = 0/1, all marked ancillas = 0)
std::pair<double, double> control_branch_probs(const Circuit& hadamard_circ,
                                               const StateVector& input,
                                               int control_qubit) {
  const StateVector out = apply(hadamard_circ, input);
  std::size_t anc_mask = 0;
  for (const auto& g : hadamard_circ.gates())
    if (g.kind == GateKind::PostSelectZero)
      anc_mask |= std::size_t{1} << (out.n - 1 - g.q0);
  const std::size_t cbit = std::size_t{1} << (out.n - 1 - control_qubit);
  double p0 = 0.0, p1 = 0.0;
  for (std::size_t x = 0; x < out.amp.size(); ++x) {
    if (x & anc_mask) continue;
    const double pr = std::norm(out.amp[x]);
    if (x & cbit)
      p1 += pr;
    else
      p0 += pr;
  }
  return {p0, p1};
}

// Builds the Hadamard-test circuit around the already-controlled encoding
// (control is qubit 0 of `controlled`).
Circuit hadamard_wrap(const Circuit& controlled, MeasureBasis basis) {
  Circuit c(controlled.num_qubits());
  for (const auto& r : controlled.registers())
    c.add_register(r.name, r.first, r.size);
  c.h(0);
  c.append(controlled);
  if (basis == MeasureBasis::Y) c.phase(0, -std::numbers::pi / 2);
  c.h(0);
  return c;
}

StateVector embed_input(const Circuit& circ, const StateVector& phi) {
  const Register* sys = circ.find_register("system");
  if (!sys) throw std::logic_error("circuit lacks a system register");
  if (sys->size != phi.n) throw std::invalid_argument("state size mismatch");
  StateVector input = StateVector::zero(circ.num_qubits());
  input.amp[0] = 0.0;
  // scatter phi into the system register, everything else |0>
  for (std::size_t x = 0; x < phi.amp.size(); ++x) {
    if (phi.amp[x] == cplx{0.0, 0.0}) continue;
    std::uint64_t idx = 0;
    for (int k = 0; k < phi.n; ++k)
      if ((x >> (phi.n - 1 - k)) & 1)
        idx |= std::size_t{1} << (circ.num_qubits() - 1 - (sys->first + k));
    input.amp[idx] = phi.amp[x];
  }
  return input;
}

double sampled_difference(double p0, double p1, long long shots,
                          std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  long long n0 = 0, n1 = 0;
  for (long long s = 0; s < shots; ++s) {
    const double r = u(rng);
    if (r < p0)
      ++n0;
    else if (r < p0 + p1)
      ++n1;
  }
  return static_cast<double>(n0 - n1) / static_cast<double>(shots);
}

}  // namespace

double hadamard_test(const ModelSpec& spec, const StateVector& phi,
                     MeasureBasis basis, std::optional<long long> shots,
                     std::uint64_t seed) {
  const FoqcsCircuit enc = build_foqcs(spec, /*controlled=*/true);
  const Circuit test = hadamard_wrap(enc.circuit, basis);
  const StateVector input = embed_input(test, phi);
  const auto [p0, p1] = control_branch_probs(test, input, 0);
  if (!shots) return p0 - p1;
  if (*shots <= 0) throw std::invalid_argument("shots must be positive");
  return sampled_difference(p0, p1, *shots, seed);
}

cplx loschmidt_echo(const ModelSpec& spec, double t, int d,
                    const StateVector& phi) {
  if (spec.n > 8 || d > 6) throw std::invalid_argument("loschmidt_echo: size limit");
  const PolySpec poly = taylor_coeffs(t, d);
  const CoefficientTable table = build_table(spec);
  const PolyParams params = poly_params(poly, table.lambda);
  const Circuit controlled =
      build_poly_be(spec, poly, /*controlled=*/true, /*simplified=*/true);
  double re = 0.0, im = 0.0;
  for (const MeasureBasis basis : {MeasureBasis::X, MeasureBasis::Y}) {
    const Circuit test = hadamard_wrap(controlled, basis);
    const StateVector input = embed_input(test, phi);
    const auto [p0, p1] = control_branch_probs(test, input, 0);
    (basis == MeasureBasis::X ? re : im) = p0 - p1;
  }
  // block = e^{-i arg(a0)} p_d(H) / W; Taylor has a0 = 1 so only W rescales
  return cplx{re, im} * params.big_w;
}

double success_probability(const Circuit& circuit, const StateVector& phi) {
  const StateVector input = embed_input(circuit, phi);
  const StateVector out = apply(circuit, input);
  std::size_t anc_mask = 0;
  for (const auto& g : circuit.gates())
    if (g.kind == GateKind::PostSelectZero)
      anc_mask |= std::size_t{1} << (out.n - 1 - g.q0);
  double p = 0.0;
  for (std::size_t x = 0; x < out.amp.size(); ++x)
    if (!(x & anc_mask)) p += std::norm(out.amp[x]);
  return p;
}

}  // namespace foqcs
