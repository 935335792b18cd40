#include "foqcs/builders.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "foqcs/simulator.hpp"

namespace foqcs {

namespace {

constexpr double kPi = std::numbers::pi;

double clamp01(double x) {
  // arccos arguments may overshoot [0,1] by rounding
  if (x < 0.0 && x > -1e-12) return 0.0;
  if (x > 1.0 && x < 1.0 + 1e-12) return 1.0;
  if (x < 0.0 || x > 1.0) throw std::logic_error("rotation argument out of range");
  return x;
}

double acos_sqrt(double num, double den) {
  if (std::abs(den) < 1e-15) return 0.0;  // 0/0 convention
  return 2.0 * std::acos(std::sqrt(clamp01(num / den)));
}

struct ChainParams {
  int n = 0;
  double g = 0.0, jx = 0.0, jy = 0.0, jz = 0.0;
  bool has_zsplit = false;   // section with the Z / ZZ weight split
  bool has_xysplit = false;  // Ry ladder connecting the registers
  bool has_zp_final = false; // final CNOT ladder on the Zp register
};

ChainParams chain_params(const ModelSpec& spec) {
  ChainParams p;
  p.n = spec.n;
  switch (spec.kind) {
    case ModelKind::XYZ:
      p.g = spec.g;
      p.jx = spec.jx;
      p.jy = spec.jy;
      p.jz = spec.jz;
      p.has_zsplit = std::abs(p.g) + std::abs(p.jz) > 0.0;
      p.has_xysplit = std::abs(p.jx) + std::abs(p.jy) > 0.0;
      p.has_zp_final = true;
      break;
    case ModelKind::XXZ:
      p.jx = spec.j;
      p.jy = spec.j;
      p.jz = spec.jz;
      p.has_zsplit = false;
      p.has_xysplit = std::abs(spec.j) > 0.0;
      p.has_zp_final = true;
      break;
    case ModelKind::Ising:
      p.g = spec.g;
      p.jx = spec.j;
      p.has_zsplit = false;
      p.has_xysplit = false;
      p.has_zp_final = false;
      break;
    case ModelKind::Custom:
      throw std::invalid_argument("build_pr_model: named models only");
  }
  if (p.n < 2) throw std::invalid_argument("build_pr_model: n >= 2 required");
  return p;
}

double lambda_of(const ChainParams& p) {
  return std::abs(p.g) * p.n +
         (std::abs(p.jx) + std::abs(p.jy) + std::abs(p.jz)) * (p.n - 1);
}

}  // namespace

double pr_theta_activation(const ModelSpec& spec, PrepSide side) {
  const ChainParams p = chain_params(spec);
  const double lam = lambda_of(p);
  if (lam <= 0.0) throw std::invalid_argument("all couplings vanish");
  const double std_theta =
      acos_sqrt((std::abs(p.jx) + std::abs(p.jy)) * (p.n - 1), lam);
  if (side == PrepSide::Left) return std_theta;
  // The sign branch follows g and Jx; at the g = 0 or Jx = 0 boundary the
  // sign of the surviving group coefficient takes over (Jz for the Zp
  // group, -Jy for the Xp group), so negative couplings load correctly.
  const double sz = p.g != 0.0 ? p.g : p.jz;
  const double sx = p.jx != 0.0 ? p.jx : -p.jy;
  if (sz >= 0.0 && sx >= 0.0) return std_theta;
  if (sz >= 0.0 && sx < 0.0) return 2.0 * kPi - std_theta;
  if (sz < 0.0 && sx < 0.0) return std_theta + 2.0 * kPi;
  return -std_theta;  // sz < 0, sx >= 0
}

double pr_theta_zfirst(const ModelSpec& spec) {
  const ChainParams p = chain_params(spec);
  return acos_sqrt(std::abs(p.g),
                   std::abs(p.g) * p.n + std::abs(p.jz) * (p.n - 1));
}

double pr_theta_zsplit(const ModelSpec& spec, PrepSide side) {
  const ChainParams p = chain_params(spec);
  const double std_theta = acos_sqrt(std::abs(p.g), std::abs(p.g) + std::abs(p.jz));
  if (side == PrepSide::Left) return std_theta;
  return (p.g * p.jz >= 0.0) ? std_theta : -std_theta;
}

double pr_theta_xy(const ModelSpec& spec, PrepSide side) {
  const ChainParams p = chain_params(spec);
  const double std_theta = acos_sqrt(std::abs(p.jx), std::abs(p.jx) + std::abs(p.jy));
  if (side == PrepSide::Left) return std_theta;
  return (p.jx * p.jy <= 0.0) ? std_theta : -std_theta;
}

Circuit build_select(int n) {
  if (n < 1) throw std::invalid_argument("build_select: n >= 1");
  Circuit c(3 * n);
  c.add_register("i", 0, n);
  c.add_register("j", n, n);
  c.add_register("system", 2 * n, n);
  for (int l = 0; l < n; ++l) c.cnot(l, 2 * n + l);
  for (int l = 0; l < n; ++l) c.cz(n + l, 2 * n + l);
  return c;
}

Circuit build_pr_model(const ModelSpec& spec, PrepSide side) {
  const ChainParams p = chain_params(spec);
  const int n = p.n;
  const double lam = lambda_of(p);
  if (lam <= 0.0) throw std::invalid_argument("all couplings vanish");

  Circuit c(2 * n);
  c.add_register("i", 0, n);
  c.add_register("j", n, n);
  const auto iq = [&](int l) { return l; };
  const auto jq = [&](int l) { return n + l; };

  // activation and the register-splitting block
  c.x(iq(1));
  c.cry(iq(1), jq(0), pr_theta_activation(spec, side));
  c.cnot(jq(0), iq(1));

  // balanced ladders spreading the single excitation along each register;
  // the Zp ladder is one step longer and leads by one block
  const bool zp_alive = std::abs(p.g) * n + std::abs(p.jz) * (n - 1) > 0.0;
  auto dicke = [&](int k) { return acos_sqrt(1.0, n - k); };
  if (zp_alive) {
    c.cry(jq(0), jq(1), pr_theta_zfirst(spec));
    c.cnot(jq(1), jq(0));
  }
  for (int k = 1; k <= n - 2; ++k) {
    c.cry(iq(k), iq(k + 1), dicke(k));
    c.cnot(iq(k + 1), iq(k));
    if (zp_alive) {
      c.cry(jq(k), jq(k + 1), dicke(k));
      c.cnot(jq(k + 1), jq(k));
    }
  }

  if (p.has_zsplit) {
    const double theta = pr_theta_zsplit(spec, side);
    for (int k = 1; k <= n - 1; ++k) c.cry(jq(k), jq(k - 1), theta);
    for (int k = n - 1; k >= 1; --k) c.cnot(jq(k), jq(k - 1));
  }

  if (p.has_xysplit) {
    const double theta = pr_theta_xy(spec, side);
    for (int k = 1; k <= n - 1; ++k) c.cry(iq(k), jq(k), theta);
  }

  // pair ladders: single excitation at site k becomes the (k-1, k) bond
  for (int k = 1; k <= n - 1; ++k) {
    c.cnot(iq(k), iq(k - 1));
    if (p.has_zp_final) c.cnot(jq(k), jq(k - 1));
  }
  return c;
}

OracleSplit split_activation(const Circuit& pr) {
  if (pr.gates().empty() || pr.gates().front().kind != GateKind::X)
    throw std::invalid_argument("split_activation: no leading X gate");
  OracleSplit s{Circuit(pr.num_qubits()), Circuit(pr.num_qubits())};
  for (const auto& r : pr.registers()) {
    s.activation.add_register(r.name, r.first, r.size);
    s.body.add_register(r.name, r.first, r.size);
  }
  s.activation.push(pr.gates().front());
  for (std::size_t k = 1; k < pr.gates().size(); ++k) s.body.push(pr.gates()[k]);
  return s;
}

namespace {

// ---- generic state preparation ------------------------------------------

// multiplexed Ry: rotation on `target` by angles[c] where c is the value of
// the control qubits (controls[0] = most significant)
void ucry(Circuit& c, const std::vector<int>& controls, int target,
          std::vector<double> angles) {
  bool all_zero = true;
  for (const double a : angles) all_zero = all_zero && std::abs(a) < 1e-14;
  if (all_zero) return;
  if (controls.empty()) {
    c.ry(target, angles[0]);
    return;
  }
  const int last = controls.back();
  std::vector<int> rest(controls.begin(), controls.end() - 1);
  const std::size_t half = angles.size() / 2;
  std::vector<double> plus(half), minus(half);
  for (std::size_t k = 0; k < half; ++k) {
    // index layout: (rest bits) * 2 + last bit
    plus[k] = (angles[2 * k] + angles[2 * k + 1]) / 2.0;
    minus[k] = (angles[2 * k] - angles[2 * k + 1]) / 2.0;
  }
  ucry(c, rest, target, plus);
  c.cnot(last, target);
  ucry(c, rest, target, minus);
  c.cnot(last, target);
}

// multiplexed Rz emitted with Phase gates; returns the accumulated global
// phase the P-for-Rz substitution introduced
double ucrz(Circuit& c, const std::vector<int>& controls, int target,
            std::vector<double> angles) {
  bool all_zero = true;
  for (const double a : angles) all_zero = all_zero && std::abs(a) < 1e-14;
  if (all_zero) return 0.0;
  if (controls.empty()) {
    c.phase(target, angles[0]);
    return angles[0] / 2.0;  // P(d) = e^{i d/2} Rz(d)
  }
  const int last = controls.back();
  std::vector<int> rest(controls.begin(), controls.end() - 1);
  const std::size_t half = angles.size() / 2;
  std::vector<double> plus(half), minus(half);
  for (std::size_t k = 0; k < half; ++k) {
    plus[k] = (angles[2 * k] + angles[2 * k + 1]) / 2.0;
    minus[k] = (angles[2 * k] - angles[2 * k + 1]) / 2.0;
  }
  double ph = ucrz(c, rest, target, plus);
  c.cnot(last, target);
  ph += ucrz(c, rest, target, minus);
  c.cnot(last, target);
  return ph;
}

}  // namespace

Circuit build_pr_exact(const CoefficientTable& table, PrepSide side) {
  const int n = table.n;
  if (n > 6) throw std::invalid_argument("build_pr_exact: n <= 6");
  if (table.entries.empty()) throw std::invalid_argument("all-zero table");
  const int m = 2 * n;
  const std::size_t dim = std::size_t{1} << m;

  std::vector<double> mag(dim, 0.0), phi(dim, 0.0);
  for (const auto& [key, a] : table.entries) {
    const std::size_t x =
        (static_cast<std::size_t>(key.first) << n) | key.second;
    mag[x] = std::sqrt(std::abs(a) / table.lambda);
    phi[x] = std::arg(a);
  }

  Circuit c(m);
  c.add_register("i", 0, n);
  c.add_register("j", n, n);

  // magnitude tree: qubit q rotated by multiplexed angles over q controls
  {
    std::vector<double> mass(dim);
    for (std::size_t x = 0; x < dim; ++x) mass[x] = mag[x] * mag[x];
    std::vector<std::vector<double>> level(m + 1);
    level[m] = mass;
    for (int q = m - 1; q >= 0; --q) {
      level[q].assign(std::size_t{1} << q, 0.0);
      for (std::size_t pfx = 0; pfx < level[q].size(); ++pfx)
        level[q][pfx] = level[q + 1][2 * pfx] + level[q + 1][2 * pfx + 1];
    }
    for (int q = 0; q < m; ++q) {
      std::vector<double> angles(std::size_t{1} << q, 0.0);
      for (std::size_t pfx = 0; pfx < angles.size(); ++pfx) {
        const double total = level[q][pfx];
        if (total < 1e-30) continue;
        const double p1 = level[q + 1][2 * pfx + 1];
        angles[pfx] = 2.0 * std::asin(std::sqrt(clamp01(p1 / total)));
      }
      std::vector<int> controls;
      for (int k = 0; k < q; ++k) controls.push_back(k);
      ucry(c, controls, q, angles);
    }
  }

  if (side == PrepSide::Right) {
    bool any = false;
    for (const double v : phi) any = any || std::abs(v) > 1e-15;
    if (any) {
      // exact diagonal: multiplexed-Rz cascade plus a global phase gadget
      double stray = 0.0;
      std::vector<double> curphi = phi;
      for (int q = m - 1; q >= 0; --q) {
        const std::size_t half = curphi.size() / 2;
        std::vector<double> delta(half), rest(half);
        for (std::size_t k = 0; k < half; ++k) {
          delta[k] = curphi[2 * k + 1] - curphi[2 * k];
          rest[k] = curphi[2 * k] + delta[k] / 2.0;
        }
        std::vector<int> controls;
        for (int k = 0; k < q; ++k) controls.push_back(k);
        // our emitted UCRz realizes true multiplexed Rz times e^{i stray}
        stray += ucrz(c, controls, q, delta);
        // true Rz(d) puts e^{-i d/2} on |0>, e^{+i d/2} on |1>: relative to
        // the target diag(e^{i phi0}, e^{i phi1}) this leaves e^{i (phi0+phi1)/2}
        // per prefix, which is exactly `rest`
        curphi = std::move(rest);
      }
      double residual = curphi[0] - stray;
      residual = std::remainder(residual, 2.0 * kPi);
      if (std::abs(residual) > 1e-14) {
        // e^{i r} I on qubit 0: P(r) X P(r) X
        c.phase(0, residual);
        c.x(0);
        c.phase(0, residual);
        c.x(0);
        // the gadget applies e^{i r} to every basis state
        // (diag(1,e^{ir}) then X diag(1,e^{ir}) X = diag(e^{ir}, e^{ir}))
      }
    }
  }
  return c;
}

FoqcsCircuit build_foqcs(const ModelSpec& spec, bool controlled) {
  const int n = spec.n;
  const CoefficientTable table = build_table(spec);
  const bool named = spec.kind != ModelKind::Custom;

  const Circuit pr = named ? build_pr_model(spec, PrepSide::Right)
                           : build_pr_exact(table, PrepSide::Right);
  const Circuit pl = named ? build_pr_model(spec, PrepSide::Left)
                           : build_pr_exact(table, PrepSide::Left);
  const Circuit pl_dag = pl.adjoint();

  const int base = controlled ? 1 : 0;
  Circuit c(base + 3 * n);
  if (controlled) c.add_register("control", 0, 1);
  c.add_register("i", base, n);
  c.add_register("j", base + n, n);
  c.add_register("system", base + 2 * n, n);

  std::vector<int> anc_map(2 * n);
  for (int k = 0; k < 2 * n; ++k) anc_map[k] = base + k;
  auto remap = [&](const Circuit& src, Circuit& dst) {
    for (Gate g : src.gates()) {
      if (g.kind != GateKind::Barrier) {
        g.q0 = anc_map[g.q0];
        if (g.is_two_qubit()) g.q1 = anc_map[g.q1];
      }
      dst.push(g);
    }
  };

  if (!controlled) {
    remap(pr, c);
  } else if (named) {
    const OracleSplit split = split_activation(pr);
    c.cnot(0, base + split.activation.gates().front().q0);
    remap(split.body, c);
  } else {
    const Circuit cpr = control_circuit(pr);
    // control_circuit already places the control at 0 and shifts by one
    for (Gate g : cpr.gates()) c.push(g);
  }

  c.barrier();
  for (int l = 0; l < n; ++l) c.cnot(base + l, base + 2 * n + l);
  for (int l = 0; l < n; ++l) c.cz(base + n + l, base + 2 * n + l);
  c.barrier();

  if (!controlled) {
    remap(pl_dag, c);
  } else if (named) {
    // adjoint of [X; body] is [body^dag; X]; the trailing X becomes a CNOT
    const OracleSplit split = split_activation(pl);
    remap(split.body.adjoint(), c);
    c.cnot(0, base + split.activation.gates().front().q0);
  } else {
    const Circuit cpl = control_circuit(pl_dag);
    for (Gate g : cpl.gates()) c.push(g);
  }

  for (int k = 0; k < 2 * n; ++k) c.post_select_zero(base + k);
  return {std::move(c), table.lambda};
}

Circuit control_circuit(const Circuit& circuit) {
  Circuit out(circuit.num_qubits() + 1);
  out.add_register("control", 0, 1);
  for (const auto& r : circuit.registers())
    out.add_register(r.name, r.first + 1, r.size);
  const int c = 0;
  const double t = kPi / 4.0;

  auto toffoli = [&](int c1, int c2, int tq) {
    out.h(tq);
    out.cnot(c2, tq);
    out.phase(tq, -t);
    out.cnot(c1, tq);
    out.phase(tq, t);
    out.cnot(c2, tq);
    out.phase(tq, -t);
    out.cnot(c1, tq);
    out.phase(tq, t);
    out.phase(c2, t);
    out.h(tq);
    out.cnot(c1, c2);
    out.phase(c1, t);
    out.phase(c2, -t);
    out.cnot(c1, c2);
  };

  for (const auto& g0 : circuit.gates()) {
    Gate g = g0;
    if (g.kind != GateKind::Barrier) {
      g.q0 += 1;
      if (g.is_two_qubit()) g.q1 += 1;
    }
    switch (g.kind) {
      case GateKind::X:
        out.cnot(c, g.q0);
        break;
      case GateKind::H:
        // H = X Ry(pi/2), so controlled-H = CRy(pi/2) then CNOT
        out.cry(c, g.q0, kPi / 2.0);
        out.cnot(c, g.q0);
        break;
      case GateKind::Ry:
        out.cry(c, g.q0, g.param);
        break;
      case GateKind::Phase:
        out.phase(c, g.param / 2.0);
        out.phase(g.q0, g.param / 2.0);
        out.cnot(c, g.q0);
        out.phase(g.q0, -g.param / 2.0);
        out.cnot(c, g.q0);
        break;
      case GateKind::CNOT:
        toffoli(c, g.q0, g.q1);
        break;
      case GateKind::CZ:
        out.h(g.q1);
        toffoli(c, g.q0, g.q1);
        out.h(g.q1);
        break;
      case GateKind::CRy:
        out.cry(g.q0, g.q1, g.param / 2.0);
        out.cnot(c, g.q0);
        out.cry(g.q0, g.q1, -g.param / 2.0);
        out.cnot(c, g.q0);
        out.cry(c, g.q1, g.param / 2.0);
        break;
      case GateKind::Swap:
        out.cnot(g.q1, g.q0);
        toffoli(c, g.q0, g.q1);
        out.cnot(g.q1, g.q0);
        break;
      case GateKind::Barrier:
        out.barrier();
        break;
      case GateKind::PostSelectZero:
        out.post_select_zero(g.q0);
        break;
    }
  }
  return out;
}

Circuit controlled_from_decomposition(
    const std::vector<std::pair<Circuit, Circuit>>& parts,
    const std::vector<int>& reference_zero_qubits) {
  if (parts.empty()) throw std::invalid_argument("empty decomposition");
  const int m = parts.front().first.num_qubits();
  for (const auto& [a, b] : parts)
    if (a.num_qubits() != m || b.num_qubits() != m)
      throw std::invalid_argument("decomposition width mismatch");

  // eigenstate check: every B must fix |0>_ref (x) |psi>
  if (m <= 13) {
    std::mt19937_64 rng(0x5eedULL);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (const auto& [a, b] : parts) {
      (void)a;
      for (int trial = 0; trial < 4; ++trial) {
        StateVector psi = StateVector::zero(m);
        std::size_t ref_mask = 0;
        for (const int q : reference_zero_qubits)
          ref_mask |= std::size_t{1} << (m - 1 - q);
        for (std::size_t x = 0; x < psi.amp.size(); ++x)
          psi.amp[x] = (x & ref_mask) ? cplx{0.0, 0.0} : cplx{u(rng), u(rng)};
        psi.normalize();
        const StateVector outp = apply(b, psi);
        double diff = 0.0;
        for (std::size_t x = 0; x < psi.amp.size(); ++x)
          diff = std::max(diff, std::abs(outp.amp[x] - psi.amp[x]));
        if (diff > 1e-12)
          throw std::invalid_argument(
              "controlled_from_decomposition: eigenstate check failed");
      }
    }
  }

  Circuit out(m + 1);
  out.add_register("control", 0, 1);
  for (const auto& [a, b] : parts) {
    const Circuit ca = control_circuit(a);
    out.append(ca);
    for (Gate g : b.gates()) {
      if (g.kind != GateKind::Barrier) {
        g.q0 += 1;
        if (g.is_two_qubit()) g.q1 += 1;
      }
      out.push(g);
    }
  }
  return out;
}

}  // namespace foqcs
