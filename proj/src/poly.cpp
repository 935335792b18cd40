#include "foqcs/poly.hpp"

#include <cmath>
#include <stdexcept>

namespace foqcs {

namespace {

double arg0(cplx z) { return std::abs(z) < 1e-15 ? 0.0 : std::arg(z); }

struct PrPair {
  Circuit right;
  Circuit left;
  double lambda = 0.0;
};

PrPair prep_oracles(const ModelSpec& spec) {
  const CoefficientTable table = build_table(spec);
  if (spec.kind == ModelKind::Custom)
    return {build_pr_exact(table, PrepSide::Right),
            build_pr_exact(table, PrepSide::Left), table.lambda};
  return {build_pr_model(spec, PrepSide::Right),
          build_pr_model(spec, PrepSide::Left), table.lambda};
}

void remap_into(const Circuit& src, Circuit& dst, int offset) {
  for (Gate g : src.gates()) {
    if (g.kind != GateKind::Barrier) {
      g.q0 += offset;
      if (g.is_two_qubit()) g.q1 += offset;
    }
    dst.push(g);
  }
}

}  // namespace

PolyParams poly_params(const PolySpec& poly, double lambda) {
  const int d = poly.degree();
  if (d < 0) throw std::invalid_argument("empty polynomial");
  if (d >= 1 && lambda <= 0.0) throw std::invalid_argument("lambda must be positive");

  PolyParams p;
  p.lambda = lambda;
  p.big_w = 0.0;
  double lam_pow = 1.0;
  std::vector<double> w2(d + 1);
  for (int k = 0; k <= d; ++k) {
    w2[k] = std::abs(poly.coeffs[k]) * lam_pow;
    p.big_w += w2[k];
    lam_pow *= lambda;
  }
  if (p.big_w <= 0.0) throw std::invalid_argument("all coefficients vanish");

  p.wbar.resize(d + 1);
  for (int k = 0; k <= d; ++k) p.wbar[k] = std::sqrt(w2[k] / p.big_w);

  p.theta.resize(d);
  double placed = 0.0;
  for (int k = 0; k < d; ++k) {
    const double rem = 1.0 - placed;
    if (rem < 1e-12) {
      p.theta[k] = 0.0;
    } else {
      double r = p.wbar[k] / std::sqrt(rem);
      r = std::min(1.0, std::max(-1.0, r));
      p.theta[k] = 2.0 * std::acos(r);
    }
    placed += p.wbar[k] * p.wbar[k];
  }

  p.phi.resize(d);
  for (int k = 0; k < d; ++k)
    p.phi[k] = arg0(poly.coeffs[k + 1]) - arg0(poly.coeffs[k]);
  return p;
}

Circuit build_poly_r(const PolyParams& params) {
  const int d = static_cast<int>(params.theta.size());
  if (d < 1) throw std::invalid_argument("degree must be >= 1");
  Circuit c(d);
  c.add_register("u", 0, d);
  c.ry(0, params.theta[0]);
  for (int k = 1; k < d; ++k) c.cry(k - 1, k, params.theta[k]);
  for (int k = 0; k < d; ++k) c.phase(k, params.phi[k]);
  return c;
}

Circuit build_poly_l(const PolyParams& params) {
  const int d = static_cast<int>(params.theta.size());
  if (d < 1) throw std::invalid_argument("degree must be >= 1");
  Circuit c(d);
  c.add_register("u", 0, d);
  c.ry(0, params.theta[0]);
  for (int k = 1; k < d; ++k) c.cry(k - 1, k, params.theta[k]);
  return c;
}

Circuit build_power_be(const ModelSpec& spec, int k) {
  if (k < 1) throw std::invalid_argument("power must be >= 1");
  std::vector<ModelSpec> specs(k, spec);
  return build_product_be(specs);
}

Circuit build_product_be(const std::vector<ModelSpec>& specs) {
  if (specs.empty()) throw std::invalid_argument("no factors");
  const int n = specs.front().n;
  for (const auto& s : specs)
    if (s.n != n) throw std::invalid_argument("factor size mismatch");
  const int k = static_cast<int>(specs.size());

  Circuit c((2 * k + 1) * n);
  for (int s = 0; s < k; ++s) {
    c.add_register("i" + std::to_string(s), 2 * n * s, n);
    c.add_register("j" + std::to_string(s), 2 * n * s + n, n);
  }
  const int sys = 2 * k * n;
  c.add_register("system", sys, n);

  std::vector<PrPair> oracles;
  oracles.reserve(k);
  for (const auto& s : specs) oracles.push_back(prep_oracles(s));

  for (int s = 0; s < k; ++s) remap_into(oracles[s].right, c, 2 * n * s);
  c.barrier();
  for (int s = 0; s < k; ++s) {
    for (int l = 0; l < n; ++l) c.cnot(2 * n * s + l, sys + l);
    for (int l = 0; l < n; ++l) c.cz(2 * n * s + n + l, sys + l);
  }
  c.barrier();
  for (int s = 0; s < k; ++s) remap_into(oracles[s].left.adjoint(), c, 2 * n * s);
  for (int q = 0; q < 2 * k * n; ++q) c.post_select_zero(q);
  return c;
}

Circuit build_poly_be(const ModelSpec& spec, const PolySpec& poly,
                      bool controlled, bool simplified) {
  const int d = poly.degree();
  const int n = spec.n;
  if (d < 1) throw std::invalid_argument("degree must be >= 1");
  if (simplified && spec.kind == ModelKind::Custom)
    throw std::invalid_argument("simplified form needs a named model");

  const PrPair oracle = prep_oracles(spec);
  const PolyParams params = poly_params(poly, oracle.lambda);

  const int base = controlled ? 1 : 0;
  Circuit c(base + d + (2 * d + 1) * n);
  if (controlled) c.add_register("control", 0, 1);
  c.add_register("u", base, d);
  const auto ireg = [&](int s) { return base + d + 2 * n * s; };
  const auto jreg = [&](int s) { return base + d + 2 * n * s + n; };
  const int sys = base + d + 2 * d * n;
  for (int s = 0; s < d; ++s) {
    c.add_register("i" + std::to_string(s), ireg(s), n);
    c.add_register("j" + std::to_string(s), jreg(s), n);
  }
  c.add_register("system", sys, n);
  const auto uq = [&](int s) { return base + s; };

  // outer loader
  if (controlled)
    c.cry(0, uq(0), params.theta[0]);
  else
    c.ry(uq(0), params.theta[0]);
  for (int s = 1; s < d; ++s) c.cry(uq(s - 1), uq(s), params.theta[s]);
  for (int s = 0; s < d; ++s) c.phase(uq(s), params.phi[s]);
  c.barrier();

  if (simplified) {
    const OracleSplit pr_split = split_activation(oracle.right);
    const OracleSplit pl_split = split_activation(oracle.left);
    const int act = pr_split.activation.gates().front().q0;  // local index

    for (int s = 0; s < d; ++s) c.cnot(uq(s), ireg(s) + act);
    c.barrier();
    for (int s = 0; s < d; ++s) remap_into(pr_split.body, c, ireg(s));
    c.barrier();
    for (int s = 0; s < d; ++s) {
      for (int l = 0; l < n; ++l) c.cnot(ireg(s) + l, sys + l);
      for (int l = 0; l < n; ++l) c.cz(jreg(s) + l, sys + l);
    }
    c.barrier();
    for (int s = 0; s < d; ++s) remap_into(pl_split.body.adjoint(), c, ireg(s));
    c.barrier();
    for (int s = 0; s < d; ++s) c.cnot(uq(s), ireg(s) + act);
    c.barrier();
  } else {
    // general form: each PR / PL^dag is brute-force controlled on its
    // unary qubit (verification sizes only)
    auto controlled_on = [&](const Circuit& g, int ctrl, int offset) {
      const Circuit cg = control_circuit(g);
      // control_circuit places its control at local 0 and shifts by one
      for (Gate gate : cg.gates()) {
        if (gate.kind == GateKind::Barrier) {
          c.push(gate);
          continue;
        }
        auto fix = [&](int q) { return q == 0 ? ctrl : offset + (q - 1); };
        gate.q0 = fix(gate.q0);
        if (gate.is_two_qubit()) gate.q1 = fix(gate.q1);
        c.push(gate);
      }
    };
    for (int s = 0; s < d; ++s) controlled_on(oracle.right, uq(s), ireg(s));
    c.barrier();
    for (int s = 0; s < d; ++s) {
      for (int l = 0; l < n; ++l) c.cnot(ireg(s) + l, sys + l);
      for (int l = 0; l < n; ++l) c.cz(jreg(s) + l, sys + l);
    }
    c.barrier();
    for (int s = 0; s < d; ++s)
      controlled_on(oracle.left.adjoint(), uq(s), ireg(s));
    c.barrier();
  }

  // outer unloader: POLY_L^dag (no phase layer; phases live in POLY_R only)
  for (int s = d - 1; s >= 1; --s) c.cry(uq(s - 1), uq(s), -params.theta[s]);
  if (controlled)
    c.cry(0, uq(0), -params.theta[0]);
  else
    c.ry(uq(0), -params.theta[0]);

  for (int s = 0; s < d; ++s) c.post_select_zero(uq(s));
  for (int q = base + d; q < sys; ++q) c.post_select_zero(q);
  return c;
}

PolySpec taylor_coeffs(double t, int d) {
  if (d < 1) throw std::invalid_argument("degree must be >= 1");
  PolySpec p;
  p.coeffs.resize(d + 1);
  cplx cur{1.0, 0.0};
  p.coeffs[0] = cur;
  for (int k = 1; k <= d; ++k) {
    cur *= cplx{0.0, -t} / static_cast<double>(k);
    p.coeffs[k] = cur;
  }
  return p;
}

}  // namespace foqcs
