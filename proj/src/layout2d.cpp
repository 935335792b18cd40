#include "foqcs/layout2d.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "foqcs/builders.hpp"
#include "json.hpp"

namespace foqcs {

namespace {

// Emits the model PR onto two adjacent grid rows. `iq`/`jq` map a register
// site to a physical cell. The XYZ/Ising activation block targets the first
// Zp qubit, which is diagonal on the grid; it is routed through the second
// Zp qubit (clean at that point). The XXZ oracle keeps its activation
// block vertical (second Zp qubit), so it needs no routing at all.
void emit_pr_grid(Circuit& c, const ModelSpec& spec, PrepSide side,
                  const std::vector<int>& iq, const std::vector<int>& jq) {
  const int n = spec.n;
  auto dicke = [&](int k) {
    return 2.0 * std::acos(std::sqrt(1.0 / (n - k)));
  };

  c.x(iq[1]);
  if (spec.kind == ModelKind::XXZ) {
    // activation block targets the second Zp qubit: vertical, no routing
    c.cry(iq[1], jq[1], pr_theta_activation(spec, side));
    c.cnot(jq[1], iq[1]);
    for (int k = 1; k <= n - 2; ++k) {
      c.cry(iq[k], iq[k + 1], dicke(k));
      c.cnot(iq[k + 1], iq[k]);
      c.cry(jq[k], jq[k + 1], dicke(k));
      c.cnot(jq[k + 1], jq[k]);
    }
  } else {
    // routed activation block: relay through jq[1] (still |0>)
    c.cnot(iq[1], jq[1]);
    c.cry(jq[1], jq[0], pr_theta_activation(spec, side));
    c.cnot(iq[1], jq[1]);
    c.cnot(jq[0], jq[1]);
    c.cnot(jq[1], iq[1]);
    c.cnot(jq[0], jq[1]);

    c.cry(jq[0], jq[1], pr_theta_zfirst(spec));
    c.cnot(jq[1], jq[0]);
    for (int k = 1; k <= n - 2; ++k) {
      c.cry(iq[k], iq[k + 1], dicke(k));
      c.cnot(iq[k + 1], iq[k]);
      c.cry(jq[k], jq[k + 1], dicke(k));
      c.cnot(jq[k + 1], jq[k]);
    }
    if (spec.kind == ModelKind::XYZ &&
        std::abs(spec.g) + std::abs(spec.jz) > 0.0) {
      const double theta = pr_theta_zsplit(spec, side);
      for (int k = 1; k <= n - 1; ++k) c.cry(jq[k], jq[k - 1], theta);
      for (int k = n - 1; k >= 1; --k) c.cnot(jq[k], jq[k - 1]);
    }
  }

  if (spec.kind != ModelKind::Ising) {
    const double theta = pr_theta_xy(spec, side);
    for (int k = 1; k <= n - 1; ++k) c.cry(iq[k], jq[k], theta);
  }
  for (int k = 1; k <= n - 1; ++k) {
    c.cnot(iq[k], iq[k - 1]);
    if (spec.kind != ModelKind::Ising) c.cnot(jq[k], jq[k - 1]);
  }
}

void check_named(const ModelSpec& spec) {
  if (spec.kind == ModelKind::Custom)
    throw std::invalid_argument("grid mapping is defined for named models only");
  if (spec.n < 2) throw std::invalid_argument("grid mapping needs n >= 2");
}

// distance-2 CNOT through a |0> relay: exact on the relay's zero subspace
void d2_cnot(Circuit& c, int ctrl, int relay, int target) {
  c.cnot(ctrl, relay);
  c.cnot(relay, target);
  c.cnot(ctrl, relay);
}

}  // namespace

std::pair<Circuit, GridLayout> map_pr_grid(const ModelSpec& spec,
                                           PrepSide side, bool controlled) {
  check_named(spec);
  const int n = spec.n;
  const int co = controlled ? 1 : 0;
  GridLayout lay;
  lay.rows = 3;
  lay.cols = n + co;
  Circuit c(lay.rows * lay.cols);

  std::vector<int> iq(n), jq(n);
  for (int l = 0; l < n; ++l) {
    iq[l] = lay.cell(1, l + co);
    jq[l] = lay.cell(2, l + co);
  }
  const int logical = co + 2 * n;
  lay.placement.resize(logical);
  if (controlled) lay.placement[0] = lay.cell(1, 0);
  for (int l = 0; l < n; ++l) {
    lay.placement[co + l] = iq[l];
    lay.placement[co + n + l] = jq[l];
  }
  lay.relabel_out = lay.placement;

  if (!controlled) {
    emit_pr_grid(c, spec, side, iq, jq);
  } else {
    Circuit bare(lay.rows * lay.cols);
    emit_pr_grid(bare, spec, side, iq, jq);
    // activation X -> distance-2 CNOT from the control cell through iq[0]
    d2_cnot(c, lay.cell(1, 0), iq[0], iq[1]);
    for (std::size_t g = 1; g < bare.gates().size(); ++g) c.push(bare.gates()[g]);
  }
  return {std::move(c), std::move(lay)};
}

std::pair<Circuit, GridLayout> map_select_grid(int n) {
  if (n < 1) throw std::invalid_argument("map_select_grid: n >= 1");
  GridLayout lay;
  lay.rows = 3;
  lay.cols = n;
  Circuit c(3 * n);
  lay.placement.resize(3 * n);
  for (int l = 0; l < n; ++l) {
    lay.placement[l] = lay.cell(1, l);          // i
    lay.placement[n + l] = lay.cell(2, l);      // j
    lay.placement[2 * n + l] = lay.cell(0, l);  // phi
  }
  for (int l = 0; l < n; ++l) c.swap(lay.cell(0, l), lay.cell(1, l));
  for (int l = 0; l < n; ++l) c.cnot(lay.cell(0, l), lay.cell(1, l));
  for (int l = 0; l < n; ++l) c.cz(lay.cell(1, l), lay.cell(2, l));
  for (int l = 0; l < n; ++l) c.swap(lay.cell(1, l), lay.cell(2, l));
  lay.relabel_out.resize(3 * n);
  for (int l = 0; l < n; ++l) {
    lay.relabel_out[l] = lay.cell(0, l);
    lay.relabel_out[n + l] = lay.cell(1, l);
    lay.relabel_out[2 * n + l] = lay.cell(2, l);
  }
  return {std::move(c), std::move(lay)};
}

std::pair<Circuit, GridLayout> map_foqcs_grid(const ModelSpec& spec,
                                              bool controlled) {
  check_named(spec);
  const int n = spec.n;
  const int co = controlled ? 1 : 0;
  GridLayout lay;
  lay.rows = 3;
  lay.cols = n + co;
  Circuit c(lay.rows * lay.cols);

  // before: phi row 0, i row 1, j row 2
  std::vector<int> iq(n), jq(n), phiq(n);
  for (int l = 0; l < n; ++l) {
    phiq[l] = lay.cell(0, l + co);
    iq[l] = lay.cell(1, l + co);
    jq[l] = lay.cell(2, l + co);
  }
  const int logical = co + 3 * n;
  lay.placement.resize(logical);
  if (controlled) lay.placement[0] = lay.cell(1, 0);
  for (int l = 0; l < n; ++l) {
    lay.placement[co + l] = iq[l];
    lay.placement[co + n + l] = jq[l];
    lay.placement[co + 2 * n + l] = phiq[l];
  }

  Circuit pr(c.num_qubits()), pl(c.num_qubits());
  emit_pr_grid(pr, spec, PrepSide::Right, iq, jq);
  {
    // PL^dag acts after the swap drift: i on row 0, j on row 1
    std::vector<int> iq2(n), jq2(n);
    for (int l = 0; l < n; ++l) {
      iq2[l] = lay.cell(0, l + co);
      jq2[l] = lay.cell(1, l + co);
    }
    emit_pr_grid(pl, spec, PrepSide::Left, iq2, jq2);
  }
  const Circuit pl_dag = pl.adjoint();

  const int ctrl = lay.cell(1, 0);
  if (!controlled) {
    c.append(pr);
  } else {
    d2_cnot(c, ctrl, iq[0], iq[1]);
    for (std::size_t g = 1; g < pr.gates().size(); ++g) c.push(pr.gates()[g]);
  }
  c.barrier();

  // SELECT: merged swap/CNOT and CZ/swap layers, 4n CNOTs depth 4
  for (int l = 0; l < n; ++l) c.swap(phiq[l], iq[l]);
  for (int l = 0; l < n; ++l) c.cnot(phiq[l], iq[l]);  // i now on row 0
  for (int l = 0; l < n; ++l) c.cz(iq[l], jq[l]);      // phi now on row 1
  for (int l = 0; l < n; ++l) c.swap(iq[l], jq[l]);
  c.barrier();

  if (!controlled) {
    c.append(pl_dag);
  } else {
    const auto& gl = pl_dag.gates();
    for (std::size_t g = 0; g + 1 < gl.size(); ++g) c.push(gl[g]);
    // trailing activation X -> clean-relay chain from the control cell
    const int r1 = lay.cell(0, 0);  // spare corner, always |0>
    const int r2 = lay.cell(0, 1);  // i0 after the drift, |0> again here
    const int tgt = lay.cell(0, 1 + co);
    c.cnot(ctrl, r1);
    c.cnot(r1, r2);
    c.cnot(r2, tgt);
    c.cnot(r1, r2);
    c.cnot(ctrl, r1);
  }

  // after: i row 0, j row 1, phi row 2
  lay.relabel_out.resize(logical);
  if (controlled) lay.relabel_out[0] = ctrl;
  for (int l = 0; l < n; ++l) {
    lay.relabel_out[co + l] = lay.cell(0, l + co);
    lay.relabel_out[co + n + l] = lay.cell(1, l + co);
    lay.relabel_out[co + 2 * n + l] = lay.cell(2, l + co);
  }
  for (int l = 0; l < n; ++l) {
    c.post_select_zero(lay.cell(0, l + co));
    c.post_select_zero(lay.cell(1, l + co));
  }
  return {std::move(c), std::move(lay)};
}

std::pair<Circuit, GridLayout> map_poly_grid(const ModelSpec& spec,
                                             const PolySpec& poly,
                                             bool controlled) {
  check_named(spec);
  const int n = spec.n;
  const int d = poly.degree();
  if (d < 1) throw std::invalid_argument("degree must be >= 1");
  const CoefficientTable table = build_table(spec);
  const PolyParams params = poly_params(poly, table.lambda);

  const int cc = controlled ? 1 : 0;
  GridLayout lay;
  lay.rows = 2 * d + 1;
  lay.cols = n + 1 + cc;
  Circuit c(lay.rows * lay.cols);

  const int oc = cc;  // outer-ancilla column
  const auto uq = [&](int k) { return lay.cell(2 * k + 1, oc); };
  const auto spare = [&](int k) { return lay.cell(2 * k, oc); };
  // registers before the drift: phi row 0, i_k row 2k+1, j_k row 2k+2
  const auto phiq = [&](int l) { return lay.cell(0, oc + 1 + l); };
  const auto iq0 = [&](int k, int l) { return lay.cell(2 * k + 1, oc + 1 + l); };
  const auto jq0 = [&](int k, int l) { return lay.cell(2 * k + 2, oc + 1 + l); };
  // after the drift every ancilla register sits one row higher
  const auto iq1 = [&](int k, int l) { return lay.cell(2 * k, oc + 1 + l); };
  const auto jq1 = [&](int k, int l) { return lay.cell(2 * k + 1, oc + 1 + l); };

  const int logical = cc + d + (2 * d + 1) * n;
  lay.placement.resize(logical);
  if (controlled) lay.placement[0] = lay.cell(1, 0);
  for (int k = 0; k < d; ++k) lay.placement[cc + k] = uq(k);
  for (int k = 0; k < d; ++k)
    for (int l = 0; l < n; ++l) {
      lay.placement[cc + d + 2 * n * k + l] = iq0(k, l);
      lay.placement[cc + d + 2 * n * k + n + l] = jq0(k, l);
    }
  for (int l = 0; l < n; ++l)
    lay.placement[cc + d + 2 * n * d + l] = phiq(l);

  // 1. modified outer loader down the ancilla column
  if (controlled) {
    c.cry(lay.cell(1, 0), uq(0), params.theta[0]);  // control sits next door
  } else {
    c.ry(uq(0), params.theta[0]);
  }
  for (int k = 1; k < d; ++k) {
    c.cnot(uq(k - 1), spare(k));
    c.cry(spare(k), uq(k), params.theta[k]);
  }
  for (int k = 0; k < d; ++k) c.phase(uq(k), params.phi[k]);
  c.barrier();

  // 2. distance-2 activations
  for (int k = 0; k < d; ++k) d2_cnot(c, uq(k), iq0(k, 0), iq0(k, 1));
  c.barrier();

  // 3. PRmod blocks
  for (int k = 0; k < d; ++k) {
    Circuit pr(c.num_qubits());
    std::vector<int> iv(n), jv(n);
    for (int l = 0; l < n; ++l) {
      iv[l] = iq0(k, l);
      jv[l] = jq0(k, l);
    }
    emit_pr_grid(pr, spec, PrepSide::Right, iv, jv);
    for (std::size_t g = 1; g < pr.gates().size(); ++g) c.push(pr.gates()[g]);
  }
  c.barrier();

  // 4+5. SELECT cascade with the parallel ancilla-column drift
  for (int k = 0; k < d; ++k) {
    // phi currently occupies row 2k; select against (i_k, j_k)
    for (int l = 0; l < n; ++l) c.swap(lay.cell(2 * k, oc + 1 + l), iq0(k, l));
    for (int l = 0; l < n; ++l) c.cnot(lay.cell(2 * k, oc + 1 + l), iq0(k, l));
    for (int l = 0; l < n; ++l) c.cz(iq0(k, l), jq0(k, l));
    for (int l = 0; l < n; ++l) c.swap(iq0(k, l), jq0(k, l));
  }
  for (int r = 0; r + 1 < 2 * d; ++r)
    c.swap(lay.cell(r, oc), lay.cell(r + 1, oc));
  c.barrier();

  // 6. PLmod^dag blocks, one row up
  for (int k = 0; k < d; ++k) {
    Circuit pl(c.num_qubits());
    std::vector<int> iv(n), jv(n);
    for (int l = 0; l < n; ++l) {
      iv[l] = iq1(k, l);
      jv[l] = jq1(k, l);
    }
    emit_pr_grid(pl, spec, PrepSide::Left, iv, jv);
    const Circuit pld = pl.adjoint();
    for (std::size_t g = 0; g + 1 < pld.gates().size(); ++g) c.push(pld.gates()[g]);
  }
  c.barrier();

  // 7. shifted distance-2 activations (u_k now on row 2k)
  for (int k = 0; k < d; ++k)
    d2_cnot(c, lay.cell(2 * k, oc), iq1(k, 0), iq1(k, 1));
  c.barrier();

  // 8. shifted outer unloader; the relay spares still hold the copies made
  // in step 1 and are uncomputed here
  for (int k = d - 1; k >= 1; --k) {
    c.cry(lay.cell(2 * k - 1, oc), lay.cell(2 * k, oc), -params.theta[k]);
    c.cnot(lay.cell(2 * k - 2, oc), lay.cell(2 * k - 1, oc));
  }
  if (controlled) {
    // u_0 drifted diagonally away from the control; copy the control onto
    // the spare corner (still |0>) to bring it next to u_0
    const int ctrl = lay.cell(1, 0);
    const int r = lay.cell(0, 0);
    c.cnot(ctrl, r);
    c.cry(r, lay.cell(0, oc), -params.theta[0]);
    c.cnot(ctrl, r);
  } else {
    c.ry(lay.cell(0, oc), -params.theta[0]);
  }

  // 9. post-select every ancilla
  lay.relabel_out.resize(logical);
  if (controlled) lay.relabel_out[0] = lay.cell(1, 0);
  for (int k = 0; k < d; ++k) lay.relabel_out[cc + k] = lay.cell(2 * k, oc);
  for (int k = 0; k < d; ++k)
    for (int l = 0; l < n; ++l) {
      lay.relabel_out[cc + d + 2 * n * k + l] = iq1(k, l);
      lay.relabel_out[cc + d + 2 * n * k + n + l] = jq1(k, l);
    }
  for (int l = 0; l < n; ++l)
    lay.relabel_out[cc + d + 2 * n * d + l] = lay.cell(2 * d, oc + 1 + l);

  for (int r = 0; r < 2 * d; ++r) c.post_select_zero(lay.cell(r, oc));
  for (int k = 0; k < d; ++k)
    for (int l = 0; l < n; ++l) {
      c.post_select_zero(iq1(k, l));
      c.post_select_zero(jq1(k, l));
    }
  return {std::move(c), std::move(lay)};
}

std::vector<std::string> validate_connectivity(const Circuit& circuit,
                                               const GridLayout& layout) {
  std::vector<std::string> violations;
  for (std::size_t k = 0; k < circuit.gates().size(); ++k) {
    const Gate& g = circuit.gates()[k];
    if (!g.is_two_qubit()) continue;
    const int r0 = g.q0 / layout.cols, c0 = g.q0 % layout.cols;
    const int r1 = g.q1 / layout.cols, c1 = g.q1 % layout.cols;
    if (std::abs(r0 - r1) + std::abs(c0 - c1) != 1) {
      std::ostringstream os;
      os << "gate " << k << " (" << gate_kind_name(g.kind) << ") acts on ("
         << r0 << "," << c0 << ") and (" << r1 << "," << c1 << ")";
      violations.push_back(os.str());
    }
  }
  return violations;
}

std::string layout_report_json(const Circuit& circuit,
                               const GridLayout& layout) {
  nlohmann::json js;
  js["rows"] = layout.rows;
  js["cols"] = layout.cols;
  js["placement"] = layout.placement;
  js["relabel_out"] = layout.relabel_out;

  // ASAP timesteps over the physical gate list
  std::vector<long long> frontier(circuit.num_qubits(), 0);
  std::vector<std::vector<nlohmann::json>> steps;
  for (const auto& g : circuit.gates()) {
    if (g.kind == GateKind::Barrier) {
      long long m = 0;
      for (const auto f : frontier) m = std::max(m, f);
      for (auto& f : frontier) f = m;
      continue;
    }
    if (g.kind == GateKind::PostSelectZero) continue;
    long long t;
    if (g.is_two_qubit()) {
      t = std::max(frontier[g.q0], frontier[g.q1]) + 1;
      frontier[g.q0] = t;
      frontier[g.q1] = t;
    } else {
      t = frontier[g.q0] + 1;
      frontier[g.q0] = t;
    }
    if (static_cast<std::size_t>(t) > steps.size()) steps.resize(t);
    nlohmann::json gj;
    gj["gate"] = gate_kind_name(g.kind);
    gj["qubits"] = g.is_two_qubit() ? std::vector<int>{g.q0, g.q1}
                                    : std::vector<int>{g.q0};
    if (g.kind == GateKind::Ry || g.kind == GateKind::Phase ||
        g.kind == GateKind::CRy)
      gj["param"] = g.param;
    steps[t - 1].push_back(gj);
  }
  js["schedule"] = steps;
  return js.dump(2);
}

}  // namespace foqcs
