#include "foqcs/resources.hpp"

#include <sstream>
#include <stdexcept>

#include "foqcs/builders.hpp"
#include "foqcs/layout2d.hpp"
#include "foqcs/poly.hpp"
#include "json.hpp"

namespace foqcs {

namespace {

// Reference closed-form tables, stored verbatim.  {dn, n, d, c} per metric.
struct ModelTable {
  FormulaSet all[6];
  FormulaSet grid[6];
};

constexpr int kPR = 0, kCPR = 1, kFox = 2, kCFox = 3, kPoly = 4, kCPoly = 5;

const ModelTable kXyz = {
    // all-to-all
    {{{0, 11, 0, -11}, {0, 4, 0, 4}, {0, 2, 0, 0}},
     {{0, 11, 0, -10}, {0, 4, 0, 5}, {0, 2, 0, 1}},
     {{0, 24, 0, -22}, {0, 8, 0, 10}, {0, 3, 0, 0}},
     {{0, 24, 0, -20}, {0, 8, 0, 12}, {0, 3, 0, 1}},
     {{24, 0, -18, -4}, {0, 8, 6, 6}, {2, 1, 1, 0}},
     {{24, 0, -18, 0}, {0, 8, 6, 10}, {2, 1, 1, 1}}},
    // square grid
    {{{0, 11, 0, -7}, {0, 4, 0, 8}, {0, 2, 0, 0}},
     {{0, 11, 0, -6}, {0, 4, 0, 9}, {0, 2, 0, 1}},
     {{0, 26, 0, -14}, {0, 8, 0, 20}, {0, 3, 0, 0}},
     {{0, 26, 0, -12}, {0, 8, 0, 22}, {0, 3, 0, 1}},
     {{26, 0, -2, -6}, {0, 8, 10, 12}, {2, 1, 2, 0}},
     {{26, 0, -2, -2}, {0, 8, 10, 16}, {2, 1, 2, 1}}}};

const ModelTable kXxz = {
    {{{0, 8, 0, -8}, {0, 2, 0, 6}, {0, 2, 0, 0}},
     {{0, 8, 0, -7}, {0, 2, 0, 7}, {0, 2, 0, 1}},
     {{0, 18, 0, -16}, {0, 4, 0, 14}, {0, 3, 0, 0}},
     {{0, 18, 0, -14}, {0, 4, 0, 16}, {0, 3, 0, 1}},
     {{18, 0, -12, -4}, {0, 4, 6, 10}, {2, 1, 1, 0}},
     {{18, 0, -12, 0}, {0, 4, 6, 14}, {2, 1, 1, 1}}},
    {{{0, 8, 0, -8}, {0, 2, 0, 6}, {0, 2, 0, 0}},
     {{0, 8, 0, -7}, {0, 2, 0, 7}, {0, 2, 0, 1}},
     {{0, 20, 0, -16}, {0, 4, 0, 16}, {0, 3, 0, 0}},
     {{0, 20, 0, -14}, {0, 4, 0, 18}, {0, 3, 0, 1}},
     {{20, 0, -4, -6}, {0, 4, 10, 12}, {2, 1, 2, 0}},
     {{20, 0, -4, -2}, {0, 4, 10, 16}, {2, 1, 2, 1}}}};

const ModelTable kIsing = {
    {{{0, 5, 0, -5}, {0, 2, 0, 0}, {0, 2, 0, 0}},
     {{0, 5, 0, -4}, {0, 2, 0, 1}, {0, 2, 0, 1}},
     {{0, 12, 0, -10}, {0, 4, 0, 2}, {0, 3, 0, 0}},
     {{0, 12, 0, -8}, {0, 4, 0, 4}, {0, 3, 0, 1}},
     {{12, 0, -6, -4}, {0, 4, 6, -2}, {2, 1, 1, 0}},
     {{12, 0, -6, 0}, {0, 4, 6, 2}, {2, 1, 1, 1}}},
    {{{0, 5, 0, -1}, {0, 2, 0, 4}, {0, 2, 0, 0}},
     {{0, 5, 0, 0}, {0, 2, 0, 5}, {0, 2, 0, 1}},
     {{0, 14, 0, -2}, {0, 4, 0, 10}, {0, 3, 0, 0}},
     {{0, 14, 0, 0}, {0, 4, 0, 12}, {0, 3, 0, 1}},
     {{14, 0, 11, -6}, {0, 4, 10, 8}, {2, 1, 2, 0}},
     {{14, 0, 11, -2}, {0, 4, 10, 12}, {2, 1, 2, 1}}}};

int kind_index(CircuitKind k) { return static_cast<int>(k); }

}  // namespace

const FormulaSet& formula_set(ModelKind model, CircuitKind kind,
                              Connectivity conn) {
  const ModelTable* t = nullptr;
  switch (model) {
    case ModelKind::XYZ: t = &kXyz; break;
    case ModelKind::XXZ: t = &kXxz; break;
    case ModelKind::Ising: t = &kIsing; break;
    case ModelKind::Custom:
      throw std::invalid_argument("no closed-form table for custom models");
  }
  return conn == Connectivity::AllToAll ? t->all[kind_index(kind)]
                                        : t->grid[kind_index(kind)];
}

ResourceReport formula_eval(ModelKind model, CircuitKind kind,
                            Connectivity conn, int n, int d) {
  const FormulaSet& f = formula_set(model, kind, conn);
  ResourceReport r;
  r.cnot_count = f.cnot_count.eval(n, d);
  r.cnot_depth = f.cnot_depth.eval(n, d);
  r.qubit_count = f.qubit_count.eval(n, d);
  r.connectivity = conn;
  return r;
}

ModelSpec reference_model(ModelKind kind, int n) {
  ModelSpec spec;
  spec.kind = kind;
  spec.n = n;
  switch (kind) {
    case ModelKind::XYZ:
      spec.g = 0.83;
      spec.jx = 0.57;
      spec.jy = 0.41;
      spec.jz = 0.29;
      break;
    case ModelKind::XXZ:
      spec.j = 0.73;
      spec.jz = 0.37;
      break;
    case ModelKind::Ising:
      spec.g = 0.61;
      spec.j = 0.47;
      break;
    case ModelKind::Custom:
      throw std::invalid_argument("reference_model: named kinds only");
  }
  return spec;
}

namespace {

PolySpec reference_poly(int d) {
  PolySpec p;
  p.coeffs.resize(d + 1);
  for (int k = 0; k <= d; ++k)
    p.coeffs[k] = cplx{0.9 / (k + 1.0), 0.2 + 0.1 * k};
  return p;
}

std::pair<Circuit, Connectivity> build_for(ModelKind model, CircuitKind kind,
                                           Connectivity conn, int n, int d) {
  const ModelSpec spec = reference_model(model, n);
  switch (kind) {
    case CircuitKind::PR:
      if (conn == Connectivity::AllToAll)
        return {build_pr_model(spec, PrepSide::Right), conn};
      return {map_pr_grid(spec, PrepSide::Right, false).first, conn};
    case CircuitKind::ControlledPR: {
      if (conn == Connectivity::AllToAll) {
        const Circuit pr = build_pr_model(spec, PrepSide::Right);
        const OracleSplit split = split_activation(pr);
        Circuit c(pr.num_qubits() + 1);
        c.cnot(0, 1 + split.activation.gates().front().q0);
        for (Gate g : split.body.gates()) {
          g.q0 += 1;
          if (g.is_two_qubit()) g.q1 += 1;
          c.push(g);
        }
        return {c, conn};
      }
      return {map_pr_grid(spec, PrepSide::Right, true).first, conn};
    }
    case CircuitKind::Foqcs:
      if (conn == Connectivity::AllToAll)
        return {build_foqcs(spec, false).circuit, conn};
      return {map_foqcs_grid(spec, false).first, conn};
    case CircuitKind::ControlledFoqcs:
      if (conn == Connectivity::AllToAll)
        return {build_foqcs(spec, true).circuit, conn};
      return {map_foqcs_grid(spec, true).first, conn};
    case CircuitKind::Poly:
      if (conn == Connectivity::AllToAll)
        return {build_poly_be(spec, reference_poly(d), false, true), conn};
      return {map_poly_grid(spec, reference_poly(d), false).first, conn};
    case CircuitKind::ControlledPoly:
      if (conn == Connectivity::AllToAll)
        return {build_poly_be(spec, reference_poly(d), true, true), conn};
      return {map_poly_grid(spec, reference_poly(d), true).first, conn};
  }
  throw std::logic_error("unreachable");
}

}  // namespace

ComparisonRecord measure_vs_formula(ModelKind model, CircuitKind kind,
                                    Connectivity conn, int n, int d) {
  ComparisonRecord rec;
  rec.model = model;
  rec.kind = kind;
  rec.conn = conn;
  rec.n = n;
  rec.d = d;
  rec.formula = formula_eval(model, kind, conn, n, d);

  auto [circuit, cc] = build_for(model, kind, conn, n, d);
  rec.measured = cnot_metrics(circuit, cc);
  if (conn == Connectivity::SquareGrid) {
    // qubit accounting counts used cells, not the full rectangle
    std::vector<char> used(circuit.num_qubits(), 0);
    long long nused = 0;
    for (const auto& g : circuit.gates()) {
      if (g.kind == GateKind::Barrier) continue;
      if (!used[g.q0]) { used[g.q0] = 1; ++nused; }
      if (g.is_two_qubit() && !used[g.q1]) { used[g.q1] = 1; ++nused; }
    }
    rec.measured.qubit_count = nused;
  }

  rec.count_match = rec.measured.cnot_count == rec.formula.cnot_count;
  rec.depth_match = rec.measured.cnot_depth == rec.formula.cnot_depth;
  rec.qubits_match = rec.measured.qubit_count == rec.formula.qubit_count;
  return rec;
}

std::string emit_heatmap(ModelKind model, const std::vector<int>& n_values,
                         const std::vector<int>& d_values, Connectivity conn) {
  std::ostringstream os;
  os << "n\td\tdepth\n";
  for (const int n : n_values)
    for (const int d : d_values)
      os << n << '\t' << d << '\t'
         << formula_eval(model, CircuitKind::Poly, conn, n, d).cnot_depth
         << '\n';
  return os.str();
}

std::string circuit_kind_name(CircuitKind k) {
  switch (k) {
    case CircuitKind::PR: return "pr";
    case CircuitKind::ControlledPR: return "controlled-pr";
    case CircuitKind::Foqcs: return "foqcs";
    case CircuitKind::ControlledFoqcs: return "controlled-foqcs";
    case CircuitKind::Poly: return "poly";
    case CircuitKind::ControlledPoly: return "controlled-poly";
  }
  return "?";
}

std::string comparison_json(const std::vector<ComparisonRecord>& records) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : records) {
    nlohmann::json js;
    js["model"] = model_kind_name(r.model);
    js["kind"] = circuit_kind_name(r.kind);
    js["connectivity"] = r.conn == Connectivity::AllToAll ? "all" : "grid";
    js["n"] = r.n;
    js["d"] = r.d;
    js["formula"] = {{"cnot_count", r.formula.cnot_count},
                     {"cnot_depth", r.formula.cnot_depth},
                     {"qubits", r.formula.qubit_count}};
    js["measured"] = {{"cnot_count", r.measured.cnot_count},
                      {"cnot_depth", r.measured.cnot_depth},
                      {"qubits", r.measured.qubit_count}};
    js["match"] = r.match();
    arr.push_back(js);
  }
  return arr.dump(2);
}

}  // namespace foqcs
