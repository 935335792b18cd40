// Command-line front end: builds block-encoding circuits for spin chains,
// lowers and maps them, verifies against dense linear algebra, and emits
// circuits, resource reports and plot data.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "foqcs/builders.hpp"
#include "foqcs/layout2d.hpp"
#include "foqcs/poly.hpp"
#include "foqcs/qasm.hpp"
#include "foqcs/resources.hpp"
#include "foqcs/simulator.hpp"
#include "json.hpp"

using namespace foqcs;

namespace {

constexpr int kUsageError = 2;
constexpr int kVerifyError = 1;

struct Options {
  std::string model_file;
  std::string kind = "foqcs";
  std::string connectivity = "all";
  bool control = false;
  std::string coeffs_file;
  std::string taylor;  // "t,d"
  std::string state;
  std::string basis = "X";
  std::optional<long long> shots;
  std::optional<unsigned long long> seed;
  std::string n_range;
  int d = 1;
  std::string format = "tsv";
  std::string out_path;
};

std::string slurp(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw CLI::ValidationError("--model-file", "cannot open " + path);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

ModelSpec load_model(const Options& opt) {
  if (opt.model_file.empty())
    throw CLI::ValidationError("--model-file", "a model file is required");
  return model_from_json(slurp(opt.model_file));
}

PolySpec load_poly(const Options& opt) {
  if (!opt.coeffs_file.empty() && !opt.taylor.empty())
    throw CLI::ValidationError("--coeffs-file/--taylor",
                               "polynomial sources are mutually exclusive");
  if (!opt.taylor.empty()) {
    const auto comma = opt.taylor.find(',');
    if (comma == std::string::npos)
      throw CLI::ValidationError("--taylor", "expected t,d");
    const double t = std::stod(opt.taylor.substr(0, comma));
    const int d = std::stoi(opt.taylor.substr(comma + 1));
    return taylor_coeffs(t, d);
  }
  if (!opt.coeffs_file.empty()) {
    const auto js = nlohmann::json::parse(slurp(opt.coeffs_file));
    PolySpec p;
    for (const auto& c : js.at("coeffs"))
      p.coeffs.emplace_back(c.at(0).get<double>(), c.at(1).get<double>());
    if (p.coeffs.size() < 2)
      throw CLI::ValidationError("--coeffs-file", "need degree >= 1");
    return p;
  }
  throw CLI::ValidationError("--coeffs-file/--taylor",
                             "a polynomial source is required");
}

StateVector load_state(const Options& opt, int n) {
  if (opt.state.empty() || opt.state == "zero") return StateVector::zero(n);
  if (opt.state.front() == '[' || opt.state.front() == '{') {
    const auto js = nlohmann::json::parse(opt.state);
    StateVector sv = StateVector::zero(n);
    if (js.size() != sv.amp.size())
      throw CLI::ValidationError("--state", "amplitude list has wrong length");
    for (std::size_t k = 0; k < sv.amp.size(); ++k)
      sv.amp[k] = {js[k].at(0).get<double>(), js[k].at(1).get<double>()};
    sv.normalize();
    return sv;
  }
  if (static_cast<int>(opt.state.size()) != n)
    throw CLI::ValidationError("--state", "basis string has wrong length");
  return StateVector::from_bitstring(opt.state);
}

std::pair<int, int> parse_range(const std::string& text, int def_lo, int def_hi) {
  if (text.empty()) return {def_lo, def_hi};
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    const int v = std::stoi(text);
    return {v, v};
  }
  return {std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
}

CircuitKind kind_of(const std::string& name, bool control) {
  if (name == "pr") return control ? CircuitKind::ControlledPR : CircuitKind::PR;
  if (name == "foqcs")
    return control ? CircuitKind::ControlledFoqcs : CircuitKind::Foqcs;
  if (name == "poly")
    return control ? CircuitKind::ControlledPoly : CircuitKind::Poly;
  throw CLI::ValidationError("--kind", "unknown kind " + name);
}

Circuit build_circuit(const Options& opt, const ModelSpec& spec) {
  const bool grid = opt.connectivity == "grid";
  if (opt.kind == "pr") {
    if (grid) return map_pr_grid(spec, PrepSide::Right, opt.control).first;
    if (!opt.control) return build_pr_model(spec, PrepSide::Right);
    const Circuit pr = build_pr_model(spec, PrepSide::Right);
    const OracleSplit split = split_activation(pr);
    Circuit c(pr.num_qubits() + 1);
    c.add_register("control", 0, 1);
    c.cnot(0, 1 + split.activation.gates().front().q0);
    for (Gate g : split.body.gates()) {
      g.q0 += 1;
      if (g.is_two_qubit()) g.q1 += 1;
      c.push(g);
    }
    return c;
  }
  if (opt.kind == "foqcs") {
    if (grid) return map_foqcs_grid(spec, opt.control).first;
    return build_foqcs(spec, opt.control).circuit;
  }
  if (opt.kind == "poly") {
    const PolySpec poly = load_poly(opt);
    if (grid) return map_poly_grid(spec, poly, opt.control).first;
    return build_poly_be(spec, poly, opt.control,
                         spec.kind != ModelKind::Custom);
  }
  throw CLI::ValidationError("--kind", "unknown kind " + opt.kind);
}

void write_out(const Options& opt, const std::string& text) {
  if (opt.out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream os(opt.out_path);
  os << text;
}

int cmd_build(const Options& opt) {
  const ModelSpec spec = load_model(opt);
  const Circuit c = lower(build_circuit(opt, spec));
  write_out(opt, emit_qasm(c));
  return 0;
}

int cmd_export(const Options& opt) { return cmd_build(opt); }

int cmd_resources(const Options& opt) {
  const ModelSpec spec = load_model(opt);
  const auto [n_lo, n_hi] = parse_range(opt.n_range, spec.n, spec.n);
  const Connectivity conn =
      opt.connectivity == "grid" ? Connectivity::SquareGrid : Connectivity::AllToAll;
  std::vector<ComparisonRecord> records;
  for (int n = n_lo; n <= n_hi; ++n)
    records.push_back(
        measure_vs_formula(spec.kind, kind_of(opt.kind, opt.control), conn, n, opt.d));
  if (opt.format == "json") {
    write_out(opt, comparison_json(records) + "\n");
  } else {
    std::ostringstream os;
    os << "n\td\tcnot_count\tcnot_depth\tqubits\tformula_count\tformula_depth"
          "\tformula_qubits\tmatch\n";
    for (const auto& r : records)
      os << r.n << '\t' << r.d << '\t' << r.measured.cnot_count << '\t'
         << r.measured.cnot_depth << '\t' << r.measured.qubit_count << '\t'
         << r.formula.cnot_count << '\t' << r.formula.cnot_depth << '\t'
         << r.formula.qubit_count << '\t' << (r.match() ? "yes" : "no") << '\n';
    write_out(opt, os.str());
  }
  return 0;
}

int cmd_verify(const Options& opt) {
  const ModelSpec spec = load_model(opt);
  // desk-scale by default; --n extends up to the dense-simulation limit
  const auto [n_lo, n_hi] = parse_range(opt.n_range, 2, std::min(4, spec.n));
  if (n_hi > 6) throw CLI::ValidationError("--n", "verify supports n <= 6");
  std::ostringstream report;
  bool ok = true;
  for (int n = n_lo; n <= n_hi; ++n) {
    ModelSpec s = spec;
    s.n = n;
    const CoefficientTable table = build_table(s);
    const CMatrix want = dense_matrix(table) * cplx{1.0 / table.lambda, 0.0};
    const FoqcsCircuit enc = build_foqcs(s, false);
    const double err =
        extract_block(enc.circuit, block_spec_from_markers(enc.circuit))
            .max_diff(want);
    report << "block identity n=" << n << ": max error " << err
           << (err < 1e-9 ? " ok" : " FAIL") << '\n';
    ok = ok && err < 1e-9;

    const Circuit low = lower(enc.circuit);
    const double err_low =
        extract_block(low, block_spec_from_markers(low)).max_diff_up_to_phase(want);
    report << "lowered block identity n=" << n << ": max error " << err_low
           << (err_low < 1e-9 ? " ok" : " FAIL") << '\n';
    ok = ok && err_low < 1e-9;

    if (opt.d >= 1 && opt.d <= 3 && n <= 3) {
      const PolySpec poly = taylor_coeffs(0.3, opt.d);
      const Circuit be = build_poly_be(s, poly, false, s.kind != ModelKind::Custom);
      if (be.num_qubits() <= 18) {
        const PolyParams pp = poly_params(poly, table.lambda);
        CMatrix acc(want.rows(), want.cols());
        CMatrix pw = CMatrix::identity(want.rows());
        const CMatrix h = dense_matrix(table);
        for (int k = 0; k <= poly.degree(); ++k) {
          acc = acc + pw * poly.coeffs[k];
          pw = pw * h;
        }
        const double perr =
            extract_block(be, block_spec_from_markers(be))
                .max_diff(acc * cplx{1.0 / pp.big_w, 0.0});
        report << "polynomial identity n=" << n << " d=" << opt.d
               << ": max error " << perr << (perr < 1e-8 ? " ok" : " FAIL")
               << '\n';
        ok = ok && perr < 1e-8;
      }
    }
  }
  write_out(opt, report.str());
  return ok ? 0 : kVerifyError;
}

int cmd_layout(const Options& opt) {
  const ModelSpec spec = load_model(opt);
  std::pair<Circuit, GridLayout> mapped =
      opt.kind == "poly" ? map_poly_grid(spec, load_poly(opt), opt.control)
      : opt.kind == "pr" ? map_pr_grid(spec, PrepSide::Right, opt.control)
                         : map_foqcs_grid(spec, opt.control);
  const auto violations = validate_connectivity(mapped.first, mapped.second);
  write_out(opt, layout_report_json(lower(mapped.first), mapped.second) + "\n");
  for (const auto& v : violations) std::cerr << "connectivity: " << v << '\n';
  return violations.empty() ? 0 : kVerifyError;
}

int cmd_hadamard(const Options& opt) {
  const ModelSpec spec = load_model(opt);
  const StateVector phi = load_state(opt, spec.n);
  if (opt.basis != "X" && opt.basis != "Y")
    throw CLI::ValidationError("--basis", "basis must be X or Y");
  if (opt.shots && !opt.seed)
    throw CLI::ValidationError("--seed", "--shots requires --seed");
  const double v = hadamard_test(
      spec, phi, opt.basis == "X" ? MeasureBasis::X : MeasureBasis::Y,
      opt.shots, opt.seed.value_or(0));
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g\n", v);
  write_out(opt, buf);
  return 0;
}

int cmd_loschmidt(const Options& opt) {
  const ModelSpec spec = load_model(opt);
  if (opt.taylor.empty())
    throw CLI::ValidationError("--taylor", "loschmidt needs --taylor t,d");
  const auto comma = opt.taylor.find(',');
  const double t = std::stod(opt.taylor.substr(0, comma));
  const int d = std::stoi(opt.taylor.substr(comma + 1));
  const StateVector phi = load_state(opt, spec.n);
  const cplx g = loschmidt_echo(spec, t, d, phi);

  const CMatrix h = dense_matrix(build_table(spec));
  const double bound =
      std::pow(h.norm_2() * t, d + 1) / std::tgamma(static_cast<double>(d) + 2.0);
  char buf[160];
  std::snprintf(buf, sizeof(buf), "echo\t%.12g%+.12gi\ntaylor_bound\t%.12g\n",
                g.real(), g.imag(), bound);
  write_out(opt, buf);
  return 0;
}

int cmd_heatmap(const Options& opt) {
  const ModelSpec spec = load_model(opt);
  std::vector<int> ns, ds;
  const auto [n_lo, n_hi] = parse_range(opt.n_range, 2, 20);
  for (int n = n_lo; n <= n_hi; n += 2) ns.push_back(n);
  for (int d = 1; d <= std::max(1, opt.d); ++d) ds.push_back(d);
  const Connectivity conn =
      opt.connectivity == "grid" ? Connectivity::SquareGrid : Connectivity::AllToAll;
  write_out(opt, emit_heatmap(spec.kind, ns, ds, conn));
  return 0;
}

void add_common(CLI::App* cmd, Options& opt) {
  cmd->add_option("--model-file", opt.model_file, "model spec JSON");
  cmd->add_option("--kind", opt.kind, "pr | foqcs | poly");
  cmd->add_option("--connectivity", opt.connectivity, "all | grid")
      ->check(CLI::IsMember({"all", "grid"}));
  cmd->add_flag("--control", opt.control, "controlled variant");
  cmd->add_option("--coeffs-file", opt.coeffs_file, "polynomial coefficient JSON");
  cmd->add_option("--taylor", opt.taylor, "taylor polynomial 't,d'");
  cmd->add_option("--state", opt.state, "basis string or JSON amplitude list");
  cmd->add_option("--basis", opt.basis, "X | Y");
  cmd->add_option("--shots", opt.shots, "Monte-Carlo shots");
  cmd->add_option("--seed", opt.seed, "sampling seed");
  cmd->add_option("--n", opt.n_range, "site count or range lo..hi");
  cmd->add_option("--d", opt.d, "polynomial degree");
  cmd->add_option("--format", opt.format, "tsv | json")
      ->check(CLI::IsMember({"tsv", "json"}));
  cmd->add_option("--out", opt.out_path, "output path (stdout otherwise)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"FOQCS-LCU block-encoding circuit toolkit"};
  app.require_subcommand(1);

  Options opt;
  struct Sub {
    const char* name;
    const char* help;
    int (*run)(const Options&);
  };
  const std::vector<Sub> subs{
      {"build", "emit the lowered circuit as OpenQASM-style text", cmd_build},
      {"export", "alias of build", cmd_export},
      {"resources", "formula vs measured resource report", cmd_resources},
      {"verify", "block-identity suite at desk scale", cmd_verify},
      {"layout", "grid schedule and connectivity validation", cmd_layout},
      {"hadamard", "exact or sampled expectation via the Hadamard test", cmd_hadamard},
      {"loschmidt", "polynomial echo and its Taylor bound", cmd_loschmidt},
      {"heatmap", "grid polynomial depth TSV", cmd_heatmap},
  };
  std::vector<std::pair<CLI::App*, int (*)(const Options&)>> wired;
  for (const auto& s : subs) {
    CLI::App* cmd = app.add_subcommand(s.name, s.help);
    add_common(cmd, opt);
    wired.emplace_back(cmd, s.run);
  }

  try {
    app.parse(argc, argv);
    for (const auto& [cmd, run] : wired)
      if (cmd->parsed()) return run(opt);
    return kUsageError;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  }
}
