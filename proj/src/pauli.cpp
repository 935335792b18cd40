#include "foqcs/pauli.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "json.hpp"

namespace foqcs {

namespace {

constexpr double kDropTol = 1e-15;

void table_insert(CoefficientTable& t, std::uint32_t i, std::uint32_t j,
                  cplx coeff) {
  auto key = std::make_pair(i, j);
  auto it = t.entries.find(key);
  if (it == t.entries.end()) {
    t.entries.emplace(key, coeff);
  } else {
    it->second += coeff;
    if (std::abs(it->second) < kDropTol) t.entries.erase(it);
  }
}

void finalize(CoefficientTable& t) {
  for (auto it = t.entries.begin(); it != t.entries.end();) {
    if (std::abs(it->second) < kDropTol)
      it = t.entries.erase(it);
    else
      ++it;
  }
  t.lambda = 0.0;
  for (const auto& [key, a] : t.entries) t.lambda += std::abs(a);
}

std::string pauli_label(char p, int site, int n) {
  std::string s(n, 'I');
  s[site] = p;
  return s;
}

std::string pauli_pair(char p, int site, int n) {
  std::string s(n, 'I');
  s[site] = p;
  s[site + 1] = p;
  return s;
}

}  // namespace

std::pair<PauliString, cplx> pauli_to_check_form(const std::string& label,
                                                 cplx coeff) {
  if (label.empty()) throw std::invalid_argument("empty Pauli label");
  PauliString p;
  p.n = static_cast<int>(label.size());
  if (p.n > 26) throw std::invalid_argument("Pauli label too long");
  cplx adjusted = coeff;
  for (int l = 0; l < p.n; ++l) {
    const std::uint32_t bit = 1u << (p.n - 1 - l);
    switch (label[l]) {
      case 'I':
        break;
      case 'X':
        p.x_bits |= bit;
        break;
      case 'Z':
        p.z_bits |= bit;
        break;
      case 'Y':
        p.x_bits |= bit;
        p.z_bits |= bit;
        adjusted *= cplx{0.0, -1.0};  // Y = -i * Z X
        break;
      default:
        throw std::invalid_argument(std::string("invalid Pauli character '") +
                                    label[l] + "'");
    }
  }
  return {p, adjusted};
}

CoefficientTable build_table(const ModelSpec& spec) {
  CoefficientTable t;
  t.n = spec.n;
  if (spec.n < 1) throw std::invalid_argument("n must be >= 1");

  auto add_label = [&](const std::string& label, cplx c) {
    if (std::abs(c) < kDropTol) return;
    auto [p, a] = pauli_to_check_form(label, c);
    table_insert(t, p.x_bits, p.z_bits, a);
  };

  switch (spec.kind) {
    case ModelKind::XYZ: {
      if (spec.n < 2) throw std::invalid_argument("XYZ needs n >= 2");
      for (int k = 0; k < spec.n; ++k) add_label(pauli_label('Z', k, spec.n), spec.g);
      for (int k = 0; k + 1 < spec.n; ++k) {
        add_label(pauli_pair('X', k, spec.n), spec.jx);
        add_label(pauli_pair('Y', k, spec.n), spec.jy);
        add_label(pauli_pair('Z', k, spec.n), spec.jz);
      }
      break;
    }
    case ModelKind::XXZ: {
      if (spec.n < 2) throw std::invalid_argument("XXZ needs n >= 2");
      for (int k = 0; k + 1 < spec.n; ++k) {
        add_label(pauli_pair('X', k, spec.n), spec.j);
        add_label(pauli_pair('Y', k, spec.n), spec.j);
        add_label(pauli_pair('Z', k, spec.n), spec.jz);
      }
      break;
    }
    case ModelKind::Ising: {
      if (spec.n < 2) throw std::invalid_argument("Ising needs n >= 2");
      for (int k = 0; k < spec.n; ++k) add_label(pauli_label('Z', k, spec.n), spec.g);
      for (int k = 0; k + 1 < spec.n; ++k)
        add_label(pauli_pair('X', k, spec.n), spec.j);
      break;
    }
    case ModelKind::Custom: {
      for (const auto& [label, c] : spec.custom_terms) {
        if (static_cast<int>(label.size()) != spec.n)
          throw std::invalid_argument("custom term length != n");
        add_label(label, c);
      }
      break;
    }
  }
  finalize(t);
  return t;
}

CMatrix dense_term(const PauliString& p, cplx coeff) {
  const std::size_t dim = std::size_t{1} << p.n;
  CMatrix m(dim, dim);
  for (std::size_t x = 0; x < dim; ++x) {
    const std::size_t y = x ^ p.x_bits;  // X^i |x> = |x ^ i>
    const int par = std::popcount(static_cast<std::uint32_t>(y) & p.z_bits);
    m(y, x) += coeff * ((par & 1) ? -1.0 : 1.0);
  }
  return m;
}

CMatrix dense_matrix(const CoefficientTable& table) {
  if (table.n > 12) throw std::invalid_argument("dense_matrix: n too large");
  const std::size_t dim = std::size_t{1} << table.n;
  CMatrix m(dim, dim);
  for (const auto& [key, a] : table.entries) {
    const auto [i, j] = key;
    for (std::size_t x = 0; x < dim; ++x) {
      const std::size_t y = x ^ i;
      const int par = std::popcount(static_cast<std::uint32_t>(y) & j);
      m(y, x) += a * ((par & 1) ? -1.0 : 1.0);
    }
  }
  return m;
}

ModelSpec model_from_json(const std::string& text) {
  const auto js = nlohmann::json::parse(text);
  if (!js.is_object()) throw std::invalid_argument("model JSON must be an object");
  static const std::vector<std::string> known = {"model", "n",  "g",    "jx",
                                                 "jy",    "jz", "j",    "terms"};
  for (const auto& [key, value] : js.items()) {
    (void)value;
    bool ok = false;
    for (const auto& k : known) ok = ok || k == key;
    if (!ok) throw std::invalid_argument("unknown model field: " + key);
  }
  ModelSpec spec;
  const std::string kind = js.at("model").get<std::string>();
  if (kind == "xyz")
    spec.kind = ModelKind::XYZ;
  else if (kind == "xxz")
    spec.kind = ModelKind::XXZ;
  else if (kind == "ising")
    spec.kind = ModelKind::Ising;
  else if (kind == "custom")
    spec.kind = ModelKind::Custom;
  else
    throw std::invalid_argument("unknown model kind: " + kind);
  spec.n = js.at("n").get<int>();
  if (js.contains("g")) spec.g = js["g"].get<double>();
  if (js.contains("jx")) spec.jx = js["jx"].get<double>();
  if (js.contains("jy")) spec.jy = js["jy"].get<double>();
  if (js.contains("jz")) spec.jz = js["jz"].get<double>();
  if (js.contains("j")) spec.j = js["j"].get<double>();
  if (js.contains("terms")) {
    for (const auto& term : js["terms"]) {
      const std::string label = term.at("pauli").get<std::string>();
      const auto& c = term.at("coeff");
      spec.custom_terms.emplace_back(
          label, cplx{c.at(0).get<double>(), c.at(1).get<double>()});
    }
  }
  return spec;
}

std::string model_kind_name(ModelKind k) {
  switch (k) {
    case ModelKind::XYZ: return "xyz";
    case ModelKind::XXZ: return "xxz";
    case ModelKind::Ising: return "ising";
    case ModelKind::Custom: return "custom";
  }
  return "?";
}

}  // namespace foqcs
