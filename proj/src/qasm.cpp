#include "foqcs/qasm.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <tuple>
#include <stdexcept>

namespace foqcs {

namespace {

std::string fmt_angle(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace

std::string emit_qasm(const Circuit& circuit) {
  std::ostringstream os;
  os << "// registers:";
  for (const auto& r : circuit.registers())
    os << ' ' << r.name << "=[" << r.first << ',' << r.first + r.size << ')';
  os << '\n';
  os << "OPENQASM 3.0;\n";
  os << "qubit[" << circuit.num_qubits() << "] q;\n";
  for (const auto& g : circuit.gates()) {
    switch (g.kind) {
      case GateKind::X:
        os << "x q[" << g.q0 << "];\n";
        break;
      case GateKind::H:
        os << "h q[" << g.q0 << "];\n";
        break;
      case GateKind::Ry:
        os << "ry(" << fmt_angle(g.param) << ") q[" << g.q0 << "];\n";
        break;
      case GateKind::Phase:
        os << "p(" << fmt_angle(g.param) << ") q[" << g.q0 << "];\n";
        break;
      case GateKind::CNOT:
        os << "cx q[" << g.q0 << "], q[" << g.q1 << "];\n";
        break;
      case GateKind::CZ:
        os << "cz q[" << g.q0 << "], q[" << g.q1 << "];\n";
        break;
      case GateKind::CRy:
        os << "cry(" << fmt_angle(g.param) << ") q[" << g.q0 << "], q["
           << g.q1 << "];\n";
        break;
      case GateKind::Swap:
        os << "swap q[" << g.q0 << "], q[" << g.q1 << "];\n";
        break;
      case GateKind::Barrier:
        os << "barrier;\n";
        break;
      case GateKind::PostSelectZero:
        os << "// postselect0 q[" << g.q0 << "]\n";
        break;
    }
  }
  return os.str();
}

namespace {

struct Cursor {
  const std::string& s;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
  }
  bool eat(const std::string& tok) {
    skip_ws();
    if (s.compare(pos, tok.size(), tok) == 0) {
      pos += tok.size();
      return true;
    }
    return false;
  }
  int qubit() {
    skip_ws();
    if (!eat("q[")) throw std::invalid_argument("qasm: expected q[...]");
    std::size_t end = s.find(']', pos);
    const int q = std::stoi(s.substr(pos, end - pos));
    pos = end + 1;
    return q;
  }
  double angle() {
    skip_ws();
    if (!eat("(")) throw std::invalid_argument("qasm: expected (angle)");
    std::size_t end = s.find(')', pos);
    const double v = std::stod(s.substr(pos, end - pos));
    pos = end + 1;
    return v;
  }
};

}  // namespace

Circuit parse_qasm(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  Circuit circuit;
  std::vector<std::tuple<std::string, int, int>> regs;
  bool have_qubits = false;

  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line.rfind("// registers:", 0) == 0) {
      std::istringstream rs(line.substr(13));
      std::string item;
      while (rs >> item) {
        const auto eq = item.find("=[");
        const auto comma = item.find(',', eq);
        const auto close = item.find(')', comma);
        const std::string name = item.substr(0, eq);
        const int first = std::stoi(item.substr(eq + 2, comma - eq - 2));
        const int last = std::stoi(item.substr(comma + 1, close - comma - 1));
        regs.emplace_back(name, first, last - first);
      }
      continue;
    }
    if (line.rfind("// postselect0 q[", 0) == 0) {
      const int q = std::stoi(line.substr(17));
      circuit.post_select_zero(q);
      continue;
    }
    if (line.rfind("//", 0) == 0 || line.rfind("OPENQASM", 0) == 0) continue;
    if (line.rfind("qubit[", 0) == 0) {
      const int n = std::stoi(line.substr(6));
      circuit = Circuit(n);
      for (const auto& [name, first, size] : regs)
        circuit.add_register(name, first, size);
      have_qubits = true;
      continue;
    }
    if (!have_qubits) throw std::invalid_argument("qasm: gate before qubit decl");
    Cursor c{line, 0};
    if (c.eat("barrier")) {
      circuit.barrier();
    } else if (c.eat("cx")) {
      const int a = c.qubit();
      c.eat(",");
      circuit.cnot(a, c.qubit());
    } else if (c.eat("cz")) {
      const int a = c.qubit();
      c.eat(",");
      circuit.cz(a, c.qubit());
    } else if (c.eat("cry")) {
      const double t = c.angle();
      const int a = c.qubit();
      c.eat(",");
      circuit.cry(a, c.qubit(), t);
    } else if (c.eat("swap")) {
      const int a = c.qubit();
      c.eat(",");
      circuit.swap(a, c.qubit());
    } else if (c.eat("ry")) {
      const double t = c.angle();
      circuit.ry(c.qubit(), t);
    } else if (c.eat("p")) {
      const double t = c.angle();
      circuit.phase(c.qubit(), t);
    } else if (c.eat("x")) {
      circuit.x(c.qubit());
    } else if (c.eat("h")) {
      circuit.h(c.qubit());
    } else {
      throw std::invalid_argument("qasm: cannot parse line: " + line);
    }
  }
  return circuit;
}

}  // namespace foqcs
