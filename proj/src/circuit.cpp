#include "foqcs/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "foqcs/kak.hpp"

namespace foqcs {

void Circuit::add_register(const std::string& name, int first, int size) {
  if (first < 0 || size < 0 || first + size > num_qubits_)
    throw std::out_of_range("register out of range: " + name);
  for (const auto& r : registers_)
    if (r.name == name) throw std::invalid_argument("duplicate register: " + name);
  registers_.push_back({name, first, size});
}

const Register* Circuit::find_register(const std::string& name) const {
  for (const auto& r : registers_)
    if (r.name == name) return &r;
  return nullptr;
}

void Circuit::push(const Gate& g) {
  if (g.kind != GateKind::Barrier) {
    if (g.q0 < 0 || g.q0 >= num_qubits_)
      throw std::out_of_range("gate qubit out of range");
    if (g.is_two_qubit()) {
      if (g.q1 < 0 || g.q1 >= num_qubits_)
        throw std::out_of_range("gate qubit out of range");
      if (g.q1 == g.q0) throw std::invalid_argument("two-qubit gate needs distinct qubits");
    }
    if (!std::isfinite(g.param)) throw std::invalid_argument("non-finite gate parameter");
  }
  gates_.push_back(g);
}

void Circuit::append(const Circuit& other) {
  if (other.num_qubits_ > num_qubits_)
    throw std::out_of_range("append: circuit too wide");
  for (const auto& g : other.gates_) gates_.push_back(g);
}

Circuit Circuit::adjoint() const {
  Circuit out(num_qubits_);
  for (const auto& r : registers_) out.add_register(r.name, r.first, r.size);
  for (auto it = gates_.rbegin(); it != gates_.rend(); ++it) {
    Gate g = *it;
    if (g.kind == GateKind::Ry || g.kind == GateKind::Phase ||
        g.kind == GateKind::CRy)
      g.param = -g.param;
    out.gates_.push_back(g);
  }
  return out;
}

namespace {

bool touches(const Gate& g, int a, int b) {
  if (g.kind == GateKind::Barrier) return true;
  if (g.q0 == a || g.q0 == b) return true;
  return g.is_two_qubit() && (g.q1 == a || g.q1 == b);
}

bool same_pair(const Gate& g, int a, int b) {
  return g.is_two_qubit() &&
         ((g.q0 == a && g.q1 == b) || (g.q0 == b && g.q1 == a));
}

void expand(const Gate& g, Circuit& out) {
  switch (g.kind) {
    case GateKind::CZ:
      out.h(g.q1);
      out.cnot(g.q0, g.q1);
      out.h(g.q1);
      break;
    case GateKind::CRy:
      out.ry(g.q1, g.param / 2);
      out.cnot(g.q0, g.q1);
      out.ry(g.q1, -g.param / 2);
      out.cnot(g.q0, g.q1);
      break;
    case GateKind::Swap:
      out.cnot(g.q0, g.q1);
      out.cnot(g.q1, g.q0);
      out.cnot(g.q0, g.q1);
      break;
    default:
      out.push(g);
      break;
  }
}

}  // namespace

Circuit lower(const Circuit& circuit) {
  const auto& gs = circuit.gates();
  Circuit out(circuit.num_qubits());
  for (const auto& r : circuit.registers())
    out.add_register(r.name, r.first, r.size);

  std::vector<char> consumed(gs.size(), 0);
  for (std::size_t i = 0; i < gs.size(); ++i) {
    if (consumed[i]) continue;
    const Gate& gi = gs[i];
    if (gi.is_two_qubit()) {
      // locate the next gate acting on this pair with nothing in between
      std::size_t j = i + 1;
      while (j < gs.size() && (consumed[j] || !touches(gs[j], gi.q0, gi.q1))) ++j;
      if (j < gs.size() && !consumed[j] && same_pair(gs[j], gi.q0, gi.q1)) {
        const Gate& gj = gs[j];
        if (gi.kind == GateKind::Swap && gj.kind == GateKind::CNOT) {
          // [SWAP; CX(c->t)] == [CX(c->t); CX(t->c)]
          out.cnot(gj.q0, gj.q1);
          out.cnot(gj.q1, gj.q0);
          consumed[j] = 1;
          continue;
        }
        if (gi.kind == GateKind::CZ && gj.kind == GateKind::Swap) {
          // [CZ; SWAP] == [H(b); CX(b->a); CX(a->b); H(a)]
          out.h(gi.q1);
          out.cnot(gi.q1, gi.q0);
          out.cnot(gi.q0, gi.q1);
          out.h(gi.q0);
          consumed[j] = 1;
          continue;
        }
        if (gi.kind == GateKind::CRy && gj.kind == GateKind::CNOT &&
            gj.q0 == gi.q1 && gj.q1 == gi.q0) {
          if (std::abs(std::sin(gi.param / 2)) < 1e-14) {
            // CRy is identity (mod global sign); only the CNOT remains
            out.cnot(gj.q0, gj.q1);
          } else {
            for (const auto& g : resynth_two_cnot(split_block_matrix(gi.param),
                                                  gi.q0, gi.q1))
              out.push(g);
          }
          consumed[j] = 1;
          continue;
        }
        if (gi.kind == GateKind::CNOT && gj.kind == GateKind::CRy &&
            gi.q0 == gj.q1 && gi.q1 == gj.q0) {
          if (std::abs(std::sin(gj.param / 2)) < 1e-14) {
            out.cnot(gi.q0, gi.q1);
          } else {
            for (const auto& g : resynth_two_cnot(
                     split_block_matrix_rev(gj.param), gj.q0, gj.q1))
              out.push(g);
          }
          consumed[j] = 1;
          continue;
        }
      }
    }
    expand(gi, out);
  }
  return out;
}

ResourceReport cnot_metrics(const Circuit& circuit, Connectivity conn) {
  bool needs_lowering = false;
  for (const auto& g : circuit.gates())
    if (g.kind == GateKind::CZ || g.kind == GateKind::CRy ||
        g.kind == GateKind::Swap) {
      needs_lowering = true;
      break;
    }
  const Circuit low = needs_lowering ? lower(circuit) : circuit;

  ResourceReport rep;
  rep.qubit_count = low.num_qubits();
  rep.connectivity = conn;
  std::vector<long long> frontier(low.num_qubits(), 0);
  long long depth = 0;
  for (const auto& g : low.gates()) {
    if (g.kind == GateKind::CNOT) {
      const long long layer = std::max(frontier[g.q0], frontier[g.q1]) + 1;
      frontier[g.q0] = layer;
      frontier[g.q1] = layer;
      depth = std::max(depth, layer);
      ++rep.cnot_count;
    } else if (g.kind == GateKind::Barrier) {
      long long m = 0;
      for (const auto f : frontier) m = std::max(m, f);
      std::fill(frontier.begin(), frontier.end(), m);
    }
    // single-qubit gates are depth-free
  }
  rep.cnot_depth = depth;
  return rep;
}

Circuit compose(const Circuit& a, const Circuit& b,
                const std::vector<int>& qubit_map) {
  if (static_cast<int>(qubit_map.size()) != b.num_qubits())
    throw std::invalid_argument("compose: qubit_map size mismatch");
  for (const int q : qubit_map)
    if (q < 0 || q >= a.num_qubits())
      throw std::out_of_range("compose: mapped qubit out of range");

  Circuit out(a.num_qubits());
  for (const auto& r : a.registers()) out.add_register(r.name, r.first, r.size);
  for (const auto& g : a.gates()) out.push(g);

  for (const auto& r : b.registers()) {
    // carried over only when the image stays a contiguous ascending range
    bool contiguous = true;
    for (int k = 1; k < r.size; ++k)
      if (qubit_map[r.first + k] != qubit_map[r.first] + k) contiguous = false;
    if (!contiguous) continue;
    const int first = r.size == 0 ? 0 : qubit_map[r.first];
    const Register* existing = out.find_register(r.name);
    if (existing) {
      if (existing->first != first || existing->size != r.size)
        throw std::invalid_argument("compose: register collision: " + r.name);
      continue;
    }
    out.add_register(r.name, first, r.size);
  }

  for (Gate g : b.gates()) {
    if (g.kind != GateKind::Barrier) {
      g.q0 = qubit_map[g.q0];
      if (g.is_two_qubit()) g.q1 = qubit_map[g.q1];
    }
    out.push(g);
  }
  return out;
}

std::string gate_kind_name(GateKind k) {
  switch (k) {
    case GateKind::X: return "x";
    case GateKind::H: return "h";
    case GateKind::Ry: return "ry";
    case GateKind::Phase: return "p";
    case GateKind::CNOT: return "cx";
    case GateKind::CZ: return "cz";
    case GateKind::CRy: return "cry";
    case GateKind::Swap: return "swap";
    case GateKind::Barrier: return "barrier";
    case GateKind::PostSelectZero: return "postselect0";
  }
  return "?";
}

}  // namespace foqcs
