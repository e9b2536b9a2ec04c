#include "qpt/qarith.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <stdexcept>

namespace qpt {
namespace {

void ensure_no_overlap(const RegisterSpan& a, const RegisterSpan& b) {
  const bool disjoint = a.first + a.count <= b.first || b.first + b.count <= a.first;
  if (!disjoint) {
    throw std::invalid_argument("registers " + a.name + " and " + b.name + " overlap");
  }
}

bool qubit_in(int qubit, const RegisterSpan& reg) {
  return qubit >= reg.first && qubit < reg.first + reg.count;
}

// MCX with `extra` prepended to the control list.
Gate controlled(std::vector<int> controls, int target, int extra) {
  controls.insert(controls.begin(), extra);
  return Gate::mcx(std::move(controls), target);
}

}  // namespace

void GateSequence::append(Gate gate) {
  gate.validate(layout.total_qubits());
  gates.push_back(std::move(gate));
}

void GateSequence::append(const GateSequence& other) {
  if (other.layout.total_qubits() != layout.total_qubits()) {
    throw std::invalid_argument("cannot append a sequence over a different layout");
  }
  gates.insert(gates.end(), other.gates.begin(), other.gates.end());
}

GateSequence GateSequence::inverted() const {
  GateSequence inv{layout, {gates.rbegin(), gates.rend()}};
  return inv;
}

QubitLayout allocate_layout(const ProblemSpec& spec) {
  spec.validate();
  std::vector<RegisterSpan> regs;
  int next = 0;
  regs.push_back({"I", next, spec.n_inputs});
  next += spec.n_inputs;
  for (int k = 1; k <= spec.n_inputs; ++k) {
    regs.push_back({"w" + std::to_string(k), next, spec.weight_bits});
    next += spec.weight_bits;
  }
  const int s = spec.sum_bits();
  regs.push_back({"sum", next, s});
  next += s;
  if (s > 1) {
    regs.push_back({"carry", next, s - 1});
  }
  return QubitLayout(std::move(regs));
}

std::vector<std::string> search_registers(const ProblemSpec& spec, bool joint) {
  std::vector<std::string> names;
  if (joint) names.push_back("I");
  for (int k = 1; k <= spec.n_inputs; ++k) names.push_back("w" + std::to_string(k));
  return names;
}

GateSequence build_controlled_adder(const QubitLayout& layout, int control_qubit,
                                    std::string_view src_register,
                                    std::string_view acc_register) {
  const RegisterSpan& src = layout.find(src_register);
  const RegisterSpan& acc = layout.find(acc_register);
  ensure_no_overlap(src, acc);
  if (qubit_in(control_qubit, src) || qubit_in(control_qubit, acc)) {
    throw std::invalid_argument("adder control qubit overlaps src/acc registers");
  }
  const RegisterSpan* carry = nullptr;
  if (acc.count > 1) {
    carry = &layout.find("carry");
    ensure_no_overlap(*carry, src);
    ensure_no_overlap(*carry, acc);
    if (qubit_in(control_qubit, *carry)) {
      throw std::invalid_argument("adder control qubit overlaps carry register");
    }
    if (carry->count < acc.count - 1) {
      throw std::invalid_argument("carry register too narrow for the accumulator");
    }
  }

  const int m = src.count;
  const int s = acc.count;
  const auto a = [&](int i) { return src.first + i; };
  const auto b = [&](int i) { return acc.first + i; };
  // carry into bit i, for i >= 1
  const auto c = [&](int i) { return carry->first + (i - 1); };

  GateSequence seq{layout, {}};
  const int ctl = control_qubit;

  // Ripple the carries up: c[i+1] = maj(a[i], b[i], c[i]), leaving b[i] = a^b.
  for (int i = 0; i + 1 < s; ++i) {
    if (i < m) seq.append(controlled({a(i), b(i)}, c(i + 1), ctl));
    if (i < m) seq.append(controlled({a(i)}, b(i), ctl));
    if (i >= 1) seq.append(controlled({c(i), b(i)}, c(i + 1), ctl));
  }
  // Top sum bit; the carry out of it never occurs (acc is sized for the sum).
  if (s - 1 < m) seq.append(controlled({a(s - 1)}, b(s - 1), ctl));
  if (s >= 2) seq.append(controlled({c(s - 1)}, b(s - 1), ctl));
  // Walk back down: restore each carry to 0 and finish each sum bit.
  for (int i = s - 2; i >= 0; --i) {
    if (i >= 1) seq.append(controlled({c(i), b(i)}, c(i + 1), ctl));
    if (i < m) seq.append(controlled({a(i)}, b(i), ctl));
    if (i < m) seq.append(controlled({a(i), b(i)}, c(i + 1), ctl));
    if (i < m) seq.append(controlled({a(i)}, b(i), ctl));
    if (i >= 1) seq.append(controlled({c(i)}, b(i), ctl));
  }
  return seq;
}

GateSequence build_equality_comparator(const QubitLayout& layout,
                                       std::string_view acc_register, int ac) {
  const RegisterSpan& acc = layout.find(acc_register);
  if (ac < 0 || ac >= (1 << acc.count)) {
    throw std::invalid_argument("ac = " + std::to_string(ac) +
                                " does not fit a " + std::to_string(acc.count) +
                                "-bit register");
  }
  GateSequence seq{layout, {}};
  std::vector<int> zero_bits;
  for (int i = 0; i < acc.count; ++i) {
    if (((ac >> i) & 1) == 0) zero_bits.push_back(acc.first + i);
  }
  for (int q : zero_bits) seq.append(Gate::x(q));
  std::vector<int> all;
  for (int i = 0; i < acc.count; ++i) all.push_back(acc.first + i);
  seq.append(Gate::mcz(all));
  for (int q : zero_bits) seq.append(Gate::x(q));
  return seq;
}

GateSequence build_geq_comparator(const QubitLayout& layout,
                                  std::string_view acc_register, int ac) {
  const RegisterSpan& acc = layout.find(acc_register);
  if (ac < 0 || ac >= (1 << acc.count)) {
    throw std::invalid_argument("ac = " + std::to_string(ac) +
                                " does not fit a " + std::to_string(acc.count) +
                                "-bit register");
  }
  GateSequence seq{layout, {}};
  for (int v = ac; v < (1 << acc.count); ++v) {
    seq.append(build_equality_comparator(layout, acc_register, v));
  }
  return seq;
}

GateSequence build_perceptron_oracle(const ProblemSpec& spec,
                                     const QubitLayout& layout) {
  const RegisterSpan& inputs = layout.find("I");
  GateSequence compute{layout, {}};
  for (int k = 0; k < spec.n_inputs; ++k) {
    compute.append(build_controlled_adder(layout, inputs.first + k,
                                          "w" + std::to_string(k + 1), "sum"));
  }
  GateSequence oracle{layout, {}};
  oracle.append(compute);
  oracle.append(spec.predicate == Predicate::Equal
                    ? build_equality_comparator(layout, "sum", spec.ac)
                    : build_geq_comparator(layout, "sum", spec.ac));
  oracle.append(compute.inverted());
  return oracle;
}

std::string format_gate_sequence(const GateSequence& sequence) {
  std::ostringstream out;
  out << "# layout:";
  for (const auto& reg : sequence.layout.registers()) {
    out << ' ' << reg.name << "=[";
    for (int i = 0; i < reg.count; ++i) {
      if (i) out << ',';
      out << reg.first + i;
    }
    out << ']';
  }
  out << '\n';
  for (const Gate& gate : sequence.gates) {
    switch (gate.kind) {
      case GateKind::H:
        out << "H " << gate.target << '\n';
        break;
      case GateKind::X:
        out << "X " << gate.target << '\n';
        break;
      case GateKind::Z:
        out << "Z " << gate.target << '\n';
        break;
      case GateKind::MCX:
        out << "MCX";
        for (int q : gate.controls) out << ' ' << q;
        out << " -> " << gate.target << '\n';
        break;
      case GateKind::MCZ:
        out << "MCZ";
        for (int q : gate.controls) out << ' ' << q;
        out << ' ' << gate.target << '\n';
        break;
    }
  }
  return out.str();
}

namespace {

int parse_int(std::string_view token, std::string_view what) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    throw std::invalid_argument("bad " + std::string(what) + ": '" +
                                std::string(token) + "'");
  }
  return value;
}

QubitLayout parse_layout_header(const std::string& line) {
  std::istringstream in(line);
  std::string hash, tag;
  in >> hash >> tag;
  if (hash != "#" || tag != "layout:") {
    throw std::invalid_argument("gate list must start with a '# layout:' header");
  }
  std::vector<RegisterSpan> regs;
  std::string item;
  while (in >> item) {
    const auto eq = item.find("=[");
    if (eq == std::string::npos || item.back() != ']') {
      throw std::invalid_argument("bad layout item: '" + item + "'");
    }
    RegisterSpan reg;
    reg.name = item.substr(0, eq);
    std::string list = item.substr(eq + 2, item.size() - eq - 3);
    std::vector<int> indices;
    std::istringstream items(list);
    std::string num;
    while (std::getline(items, num, ',')) indices.push_back(parse_int(num, "qubit index"));
    if (indices.empty()) throw std::invalid_argument("empty register " + reg.name);
    for (std::size_t i = 1; i < indices.size(); ++i) {
      if (indices[i] != indices[i - 1] + 1) {
        throw std::invalid_argument("register " + reg.name + " is not contiguous");
      }
    }
    reg.first = indices.front();
    reg.count = static_cast<int>(indices.size());
    regs.push_back(std::move(reg));
  }
  return QubitLayout(std::move(regs));
}

}  // namespace

GateSequence parse_gate_sequence(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("empty gate list");
  GateSequence seq{parse_layout_header(line), {}};

  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream tokens(line);
    std::string op;
    tokens >> op;
    std::vector<std::string> rest;
    std::string tok;
    while (tokens >> tok) rest.push_back(tok);

    if (op == "H" || op == "X" || op == "Z") {
      if (rest.size() != 1) throw std::invalid_argument("bad gate line: '" + line + "'");
      const int q = parse_int(rest[0], "qubit");
      seq.append(op == "H" ? Gate::h(q) : op == "X" ? Gate::x(q) : Gate::z(q));
    } else if (op == "MCX") {
      const auto arrow = std::find(rest.begin(), rest.end(), "->");
      if (arrow == rest.end() || arrow + 2 != rest.end()) {
        throw std::invalid_argument("bad MCX line: '" + line + "'");
      }
      std::vector<int> controls;
      for (auto it = rest.begin(); it != arrow; ++it) controls.push_back(parse_int(*it, "control"));
      seq.append(Gate::mcx(std::move(controls), parse_int(rest.back(), "target")));
    } else if (op == "MCZ") {
      if (rest.empty()) throw std::invalid_argument("bad MCZ line: '" + line + "'");
      std::vector<int> qubits;
      for (const auto& t : rest) qubits.push_back(parse_int(t, "qubit"));
      seq.append(Gate::mcz(std::move(qubits)));
    } else {
      throw std::invalid_argument("unknown gate '" + op + "'");
    }
  }
  return seq;
}

}  // namespace qpt
