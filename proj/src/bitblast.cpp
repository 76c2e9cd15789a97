#include "bitinv/bitblast.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>
#include <unordered_map>

namespace bitinv {

std::string Version::name() const {
  switch (kind) {
  case Kind::In: return "in";
  case Kind::Out: return "out";
  case Kind::Temp: return "temp" + std::to_string(index);
  }
  return "?";
}

std::string bit_name(const RegisterId& reg, int bit, const Version& version) {
  return reg + "[" + std::to_string(bit) + "]@" + version.name();
}

BitVarMap::BitVarMap(Version version, std::vector<RegisterId> registers, int width,
                     VarAllocator& alloc)
    : version_(version), registers_(std::move(registers)), width_(width) {
  bits_.resize(registers_.size());
  for (auto& reg : bits_) {
    reg.resize(static_cast<std::size_t>(width_));
    for (auto& v : reg) v = alloc.fresh();
  }
}

std::size_t BitVarMap::index_of(const RegisterId& reg) const {
  auto it = std::find(registers_.begin(), registers_.end(), reg);
  if (it == registers_.end()) throw std::out_of_range("unknown register " + reg);
  return static_cast<std::size_t>(it - registers_.begin());
}

std::span<const PropVar> BitVarMap::bits(const RegisterId& reg) const {
  return bits_[index_of(reg)];
}

std::vector<PropVar> BitVarMap::vars() const {
  std::vector<PropVar> out;
  for (const auto& reg : bits_) out.insert(out.end(), reg.begin(), reg.end());
  return out;
}

std::vector<std::string> BitVarMap::names() const {
  std::vector<std::string> out;
  for (const auto& reg : registers_)
    for (int i = 0; i < width_; ++i) out.push_back(bit_name(reg, i, version_));
  return out;
}

BitVarMap BitVarMap::retagged(Version v) const {
  BitVarMap out = *this;
  out.version_ = v;
  return out;
}

// --- circuit construction ---------------------------------------------------

Signal CircuitBuilder::and2(Signal a, Signal b) {
  if (a.is_constant()) return a.value() ? b : a;
  if (b.is_constant()) return b.value() ? a : b;
  if (a == b) return a;
  if (a == ~b) return Signal::constant(false);
  const Lit g = gate();
  formula_.add({-g, a.lit()});
  formula_.add({-g, b.lit()});
  formula_.add({g, -a.lit(), -b.lit()});
  return Signal::of(g);
}

Signal CircuitBuilder::xor2(Signal a, Signal b) {
  if (a.is_constant()) return a.value() ? ~b : b;
  if (b.is_constant()) return b.value() ? ~a : a;
  if (a == b) return Signal::constant(false);
  if (a == ~b) return Signal::constant(true);
  const Lit g = gate();
  const Lit x = a.lit(), y = b.lit();
  formula_.add({-g, x, y});
  formula_.add({-g, -x, -y});
  formula_.add({g, -x, y});
  formula_.add({g, x, -y});
  return Signal::of(g);
}

Signal CircuitBuilder::majority(Signal a, Signal b, Signal c) {
  if (a.is_constant()) return a.value() ? or2(b, c) : and2(b, c);
  if (b.is_constant()) return b.value() ? or2(a, c) : and2(a, c);
  if (c.is_constant()) return c.value() ? or2(a, b) : and2(a, b);
  if (a == b || a == c) return a;
  if (b == c) return b;
  if (a == ~b) return c;
  if (a == ~c) return b;
  if (b == ~c) return a;
  const Lit g = gate();
  const Lit x = a.lit(), y = b.lit(), z = c.lit();
  formula_.add({g, -x, -y});
  formula_.add({g, -x, -z});
  formula_.add({g, -y, -z});
  formula_.add({-g, x, y});
  formula_.add({-g, x, z});
  formula_.add({-g, y, z});
  return Signal::of(g);
}

Signal CircuitBuilder::and_all(std::span<const Signal> xs) {
  Signal acc = Signal::constant(true);
  for (Signal x : xs) acc = and2(acc, x);
  return acc;
}

Signal CircuitBuilder::or_all(std::span<const Signal> xs) {
  Signal acc = Signal::constant(false);
  for (Signal x : xs) acc = or2(acc, x);
  return acc;
}

Bits CircuitBuilder::add(const Bits& a, const Bits& b, Signal carry_in) {
  if (a.size() != b.size()) throw std::invalid_argument("adder operand widths differ");
  Bits sum(a.size(), Signal::constant(false));
  Signal carry = carry_in;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sum[i] = xor2(xor2(a[i], b[i]), carry);
    if (i + 1 < a.size()) carry = majority(a[i], b[i], carry);
  }
  return sum;
}

Signal CircuitBuilder::equal(const Bits& a, const Bits& b) {
  if (a.size() != b.size()) throw std::invalid_argument("comparator widths differ");
  Bits same;
  same.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) same.push_back(~xor2(a[i], b[i]));
  return and_all(same);
}

void CircuitBuilder::require(Signal s) {
  if (s.is_constant()) {
    if (!s.value()) formula_.add({});
    return;
  }
  formula_.add({s.lit()});
}

void CircuitBuilder::require_equal(PropVar v, Signal s) {
  if (s.is_constant()) {
    formula_.add({s.value() ? v : -v});
    return;
  }
  formula_.add({-v, s.lit()});
  formula_.add({v, -s.lit()});
}

Bits CircuitBuilder::constant_bits(std::uint64_t value, int width) {
  Bits out;
  for (int i = 0; i < width; ++i) out.push_back(Signal::constant((value >> i) & 1U));
  return out;
}

Bits CircuitBuilder::literal_bits(std::span<const PropVar> vars) {
  Bits out;
  for (PropVar v : vars) out.push_back(Signal::of(v));
  return out;
}

// --- relations --------------------------------------------------------------

namespace {

Bits instruction_result(const Instruction& instr, const BitVarMap& in,
                        CircuitBuilder& cb) {
  const int w = in.width();
  const Bits d = CircuitBuilder::literal_bits(in.bits(instr.dst));
  const Bits s = has_register_operand(instr.op)
                     ? CircuitBuilder::literal_bits(in.bits(instr.src))
                     : Bits{};
  const Signal zero = Signal::constant(false);
  const Signal one = Signal::constant(true);

  auto bitwise = [&](auto&& op) {
    Bits out;
    for (int i = 0; i < w; ++i) out.push_back(op(d[i], s[i]));
    return out;
  };

  switch (instr.op) {
  case Opcode::Inc: return cb.add(d, CircuitBuilder::constant_bits(0, w), one);
  case Opcode::Dec: return cb.add(d, CircuitBuilder::constant_bits(~std::uint64_t{0}, w), zero);
  case Opcode::Mov: return s;
  case Opcode::Movi: return CircuitBuilder::constant_bits(instr.imm, w);
  case Opcode::Add: return cb.add(d, s, zero);
  case Opcode::Addi: return cb.add(d, CircuitBuilder::constant_bits(instr.imm, w), zero);
  case Opcode::Sub: {
    Bits not_s;
    for (Signal x : s) not_s.push_back(~x);
    return cb.add(d, not_s, one);
  }
  case Opcode::Xor: return bitwise([&](Signal a, Signal b) { return cb.xor2(a, b); });
  case Opcode::And: return bitwise([&](Signal a, Signal b) { return cb.and2(a, b); });
  case Opcode::Or: return bitwise([&](Signal a, Signal b) { return cb.or2(a, b); });
  case Opcode::Not: {
    Bits out;
    for (Signal x : d) out.push_back(~x);
    return out;
  }
  case Opcode::Shl: {
    Bits out(static_cast<std::size_t>(w), zero);
    const int k = static_cast<int>(instr.imm);
    for (int i = k; i < w; ++i) out[i] = d[i - k];
    return out;
  }
  case Opcode::Shr: {
    Bits out(static_cast<std::size_t>(w), zero);
    const int k = static_cast<int>(instr.imm);
    for (int i = 0; i + k < w; ++i) out[i] = d[i + k];
    return out;
  }
  }
  throw std::logic_error("unhandled opcode");
}

std::vector<PropVar> vars_between(int lo, int hi) {
  std::vector<PropVar> out;
  for (int v = lo; v <= hi; ++v) out.push_back(v);
  return out;
}

} // namespace

Relation blast_instruction(const Instruction& instr, const BitVarMap& in_map,
                           VarAllocator& alloc) {
  Relation rel;
  rel.input = in_map;
  rel.output = BitVarMap(Version::out(), in_map.registers(), in_map.width(), alloc);
  const int first_aux = alloc.used() + 1;

  CircuitBuilder cb(rel.formula, alloc);
  const Bits result = instruction_result(instr, in_map, cb);
  for (const auto& reg : in_map.registers()) {
    const auto out_bits = rel.output.bits(reg);
    const auto in_bits = in_map.bits(reg);
    for (int i = 0; i < in_map.width(); ++i)
      cb.require_equal(out_bits[i],
                       reg == instr.dst ? result[i] : Signal::of(in_bits[i]));
  }
  rel.aux = vars_between(first_aux, alloc.used());
  rel.formula.num_vars = alloc.used();
  return rel;
}

Relation identity_relation(const std::vector<RegisterId>& registers,
                           const WordSpec& word) {
  VarAllocator alloc;
  Relation rel;
  rel.input = BitVarMap(Version::in(), registers, word.width(), alloc);
  rel.output = BitVarMap(Version::out(), registers, word.width(), alloc);
  CircuitBuilder cb(rel.formula, alloc);
  for (const auto& reg : registers)
    for (int i = 0; i < word.width(); ++i)
      cb.require_equal(rel.output.bit(reg, i), Signal::of(rel.input.bit(reg, i)));
  rel.formula.num_vars = alloc.used();
  return rel;
}

Relation compose(const Relation& r1, const Relation& r2) {
  if (r1.output.registers() != r2.input.registers() ||
      r1.output.width() != r2.input.width())
    throw std::invalid_argument("compose: register set or width mismatch");

  // r2's input bits are substituted by r1's output bits; every other r2
  // variable is shifted past r1's variables, preserving relative order.
  std::unordered_map<PropVar, PropVar> subst;
  for (const auto& reg : r2.input.registers())
    for (int i = 0; i < r2.input.width(); ++i)
      subst[r2.input.bit(reg, i)] = r1.output.bit(reg, i);
  VarAllocator alloc(r1.formula.num_vars);
  for (PropVar v = 1; v <= r2.formula.num_vars; ++v)
    if (!subst.count(v)) subst[v] = alloc.fresh();
  auto rename = [&](PropVar v) { return subst.at(v); };

  Relation rel;
  rel.formula = r1.formula;
  for (const auto& clause : r2.formula.clauses) {
    Clause renamed;
    renamed.reserve(clause.size());
    for (Lit l : clause) renamed.push_back(l < 0 ? -rename(-l) : rename(l));
    rel.formula.clauses.push_back(std::move(renamed));
  }
  rel.formula.num_vars = alloc.used();

  rel.input = r1.input;
  rel.output = r2.output.renamed(rename);

  rel.intermediates = r1.intermediates;
  int next_temp = static_cast<int>(rel.intermediates.size()) + 1;
  rel.intermediates.push_back(r1.output.retagged(Version::temp(next_temp++)));
  for (const auto& mid : r2.intermediates)
    rel.intermediates.push_back(mid.renamed(rename).retagged(Version::temp(next_temp++)));

  rel.aux = r1.aux;
  const auto joined = r1.output.vars();
  rel.aux.insert(rel.aux.end(), joined.begin(), joined.end());
  for (PropVar v : r2.aux) rel.aux.push_back(rename(v));
  std::sort(rel.aux.begin(), rel.aux.end());
  return rel;
}

Relation blast_program(const Program& program) {
  if (program.body.empty()) return identity_relation(program.registers, program.word);

  auto blast_one = [&](const Instruction& instr) {
    VarAllocator alloc;
    BitVarMap in(Version::in(), program.registers, program.word.width(), alloc);
    return blast_instruction(instr, in, alloc);
  };
  Relation rel = blast_one(program.body.front());
  for (std::size_t i = 1; i < program.body.size(); ++i)
    rel = compose(rel, blast_one(program.body[i]));
  return rel;
}

void write_relation_dimacs(std::ostream& os, const Relation& rel) {
  std::vector<std::string> header;
  auto describe = [&](const BitVarMap& map) {
    for (const auto& reg : map.registers())
      for (int i = 0; i < map.width(); ++i)
        header.push_back("var " + std::to_string(map.bit(reg, i)) + " = " +
                         bit_name(reg, i, map.version()));
  };
  describe(rel.input);
  for (const auto& mid : rel.intermediates) describe(mid);
  describe(rel.output);
  write_dimacs(os, rel.formula, header);
}

} // namespace bitinv
