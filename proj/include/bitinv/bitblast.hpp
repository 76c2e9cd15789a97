// Bit-level relational semantics of instructions: each register becomes a
// vector of propositional variables per version (in, temp-k, out) and an
// instruction becomes a CNF relation between the versions.

#ifndef BITINV_BITBLAST_HPP
#define BITINV_BITBLAST_HPP

#include <climits>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "bitinv/cnf.hpp"
#include "bitinv/machine.hpp"

namespace bitinv {

struct Version {
  enum class Kind { In, Temp, Out };
  Kind kind = Kind::In;
  int index = 0; // 1-based, only for Temp

  static Version in() { return {Kind::In, 0}; }
  static Version out() { return {Kind::Out, 0}; }
  static Version temp(int k) { return {Kind::Temp, k}; }

  std::string name() const;
  bool operator==(const Version&) const = default;
};

/// Canonical printed name of one register bit, e.g. "r[3]@out".
std::string bit_name(const RegisterId& reg, int bit, const Version& version);

/// Per-register vectors of propositional variables for one version.
/// Bit 0 is least significant and carries weight 1 downstream.
class BitVarMap {
public:
  BitVarMap() = default;
  /// Allocates width fresh variables per register, registers in order, LSB first.
  BitVarMap(Version version, std::vector<RegisterId> registers, int width,
            VarAllocator& alloc);

  const Version& version() const { return version_; }
  const std::vector<RegisterId>& registers() const { return registers_; }
  int width() const { return width_; }

  std::span<const PropVar> bits(const RegisterId& reg) const;
  PropVar bit(const RegisterId& reg, int i) const { return bits(reg)[i]; }

  /// All variables, registers in declaration order, bits LSB first.
  std::vector<PropVar> vars() const;
  /// Names in the same order as vars().
  std::vector<std::string> names() const;

  BitVarMap retagged(Version v) const;
  template <typename F>
  BitVarMap renamed(F&& rename) const {
    BitVarMap out = *this;
    for (auto& reg : out.bits_)
      for (auto& v : reg) v = rename(v);
    return out;
  }

private:
  std::size_t index_of(const RegisterId& reg) const;

  Version version_;
  std::vector<RegisterId> registers_;
  int width_ = 0;
  std::vector<std::vector<PropVar>> bits_;
};

/// A CNF relation between input and output bit vectors. Every variable of
/// `formula` belongs to exactly one of input, output or aux; the bits of
/// the intermediate versions are a named subset of aux.
struct Relation {
  CnfFormula formula;
  BitVarMap input;
  BitVarMap output;
  std::vector<BitVarMap> intermediates;
  std::vector<PropVar> aux;
};

/// Either a constant or a literal. Negation is free.
class Signal {
public:
  static Signal constant(bool v) { return Signal(v ? kTrue : -kTrue); }
  static Signal of(Lit l) { return Signal(l); }

  bool is_constant() const { return var_of(code_) == kTrue; }
  bool value() const { return code_ > 0; }
  Lit lit() const { return code_; }

  Signal operator~() const { return Signal(-code_); }
  bool operator==(const Signal&) const = default;

private:
  static constexpr int kTrue = INT_MAX;
  explicit Signal(int code) : code_(code) {}
  int code_;
};

using Bits = std::vector<Signal>;

/// Tseitin encoder with constant folding. Each non-trivial gate gets one
/// fresh variable that is functionally determined by its inputs.
class CircuitBuilder {
public:
  CircuitBuilder(CnfFormula& formula, VarAllocator& alloc)
      : formula_(formula), alloc_(alloc) {}

  Signal and2(Signal a, Signal b);
  Signal or2(Signal a, Signal b) { return ~and2(~a, ~b); }
  Signal xor2(Signal a, Signal b);
  Signal majority(Signal a, Signal b, Signal c);
  Signal and_all(std::span<const Signal> xs);
  Signal or_all(std::span<const Signal> xs);

  /// Ripple-carry sum modulo 2^size; the final carry is dropped.
  Bits add(const Bits& a, const Bits& b, Signal carry_in);
  Signal equal(const Bits& a, const Bits& b);

  void require(Signal s);
  void require_equal(PropVar v, Signal s);

  static Bits constant_bits(std::uint64_t value, int width);
  static Bits literal_bits(std::span<const PropVar> vars);

private:
  PropVar gate() { return alloc_.fresh(); }

  CnfFormula& formula_;
  VarAllocator& alloc_;
};

Relation blast_instruction(const Instruction& instr, const BitVarMap& in_map,
                           VarAllocator& alloc);
Relation identity_relation(const std::vector<RegisterId>& registers,
                           const WordSpec& word);
/// Relational product; r1's output bits become the next intermediate version.
Relation compose(const Relation& r1, const Relation& r2);
Relation blast_program(const Program& program);

/// DIMACS with one "c var <idx> = <reg>[<bit>]@<version>" line per named bit.
void write_relation_dimacs(std::ostream& os, const Relation& rel);

} // namespace bitinv

#endif // BITINV_BITBLAST_HPP
