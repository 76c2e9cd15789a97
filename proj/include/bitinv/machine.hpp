// Toy register machine: word width, instructions, straight-line programs,
// control-flow graphs and the line-oriented text format they are read from.

#ifndef BITINV_MACHINE_HPP
#define BITINV_MACHINE_HPP

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace bitinv {

/// Number of bits per machine word. Every register and every congruence
/// of one analysis shares it; the congruence modulus is 2^width.
class WordSpec {
public:
  static constexpr int kMaxWidth = 64;

  explicit WordSpec(int width);

  int width() const { return width_; }
  std::uint64_t mask() const {
    return width_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width_) - 1;
  }
  std::uint64_t reduce(std::uint64_t v) const { return v & mask(); }

  bool operator==(const WordSpec&) const = default;

private:
  int width_;
};

using RegisterId = std::string;

enum class Opcode {
  Inc, Dec, Mov, Movi, Add, Addi, Sub, Xor, And, Or, Not, Shl, Shr
};

std::string_view opcode_name(Opcode op);

/// One instruction. `src` is meaningful for register-register forms,
/// `imm` for immediates and shift amounts.
struct Instruction {
  Opcode op;
  RegisterId dst;
  RegisterId src;
  std::uint64_t imm = 0;

  bool operator==(const Instruction&) const = default;
};

bool has_register_operand(Opcode op);
bool has_immediate_operand(Opcode op);

struct Program {
  WordSpec word;
  std::vector<RegisterId> registers;
  std::vector<Instruction> body;

  bool operator==(const Program&) const = default;
};

using Label = std::string;

struct Cfg {
  WordSpec word;
  std::vector<RegisterId> registers;
  std::map<Label, std::vector<Instruction>> blocks;
  std::vector<std::pair<Label, Label>> edges;
  Label entry;

  std::vector<Label> successors(const Label& block) const;
  std::vector<Label> predecessors(const Label& block) const;
  /// The straight-line program formed by one block's body.
  Program block_program(const Label& block) const;

  bool operator==(const Cfg&) const = default;
};

class ParseError : public std::runtime_error {
public:
  ParseError(int line, const std::string& what);
  int line() const { return line_; }

private:
  int line_;
};

/// Parses the text IR. Returns a Cfg as soon as any label, edge or entry
/// directive appears, otherwise a Program.
std::variant<Program, Cfg> parse_program(std::string_view text);

/// Convenience wrappers that reject the other mode.
Program parse_straight_line(std::string_view text);
Cfg parse_cfg(std::string_view text);

std::string to_string(const Instruction& instr);
std::string to_string(const Program& program);
std::string to_string(const Cfg& cfg);

using ConcreteState = std::map<RegisterId, std::uint64_t>;

/// Reference semantics: unsigned arithmetic modulo 2^width.
ConcreteState concrete_step(const Instruction& instr, ConcreteState state,
                            const WordSpec& word);
ConcreteState concrete_run(const std::vector<Instruction>& body,
                           ConcreteState state, const WordSpec& word);

} // namespace bitinv

#endif // BITINV_MACHINE_HPP
