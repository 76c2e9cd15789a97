#include "bitinv/machine.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <optional>
#include <set>
#include <sstream>

namespace bitinv {

WordSpec::WordSpec(int width) : width_(width) {
  if (width < 1 || width > kMaxWidth)
    throw std::invalid_argument("word width must lie in [1, 64], got " +
                                std::to_string(width));
}

namespace {

struct OpInfo {
  Opcode op;
  std::string_view name;
};

constexpr OpInfo kOps[] = {
    {Opcode::Inc, "inc"},   {Opcode::Dec, "dec"},   {Opcode::Mov, "mov"},
    {Opcode::Movi, "movi"}, {Opcode::Add, "add"},   {Opcode::Addi, "addi"},
    {Opcode::Sub, "sub"},   {Opcode::Xor, "xor"},   {Opcode::And, "and"},
    {Opcode::Or, "or"},     {Opcode::Not, "not"},   {Opcode::Shl, "shl"},
    {Opcode::Shr, "shr"},
};

} // namespace

std::string_view opcode_name(Opcode op) {
  for (const auto& info : kOps)
    if (info.op == op) return info.name;
  return "?";
}

bool has_register_operand(Opcode op) {
  switch (op) {
  case Opcode::Mov: case Opcode::Add: case Opcode::Sub:
  case Opcode::Xor: case Opcode::And: case Opcode::Or:
    return true;
  default:
    return false;
  }
}

bool has_immediate_operand(Opcode op) {
  switch (op) {
  case Opcode::Movi: case Opcode::Addi: case Opcode::Shl: case Opcode::Shr:
    return true;
  default:
    return false;
  }
}

std::vector<Label> Cfg::successors(const Label& block) const {
  std::vector<Label> out;
  for (const auto& [from, to] : edges)
    if (from == block && std::find(out.begin(), out.end(), to) == out.end())
      out.push_back(to);
  return out;
}

std::vector<Label> Cfg::predecessors(const Label& block) const {
  std::vector<Label> out;
  for (const auto& [from, to] : edges)
    if (to == block && std::find(out.begin(), out.end(), from) == out.end())
      out.push_back(from);
  return out;
}

Program Cfg::block_program(const Label& block) const {
  return Program{word, registers, blocks.at(block)};
}

ParseError::ParseError(int line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what),
      line_(line) {}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s.front())) && s.front() != '_')
    return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

std::vector<std::string_view> split_operands(std::string_view s) {
  std::vector<std::string_view> out;
  if (trim(s).empty()) return out;
  std::size_t start = 0;
  while (true) {
    auto comma = s.find(',', start);
    out.push_back(trim(s.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

class Parser {
public:
  explicit Parser(std::string_view text) : text_(text) {}

  std::variant<Program, Cfg> run();

private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(line_no_, what);
  }

  std::uint64_t parse_number(std::string_view s) const;
  const RegisterId& parse_register(std::string_view s) const;
  Instruction parse_instruction(std::string_view s) const;
  void handle_directive(std::string_view line);

  std::string_view text_;
  int line_no_ = 0;

  std::optional<WordSpec> word_;
  std::vector<RegisterId> registers_;
  bool seen_regs_ = false;

  bool cfg_mode_ = false;
  std::vector<Instruction> straight_;
  std::map<Label, std::vector<Instruction>> blocks_;
  std::optional<Label> current_;
  std::vector<std::pair<Label, Label>> edges_;
  std::vector<int> edge_lines_;
  std::optional<Label> entry_;
  int entry_line_ = 0;
  int first_block_line_ = 0;
};

std::uint64_t Parser::parse_number(std::string_view s) const {
  int base = 10;
  if (s.size() > 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X')) {
    base = 16;
    s.remove_prefix(2);
  }
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value, base);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
    fail("expected an unsigned integer, got '" + std::string(s) + "'");
  return value;
}

const RegisterId& Parser::parse_register(std::string_view s) const {
  auto it = std::find(registers_.begin(), registers_.end(), s);
  if (it == registers_.end())
    fail("undeclared register '" + std::string(s) + "'");
  return *it;
}

Instruction Parser::parse_instruction(std::string_view s) const {
  if (!word_) fail(".width must come first");
  if (!seen_regs_) fail(".regs must precede instructions");

  auto space = s.find_first_of(" \t");
  std::string_view mnemonic = s.substr(0, space);
  std::string_view rest =
      space == std::string_view::npos ? std::string_view{} : s.substr(space);

  const OpInfo* info = nullptr;
  for (const auto& candidate : kOps)
    if (candidate.name == mnemonic) info = &candidate;
  if (!info) fail("unknown opcode '" + std::string(mnemonic) + "'");

  auto operands = split_operands(rest);
  const bool binary = has_register_operand(info->op) || has_immediate_operand(info->op);
  const std::size_t expected = binary ? 2 : 1;
  if (operands.size() != expected)
    fail(std::string(info->name) + " expects " + std::to_string(expected) +
         " operand(s)");

  Instruction instr{info->op, parse_register(operands[0]), {}, 0};
  if (has_register_operand(info->op)) {
    instr.src = parse_register(operands[1]);
  } else if (has_immediate_operand(info->op)) {
    std::uint64_t value = parse_number(operands[1]);
    if (info->op == Opcode::Shl || info->op == Opcode::Shr) {
      if (value >= static_cast<std::uint64_t>(word_->width()))
        fail("shift amount out of range");
      instr.imm = value;
    } else {
      instr.imm = word_->reduce(value);
    }
  }
  return instr;
}

void Parser::handle_directive(std::string_view line) {
  auto space = line.find_first_of(" \t");
  std::string_view name = line.substr(0, space);
  std::string_view arg =
      space == std::string_view::npos ? std::string_view{} : trim(line.substr(space));

  if (name == ".width") {
    if (word_) fail("duplicate .width");
    auto w = parse_number(arg);
    if (w < 1 || w > WordSpec::kMaxWidth) fail("width must lie in [1, 64]");
    word_.emplace(static_cast<int>(w));
    return;
  }
  if (!word_) fail(".width must come first");

  if (name == ".regs") {
    if (seen_regs_) fail("duplicate .regs");
    for (auto reg : split_operands(arg)) {
      if (!is_identifier(reg)) fail("bad register name '" + std::string(reg) + "'");
      if (std::find(registers_.begin(), registers_.end(), reg) != registers_.end())
        fail("duplicate register '" + std::string(reg) + "'");
      registers_.emplace_back(reg);
    }
    if (registers_.empty()) fail(".regs needs at least one register");
    seen_regs_ = true;
  } else if (name == ".edge") {
    auto arrow = arg.find("->");
    if (arrow == std::string_view::npos) fail(".edge expects '<from> -> <to>'");
    auto from = trim(arg.substr(0, arrow));
    auto to = trim(arg.substr(arrow + 2));
    if (!is_identifier(from) || !is_identifier(to)) fail("bad .edge labels");
    cfg_mode_ = true;
    edges_.emplace_back(from, to);
    edge_lines_.push_back(line_no_);
  } else if (name == ".entry") {
    if (entry_) fail("duplicate .entry");
    if (!is_identifier(arg)) fail("bad .entry label");
    cfg_mode_ = true;
    entry_ = std::string(arg);
    entry_line_ = line_no_;
  } else {
    fail("unknown directive '" + std::string(name) + "'");
  }
}

std::variant<Program, Cfg> Parser::run() {
  std::size_t pos = 0;
  while (pos <= text_.size()) {
    auto nl = text_.find('\n', pos);
    std::string_view raw = text_.substr(pos, nl == std::string_view::npos
                                                  ? std::string_view::npos
                                                  : nl - pos);
    pos = nl == std::string_view::npos ? text_.size() + 1 : nl + 1;
    ++line_no_;

    auto hash = raw.find('#');
    std::string_view line = trim(raw.substr(0, hash));
    if (line.empty()) continue;

    if (line.front() == '.') {
      handle_directive(line);
      continue;
    }
    if (!word_) fail(".width must come first");

    auto colon = line.find(':');
    if (colon != std::string_view::npos) {
      auto label = trim(line.substr(0, colon));
      if (!is_identifier(label)) fail("bad label '" + std::string(label) + "'");
      if (!straight_.empty()) fail("label after unlabelled instructions");
      if (blocks_.count(std::string(label))) fail("duplicate label '" + std::string(label) + "'");
      if (blocks_.empty()) first_block_line_ = line_no_;
      cfg_mode_ = true;
      current_ = std::string(label);
      blocks_[*current_];
      line = trim(line.substr(colon + 1));
      if (line.empty()) continue;
    }

    Instruction instr = parse_instruction(line);
    if (current_) {
      blocks_[*current_].push_back(std::move(instr));
    } else {
      if (cfg_mode_) fail("instruction outside of any block");
      straight_.push_back(std::move(instr));
    }
  }

  ++line_no_;
  if (!word_) fail("missing .width");
  if (!seen_regs_) fail("missing .regs");

  if (!cfg_mode_) return Program{*word_, registers_, straight_};

  if (!straight_.empty()) fail("instruction outside of any block");
  if (blocks_.empty()) fail("CFG has no blocks");
  if (!entry_) fail("missing .entry");
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    line_no_ = edge_lines_[i];
    if (!blocks_.count(edges_[i].first))
      fail("edge from undeclared block '" + edges_[i].first + "'");
    if (!blocks_.count(edges_[i].second))
      fail("edge to undeclared block '" + edges_[i].second + "'");
  }
  line_no_ = entry_line_;
  if (!blocks_.count(*entry_)) fail("entry block '" + *entry_ + "' is not declared");

  Cfg cfg{*word_, registers_, blocks_, edges_, *entry_};
  std::set<Label> seen{cfg.entry};
  std::vector<Label> stack{cfg.entry};
  while (!stack.empty()) {
    Label block = stack.back();
    stack.pop_back();
    for (const auto& next : cfg.successors(block))
      if (seen.insert(next).second) stack.push_back(next);
  }
  for (const auto& [label, body] : cfg.blocks) {
    if (!seen.count(label)) {
      line_no_ = first_block_line_;
      fail("unreachable block '" + label + "'");
    }
  }
  return cfg;
}

} // namespace

std::variant<Program, Cfg> parse_program(std::string_view text) {
  return Parser(text).run();
}

Program parse_straight_line(std::string_view text) {
  auto parsed = parse_program(text);
  if (auto* p = std::get_if<Program>(&parsed)) return std::move(*p);
  throw ParseError(1, "expected a straight-line program, found a CFG");
}

Cfg parse_cfg(std::string_view text) {
  auto parsed = parse_program(text);
  if (auto* c = std::get_if<Cfg>(&parsed)) return std::move(*c);
  throw ParseError(1, "expected a CFG, found a straight-line program");
}

std::string to_string(const Instruction& instr) {
  std::string out(opcode_name(instr.op));
  out += ' ';
  out += instr.dst;
  if (has_register_operand(instr.op)) {
    out += ", " + instr.src;
  } else if (has_immediate_operand(instr.op)) {
    out += ", " + std::to_string(instr.imm);
  }
  return out;
}

namespace {

void print_header(std::ostringstream& os, const WordSpec& word,
                  const std::vector<RegisterId>& regs) {
  os << ".width " << word.width() << "\n.regs ";
  for (std::size_t i = 0; i < regs.size(); ++i)
    os << (i ? ", " : "") << regs[i];
  os << '\n';
}

} // namespace

std::string to_string(const Program& program) {
  std::ostringstream os;
  print_header(os, program.word, program.registers);
  for (const auto& instr : program.body) os << to_string(instr) << '\n';
  return os.str();
}

std::string to_string(const Cfg& cfg) {
  std::ostringstream os;
  print_header(os, cfg.word, cfg.registers);
  os << ".entry " << cfg.entry << '\n';
  for (const auto& [label, body] : cfg.blocks) {
    os << label << ":\n";
    for (const auto& instr : body) os << "  " << to_string(instr) << '\n';
  }
  for (const auto& [from, to] : cfg.edges)
    os << ".edge " << from << " -> " << to << '\n';
  return os.str();
}

ConcreteState concrete_step(const Instruction& instr, ConcreteState state,
                            const WordSpec& word) {
  const std::uint64_t d = state.at(instr.dst);
  const std::uint64_t s = has_register_operand(instr.op) ? state.at(instr.src) : 0;
  std::uint64_t r = 0;
  switch (instr.op) {
  case Opcode::Inc:  r = d + 1; break;
  case Opcode::Dec:  r = d - 1; break;
  case Opcode::Mov:  r = s; break;
  case Opcode::Movi: r = instr.imm; break;
  case Opcode::Add:  r = d + s; break;
  case Opcode::Addi: r = d + instr.imm; break;
  case Opcode::Sub:  r = d - s; break;
  case Opcode::Xor:  r = d ^ s; break;
  case Opcode::And:  r = d & s; break;
  case Opcode::Or:   r = d | s; break;
  case Opcode::Not:  r = ~d; break;
  case Opcode::Shl:  r = d << instr.imm; break;
  case Opcode::Shr:  r = d >> instr.imm; break;
  }
  state[instr.dst] = word.reduce(r);
  return state;
}

ConcreteState concrete_run(const std::vector<Instruction>& body,
                           ConcreteState state, const WordSpec& word) {
  for (const auto& instr : body) state = concrete_step(instr, std::move(state), word);
  return state;
}

} // namespace bitinv
