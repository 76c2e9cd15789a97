#include <doctest.h>

#include <deque>
#include <fstream>
#include <random>
#include <sstream>

#include "bitinv/fixpoint.hpp"
#include "bitinv/machine.hpp"
#include "oracles.hpp"

using namespace bitinv;

namespace {

Cfg load(const std::string& name) {
  std::ifstream in(std::string(BITINV_SAMPLES) + "/" + name);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_cfg(ss.str());
}

ResidueVector as_point(const ConcreteState& s, const Cfg& cfg) {
  const auto bits = oracle::state_bits(s, cfg.registers, cfg.word.width());
  ResidueVector p(static_cast<Eigen::Index>(bits.size()));
  for (std::size_t i = 0; i < bits.size(); ++i) p[static_cast<Eigen::Index>(i)] = static_cast<Residue>(bits[i]);
  return p;
}

// every concrete state that can be at the entry of each block
std::map<Label, std::set<std::vector<int>>> reachable(const Cfg& cfg) {
  const int w = cfg.word.width();
  std::map<Label, std::set<std::vector<int>>> seen;
  std::deque<std::pair<Label, ConcreteState>> work;
  const auto total = static_cast<std::uint64_t>(w) * cfg.registers.size();
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << total); ++x)
    work.emplace_back(cfg.entry, oracle::state_from_index(x, cfg.registers, w));
  while (!work.empty()) {
    auto [label, state] = work.front();
    work.pop_front();
    if (!seen[label].insert(oracle::state_bits(state, cfg.registers, w)).second) continue;
    const ConcreteState post = concrete_run(cfg.blocks.at(label), state, cfg.word);
    for (const auto& next : cfg.successors(label)) work.emplace_back(next, post);
  }
  return seen;
}

std::string random_cfg(std::mt19937& rng, int width, int regs, int blocks) {
  std::ostringstream os;
  os << ".width " << width << "\n.regs ";
  for (int i = 0; i < regs; ++i) os << (i ? ", r" : "r") << i;
  os << "\n.entry B0\n";
  for (int b = 0; b < blocks; ++b) {
    os << "B" << b << ":\n";
    for (const auto& instr : oracle::random_program(rng, width, regs, 3).body)
      os << "  " << to_string(instr) << '\n';
  }
  std::uniform_int_distribution<int> pick(0, blocks - 1);
  for (int b = 1; b < blocks; ++b) os << ".edge B" << pick(rng) % b << " -> B" << b << '\n';
  for (int extra = 0; extra < blocks; ++extra) os << ".edge B" << pick(rng) << " -> B" << pick(rng) << '\n';
  return os.str();
}

} // namespace

TEST_CASE("the even counter") {
  const Cfg cfg = load("even_loop.ir");
  const AnalysisResult result = analyze(cfg);
  CHECK(result.state_vars == std::vector<std::string>{"r[0]", "r[1]", "r[2]", "r[3]"});
  const CongruenceSystem b = constraints_of(result.entry.at("B"));
  ResidueVector r0 = ResidueVector::Zero(4);
  r0[0] = 1;
  CHECK(b.implies(r0, 0));
  CHECK(b.num_rows() == 1);
  // sizes count residue vectors in (Z/16)^4
  CHECK(result.entry.at("A").log2_size() == 16);
  CHECK(result.entry.at("B").log2_size() == 12);
}

TEST_CASE("an initial state narrows the result") {
  const Cfg cfg = parse_cfg(".width 4\n.regs r\n.entry A\nA:\nB: addi r, 4\n.edge A -> B\n.edge B -> B\n");
  ResidueVector one = ResidueVector::Zero(4);
  one[0] = 1;
  const auto names = state_names(cfg.registers, 4);
  const AnalysisResult result = analyze(cfg, AffineSpace::point_only(4, names, one));
  const AffineSpace& b = result.entry.at("B");
  CHECK(b.log2_size() == 8);
  CHECK(b.contains(one));
  ResidueVector five = one;
  five[2] = 1;
  CHECK(b.contains(five));
  CHECK_THROWS(analyze(cfg, AffineSpace::full(4, {"x"})));
}

TEST_CASE("block summaries equal direct inference") {
  const Cfg cfg = parse_cfg(
      ".width 3\n.regs a, b\n.entry E\nE: add a, b\nnot b\nF: shr a, 1\n.edge E -> F\n.edge F -> E\n");
  const AnalysisResult result = analyze(cfg);
  for (const auto& [label, summary] : result.summaries)
    CHECK(summary.relation == infer_io(blast_program(cfg.block_program(label))).system);
}

TEST_CASE("every reachable state satisfies the entry invariants") {
  std::mt19937 rng(606);
  for (int trial = 0; trial < 30; ++trial) {
    const int width = 2 + trial % 3;
    const int regs = 1 + trial % 2;
    const Cfg cfg = parse_cfg(random_cfg(rng, width, regs, 2 + trial % 3));
    CAPTURE(to_string(cfg));
    const AnalysisResult fifo = analyze(cfg);
    FixpointOptions lifo_options;
    lifo_options.worklist = WorklistOrder::Lifo;
    const AnalysisResult lifo = analyze(cfg, std::nullopt, lifo_options);
    const auto states = reachable(cfg);
    for (const auto& [label, space] : fifo.entry) {
      CHECK(space == lifo.entry.at(label));
      const auto it = states.find(label);
      if (it == states.end()) continue;
      for (const auto& bits : it->second) {
        ResidueVector p(static_cast<Eigen::Index>(bits.size()));
        for (std::size_t i = 0; i < bits.size(); ++i) p[static_cast<Eigen::Index>(i)] = static_cast<Residue>(bits[i]);
        CHECK(space.contains(p));
      }
      CHECK(fifo.updates.at(label) <= space.vars().size() * static_cast<std::size_t>(width) + 1);
    }
  }
}

TEST_CASE("reachable states of the even counter") {
  const Cfg cfg = load("even_loop.ir");
  const AnalysisResult result = analyze(cfg);
  const auto states = reachable(cfg);
  CHECK(states.at("B").size() == 8);
  for (const auto& bits : states.at("B")) {
    CHECK(bits[0] == 0);
    ConcreteState s{{"r", 0}};
    for (int i = 0; i < 4; ++i) s["r"] |= static_cast<std::uint64_t>(bits[static_cast<std::size_t>(i)]) << i;
    CHECK(result.entry.at("B").contains(as_point(s, cfg)));
  }
}
