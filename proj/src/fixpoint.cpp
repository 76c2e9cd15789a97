#include "bitinv/fixpoint.hpp"

#include <deque>
#include <set>
#include <stdexcept>

#include "bitinv/bitblast.hpp"

namespace bitinv {

std::vector<std::string> state_names(const std::vector<RegisterId>& registers, int width) {
  std::vector<std::string> out;
  for (const auto& reg : registers)
    for (int i = 0; i < width; ++i) out.push_back(reg + "[" + std::to_string(i) + "]");
  return out;
}

namespace {

std::vector<std::string> version_names(const std::vector<RegisterId>& registers, int width,
                                       const Version& v) {
  std::vector<std::string> out;
  for (const auto& reg : registers)
    for (int i = 0; i < width; ++i) out.push_back(bit_name(reg, i, v));
  return out;
}

} // namespace

BlockSummary summarize_block(const Cfg& cfg, const Label& label,
                             const InferenceOptions& options) {
  const Relation rel = blast_program(cfg.block_program(label));
  Inference inf = infer_io(rel, options);
  return BlockSummary{label, std::move(inf.system), inf.stats};
}

AffineSpace apply_summary(const BlockSummary& summary, const AffineSpace& state,
                          const std::vector<RegisterId>& registers) {
  const int width = state.width();
  if (state.is_empty()) return state;
  const auto in_names = version_names(registers, width, Version::in());
  const auto out_names = version_names(registers, width, Version::out());
  const CongruenceSystem pre = rename(constraints_of(state), in_names);
  const CongruenceSystem post = compose_abstract(pre, summary.relation);
  return rename(space_of(embed(post, out_names)), state.vars());
}

AnalysisResult analyze(const Cfg& cfg, const std::optional<AffineSpace>& initial,
                       const FixpointOptions& options) {
  const int width = cfg.word.width();
  AnalysisResult result;
  result.state_vars = state_names(cfg.registers, width);
  const std::size_t bits = result.state_vars.size();
  const std::size_t max_updates = bits * static_cast<std::size_t>(width) + 1;

  AffineSpace start = initial.value_or(AffineSpace::full(width, result.state_vars));
  if (start.vars() != result.state_vars || start.width() != width)
    throw std::invalid_argument("initial state must range over all register bits");

  for (const auto& [label, body] : cfg.blocks) {
    result.entry.emplace(label, AffineSpace::empty(width, result.state_vars));
    result.updates[label] = 0;
  }

  auto summary_of = [&](const Label& label) -> const BlockSummary& {
    auto it = result.summaries.find(label);
    if (it == result.summaries.end())
      it = result.summaries.emplace(label, summarize_block(cfg, label, options.inference)).first;
    return it->second;
  };

  std::deque<Label> worklist;
  std::set<Label> queued;
  auto push = [&](const Label& label) {
    if (queued.insert(label).second) worklist.push_back(label);
  };
  auto join_into = [&](const Label& label, const AffineSpace& incoming) {
    AffineSpace& entry = result.entry.at(label);
    AffineSpace joined = merge(entry, incoming);
    if (joined == entry) return;
    if (++result.updates[label] > max_updates)
      throw std::logic_error("fixpoint exceeded the ascending-chain bound at " + label);
    entry = std::move(joined);
    push(label);
  };

  join_into(cfg.entry, start);
  while (!worklist.empty()) {
    Label label;
    if (options.worklist == WorklistOrder::Fifo) {
      label = worklist.front();
      worklist.pop_front();
    } else {
      label = worklist.back();
      worklist.pop_back();
    }
    queued.erase(label);

    const AffineSpace out =
        apply_summary(summary_of(label), result.entry.at(label), cfg.registers);
    for (const auto& next : cfg.successors(label)) join_into(next, out);
  }

  for (const auto& [label, body] : cfg.blocks) summary_of(label);
  return result;
}

} // namespace bitinv
