// Forward propagation of affine register states over a control-flow graph.
// Each block is summarised once as an input/output congruence relation;
// block entry states are joined with the affine hull until nothing changes.
// Edges carry no conditions, so every successor is possible.

#ifndef BITINV_FIXPOINT_HPP
#define BITINV_FIXPOINT_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bitinv/inference.hpp"
#include "bitinv/machine.hpp"
#include "bitinv/modlin.hpp"

namespace bitinv {

enum class WorklistOrder { Fifo, Lifo };

struct FixpointOptions {
  InferenceOptions inference;
  WorklistOrder worklist = WorklistOrder::Fifo;
};

struct BlockSummary {
  Label label;
  CongruenceSystem relation; // over r[i]@in and r[i]@out
  InferenceStats stats;
};

struct AnalysisResult {
  std::vector<std::string> state_vars; // r[i], registers in order, LSB first
  std::map<Label, AffineSpace> entry;
  std::map<Label, BlockSummary> summaries;
  std::map<Label, std::size_t> updates;
};

std::vector<std::string> state_names(const std::vector<RegisterId>& registers, int width);

BlockSummary summarize_block(const Cfg& cfg, const Label& label,
                             const InferenceOptions& options = {});

/// Image of a state space under a summary relation.
AffineSpace apply_summary(const BlockSummary& summary, const AffineSpace& state,
                          const std::vector<RegisterId>& registers);

/// `initial` defaults to the full space over all register bits.
AnalysisResult analyze(const Cfg& cfg, const std::optional<AffineSpace>& initial = {},
                       const FixpointOptions& options = {});

} // namespace bitinv

#endif // BITINV_FIXPOINT_HPP
