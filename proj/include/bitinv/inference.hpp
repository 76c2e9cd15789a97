// Most precise congruence description of a propositional relation: find a
// model, grow the affine hull by every model that escapes it, stop when the
// SAT engine proves no model escapes.

#ifndef BITINV_INFERENCE_HPP
#define BITINV_INFERENCE_HPP

#include <cstdint>
#include <functional>

#include "bitinv/bitblast.hpp"
#include "bitinv/congruence_domain.hpp"
#include "bitinv/modlin.hpp"
#include "bitinv/sat.hpp"

namespace bitinv {

struct InferenceOptions {
  SolverOptions solver;
  /// Called with the hull after every model is merged in.
  std::function<void(const AffineSpace&)> on_iteration;
};

struct InferenceStats {
  std::size_t iterations = 0; // models merged into the hull
  std::size_t sat_calls = 0;
  std::size_t named_bits = 0;
  std::uint64_t conflicts = 0;
  std::uint64_t decisions = 0;
  std::size_t clauses = 0;
  int variables = 0;
};

struct Inference {
  CongruenceSystem system;
  AffineSpace space;
  InferenceStats stats;
};

/// Strictly ascending affine spaces over n coordinates mod 2^width, starting
/// from a single point, number at most n*width + 1; with the first call and
/// the final Unsat call that bounds the SAT calls by n*width + 2.
std::size_t sat_call_bound(std::size_t named_bits, int width);

Inference infer(const Relation& rel, const NamedBitOrder& order, int width,
                const InferenceOptions& options = {});

/// Infers over every named version, then projects onto input and output bits.
Inference infer_io(const Relation& rel, const InferenceOptions& options = {});

} // namespace bitinv

#endif // BITINV_INFERENCE_HPP
