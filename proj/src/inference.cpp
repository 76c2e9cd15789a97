#include "bitinv/inference.hpp"

#include <stdexcept>
#include <string>

namespace bitinv {

std::size_t sat_call_bound(std::size_t named_bits, int width) {
  return named_bits * static_cast<std::size_t>(width) + 2;
}

Inference infer(const Relation& rel, const NamedBitOrder& order, int width,
                const InferenceOptions& options) {
  InferenceStats stats;
  stats.named_bits = order.size();
  const std::size_t bound = sat_call_bound(order.size(), width);

  Solver solver(options.solver);
  solver.add_formula(rel.formula);
  VarAllocator alloc(solver.num_vars());

  auto finish = [&](AffineSpace space) {
    const auto& s = solver.stats();
    stats.conflicts = s.conflicts;
    stats.decisions = s.decisions;
    stats.clauses = solver.num_clauses();
    stats.variables = solver.num_vars();
    CongruenceSystem system = constraints_of(space);
    return Inference{std::move(system), std::move(space), stats};
  };

  ++stats.sat_calls;
  SatResult model = solver.solve();
  if (!model) return finish(AffineSpace::empty(width, order.names));

  AffineSpace hull = from_model(*model, order, width);
  stats.iterations = 1;
  if (options.on_iteration) options.on_iteration(hull);

  while (true) {
    // The hull only grows, so the violators of the current hull are a subset
    // of every earlier set of violators: earlier negations may stay in the
    // solver and learned clauses remain valid.
    const CnfFormula escape = encode_negation(constraints_of(hull), order, alloc);
    solver.reserve_vars(alloc.used());
    for (const auto& clause : escape.clauses) solver.add_clause(clause);

    ++stats.sat_calls;
    if (stats.sat_calls > bound)
      throw std::logic_error("inference exceeded the ascending-chain bound of " +
                             std::to_string(bound) + " SAT calls");
    model = solver.solve();
    if (!model) break;

    AffineSpace next = merge(hull, from_model(*model, order, width));
    if (next == hull || !next.contains(hull))
      throw std::logic_error("escaping model did not enlarge the hull");
    hull = std::move(next);
    ++stats.iterations;
    if (options.on_iteration) options.on_iteration(hull);
  }
  return finish(std::move(hull));
}

Inference infer_io(const Relation& rel, const InferenceOptions& options) {
  const int width = rel.input.width();
  Inference full = infer(rel, full_order(rel), width, options);
  if (rel.intermediates.empty()) return full;
  AffineSpace io = project(full.space, io_order(rel).names);
  CongruenceSystem system = constraints_of(io);
  return Inference{std::move(system), std::move(io), full.stats};
}

} // namespace bitinv
