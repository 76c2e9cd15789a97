// Small CDCL solver: two watched literals, first-UIP learning,
// non-chronological backjumping. Deterministic by default (fixed variable
// order, false first) so that model sequences are reproducible.

#ifndef BITINV_SAT_HPP
#define BITINV_SAT_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "bitinv/cnf.hpp"

namespace bitinv {

enum class DecisionOrder { Ascending, Descending };

struct SolverOptions {
  DecisionOrder order = DecisionOrder::Ascending;
  bool vsids = false;
  std::uint64_t max_conflicts = 10'000'000;
};

/// Raised when one solve() call exceeds its conflict budget.
class ResourceError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Total 0-1 assignment; index 0 is unused.
struct Model {
  std::vector<bool> values;

  int num_vars() const { return static_cast<int>(values.size()) - 1; }
  bool operator[](PropVar v) const { return values.at(static_cast<std::size_t>(v)); }
  bool operator==(const Model&) const = default;
};

/// Sat carries a model, Unsat is the empty optional.
using SatResult = std::optional<Model>;

struct SolverStats {
  std::uint64_t solves = 0;
  std::uint64_t conflicts = 0;
  std::uint64_t decisions = 0;
  std::uint64_t propagations = 0;
  std::uint64_t learnt = 0;
};

class Solver {
public:
  explicit Solver(SolverOptions options = {});

  int num_vars() const { return num_vars_; }
  void reserve_vars(int n);

  /// Adds a clause over existing variables; throws std::out_of_range otherwise.
  /// Learned clauses survive across calls.
  void add_clause(Clause clause);
  void add_formula(const CnfFormula& f);

  SatResult solve();

  const SolverStats& stats() const { return stats_; }
  std::size_t num_clauses() const { return clauses_.size() + units_; }

private:
  struct ClauseData {
    std::vector<int> lits;
    bool learnt = false;
  };

  static int encode(Lit l) { return l > 0 ? 2 * l : 2 * -l + 1; }
  static Lit decode(int code) { return code & 1 ? -(code >> 1) : code >> 1; }
  static int negate(int code) { return code ^ 1; }
  static int var_index(int code) { return code >> 1; }

  // -1 unassigned, 0 false, 1 true
  int value(int code) const {
    const int v = assigns_[static_cast<std::size_t>(var_index(code))];
    return v < 0 ? -1 : v ^ (code & 1);
  }

  int decision_level() const { return static_cast<int>(trail_lim_.size()); }
  void enqueue(int code, int reason);
  int propagate();
  void analyze(int conflict, std::vector<int>& learnt, int& backjump);
  void cancel_until(int level);
  int pick_branch();
  void attach(int ci);
  void bump(int var);
  void decay();
  void rebuild_order();
  // Ties on activity fall back to the configured order.
  int heap_key(int var) const {
    return options_.order == DecisionOrder::Ascending ? -var : var;
  }
  int heap_var(int key) const {
    return options_.order == DecisionOrder::Ascending ? -key : key;
  }

  SolverOptions options_;
  SolverStats stats_;
  bool ok_ = true;
  int num_vars_ = 0;
  std::size_t units_ = 0;

  std::vector<ClauseData> clauses_;
  std::vector<std::vector<int>> watches_;
  std::vector<signed char> assigns_;
  std::vector<int> level_;
  std::vector<int> reason_;
  std::vector<int> trail_;
  std::vector<int> trail_lim_;
  std::size_t qhead_ = 0;
  std::vector<char> seen_;

  std::vector<int> order_;
  std::vector<int> order_pos_;
  std::size_t order_head_ = 0;

  std::vector<double> activity_;
  double bump_amount_ = 1.0;
  std::vector<std::pair<double, int>> heap_;
};

/// One-shot convenience wrapper.
SatResult solve(const CnfFormula& f, SolverOptions options = {});

} // namespace bitinv

#endif // BITINV_SAT_HPP
