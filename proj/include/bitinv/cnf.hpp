// Propositional formulas in clausal form, DIMACS conventions throughout:
// variables are 1-based, literal -v is the negation of v.

#ifndef BITINV_CNF_HPP
#define BITINV_CNF_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace bitinv {

using PropVar = int;
using Lit = int;

inline PropVar var_of(Lit l) { return l < 0 ? -l : l; }

using Clause = std::vector<Lit>;

struct CnfFormula {
  int num_vars = 0;
  std::vector<Clause> clauses;

  static CnfFormula truth() { return {}; }
  static CnfFormula falsity() { return {0, {Clause{}}}; }

  bool has_empty_clause() const;
  void add(Clause c);
  /// Appends the clauses of `other` and widens num_vars as needed.
  void conjoin(const CnfFormula& other);
  /// Evaluates under a total assignment indexed by variable (index 0 unused).
  bool evaluate(const std::vector<bool>& assignment) const;
};

/// Hands out fresh variables densely; never reuses an index.
class VarAllocator {
public:
  explicit VarAllocator(int used = 0) : used_(used) {}
  PropVar fresh() { return ++used_; }
  int used() const { return used_; }

private:
  int used_;
};

void write_dimacs(std::ostream& os, const CnfFormula& f,
                  const std::vector<std::string>& comments = {});
/// Reads "p cnf" formatted input; throws std::runtime_error on malformed input.
CnfFormula read_dimacs(std::istream& is);

} // namespace bitinv

#endif // BITINV_CNF_HPP
