// The congruence abstraction of propositional relations: SAT models as
// affine points, the affine-hull join, concretisation membership, and the
// CNF encoding of "violates at least one row".

#ifndef BITINV_CONGRUENCE_DOMAIN_HPP
#define BITINV_CONGRUENCE_DOMAIN_HPP

#include <string>
#include <vector>

#include "bitinv/bitblast.hpp"
#include "bitinv/modlin.hpp"
#include "bitinv/sat.hpp"

namespace bitinv {

/// Named bits of a relation in the order shared by models, affine
/// coordinates and printed congruences.
struct NamedBitOrder {
  std::vector<std::string> names;
  std::vector<PropVar> vars;

  std::size_t size() const { return names.size(); }
  void append(const BitVarMap& map);
};

/// Input bits then output bits.
NamedBitOrder io_order(const Relation& rel);
/// Input bits, every intermediate version in order, then output bits.
NamedBitOrder full_order(const Relation& rel);

/// The model's 0-1 values on `order` as a single affine point.
AffineSpace from_model(const Model& m, const NamedBitOrder& order, int width);

/// Smallest affine space containing both arguments.
template <std::unsigned_integral Word>
BasicAffineSpace<Word> merge(const BasicAffineSpace<Word>& a, const BasicAffineSpace<Word>& b) {
  if (a.width() != b.width() || a.vars() != b.vars())
    throw std::invalid_argument("merge: width or variable order mismatch");
  if (a.is_empty()) return b;
  if (b.is_empty()) return a;
  const Ring<Word> ring(a.width());
  Matrix<Word> gens(a.generators().rows() + b.generators().rows() + 1, a.num_vars());
  gens << a.generators(), b.generators(), ring.reduce(b.point() - a.point());
  return BasicAffineSpace<Word>(a.width(), a.vars(), a.point(), std::move(gens));
}

/// Whether the 0-1 vector of `m` on `order` satisfies every row.
bool describes(const CongruenceSystem& c, const Model& m, const NamedBitOrder& order);

/// CNF whose models, projected onto `order`, are exactly the 0-1 vectors
/// violating at least one row of `c`. Fresh gate variables come from `alloc`.
CnfFormula encode_negation(const CongruenceSystem& c, const NamedBitOrder& order,
                           VarAllocator& alloc);

/// Relational product of two affine relations that share the variables
/// they have in common: conjoin, then project the shared variables away.
CongruenceSystem compose_abstract(const CongruenceSystem& first,
                                  const CongruenceSystem& second);

} // namespace bitinv

#endif // BITINV_CONGRUENCE_DOMAIN_HPP
