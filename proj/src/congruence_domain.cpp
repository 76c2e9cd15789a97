#include "bitinv/congruence_domain.hpp"

#include <algorithm>

namespace bitinv {

void NamedBitOrder::append(const BitVarMap& map) {
  const auto n = map.names();
  const auto v = map.vars();
  names.insert(names.end(), n.begin(), n.end());
  vars.insert(vars.end(), v.begin(), v.end());
}

NamedBitOrder io_order(const Relation& rel) {
  NamedBitOrder order;
  order.append(rel.input);
  order.append(rel.output);
  return order;
}

NamedBitOrder full_order(const Relation& rel) {
  NamedBitOrder order;
  order.append(rel.input);
  for (const auto& mid : rel.intermediates) order.append(mid);
  order.append(rel.output);
  return order;
}

namespace {

ResidueVector point_of(const Model& m, const NamedBitOrder& order) {
  ResidueVector p(static_cast<Eigen::Index>(order.size()));
  for (std::size_t i = 0; i < order.size(); ++i) {
    const PropVar v = order.vars[i];
    if (v < 1 || v > m.num_vars())
      throw std::out_of_range("model does not assign " + order.names[i]);
    p[static_cast<Eigen::Index>(i)] = m[v] ? 1 : 0;
  }
  return p;
}

} // namespace

AffineSpace from_model(const Model& m, const NamedBitOrder& order, int width) {
  return AffineSpace::point_only(width, order.names, point_of(m, order));
}

bool describes(const CongruenceSystem& c, const Model& m, const NamedBitOrder& order) {
  return c.satisfied_by(point_of(m, order));
}

CnfFormula encode_negation(const CongruenceSystem& c, const NamedBitOrder& order,
                           VarAllocator& alloc) {
  if (static_cast<Eigen::Index>(order.size()) != c.num_vars())
    throw std::invalid_argument("encode_negation: order does not match system");
  const int w = c.width();
  CnfFormula f;
  CircuitBuilder cb(f, alloc);

  const Ring<Residue> ring(w);
  const Residue half = ring.pow2(w - 1);
  auto accumulate = [&](Bits sum, Residue a, PropVar v) {
    const Signal x = Signal::of(v);
    Bits term;
    for (int k = 0; k < w; ++k) term.push_back((a >> k) & 1U ? x : Signal::constant(false));
    return cb.add(sum, term, Signal::constant(false));
  };

  Clause violated;
  bool trivially_violated = false;
  for (Eigen::Index i = 0; i < c.num_rows(); ++i) {
    // Each coefficient goes to the side where its magnitude is at most
    // 2^(w-1): a weighted bit sum then compares against another weighted
    // bit sum plus the constant, instead of against a chain of negations.
    Bits lhs = CircuitBuilder::constant_bits(0, w);
    Bits rhs = CircuitBuilder::constant_bits(c.rhs()(i), w);
    for (Eigen::Index j = 0; j < c.num_vars(); ++j) {
      const Residue a = c.coeffs()(i, j);
      const PropVar v = order.vars[static_cast<std::size_t>(j)];
      if (a == 0) continue;
      if (a <= half)
        lhs = accumulate(std::move(lhs), a, v);
      else
        rhs = accumulate(std::move(rhs), ring.neg(a), v);
    }
    const Signal holds = cb.equal(lhs, rhs);
    if (holds.is_constant()) {
      if (!holds.value()) trivially_violated = true;
      continue;
    }
    violated.push_back((~holds).lit());
  }

  f.num_vars = std::max(f.num_vars, alloc.used());
  if (trivially_violated) return f;
  f.add(std::move(violated));
  f.num_vars = std::max(f.num_vars, alloc.used());
  return f;
}

CongruenceSystem compose_abstract(const CongruenceSystem& first,
                                  const CongruenceSystem& second) {
  if (first.width() != second.width())
    throw std::invalid_argument("compose_abstract: width mismatch");
  const auto& a = first.vars();
  const auto& b = second.vars();
  auto in = [](const std::vector<std::string>& xs, const std::string& x) {
    return std::find(xs.begin(), xs.end(), x) != xs.end();
  };

  std::vector<std::string> all = a;
  std::vector<std::string> keep;
  for (const auto& x : a)
    if (!in(b, x)) keep.push_back(x);
  for (const auto& x : b) {
    if (!in(a, x)) {
      all.push_back(x);
      keep.push_back(x);
    }
  }
  const CongruenceSystem joint = intersect(embed(first, all), embed(second, all));
  return constraints_of(project(space_of(joint), keep));
}

} // namespace bitinv
