// Brute-force reference implementations used only by tests. None of these
// call into the CDCL solver or the Howell-form code they are checking.

#ifndef BITINV_TESTS_ORACLES_HPP
#define BITINV_TESTS_ORACLES_HPP

#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "bitinv/bitblast.hpp"
#include "bitinv/cnf.hpp"
#include "bitinv/machine.hpp"
#include "bitinv/modlin.hpp"

namespace oracle {

using bitinv::CnfFormula;
using bitinv::PropVar;
using Vec = std::vector<std::uint64_t>;

/// Matrix equality that tolerates differing shapes.
template <typename A, typename B>
bool same(const A& a, const B& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() && (a.rows() == 0 || a == b);
}

/// Truth-table decision; only for formulas with few variables.
inline std::optional<std::vector<bool>> truth_table_sat(const CnfFormula& f) {
  const int n = f.num_vars;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
    std::vector<bool> a(static_cast<std::size_t>(n) + 1, false);
    for (int v = 1; v <= n; ++v) a[static_cast<std::size_t>(v)] = (bits >> (v - 1)) & 1U;
    if (f.evaluate(a)) return a;
  }
  return std::nullopt;
}

/// Naive recursive DPLL over a partial assignment (-1 unassigned).
class Dpll {
public:
  explicit Dpll(const CnfFormula& f) : f_(f) {}

  using Partial = std::vector<int>;

  Partial empty() const { return Partial(static_cast<std::size_t>(f_.num_vars) + 1, -1); }

  /// Unit propagation to fixpoint; false on conflict.
  bool propagate(Partial& a) const {
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& clause : f_.clauses) {
        int unassigned = 0;
        bitinv::Lit last = 0;
        bool sat = false;
        for (auto l : clause) {
          const int val = a[static_cast<std::size_t>(bitinv::var_of(l))];
          if (val < 0) {
            ++unassigned;
            last = l;
          } else if ((val == 1) == (l > 0)) {
            sat = true;
            break;
          }
        }
        if (sat) continue;
        if (unassigned == 0) return false;
        if (unassigned == 1) {
          a[static_cast<std::size_t>(bitinv::var_of(last))] = last > 0 ? 1 : 0;
          changed = true;
        }
      }
    }
    return true;
  }

  bool satisfiable(Partial a) const {
    if (!propagate(a)) return false;
    for (int v = 1; v <= f_.num_vars; ++v) {
      if (a[static_cast<std::size_t>(v)] >= 0) continue;
      for (int value : {0, 1}) {
        Partial b = a;
        b[static_cast<std::size_t>(v)] = value;
        if (satisfiable(b)) return true;
      }
      return false;
    }
    return true;
  }

  /// Every 0-1 vector over `named` that extends to a model.
  std::set<std::vector<int>> projections(const std::vector<PropVar>& named) const {
    std::set<std::vector<int>> out;
    enumerate(empty(), named, 0, out);
    return out;
  }

private:
  void enumerate(Partial a, const std::vector<PropVar>& named, std::size_t idx,
                 std::set<std::vector<int>>& out) const {
    if (!propagate(a)) return;
    if (idx == named.size()) {
      if (!satisfiable(a)) return;
      std::vector<int> p;
      for (auto v : named) p.push_back(a[static_cast<std::size_t>(v)]);
      out.insert(p);
      return;
    }
    const auto v = static_cast<std::size_t>(named[idx]);
    if (a[v] >= 0) {
      enumerate(a, named, idx + 1, out);
      return;
    }
    for (int value : {0, 1}) {
      Partial b = a;
      b[v] = value;
      enumerate(b, named, idx + 1, out);
    }
  }

  const CnfFormula& f_;
};

/// Bits of a concrete state in register order, LSB first.
inline std::vector<int> state_bits(const bitinv::ConcreteState& s,
                                   const std::vector<bitinv::RegisterId>& regs, int width) {
  std::vector<int> out;
  for (const auto& r : regs)
    for (int i = 0; i < width; ++i) out.push_back(static_cast<int>((s.at(r) >> i) & 1U));
  return out;
}

inline bitinv::ConcreteState state_from_index(std::uint64_t index,
                                              const std::vector<bitinv::RegisterId>& regs,
                                              int width) {
  bitinv::ConcreteState s;
  for (std::size_t k = 0; k < regs.size(); ++k)
    s[regs[k]] = (index >> (k * static_cast<std::size_t>(width))) & ((std::uint64_t{1} << width) - 1);
  return s;
}

/// All (input bits ++ output bits) vectors of a straight-line program, by simulation.
inline std::set<std::vector<int>> concrete_io(const bitinv::Program& p) {
  const int w = p.word.width();
  const auto total = static_cast<std::uint64_t>(w) * p.registers.size();
  std::set<std::vector<int>> out;
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << total); ++x) {
    auto in = state_from_index(x, p.registers, w);
    auto post = bitinv::concrete_run(p.body, in, p.word);
    auto v = state_bits(in, p.registers, w);
    auto o = state_bits(post, p.registers, w);
    v.insert(v.end(), o.begin(), o.end());
    out.insert(v);
  }
  return out;
}

/// Every element of the row span of `rows` mod 2^width, by closure.
inline std::set<Vec> span(const std::vector<Vec>& rows, std::size_t n, int width) {
  const std::uint64_t mod = std::uint64_t{1} << width;
  std::set<Vec> seen{Vec(n, 0)};
  std::vector<Vec> frontier{Vec(n, 0)};
  while (!frontier.empty()) {
    Vec cur = frontier.back();
    frontier.pop_back();
    for (const auto& r : rows) {
      Vec next(n);
      for (std::size_t j = 0; j < n; ++j) next[j] = (cur[j] + r[j]) % mod;
      if (seen.insert(next).second) frontier.push_back(next);
    }
  }
  return seen;
}

/// Every x in (Z/2^width)^n with  sum_j a_ij x_j = b_i  for all rows.
inline std::set<Vec> solutions(const std::vector<Vec>& coeffs, const Vec& rhs, std::size_t n,
                               int width) {
  const std::uint64_t mod = std::uint64_t{1} << width;
  std::set<Vec> out;
  Vec x(n, 0);
  std::uint64_t total = 1;
  for (std::size_t j = 0; j < n; ++j) total *= mod;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::uint64_t t = idx;
    for (std::size_t j = 0; j < n; ++j) {
      x[j] = t % mod;
      t /= mod;
    }
    bool ok = true;
    for (std::size_t i = 0; i < coeffs.size() && ok; ++i) {
      std::uint64_t s = 0;
      for (std::size_t j = 0; j < n; ++j) s += coeffs[i][j] * x[j];
      ok = s % mod == rhs[i] % mod;
    }
    if (ok) out.insert(x);
  }
  return out;
}

inline std::vector<Vec> rows_of(const bitinv::ResidueMatrix& m) {
  std::vector<Vec> out;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Vec r;
    for (Eigen::Index j = 0; j < m.cols(); ++j) r.push_back(m(i, j));
    out.push_back(r);
  }
  return out;
}

/// Every element of an affine space, by enumerating its generator span.
inline std::set<Vec> elements(const bitinv::AffineSpace& s) {
  std::set<Vec> out;
  if (s.is_empty()) return out;
  const auto n = static_cast<std::size_t>(s.num_vars());
  const std::uint64_t mod = std::uint64_t{1} << s.width();
  for (const auto& d : span(rows_of(s.generators()), n, s.width())) {
    Vec v(n);
    for (std::size_t j = 0; j < n; ++j)
      v[j] = (s.point()[static_cast<Eigen::Index>(j)] + d[j]) % mod;
    out.insert(v);
  }
  return out;
}

/// Every solution of a system over the whole group.
inline std::set<Vec> solutions(const bitinv::CongruenceSystem& c) {
  Vec b;
  for (Eigen::Index i = 0; i < c.num_rows(); ++i) b.push_back(c.rhs()(i));
  return solutions(rows_of(bitinv::ResidueMatrix(c.coeffs())), b,
                   static_cast<std::size_t>(c.num_vars()), c.width());
}

/// Membership in the integer lattice span(rows) + 2^width Z^n, kept in
/// Hermite form by extended-gcd row operations.
class Lattice {
public:
  Lattice(std::size_t n, int width) : n_(n), mod_(std::int64_t{1} << width), basis_(n) {
    for (std::size_t i = 0; i < n; ++i) {
      basis_[i].assign(n, 0);
      basis_[i][i] = mod_;
    }
  }

  void insert(std::vector<std::int64_t> v) {
    normalize(v);
    for (std::size_t i = 0; i < n_; ++i) {
      if (v[i] == 0) continue;
      auto& b = basis_[i];
      auto [g, s, t] = egcd(b[i], v[i]);
      const std::int64_t bi = b[i] / g, vi = v[i] / g;
      std::vector<std::int64_t> nb(n_), nv(n_);
      for (std::size_t j = 0; j < n_; ++j) {
        nb[j] = s * b[j] + t * v[j];
        nv[j] = vi * b[j] - bi * v[j];
      }
      normalize(nb);
      normalize(nv);
      b = nb;
      v = nv;
    }
  }

  bool contains(std::vector<std::int64_t> v) const {
    normalize(v);
    for (std::size_t i = 0; i < n_; ++i) {
      if (v[i] == 0) continue;
      const auto& b = basis_[i];
      if (v[i] % b[i] != 0) return false;
      const std::int64_t q = v[i] / b[i];
      for (std::size_t j = 0; j < n_; ++j) v[j] -= q * b[j];
      normalize(v);
    }
    return std::all_of(v.begin(), v.end(), [](std::int64_t x) { return x == 0; });
  }

private:
  void normalize(std::vector<std::int64_t>& v) const {
    for (auto& x : v) x = ((x % mod_) + mod_) % mod_;
  }
  static std::tuple<std::int64_t, std::int64_t, std::int64_t> egcd(std::int64_t a, std::int64_t b) {
    if (b == 0) return {a, 1, 0};
    auto [g, s, t] = egcd(b, a % b);
    return {g, t, s - (a / b) * t};
  }

  std::size_t n_;
  std::int64_t mod_;
  std::vector<std::vector<std::int64_t>> basis_;
};

inline std::vector<std::int64_t> diff(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<std::int64_t> d;
  for (std::size_t i = 0; i < a.size(); ++i) d.push_back(a[i] - b[i]);
  return d;
}

/// Whether `space` is exactly the affine hull of `points`.
inline bool is_affine_hull(const bitinv::AffineSpace& space,
                           const std::set<std::vector<int>>& points) {
  if (points.empty()) return space.is_empty();
  if (space.is_empty()) return false;
  const std::size_t n = points.begin()->size();
  const int w = space.width();
  const auto& p0 = *points.begin();

  Lattice hull(n, w);
  for (const auto& p : points) hull.insert(diff(p, p0));

  std::vector<std::int64_t> offset;
  for (std::size_t j = 0; j < n; ++j)
    offset.push_back(static_cast<std::int64_t>(space.point()[static_cast<Eigen::Index>(j)]) - p0[j]);
  if (!hull.contains(offset)) return false;

  Lattice generated(n, w);
  const auto& g = space.generators();
  for (Eigen::Index i = 0; i < g.rows(); ++i) {
    std::vector<std::int64_t> row;
    for (Eigen::Index j = 0; j < g.cols(); ++j) row.push_back(static_cast<std::int64_t>(g(i, j)));
    if (!hull.contains(row)) return false;
    generated.insert(row);
  }
  for (const auto& p : points)
    if (!generated.contains(diff(p, p0))) return false;
  return true;
}

/// All 0-1 vectors of length n satisfying a system, by direct evaluation.
inline std::set<std::vector<int>> zero_one_solutions(const bitinv::CongruenceSystem& c) {
  const auto n = static_cast<std::size_t>(c.num_vars());
  const std::uint64_t mask = c.width() == 64 ? ~std::uint64_t{0}
                                             : (std::uint64_t{1} << c.width()) - 1;
  std::set<std::vector<int>> out;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
    bool ok = true;
    for (Eigen::Index i = 0; i < c.num_rows() && ok; ++i) {
      std::uint64_t s = 0;
      for (std::size_t j = 0; j < n; ++j)
        if ((bits >> j) & 1U) s += c.coeffs()(i, static_cast<Eigen::Index>(j));
      ok = (s & mask) == (c.rhs()(i) & mask);
    }
    if (!ok) continue;
    std::vector<int> v;
    for (std::size_t j = 0; j < n; ++j) v.push_back(static_cast<int>((bits >> j) & 1U));
    out.insert(v);
  }
  return out;
}

/// Random straight-line program over registers r0, r1, ...
inline bitinv::Program random_program(std::mt19937& rng, int width, int num_regs,
                                      int max_len) {
  using bitinv::Opcode;
  static const Opcode ops[] = {Opcode::Inc,  Opcode::Dec, Opcode::Mov, Opcode::Movi,
                               Opcode::Add,  Opcode::Addi, Opcode::Sub, Opcode::Xor,
                               Opcode::And,  Opcode::Or,  Opcode::Not, Opcode::Shl,
                               Opcode::Shr};
  bitinv::Program p{bitinv::WordSpec(width), {}, {}};
  for (int i = 0; i < num_regs; ++i) p.registers.push_back("r" + std::to_string(i));
  std::uniform_int_distribution<int> len(0, max_len);
  std::uniform_int_distribution<int> op(0, 12);
  std::uniform_int_distribution<int> reg(0, num_regs - 1);
  std::uniform_int_distribution<std::uint64_t> imm(0, (std::uint64_t{1} << width) - 1);
  std::uniform_int_distribution<int> shift(0, width - 1);
  const int n = len(rng);
  for (int k = 0; k < n; ++k) {
    bitinv::Instruction in{ops[op(rng)], p.registers[static_cast<std::size_t>(reg(rng))], {}, 0};
    if (bitinv::has_register_operand(in.op)) in.src = p.registers[static_cast<std::size_t>(reg(rng))];
    if (in.op == Opcode::Shl || in.op == Opcode::Shr)
      in.imm = static_cast<std::uint64_t>(shift(rng));
    else if (bitinv::has_immediate_operand(in.op))
      in.imm = imm(rng);
    p.body.push_back(in);
  }
  return p;
}

} // namespace oracle

#endif // BITINV_TESTS_ORACLES_HPP
