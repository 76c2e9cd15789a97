// Exact linear algebra over Z/2^w.
//
// Matrices are dense Eigen matrices of an unsigned integral scalar. Native
// unsigned arithmetic already wraps modulo 2^digits, and Z/2^digits maps
// homomorphically onto Z/2^w, so every ring operation is the native one
// followed by a mask.
//
// The canonical form is the Howell form: an echelon form whose pivots are
// powers of two, whose entries above each pivot are reduced modulo that
// pivot, and whose rows span every vector of the module that has leading
// zeros in a given prefix of columns using only the rows past that prefix.
// Two matrices span the same submodule iff their Howell forms are equal.

#ifndef BITINV_MODLIN_HPP
#define BITINV_MODLIN_HPP

#include <Eigen/Core>

#include <algorithm>
#include <bit>
#include <concepts>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace bitinv {

template <typename Word>
using Matrix = Eigen::Matrix<Word, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
template <typename Word>
using RowVector = Eigen::Matrix<Word, 1, Eigen::Dynamic>;

/// The ring Z/2^width carried by the scalar type Word.
template <std::unsigned_integral Word>
class Ring {
public:
  explicit Ring(int width) : width_(width) {
    if (width < 1 || width > std::numeric_limits<Word>::digits)
      throw std::invalid_argument("ring width out of range for scalar type");
    mask_ = width == std::numeric_limits<Word>::digits
                ? std::numeric_limits<Word>::max()
                : static_cast<Word>((Word{1} << width) - 1);
  }

  int width() const { return width_; }
  Word mask() const { return mask_; }

  Word reduce(Word x) const { return static_cast<Word>(x & mask_); }
  Word neg(Word x) const { return reduce(static_cast<Word>(Word{0} - x)); }
  Word mul(Word a, Word b) const { return reduce(static_cast<Word>(a * b)); }

  template <typename Derived>
  auto reduce(const Eigen::MatrixBase<Derived>& m) const {
    const Word mask = mask_;
    return m.unaryExpr([mask](Word x) { return static_cast<Word>(x & mask); });
  }

  /// 2-adic valuation; width for zero.
  int valuation(Word x) const {
    x = reduce(x);
    return x == 0 ? width_ : std::countr_zero(x);
  }

  /// Inverse of an odd element (Newton iteration doubles correct bits).
  Word inverse_odd(Word x) const {
    if ((x & 1U) == 0) throw std::domain_error("inverse of an even residue");
    Word inv = x;
    for (int i = 0; i < 7; ++i) inv = static_cast<Word>(inv * static_cast<Word>(Word{2} - x * inv));
    return reduce(inv);
  }

  Word pow2(int k) const { return k >= width_ ? Word{0} : static_cast<Word>(Word{1} << k); }

private:
  int width_;
  Word mask_;
};

namespace detail {

template <typename Word>
bool is_zero(const RowVector<Word>& r) {
  return (r.array() == Word{0}).all();
}

template <typename Word>
Eigen::Index leading_column(const RowVector<Word>& r) {
  for (Eigen::Index j = 0; j < r.size(); ++j)
    if (r[j] != 0) return j;
  return r.size();
}

template <typename Word>
Matrix<Word> stack(const std::vector<RowVector<Word>>& rows, Eigen::Index cols) {
  Matrix<Word> m(static_cast<Eigen::Index>(rows.size()), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) m.row(static_cast<Eigen::Index>(i)) = rows[i];
  return m;
}

} // namespace detail

/// Canonical generator matrix of the row span of `a` modulo 2^width.
/// Zero rows are dropped, so the span {0} has zero rows.
template <std::unsigned_integral Word>
Matrix<Word> howell_form(const Matrix<Word>& a, int width) {
  const Ring<Word> ring(width);
  const Eigen::Index n = a.cols();

  std::vector<RowVector<Word>> pool;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    RowVector<Word> r = ring.reduce(a.row(i));
    if (!detail::is_zero(r)) pool.push_back(std::move(r));
  }

  std::vector<RowVector<Word>> out;
  std::vector<std::pair<Eigen::Index, int>> pivots; // column, valuation
  for (Eigen::Index col = 0; col < n && !pool.empty(); ++col) {
    std::size_t best = pool.size();
    int best_v = width;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      const int v = ring.valuation(pool[i][col]);
      if (v < best_v) {
        best_v = v;
        best = i;
      }
    }
    if (best == pool.size()) continue;

    RowVector<Word> pivot = std::move(pool[best]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(best));
    const Word unit = ring.inverse_odd(static_cast<Word>(pivot[col] >> best_v));
    pivot = ring.reduce(pivot * unit);

    for (auto& r : pool) {
      const Word factor = static_cast<Word>(r[col] >> best_v);
      if (factor != 0) r = ring.reduce(r - factor * pivot);
    }
    // Multiples of the pivot row that vanish in this column still carry
    // information about later columns.
    if (best_v > 0) {
      RowVector<Word> closure = ring.reduce(pivot * ring.pow2(width - best_v));
      if (!detail::is_zero(closure)) pool.push_back(std::move(closure));
    }
    std::erase_if(pool, [](const RowVector<Word>& r) { return detail::is_zero(r); });

    out.push_back(std::move(pivot));
    pivots.emplace_back(col, best_v);
  }

  for (std::size_t i = 0; i < out.size(); ++i) {
    const auto [col, v] = pivots[i];
    for (std::size_t j = 0; j < i; ++j) {
      const Word factor = static_cast<Word>(out[j][col] >> v);
      if (factor != 0) out[j] = ring.reduce(out[j] - factor * out[i]);
    }
  }
  return detail::stack(out, n);
}

/// Normal form of `v` modulo the span of a Howell-form matrix. Zero iff
/// v lies in the span; equal for two vectors iff they differ by a span element.
template <std::unsigned_integral Word>
RowVector<Word> reduce_by(const Matrix<Word>& howell, RowVector<Word> v, int width) {
  const Ring<Word> ring(width);
  v = ring.reduce(v);
  for (Eigen::Index i = 0; i < howell.rows(); ++i) {
    const RowVector<Word> row = howell.row(i);
    const Eigen::Index col = detail::leading_column(row);
    const int shift = ring.valuation(row[col]);
    const Word factor = static_cast<Word>(v[col] >> shift);
    if (factor != 0) v = ring.reduce(v - factor * row);
  }
  return v;
}

template <std::unsigned_integral Word>
bool in_span(const Matrix<Word>& howell, const RowVector<Word>& v, int width) {
  return detail::is_zero(reduce_by(howell, v, width));
}

/// Howell form of { c : c . g = 0 (mod 2^width) for every row g of `rows` }.
template <std::unsigned_integral Word>
Matrix<Word> nullspace(const Matrix<Word>& rows, Eigen::Index cols, int width) {
  const Eigen::Index m = rows.rows();
  if (m == 0) return howell_form<Word>(Matrix<Word>::Identity(cols, cols), width);
  if (rows.cols() != cols) throw std::invalid_argument("nullspace: column count mismatch");

  // Rows of [G^T | I] are (e_j . G^T, e_j); combinations with a zero left
  // part are exactly the annihilating vectors, and the Howell property
  // makes the rows with leading zeros in the left block span all of them.
  Matrix<Word> aug(cols, m + cols);
  aug.leftCols(m) = rows.transpose();
  aug.rightCols(cols) = Matrix<Word>::Identity(cols, cols);
  const Matrix<Word> h = howell_form<Word>(aug, width);

  std::vector<RowVector<Word>> kernel;
  for (Eigen::Index i = 0; i < h.rows(); ++i)
    if (detail::leading_column<Word>(h.row(i)) >= m) kernel.emplace_back(h.row(i).tail(cols));
  return howell_form<Word>(detail::stack(kernel, cols), width);
}

template <std::unsigned_integral Word>
Matrix<Word> nullspace(const Matrix<Word>& rows, int width) {
  return nullspace<Word>(rows, rows.cols(), width);
}

// --- congruence systems and affine spaces -----------------------------------

/// Conjunction of rows  sum_j coeff_j * x_j = rhs  (mod 2^width), stored as
/// an augmented matrix whose last column holds the right-hand sides.
template <std::unsigned_integral Word>
class BasicCongruenceSystem {
public:
  BasicCongruenceSystem(int width, std::vector<std::string> vars)
      : width_(width), vars_(std::move(vars)), rows_(0, num_vars() + 1) {
    [[maybe_unused]] const Ring<Word> check(width);
  }
  BasicCongruenceSystem(int width, std::vector<std::string> vars, Matrix<Word> augmented)
      : width_(width), vars_(std::move(vars)), rows_(std::move(augmented)) {
    if (rows_.cols() != num_vars() + 1)
      throw std::invalid_argument("augmented matrix has the wrong column count");
    *this = canonical();
  }

  /// The unsatisfiable system: the single row 0 = 1.
  static BasicCongruenceSystem inconsistent(int width, std::vector<std::string> vars) {
    BasicCongruenceSystem s(width, std::move(vars));
    s.rows_ = Matrix<Word>::Zero(1, s.num_vars() + 1);
    s.rows_(0, s.num_vars()) = 1;
    return s;
  }

  int width() const { return width_; }
  const std::vector<std::string>& vars() const { return vars_; }
  Eigen::Index num_vars() const { return static_cast<Eigen::Index>(vars_.size()); }
  Eigen::Index num_rows() const { return rows_.rows(); }

  const Matrix<Word>& augmented() const { return rows_; }
  auto coeffs() const { return rows_.leftCols(num_vars()); }
  auto rhs() const { return rows_.col(num_vars()); }

  bool is_inconsistent() const {
    for (Eigen::Index i = 0; i < rows_.rows(); ++i)
      if (detail::leading_column<Word>(rows_.row(i)) == num_vars()) return true;
    return false;
  }

  void add_row(const RowVector<Word>& coeffs, Word rhs) {
    if (coeffs.size() != num_vars()) throw std::invalid_argument("row length mismatch");
    const Ring<Word> ring(width_);
    rows_.conservativeResize(rows_.rows() + 1, Eigen::NoChange);
    rows_.row(rows_.rows() - 1) << ring.reduce(coeffs), ring.reduce(rhs);
    *this = canonical();
  }

  /// Howell form of the augmented matrix, or the canonical 0 = 1.
  BasicCongruenceSystem canonical() const {
    BasicCongruenceSystem s(width_, vars_);
    s.rows_ = howell_form<Word>(rows_, width_);
    if (s.is_inconsistent()) return inconsistent(width_, vars_);
    return s;
  }

  /// Whether the row  coeffs . x = rhs  holds on every solution.
  bool implies(const RowVector<Word>& coeffs, Word rhs) const {
    if (is_inconsistent()) return true;
    RowVector<Word> row(num_vars() + 1);
    row << coeffs, rhs;
    return in_span<Word>(howell_form<Word>(rows_, width_), row, width_);
  }

  /// Raw modular evaluation at an arbitrary point, 0-1 or not.
  bool satisfied_by(const RowVector<Word>& point) const {
    const Ring<Word> ring(width_);
    const Eigen::Matrix<Word, Eigen::Dynamic, 1> lhs = ring.reduce(coeffs() * point.transpose());
    return (lhs.array() == ring.reduce(rhs()).array()).all();
  }

  bool operator==(const BasicCongruenceSystem& o) const {
    return width_ == o.width_ && vars_ == o.vars_ && rows_.rows() == o.rows_.rows() &&
           rows_.cols() == o.rows_.cols() && rows_ == o.rows_;
  }

private:
  int width_;
  std::vector<std::string> vars_;
  Matrix<Word> rows_;
};

/// Affine subset { point + sum_i l_i * gen_i } of (Z/2^width)^n, or Empty.
/// Instances are kept canonical: generators in Howell form, point reduced
/// against them.
template <std::unsigned_integral Word>
class BasicAffineSpace {
public:
  static BasicAffineSpace empty(int width, std::vector<std::string> vars) {
    return BasicAffineSpace(width, std::move(vars));
  }
  static BasicAffineSpace full(int width, std::vector<std::string> vars) {
    const auto n = static_cast<Eigen::Index>(vars.size());
    return BasicAffineSpace(width, std::move(vars), RowVector<Word>::Zero(n),
                            Matrix<Word>::Identity(n, n));
  }
  static BasicAffineSpace point_only(int width, std::vector<std::string> vars,
                                     RowVector<Word> point) {
    const auto n = static_cast<Eigen::Index>(vars.size());
    return BasicAffineSpace(width, std::move(vars), std::move(point), Matrix<Word>(0, n));
  }

  BasicAffineSpace(int width, std::vector<std::string> vars, RowVector<Word> point,
                   Matrix<Word> generators)
      : width_(width), vars_(std::move(vars)), point_(std::move(point)),
        generators_(std::move(generators)) {
    if (point_->size() != num_vars() || generators_.cols() != num_vars())
      throw std::invalid_argument("affine space dimensions do not match variables");
    generators_ = howell_form<Word>(generators_, width_);
    point_ = reduce_by<Word>(generators_, *point_, width_);
  }

  int width() const { return width_; }
  const std::vector<std::string>& vars() const { return vars_; }
  Eigen::Index num_vars() const { return static_cast<Eigen::Index>(vars_.size()); }

  bool is_empty() const { return !point_.has_value(); }
  const RowVector<Word>& point() const { return point_.value(); }
  const Matrix<Word>& generators() const { return generators_; }

  bool contains(const RowVector<Word>& v) const {
    if (is_empty()) return false;
    return in_span<Word>(generators_, RowVector<Word>(v - *point_), width_);
  }

  /// Subset test on canonical representations.
  bool contains(const BasicAffineSpace& other) const {
    if (other.is_empty()) return true;
    if (is_empty() || !contains(other.point())) return false;
    for (Eigen::Index i = 0; i < other.generators_.rows(); ++i)
      if (!in_span<Word>(generators_, RowVector<Word>(other.generators_.row(i)), width_))
        return false;
    return true;
  }

  /// log2 of the number of elements; the ascending-chain measure.
  int log2_size() const {
    if (is_empty()) return -1;
    const Ring<Word> ring(width_);
    int total = 0;
    for (Eigen::Index i = 0; i < generators_.rows(); ++i) {
      const RowVector<Word> row = generators_.row(i);
      total += width_ - ring.valuation(row[detail::leading_column<Word>(row)]);
    }
    return total;
  }

  bool operator==(const BasicAffineSpace& o) const {
    if (width_ != o.width_ || vars_ != o.vars_ || is_empty() != o.is_empty()) return false;
    if (is_empty()) return true;
    return *point_ == *o.point_ && generators_.rows() == o.generators_.rows() &&
           generators_ == o.generators_;
  }

private:
  BasicAffineSpace(int width, std::vector<std::string> vars)
      : width_(width), vars_(std::move(vars)), generators_(0, num_vars()) {}

  int width_;
  std::vector<std::string> vars_;
  std::optional<RowVector<Word>> point_;
  Matrix<Word> generators_;
};

/// Solution set of a congruence system.
template <std::unsigned_integral Word>
BasicAffineSpace<Word> space_of(const BasicCongruenceSystem<Word>& c) {
  const Eigen::Index n = c.num_vars();
  if (c.is_inconsistent()) return BasicAffineSpace<Word>::empty(c.width(), c.vars());

  // Solutions of A x = b are the x with (1, x) in the kernel of [-b | A].
  const Ring<Word> ring(c.width());
  Matrix<Word> homogeneous(c.num_rows(), n + 1);
  homogeneous.col(0) = ring.reduce(-c.rhs());
  homogeneous.rightCols(n) = c.coeffs();
  const Matrix<Word> kernel = nullspace<Word>(homogeneous, n + 1, c.width());

  if (kernel.rows() == 0 || kernel(0, 0) != 1)
    return BasicAffineSpace<Word>::empty(c.width(), c.vars());
  RowVector<Word> point = kernel.row(0).tail(n);
  Matrix<Word> gens = kernel.bottomRows(kernel.rows() - 1).rightCols(n);
  return BasicAffineSpace<Word>(c.width(), c.vars(), std::move(point), std::move(gens));
}

/// Constraint representation of an affine space.
template <std::unsigned_integral Word>
BasicCongruenceSystem<Word> constraints_of(const BasicAffineSpace<Word>& s) {
  if (s.is_empty()) return BasicCongruenceSystem<Word>::inconsistent(s.width(), s.vars());
  const Ring<Word> ring(s.width());
  const Matrix<Word> normals = nullspace<Word>(s.generators(), s.num_vars(), s.width());
  Matrix<Word> aug(normals.rows(), s.num_vars() + 1);
  aug.leftCols(s.num_vars()) = normals;
  aug.col(s.num_vars()) = ring.reduce(normals * s.point().transpose());
  return BasicCongruenceSystem<Word>(s.width(), s.vars(), std::move(aug));
}

/// Conjunction of two systems over the same variables.
template <std::unsigned_integral Word>
BasicCongruenceSystem<Word> intersect(const BasicCongruenceSystem<Word>& a,
                                      const BasicCongruenceSystem<Word>& b) {
  if (a.width() != b.width() || a.vars() != b.vars())
    throw std::invalid_argument("intersect: width or variable mismatch");
  Matrix<Word> rows(a.num_rows() + b.num_rows(), a.num_vars() + 1);
  rows << a.augmented(), b.augmented();
  return BasicCongruenceSystem<Word>(a.width(), a.vars(), std::move(rows));
}

namespace detail {

inline std::vector<Eigen::Index> positions(const std::vector<std::string>& from,
                                           const std::vector<std::string>& names) {
  std::vector<Eigen::Index> out;
  for (const auto& name : names) {
    auto it = std::find(from.begin(), from.end(), name);
    if (it == from.end()) throw std::invalid_argument("unknown variable '" + name + "'");
    out.push_back(static_cast<Eigen::Index>(it - from.begin()));
  }
  return out;
}

} // namespace detail

/// Image of `s` under deletion of every coordinate outside `keep`, in the
/// order given by `keep`.
template <std::unsigned_integral Word>
BasicAffineSpace<Word> project(const BasicAffineSpace<Word>& s,
                               const std::vector<std::string>& keep) {
  const auto cols = detail::positions(s.vars(), keep);
  if (s.is_empty()) return BasicAffineSpace<Word>::empty(s.width(), keep);
  return BasicAffineSpace<Word>(s.width(), keep, s.point()(cols),
                                s.generators()(Eigen::all, cols));
}

/// Re-expresses a system over a superset of its variables (new columns are
/// unconstrained).
template <std::unsigned_integral Word>
BasicCongruenceSystem<Word> embed(const BasicCongruenceSystem<Word>& c,
                                  const std::vector<std::string>& vars) {
  const auto cols = detail::positions(vars, c.vars());
  Matrix<Word> aug = Matrix<Word>::Zero(c.num_rows(), static_cast<Eigen::Index>(vars.size()) + 1);
  for (std::size_t j = 0; j < cols.size(); ++j)
    aug.col(cols[j]) = c.coeffs().col(static_cast<Eigen::Index>(j));
  aug.col(static_cast<Eigen::Index>(vars.size())) = c.rhs();
  return BasicCongruenceSystem<Word>(c.width(), vars, std::move(aug));
}

/// Same system with its variables renamed positionally.
template <std::unsigned_integral Word>
BasicCongruenceSystem<Word> rename(const BasicCongruenceSystem<Word>& c,
                                   std::vector<std::string> vars) {
  if (static_cast<Eigen::Index>(vars.size()) != c.num_vars())
    throw std::invalid_argument("rename: variable count mismatch");
  return BasicCongruenceSystem<Word>(c.width(), std::move(vars), c.augmented());
}

template <std::unsigned_integral Word>
BasicAffineSpace<Word> rename(const BasicAffineSpace<Word>& s, std::vector<std::string> vars) {
  if (static_cast<Eigen::Index>(vars.size()) != s.num_vars())
    throw std::invalid_argument("rename: variable count mismatch");
  if (s.is_empty()) return BasicAffineSpace<Word>::empty(s.width(), std::move(vars));
  return BasicAffineSpace<Word>(s.width(), std::move(vars), s.point(), s.generators());
}

using Residue = std::uint64_t;
using CongruenceSystem = BasicCongruenceSystem<Residue>;
using AffineSpace = BasicAffineSpace<Residue>;
using ResidueMatrix = Matrix<Residue>;
using ResidueVector = RowVector<Residue>;

} // namespace bitinv

#endif // BITINV_MODLIN_HPP
