// Reference systems for two increments of one 4-bit register r, written
// with r = input, t = first intermediate version, o = output.

#ifndef BITINV_TESTS_DOUBLE_INC_HPP
#define BITINV_TESTS_DOUBLE_INC_HPP

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "bitinv/modlin.hpp"

namespace double_inc {

struct Term {
  std::string var;
  std::int64_t coeff;
};

struct Row {
  std::vector<Term> terms;
  std::int64_t rhs;
};

inline bitinv::CongruenceSystem build(int width, const std::vector<std::string>& vars,
                                      const std::vector<Row>& rows) {
  const std::int64_t mod = std::int64_t{1} << width;
  auto residue = [&](std::int64_t x) { return static_cast<bitinv::Residue>(((x % mod) + mod) % mod); };
  bitinv::ResidueMatrix aug = bitinv::ResidueMatrix::Zero(static_cast<Eigen::Index>(rows.size()),
                                                          static_cast<Eigen::Index>(vars.size()) + 1);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto r = static_cast<Eigen::Index>(i);
    for (const auto& t : rows[i].terms) {
      const auto c = static_cast<Eigen::Index>(
          std::find(vars.begin(), vars.end(), t.var) - vars.begin());
      if (c == static_cast<Eigen::Index>(vars.size()))
        throw std::invalid_argument("unknown variable " + t.var);
      aug(r, c) = residue(static_cast<std::int64_t>(aug(r, c)) + t.coeff);
    }
    aug(r, static_cast<Eigen::Index>(vars.size())) = residue(rows[i].rhs);
  }
  return bitinv::CongruenceSystem(width, vars, std::move(aug));
}

inline std::vector<std::string> bits(const std::string& version, int width = 4) {
  std::vector<std::string> out;
  for (int i = 0; i < width; ++i) out.push_back("r[" + std::to_string(i) + "]@" + version);
  return out;
}

inline std::string r(int i) { return "r[" + std::to_string(i) + "]@in"; }
inline std::string t(int i) { return "r[" + std::to_string(i) + "]@temp1"; }
inline std::string o(int i) { return "r[" + std::to_string(i) + "]@out"; }

inline std::vector<std::string> io_vars() {
  auto v = bits("in");
  auto b = bits("out");
  v.insert(v.end(), b.begin(), b.end());
  return v;
}

inline std::vector<std::string> full_vars() {
  auto v = bits("in");
  for (const char* version : {"temp1", "out"}) {
    auto b = bits(version);
    v.insert(v.end(), b.begin(), b.end());
  }
  return v;
}

/// Affine hull of every model over input, intermediate and output bits.
inline bitinv::CongruenceSystem full_hull() {
  return build(4, full_vars(),
               {{{{r(0), 1}, {t(0), 1}}, 1},
                {{{r(1), 1}, {o(1), 1}}, 1},
                {{{r(2), 4}, {o(2), 4}, {r(3), -8}, {t(0), -4}, {t(1), -4}, {t(2), -8}, {o(3), -8}}, -4},
                {{{t(0), 1}, {o(0), 1}}, 1},
                {{{t(1), 2}, {t(2), 4}, {t(3), -8}, {o(0), -2}, {o(1), -2}, {o(2), -4}, {o(3), -8}}, -2}});
}

/// The same hull with the intermediate version projected away.
inline bitinv::CongruenceSystem io_hull() {
  return build(4, io_vars(),
               {{{{r(0), 1}, {o(0), -1}}, 0},
                {{{r(1), 1}, {o(1), 1}}, 1},
                {{{r(1), 2}, {r(2), 4}, {r(3), 8}, {o(1), -2}, {o(2), -4}, {o(3), -8}}, -2}});
}

/// 2 + sum 2^i r_i = sum 2^i o_i at the given width.
inline bitinv::CongruenceSystem value_row(int width) {
  Row row{{}, -2};
  for (int i = 0; i < width; ++i) {
    const std::int64_t w = std::int64_t{1} << i;
    row.terms.push_back({"r[" + std::to_string(i) + "]@in", w});
    row.terms.push_back({"r[" + std::to_string(i) + "]@out", -w});
  }
  auto vars = bits("in", width);
  auto out = bits("out", width);
  vars.insert(vars.end(), out.begin(), out.end());
  return build(width, vars, {row});
}

} // namespace double_inc

#endif // BITINV_TESTS_DOUBLE_INC_HPP
