// Text and JSON renderings of congruence systems. Both formats are stable:
// rows come out in Howell order, terms in variable order, coefficients as
// unsigned residues.

#ifndef BITINV_FORMAT_HPP
#define BITINV_FORMAT_HPP

#include <string>

#include <json.hpp>

#include "bitinv/modlin.hpp"

namespace bitinv {

/// "a1*v1 + a2*v2 ≡ b (mod 2^w)" for row i; zero coefficients are omitted.
std::string format_row(const CongruenceSystem& c, Eigen::Index i);
/// One row per line.
std::string format_system(const CongruenceSystem& c);

/// {"width": w, "vars": [...], "rows": [{"coeffs": [...], "rhs": b}, ...]}
nlohmann::json to_json(const CongruenceSystem& c);
CongruenceSystem system_from_json(const nlohmann::json& j);

} // namespace bitinv

#endif // BITINV_FORMAT_HPP
