#include "bitinv/format.hpp"

#include <sstream>

namespace bitinv {

std::string format_row(const CongruenceSystem& c, Eigen::Index i) {
  std::ostringstream os;
  bool first = true;
  for (Eigen::Index j = 0; j < c.num_vars(); ++j) {
    const Residue a = c.coeffs()(i, j);
    if (a == 0) continue;
    os << (first ? "" : " + ") << a << '*' << c.vars()[static_cast<std::size_t>(j)];
    first = false;
  }
  if (first) os << '0';
  os << " ≡ " << c.rhs()(i) << " (mod 2^" << c.width() << ')';
  return os.str();
}

std::string format_system(const CongruenceSystem& c) {
  std::string out;
  for (Eigen::Index i = 0; i < c.num_rows(); ++i) out += format_row(c, i) + '\n';
  return out;
}

nlohmann::json to_json(const CongruenceSystem& c) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < c.num_rows(); ++i) {
    std::vector<Residue> coeffs(static_cast<std::size_t>(c.num_vars()));
    for (Eigen::Index j = 0; j < c.num_vars(); ++j) coeffs[static_cast<std::size_t>(j)] = c.coeffs()(i, j);
    rows.push_back({{"coeffs", coeffs}, {"rhs", c.rhs()(i)}});
  }
  return {{"width", c.width()}, {"vars", c.vars()}, {"rows", rows}};
}

CongruenceSystem system_from_json(const nlohmann::json& j) {
  const int width = j.at("width").get<int>();
  auto vars = j.at("vars").get<std::vector<std::string>>();
  const auto n = static_cast<Eigen::Index>(vars.size());
  const auto& rows = j.at("rows");
  ResidueMatrix aug(static_cast<Eigen::Index>(rows.size()), n + 1);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto coeffs = rows[i].at("coeffs").get<std::vector<Residue>>();
    if (static_cast<Eigen::Index>(coeffs.size()) != n)
      throw std::invalid_argument("json row has the wrong number of coefficients");
    for (Eigen::Index k = 0; k < n; ++k)
      aug(static_cast<Eigen::Index>(i), k) = coeffs[static_cast<std::size_t>(k)];
    aug(static_cast<Eigen::Index>(i), n) = rows[i].at("rhs").get<Residue>();
  }
  return CongruenceSystem(width, std::move(vars), std::move(aug));
}

} // namespace bitinv
