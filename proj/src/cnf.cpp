#include "bitinv/cnf.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace bitinv {

bool CnfFormula::has_empty_clause() const {
  return std::any_of(clauses.begin(), clauses.end(),
                     [](const Clause& c) { return c.empty(); });
}

void CnfFormula::add(Clause c) {
  for (Lit l : c) num_vars = std::max(num_vars, var_of(l));
  clauses.push_back(std::move(c));
}

void CnfFormula::conjoin(const CnfFormula& other) {
  num_vars = std::max(num_vars, other.num_vars);
  clauses.insert(clauses.end(), other.clauses.begin(), other.clauses.end());
}

bool CnfFormula::evaluate(const std::vector<bool>& assignment) const {
  return std::all_of(clauses.begin(), clauses.end(), [&](const Clause& c) {
    return std::any_of(c.begin(), c.end(), [&](Lit l) {
      return assignment.at(var_of(l)) == (l > 0);
    });
  });
}

void write_dimacs(std::ostream& os, const CnfFormula& f,
                  const std::vector<std::string>& comments) {
  for (const auto& c : comments) os << "c " << c << '\n';
  os << "p cnf " << f.num_vars << ' ' << f.clauses.size() << '\n';
  for (const auto& clause : f.clauses) {
    for (Lit l : clause) os << l << ' ';
    os << "0\n";
  }
}

CnfFormula read_dimacs(std::istream& is) {
  CnfFormula f;
  bool header = false;
  std::size_t declared_clauses = 0;
  Clause current;
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first) || first == "c" || first[0] == 'c' || first[0] == '%') continue;
    if (first == "p") {
      std::string kind;
      long vars = -1, clauses = -1;
      if (header || !(ls >> kind >> vars >> clauses) || kind != "cnf" || vars < 0 ||
          clauses < 0)
        throw std::runtime_error("dimacs line " + std::to_string(line_no) +
                                 ": bad problem line");
      header = true;
      f.num_vars = static_cast<int>(vars);
      declared_clauses = static_cast<std::size_t>(clauses);
      continue;
    }
    if (!header)
      throw std::runtime_error("dimacs line " + std::to_string(line_no) +
                               ": clause before problem line");
    std::istringstream all(line);
    long lit = 0;
    while (all >> lit) {
      if (lit == 0) {
        f.clauses.push_back(std::move(current));
        current.clear();
        continue;
      }
      if (std::labs(lit) > f.num_vars)
        throw std::runtime_error("dimacs line " + std::to_string(line_no) +
                                 ": variable exceeds declared count");
      current.push_back(static_cast<Lit>(lit));
    }
    if (!all.eof())
      throw std::runtime_error("dimacs line " + std::to_string(line_no) +
                               ": expected integers");
  }
  if (!header) throw std::runtime_error("dimacs: missing problem line");
  if (!current.empty()) f.clauses.push_back(std::move(current));
  if (f.clauses.size() != declared_clauses)
    throw std::runtime_error("dimacs: clause count does not match problem line");
  return f;
}

} // namespace bitinv
