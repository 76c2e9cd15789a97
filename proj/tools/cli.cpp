#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "bitinv/bitblast.hpp"
#include "bitinv/fixpoint.hpp"
#include "bitinv/format.hpp"
#include "bitinv/inference.hpp"
#include "bitinv/machine.hpp"
#include "bitinv/sat.hpp"

namespace bitinv::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Settings {
  std::string file;
  std::string cnf_out;
  std::string seed_order = "asc";
  std::uint64_t max_conflicts = 10'000'000;
  bool json = false;
  bool keep_intermediates = false;
  bool vsids = false;

  SolverOptions solver() const {
    SolverOptions o;
    o.order = seed_order == "desc" ? DecisionOrder::Descending : DecisionOrder::Ascending;
    o.max_conflicts = max_conflicts;
    o.vsids = vsids;
    return o;
  }
};

nlohmann::json stats_json(const InferenceStats& s) {
  return {{"iterations", s.iterations}, {"sat_calls", s.sat_calls},
          {"named_bits", s.named_bits}, {"conflicts", s.conflicts},
          {"decisions", s.decisions},   {"clauses", s.clauses},
          {"variables", s.variables}};
}

void print_stats(std::ostream& os, const InferenceStats& s) {
  os << "iterations=" << s.iterations << '\n'
     << "sat_calls=" << s.sat_calls << '\n'
     << "conflicts=" << s.conflicts << '\n'
     << "clauses=" << s.clauses << '\n';
}

void run_infer(const Settings& st, std::ostream& os) {
  const Program program = parse_straight_line(read_file(st.file));
  const Relation rel = blast_program(program);
  InferenceOptions options;
  options.solver = st.solver();
  const Inference result =
      st.keep_intermediates
          ? infer(rel, full_order(rel), program.word.width(), options)
          : infer_io(rel, options);

  if (st.json) {
    nlohmann::json j = to_json(result.system);
    j["stats"] = stats_json(result.stats);
    os << j.dump(2) << '\n';
    return;
  }
  os << format_system(result.system);
  print_stats(os, result.stats);
}

void run_analyze(const Settings& st, std::ostream& os) {
  const Cfg cfg = parse_cfg(read_file(st.file));
  FixpointOptions options;
  options.inference.solver = st.solver();
  const AnalysisResult result = analyze(cfg, std::nullopt, options);

  std::size_t sat_calls = 0;
  for (const auto& [label, summary] : result.summaries) sat_calls += summary.stats.sat_calls;

  if (st.json) {
    nlohmann::json blocks = nlohmann::json::array();
    for (const auto& [label, space] : result.entry) {
      nlohmann::json b = to_json(constraints_of(space));
      b["label"] = label;
      b["updates"] = result.updates.at(label);
      blocks.push_back(std::move(b));
    }
    os << nlohmann::json{{"width", cfg.word.width()},
                         {"blocks", blocks},
                         {"stats", {{"sat_calls", sat_calls}}}}
              .dump(2)
       << '\n';
    return;
  }
  for (const auto& [label, space] : result.entry) {
    os << label << ":\n";
    const CongruenceSystem sys = constraints_of(space);
    if (sys.num_rows() == 0) os << "  true\n";
    for (Eigen::Index i = 0; i < sys.num_rows(); ++i) os << "  " << format_row(sys, i) << '\n';
  }
  os << "sat_calls=" << sat_calls << '\n';
}

void run_blast(const Settings& st, std::ostream& os) {
  const Program program = parse_straight_line(read_file(st.file));
  const Relation rel = blast_program(program);
  if (st.cnf_out.empty() || st.cnf_out == "-") {
    write_relation_dimacs(os, rel);
    return;
  }
  std::ofstream file(st.cnf_out);
  if (!file) throw UsageError("cannot write '" + st.cnf_out + "'");
  write_relation_dimacs(file, rel);
  os << "wrote " << st.cnf_out << ": " << rel.formula.num_vars << " variables, "
     << rel.formula.clauses.size() << " clauses\n";
}

void run_sat(const Settings& st, std::ostream& os) {
  std::istringstream in(read_file(st.file));
  CnfFormula f;
  try {
    f = read_dimacs(in);
  } catch (const std::runtime_error& e) {
    throw UsageError(e.what());
  }
  const SatResult result = solve(f, st.solver());
  if (!result) {
    os << "UNSAT\n";
    return;
  }
  os << "SAT\n";
  std::ostringstream line;
  line << 'v';
  for (int v = 1; v <= result->num_vars(); ++v) {
    line << ' ' << ((*result)[v] ? v : -v);
    if (line.tellp() > 72) {
      os << line.str() << '\n';
      line.str("");
      line << 'v';
    }
  }
  os << line.str() << " 0\n";
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Congruence invariants of bit-blasted register programs", "bitinv"};
  app.require_subcommand(1);
  Settings st;

  auto add_solver_flags = [&](CLI::App* sub) {
    sub->add_option("--max-conflicts", st.max_conflicts, "Conflict budget per SAT call");
    sub->add_option("--seed-order", st.seed_order, "Decision order")
        ->check(CLI::IsMember({"asc", "desc"}));
    sub->add_flag("--vsids", st.vsids, "Activity-based decisions instead of a fixed order");
  };

  auto* infer_cmd = app.add_subcommand("infer", "Input/output congruences of a straight-line program");
  infer_cmd->add_option("file", st.file)->required();
  infer_cmd->add_flag("--keep-intermediates", st.keep_intermediates,
                      "Report the system over every intermediate version too");
  infer_cmd->add_flag("--json", st.json);
  add_solver_flags(infer_cmd);

  auto* analyze_cmd = app.add_subcommand("analyze", "Block entry invariants of a CFG");
  analyze_cmd->add_option("file", st.file)->required();
  analyze_cmd->add_flag("--json", st.json);
  add_solver_flags(analyze_cmd);

  auto* blast_cmd = app.add_subcommand("blast", "Emit the program relation as DIMACS");
  blast_cmd->add_option("file", st.file)->required();
  blast_cmd->add_option("--emit-cnf", st.cnf_out, "Output path ('-' for stdout)");

  auto* sat_cmd = app.add_subcommand("sat", "Solve a DIMACS CNF file");
  sat_cmd->add_option("file", st.file)->required();
  add_solver_flags(sat_cmd);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  std::ostringstream buffer;
  try {
    if (*infer_cmd) run_infer(st, buffer);
    else if (*analyze_cmd) run_analyze(st, buffer);
    else if (*blast_cmd) run_blast(st, buffer);
    else if (*sat_cmd) run_sat(st, buffer);
  } catch (const ResourceError& e) {
    err << "bitinv: resource limit: " << e.what() << '\n';
    return kResource;
  } catch (const ParseError& e) {
    err << st.file << ':' << e.what() << '\n';
    return kUsage;
  } catch (const UsageError& e) {
    err << "bitinv: " << e.what() << '\n';
    return kUsage;
  }
  out << buffer.str();
  return kOk;
}

} // namespace bitinv::cli
