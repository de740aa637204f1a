// pidwb: command-line front end for the PID workbench.
//
// Exit codes: 0 success, 1 internal error, 2 usage or input error, 3 measure does not support the
// number of sources, 4 solver failure, 5 verification grid contradicts the golden table.

#include "pidwb/axioms.hpp"
#include "pidwb/gates.hpp"
#include "pidwb/lattice.hpp"
#include "pidwb/logic.hpp"
#include "pidwb/measures.hpp"
#include "pidwb/report.hpp"
#include "pidwb/system.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace pidwb;

enum ExitCode { kOk = 0, kInternal = 1, kUsage = 2, kArity = 3, kSolver = 4, kMismatch = 5 };

// Errors that map to the usage/input exit code.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string format = "table";
  std::uint64_t seed = MeasureConfig{}.seed;
  double tol = 0.0;
  int threads = 0;

  std::vector<std::string> measures;
  std::string gate;
  std::string system_path;

  std::vector<std::string> properties;
  std::string golden;
  std::string markdown_path;
  std::string verdicts_path;

  std::string web;
  std::vector<std::string> atoms;
  std::vector<std::string> base = {"S0", "M0", "SR"};
  std::vector<std::string> require;

  std::string gate_id;
  std::string out_path;
  int lattice_n = 2;
};

MeasureConfig config_of(const Options& o) {
  MeasureConfig cfg;
  cfg.seed = o.seed;
  return cfg;
}

SystemSpec load_input_system(const Options& o) {
  if (!o.gate.empty() && !o.system_path.empty()) throw InputError("give either --gate or --system, not both");
  if (!o.gate.empty()) return make_gate(o.gate);
  if (!o.system_path.empty()) return load_system(o.system_path);
  throw InputError("compute needs --gate or --system");
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw InputError("cannot write '" + path + "'");
  f << text;
}

int cmd_compute(const Options& o) {
  const Format fmt = parse_format(o.format);
  if (o.measures.empty()) throw InputError("compute needs --measure");
  SystemSpec s = load_input_system(o);
  std::vector<Decomposition> ds;
  for (const auto& m : o.measures) ds.push_back(decompose(m, s, config_of(o)));
  write_decompositions(std::cout, ds, fmt);
  return kOk;
}

int cmd_verify(const Options& o) {
  const Format fmt = parse_format(o.format);
  GoldenTable golden;
  try {
    golden = load_golden(o.golden.empty() ? default_golden_path() : o.golden);
  } catch (const std::runtime_error& e) {
    throw InputError(e.what());
  }
  GridOptions opt;
  opt.measures = o.measures;
  opt.properties = o.properties;
  opt.threads = o.threads;
  opt.qualifiers = &golden;
  opt.tolerance = o.tol;
  Grid g = verify_table(default_corpus(), opt, config_of(o));
  write_grid(std::cout, g, &golden, fmt);
  if (!o.markdown_path.empty()) write_file(o.markdown_path, grid_markdown(g, &golden));
  if (!o.verdicts_path.empty()) {
    std::ostringstream csv;
    write_grid(csv, g, &golden, Format::Csv);
    write_file(o.verdicts_path, csv.str());
  }
  auto diffs = compare_with_golden(g, golden);
  const std::size_t bad = count_contradictions(diffs);
  std::vector<GoldenDiff> contradictions;
  for (const auto& d : diffs)
    if (d.kind == GoldenDiff::Kind::Contradiction) contradictions.push_back(d);
  std::cerr << "cells: " << g.cells.size() << ", contradictions: " << bad
            << ", unconfirmed or applicability differences: " << diffs.size() - bad << '\n';
  if (bad > 0) {
    write_diffs(std::cerr, contradictions, Format::Table);
    return kMismatch;
  }
  return kOk;
}

TheoremWeb load_web(const Options& o) {
  try {
    return o.web.empty() ? TheoremWeb::shipped() : TheoremWeb::load(o.web);
  } catch (const std::runtime_error& e) {
    throw InputError(e.what());
  }
}

std::string joined(const std::vector<std::string>& v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : " ") + x;
  return s;
}

int cmd_axioms_consistent(const Options& o) {
  const Format fmt = parse_format(o.format);
  TheoremWeb web = load_web(o);
  auto r = is_consistent(o.atoms, web);
  std::string detail;
  if (r.consistent) {
    detail = joined(web.names_of(*r.model, true));
  } else {
    std::map<std::string, bool> profile;
    for (const auto& a : o.atoms) profile[a] = true;
    detail = "violates: " + validate_profile(profile, web).violated;
  }
  write_rows(std::cout, {"result", "detail"}, {{std::string(r.consistent ? "SAT" : "UNSAT"), detail}}, fmt);
  return kOk;
}

int cmd_axioms_maximal(const Options& o) {
  const Format fmt = parse_format(o.format);
  TheoremWeb web = load_web(o);
  std::vector<std::string> base = o.base;
  base.insert(base.end(), o.require.begin(), o.require.end());
  std::vector<ReportRow> rows;
  for (const auto& set : maximal_compatible_sets(base, web)) {
    std::vector<std::string> missing;
    for (int i = 0; i < web.property_count(); ++i) {
      const auto& a = web.atoms()[static_cast<std::size_t>(i)];
      if (std::find(set.begin(), set.end(), a) == set.end()) missing.push_back(a);
    }
    rows.push_back({static_cast<long long>(set.size()), joined(set), joined(missing)});
  }
  write_rows(std::cout, {"size", "properties", "excluded"}, rows, fmt);
  return kOk;
}

int cmd_axioms_closure(const Options& o) {
  const Format fmt = parse_format(o.format);
  TheoremWeb web = load_web(o);
  std::vector<ReportRow> rows;
  for (const auto& a : implication_closure(o.atoms, web)) {
    bool given = std::find(o.atoms.begin(), o.atoms.end(), a) != o.atoms.end();
    rows.push_back({a, std::string(given ? "asserted" : "implied")});
  }
  write_rows(std::cout, {"atom", "origin"}, rows, fmt);
  return kOk;
}

int cmd_axioms_check(const Options& o) {
  const Format fmt = parse_format(o.format);
  TheoremWeb web = load_web(o);
  std::vector<ReportRow> rows;
  for (const auto& r : check_implications(web))
    rows.push_back({std::string("implication"), r.clause, std::string(r.holds ? "entailed" : "not entailed"),
                    std::string()});
  for (const auto& r : check_incompatibilities(web)) {
    std::string status = !r.unsat ? "satisfiable" : r.removable.empty() ? "minimal" : "not minimal";
    rows.push_back({std::string("incompatibility"), r.clause, status, joined(r.removable)});
  }
  write_rows(std::cout, {"kind", "clause", "status", "removable"}, rows, fmt);
  return kOk;
}

int cmd_gates_list(const Options& o) {
  const Format fmt = parse_format(o.format);
  std::vector<ReportRow> rows;
  for (const auto& g : gate_catalog()) rows.push_back({g.id, g.description});
  rows.push_back({std::string("random:<n>:<seed>"), std::string("seeded random system of n binary sources")});
  write_rows(std::cout, {"id", "description"}, rows, fmt);
  return kOk;
}

int cmd_gates_emit(const Options& o) {
  std::string text = dump_system(make_gate(o.gate_id)) + "\n";
  if (o.out_path.empty())
    std::cout << text;
  else
    write_file(o.out_path, text);
  return kOk;
}

int cmd_lattice_dump(const Options& o) {
  const Format fmt = parse_format(o.format);
  if (o.lattice_n < 1 || o.lattice_n > 4) throw UnsupportedArity("lattice dump supports 1 to 4 sources");
  auto lat = lattice_for(o.lattice_n);
  std::vector<ReportRow> rows;
  for (std::size_t i = 0; i < lat->size(); ++i) {
    std::string covers;
    for (int j : lat->hasse_predecessors(i)) covers += (covers.empty() ? "" : " ") + lat->node(static_cast<std::size_t>(j)).str();
    rows.push_back({static_cast<long long>(i), lat->node(i).str(), covers});
  }
  write_rows(std::cout, {"index", "node", "covers"}, rows, fmt);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Partial information decomposition workbench"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  app.add_option("--format", o.format, "Output format: table, csv or json-lines")
      ->check(CLI::IsMember({"table", "csv", "json-lines"}));
  app.add_option("--seed", o.seed, "Seed for randomized solver restarts");

  auto* compute = app.add_subcommand("compute", "Decompose a system with one or more measures");
  compute->add_option("--measure,--measures", o.measures, "Measure ids")->delimiter(',');
  compute->add_option("--gate", o.gate, "Gate id, e.g. xor, tbc:0, random:2:7");
  compute->add_option("--system", o.system_path, "System JSON file");

  auto* verify = app.add_subcommand("verify", "Run the property grid and compare it with the golden table");
  verify->add_option("--measure,--measures", o.measures, "Restrict to these measures")->delimiter(',');
  verify->add_option("--properties", o.properties, "Restrict to these properties")->delimiter(',');
  verify->add_option("--golden", o.golden, "Golden table CSV (defaults to the shipped one)");
  verify->add_option("--tol", o.tol, "Comparison tolerance replacing the per-measure tier")->check(CLI::PositiveNumber);
  verify->add_option("--threads", o.threads, "Worker threads (default: PID_WORKBENCH_THREADS or all cores)");
  verify->add_option("--markdown", o.markdown_path, "Also write the grid as a markdown table");
  verify->add_option("--verdicts", o.verdicts_path, "Also write the verdict CSV");

  auto* axioms = app.add_subcommand("axioms", "Query the property theorem web");
  axioms->require_subcommand(1, 1);
  axioms->fallthrough();
  axioms->add_option("--web", o.web, "Clause file (defaults to the shipped one)");
  auto* consistent = axioms->add_subcommand("consistent", "Can the listed properties hold together?");
  consistent->add_option("atoms", o.atoms, "Property names")->required();
  auto* maximal = axioms->add_subcommand("maximal", "Maximal compatible property sets");
  maximal->add_option("--base", o.base, "Properties every set must contain (default S0,M0,SR)")->delimiter(',');
  maximal->add_option("--require", o.require, "Further required properties")->delimiter(',');
  auto* closure = axioms->add_subcommand("closure", "Everything the listed properties imply");
  closure->add_option("atoms", o.atoms, "Property names")->required();
  auto* check = axioms->add_subcommand("check", "Entailment of the implications and minimality of the incompatibilities");

  auto* gates = app.add_subcommand("gates", "Gate catalog");
  gates->require_subcommand(1, 1);
  gates->fallthrough();
  auto* gates_list = gates->add_subcommand("list", "List gate ids");
  auto* gates_emit = gates->add_subcommand("emit", "Write a gate as a system JSON file");
  gates_emit->add_option("id", o.gate_id, "Gate id")->required();
  gates_emit->add_option("-o,--out", o.out_path, "Output file (default stdout)");

  auto* lattice = app.add_subcommand("lattice", "Redundancy lattice");
  lattice->require_subcommand(1, 1);
  lattice->fallthrough();
  auto* dump = lattice->add_subcommand("dump", "List the nodes and their covers");
  dump->add_option("-n,--sources", o.lattice_n, "Number of sources (1 to 4)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*compute) return cmd_compute(o);
    if (*verify) return cmd_verify(o);
    if (*consistent) return cmd_axioms_consistent(o);
    if (*maximal) return cmd_axioms_maximal(o);
    if (*closure) return cmd_axioms_closure(o);
    if (*check) return cmd_axioms_check(o);
    if (*gates_list) return cmd_gates_list(o);
    if (*gates_emit) return cmd_gates_emit(o);
    if (*dump) return cmd_lattice_dump(o);
  } catch (const UnsupportedArity& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kArity;
  } catch (const SolverFailure& e) {
    std::cerr << "solver failure: " << e.what() << '\n';
    return kSolver;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::logic_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kUsage;
}
