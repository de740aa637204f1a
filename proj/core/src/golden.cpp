#include "pidwb/axioms.hpp"

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace pidwb {

std::string expectation_name(Expectation e) {
  switch (e) {
    case Expectation::Yes: return "yes";
    case Expectation::No: return "no";
    case Expectation::NotApplicable: return "na";
  }
  return "?";
}

Expectation parse_expectation(const std::string& s) {
  if (s == "yes") return Expectation::Yes;
  if (s == "no") return Expectation::No;
  if (s == "na") return Expectation::NotApplicable;
  throw std::invalid_argument("golden: expected yes, no or na, got '" + s + "'");
}

std::string qualifier_name(Qualifier q) {
  switch (q) {
    case Qualifier::None: return "";
    case Qualifier::TwoSources: return "n2";
    case Qualifier::Pointwise: return "pointwise";
    case Qualifier::FullSupport: return "full_support";
    case Qualifier::Empirical: return "empirical";
  }
  return "?";
}

Qualifier parse_qualifier(const std::string& s) {
  for (auto q : {Qualifier::None, Qualifier::TwoSources, Qualifier::Pointwise, Qualifier::FullSupport, Qualifier::Empirical})
    if (s == qualifier_name(q)) return q;
  throw std::invalid_argument("golden: unknown qualifier '" + s + "'");
}

const GoldenCell* GoldenTable::find(const std::string& measure, const std::string& property) const {
  for (const auto& c : cells)
    if (c.measure == measure && c.property == property) return &c;
  return nullptr;
}

std::optional<Expectation> GoldenTable::lookup(const std::string& measure, const std::string& property) const {
  if (const auto* c = find(measure, property)) return c->expected;
  return std::nullopt;
}

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

GoldenTable parse_golden(const std::string& csv_text) {
  GoldenTable g;
  std::istringstream in(csv_text);
  std::string line;
  int lineno = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> f;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) f.push_back(trim(cell));
    if (f.size() != 3 && f.size() != 4)
      throw std::invalid_argument("golden line " + std::to_string(lineno) + ": expected 3 or 4 fields");
    if (!header_seen && f[0] == "measure") {
      header_seen = true;
      continue;
    }
    describe_measure(f[0]);
    describe_property(f[1]);
    if (g.lookup(f[0], f[1])) throw std::invalid_argument("golden line " + std::to_string(lineno) + ": duplicate cell");
    g.cells.push_back({f[0], f[1], parse_expectation(f[2]), f.size() == 4 ? parse_qualifier(f[3]) : Qualifier::None});
  }
  return g;
}

GoldenTable load_golden(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open golden file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_golden(ss.str());
}

std::string default_golden_path() {
  for (const char* dir : {PIDWB_BUILD_DATA_DIR, PIDWB_INSTALL_DATA_DIR}) {
    std::filesystem::path p = std::filesystem::path(dir) / "golden_table.csv";
    if (std::filesystem::exists(p)) return p.string();
  }
  return (std::filesystem::path(PIDWB_INSTALL_DATA_DIR) / "golden_table.csv").string();
}

const PropertyVerdict& Grid::at(const std::string& measure, const std::string& property) const {
  for (const auto& c : cells)
    if (c.measure_id == measure && c.property_id == property) return c;
  throw std::out_of_range("grid has no cell " + measure + "/" + property);
}

namespace {

int thread_count(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("PID_WORKBENCH_THREADS")) {
    int n = std::atoi(env);
    if (n > 0) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace

Grid verify_table(const Corpus& corpus, const GridOptions& opt, const MeasureConfig& cfg) {
  Grid g;
  g.measures = opt.measures;
  if (g.measures.empty())
    for (const auto& m : measure_catalog()) g.measures.push_back(m.id);
  g.properties = opt.properties;
  if (g.properties.empty())
    for (const auto& p : property_catalog()) g.properties.push_back(p.id);
  for (const auto& m : g.measures) describe_measure(m);

  std::vector<std::vector<Probe>> probes;
  for (const auto& p : g.properties) probes.push_back(property_probes(p, corpus));

  const std::size_t nm = g.measures.size(), np = g.properties.size();
  g.cells.resize(nm * np);
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(nm * np);
  // one probe list per property, shared by every measure
  auto run_cell = [&](std::size_t k) {
    const std::size_t mi = k / np, pi = k % np;
    PropertyVerdict v;
    v.measure_id = g.measures[mi];
    v.property_id = g.properties[pi];
    const double tol = opt.tolerance > 0 ? opt.tolerance : tolerance_for(v.measure_id);
    std::size_t source_limit = SIZE_MAX;
    bool need_full_support = false;
    if (opt.qualifiers) {
      const auto* q = opt.qualifiers->find(v.measure_id, v.property_id);
      if (q && q->qualifier == Qualifier::TwoSources) source_limit = 2;
      need_full_support = q && q->qualifier == Qualifier::FullSupport;
    }
    for (const auto& p : probes[pi]) {
      if (p.max_sources() > source_limit || (need_full_support && !p.full_support())) {
        ++v.probes_skipped;
        continue;
      }
      std::vector<Comparison> cmp;
      try {
        cmp = p.evaluate(v.measure_id, cfg);
      } catch (const UnsupportedArity&) {
        ++v.probes_skipped;
        continue;
      } catch (const SolverFailure&) {
        ++v.probes_skipped;
        continue;
      }
      ++v.systems_tested;
      auto bad = std::find_if(cmp.begin(), cmp.end(), [&](const Comparison& c) { return c.violated(tol); });
      if (bad != cmp.end()) {
        v.status = VerdictStatus::Counterexample;
        v.witness = Witness{p, *bad};
        break;
      }
    }
    if (v.status != VerdictStatus::Counterexample)
      v.status = v.systems_tested > 0 ? VerdictStatus::NoCounterexample : VerdictStatus::NotApplicable;
    g.cells[k] = std::move(v);
  };
  auto pool_worker = [&] {
    for (std::size_t k = next++; k < nm * np; k = next++) {
      try {
        run_cell(k);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  const int nt = std::min<int>(thread_count(opt.threads), static_cast<int>(nm * np));
  std::vector<std::thread> pool;
  for (int t = 1; t < nt; ++t) pool.emplace_back(pool_worker);
  pool_worker();
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return g;
}

std::string diff_kind_name(GoldenDiff::Kind k) {
  switch (k) {
    case GoldenDiff::Kind::Contradiction: return "contradiction";
    case GoldenDiff::Kind::Unconfirmed: return "unconfirmed";
    case GoldenDiff::Kind::ApplicabilityGap: return "applicability";
  }
  return "?";
}

std::vector<GoldenDiff> compare_with_golden(const Grid& grid, const GoldenTable& golden) {
  std::vector<GoldenDiff> out;
  for (const auto& c : grid.cells) {
    auto e = golden.lookup(c.measure_id, c.property_id);
    if (!e) continue;
    GoldenDiff d{c.measure_id, c.property_id, GoldenDiff::Kind::Contradiction, *e, c.status};
    if (*e == Expectation::Yes && c.status == VerdictStatus::Counterexample) {
      out.push_back(d);
    } else if (*e == Expectation::No && c.status == VerdictStatus::NoCounterexample) {
      d.kind = GoldenDiff::Kind::Unconfirmed;
      out.push_back(d);
    } else if ((*e == Expectation::NotApplicable) != (c.status == VerdictStatus::NotApplicable)) {
      d.kind = GoldenDiff::Kind::ApplicabilityGap;
      out.push_back(d);
    }
  }
  return out;
}

std::size_t count_contradictions(const std::vector<GoldenDiff>& diffs) {
  return static_cast<std::size_t>(std::count_if(diffs.begin(), diffs.end(),
                                                [](const GoldenDiff& d) { return d.kind == GoldenDiff::Kind::Contradiction; }));
}

}  // namespace pidwb
