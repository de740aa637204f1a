// Acceptance run: one PASS/FAIL line per criterion. Exit status is nonzero when any criterion fails.

#include "oracles.hpp"
#include "pidwb/axioms.hpp"
#include "pidwb/blackwell.hpp"
#include "pidwb/gates.hpp"
#include "pidwb/info.hpp"
#include "pidwb/lattice.hpp"
#include "pidwb/logic.hpp"
#include "pidwb/measures.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace pidwb;

namespace {

struct Verdict {
  bool pass = true;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes.push_back(what);
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string num(double x) {
  std::ostringstream s;
  s.precision(6);
  s << x;
  return s.str();
}

double bottom_value(const std::string& m, const SystemSpec& s) {
  return redundancy(m, s, lattice_for(static_cast<int>(s.n_sources()))->node(0)).value;
}

bool all_binary_two_source(const SystemSpec& s) {
  if (s.n_sources() != 2) return false;
  auto v = s.bivariate_view();
  for (std::size_t i = 0; i < 3; ++i)
    if (v.variable(i).cardinality != 2) return false;
  return true;
}

std::vector<SystemSpec> whole_corpus() {
  auto c = default_corpus();
  std::vector<SystemSpec> all = c.bivariate;
  all.insert(all.end(), c.trivariate.begin(), c.trivariate.end());
  all.insert(all.end(), c.two_target.begin(), c.two_target.end());
  return all;
}

Verdict lattice_sizes() {
  Verdict o;
  auto t0 = std::chrono::steady_clock::now();
  const std::size_t want[] = {4, 18, 166};
  for (int n = 2; n <= 4; ++n) {
    auto got = enumerate_antichains(n).size();
    o.require(got == want[n - 2], "n=" + std::to_string(n) + " gave " + std::to_string(got));
  }
  double s = seconds_since(t0);
  o.require(s < 1.0, "took " + num(s) + " s");
  return o;
}

Verdict tbc_family() {
  Verdict o;
  o.require(bottom_value("min", tbc(0)) == 1.0, "I_min on independent TBC is not exactly 1");
  for (const char* m : {"broja", "mes", "dep", "ct", "do", "rav", "ccs", "rr", "wedge", "alpha", "prec"}) {
    double v = bottom_value(m, tbc(0));
    o.require(std::abs(v) <= 1e-4, std::string(m) + " on independent TBC gave " + num(v));
  }
  auto golden = load_golden(default_golden_path());
  for (const auto& m : measure_catalog()) {
    if (golden.lookup(m.id, "ID") != Expectation::Yes) continue;
    for (const char* c : {"0", "1/4", "1/2", "3/4", "1"}) {
      auto s = tbc(parse_rational(c));
      double v = bottom_value(m.id, s), want = mutual_information(s.dist, {0}, {1});
      o.require(std::abs(v - want) <= 1e-4, m.id + " at correlation " + c + " gave " + num(v) + ", want " + num(want));
    }
  }
  return o;
}

Verdict broja_oracle() {
  Verdict o;
  int n = 0;
  for (const auto& s : default_corpus().bivariate) {
    if (!all_binary_two_source(s)) continue;
    ++n;
    double v = bottom_value("broja", s), ref = oracle::broja_grid(oracle::table3(s.bivariate_view()));
    o.require(std::abs(v - ref) <= 1e-4, s.name + ": solver " + num(v) + " vs grid " + num(ref));
  }
  auto d = decompose("broja", xor_gate());
  const double want[] = {0, 0, 0, 1};
  for (std::size_t i = 0; i < 4; ++i)
    o.require(std::abs(d.atoms[i] - want[i]) <= 1e-4, "XOR atom " + d.lattice->node(i).str() + " = " + num(d.atoms[i]));
  o.notes.insert(o.notes.begin(), std::to_string(n) + " systems");
  return o;
}

Verdict mes_ipf() {
  Verdict o;
  double worst = 0;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    auto s = random_system(2, seed % 2 ? std::vector<int>{2, 2, 2} : std::vector<int>{2, 3, 2}, seed);
    double closed = bottom_value("mes", s);
    double fit = oracle::infos(oracle::ipf_pairwise(oracle::table3(s.bivariate_view()), 50)).ab;
    worst = std::max(worst, std::abs(closed - fit));
  }
  o.require(worst <= 1e-8, "largest difference " + num(worst));
  o.notes.insert(o.notes.begin(), "max |diff| " + num(worst));
  return o;
}

Verdict bound_chain() {
  Verdict o;
  const double tol = 2e-4;
  int n = 0;
  for (const auto& s : whole_corpus()) {
    double w, a, p, m;
    try {
      w = bottom_value("wedge", s);
      a = bottom_value("alpha", s);
      p = bottom_value("prec", s);
      m = bottom_value("mmi", s);
    } catch (const UnsupportedArity&) {
      continue;
    }
    ++n;
    o.require(w <= a + tol && a <= p + tol && p <= m + tol,
              s.name + ": " + num(w) + " <= " + num(a) + " <= " + num(p) + " <= " + num(m) + " fails");
  }
  o.notes.insert(o.notes.begin(), std::to_string(n) + " systems");
  return o;
}

Verdict verification_grid() {
  Verdict o;
  auto golden = load_golden(default_golden_path());
  GridOptions opt;
  opt.qualifiers = &golden;
  auto t0 = std::chrono::steady_clock::now();
  auto grid = verify_table(default_corpus(), opt);
  double s = seconds_since(t0);
  for (const auto& d : compare_with_golden(grid, golden))
    if (d.kind == GoldenDiff::Kind::Contradiction) o.require(false, "contradiction (" + d.measure + ", " + d.property + ")");
  const std::vector<std::vector<std::pair<const char*, const char*>>> finds = {
      {{"min", "IID"}}, {{"mmi", "IID"}}, {{"mes", "SE"}}, {{"do", "SE"}},
      {{"ccs", "M0"}},  {{"pm", "GP"}, {"pm", "LP0"}},     {{"sx", "TE"}}, {{"wedge", "TE"}}};
  for (const auto& alternatives : finds) {
    bool found = false;
    std::string label;
    for (const auto& [m, p] : alternatives) {
      found = found || grid.at(m, p).status == VerdictStatus::Counterexample;
      label += (label.empty() ? "" : " or ") + std::string("(") + m + ", " + p + ")";
    }
    o.require(found, "no counterexample for " + label);
  }
  o.require(s < 300.0, "grid took " + num(s) + " s");
  o.notes.insert(o.notes.begin(), "grid " + num(s) + " s");
  return o;
}

Verdict logic_engine() {
  Verdict o;
  auto t0 = std::chrono::steady_clock::now();
  auto web = TheoremWeb::shipped();
  auto sets = maximal_compatible_sets({"S0", "M0", "SR"}, web);
  std::size_t largest = 0;
  for (const auto& s : sets) largest = std::max(largest, s.size());
  o.require(largest == 19, "largest maximal set has " + std::to_string(largest) + " properties");

  auto req = maximal_compatible_sets({"S0", "M0", "SR", "LP1", "EI"}, web);
  bool sized = !req.empty();
  for (const auto& s : req) {
    sized = sized && s.size() == 16;
    for (const char* gone : {"ID", "IID", "TC", "S1"})
      o.require(std::find(s.begin(), s.end(), gone) == s.end(), std::string("required set keeps ") + gone);
  }
  o.require(sized, "sets requiring LP1 and EI are not all of size 16");

  for (const auto& r : check_implications(web)) o.require(r.holds, "not entailed: " + r.clause);
  for (const auto& r : check_incompatibilities(web)) {
    o.require(r.unsat, "satisfiable: " + r.clause);
    std::string removable;
    for (const auto& a : r.removable) removable += " " + a;
    o.require(r.removable.empty(), "not minimal: " + r.clause + " (removable:" + removable + ")");
  }
  double s = seconds_since(t0);
  o.require(s < 10.0, "logic suite took " + num(s) + " s");
  return o;
}

Verdict moebius() {
  Verdict o;
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-3, 3);
  double worst = 0;
  for (int n = 1; n <= 4; ++n) {
    auto lat = lattice_for(n);
    for (int rep = 0; rep < 50; ++rep) {
      std::vector<double> icap(lat->size());
      for (auto& v : icap) v = u(rng);
      auto back = recompose(*lat, moebius_atoms(*lat, icap));
      for (std::size_t i = 0; i < icap.size(); ++i) worst = std::max(worst, std::abs(back[i] - icap[i]));
    }
  }
  o.require(worst <= 1e-12, "round trip error " + num(worst));
  int pairs = 0;
  for (const auto& m : measure_catalog())
    for (const auto& s : whole_corpus()) {
      Decomposition d;
      try {
        d = decompose(m.id, s);
      } catch (const UnsupportedArity&) {
        continue;
      }
      ++pairs;
      auto back = recompose(*d.lattice, d.atoms);
      double err = 0;
      for (std::size_t i = 0; i < back.size(); ++i) err = std::max(err, std::abs(back[i] - d.icap[i]));
      o.require(err <= 1e-9, m.id + " on " + s.name + ": recomposition error " + num(err));
    }
  o.notes.insert(o.notes.begin(), std::to_string(pairs) + " decompositions");
  return o;
}

Verdict identities() {
  Verdict o;
  double worst = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    auto s = random_system(2, {2 + static_cast<int>(seed % 2), 2, 2 + static_cast<int>(seed % 3 == 0)}, seed,
                           seed % 4 == 0 ? 0 : 1);
    const auto& d = s.dist;
    auto py = d.marginal({2});
    for (const IndexSet& src : {IndexSet{0}, IndexSet{1}, IndexSet{0, 1}}) {
      double expect = 0;
      for (int y = 0; y < d.variable(2).cardinality; ++y) {
        double p = py.p(pidwb::Outcome{y}).get_d();
        if (p > 0) expect += p * specific_information(d, src, {2}, {y});
      }
      worst = std::max(worst, std::abs(expect - mutual_information(d, src, {2})));
    }
    double chain = mutual_information(d, {0}, {2}) + conditional_mutual_information(d, {1}, {2}, {0});
    worst = std::max(worst, std::abs(chain - mutual_information(d, {0, 1}, {2})));
  }
  o.require(worst <= 1e-10, "largest deviation " + num(worst));
  return o;
}

Verdict blackwell() {
  Verdict o;
  int cases = 0;
  for (const auto& s : default_corpus().bivariate) {
    if (!all_binary_two_source(s)) continue;
    auto v = s.bivariate_view();
    for (auto [a, b] : {std::pair{0, 1}, std::pair{1, 0}}) {
      ++cases;
      bool lp = blackwell_leq(v, {a}, {b}, {2}).leq, fm = oracle::blackwell_oracle(v, a, b, 2);
      o.require(lp == fm, s.name + ": X" + std::to_string(a + 1) + " below X" + std::to_string(b + 1) +
                              " LP says " + (lp ? "yes" : "no") + ", oracle " + (fm ? "yes" : "no"));
    }
  }
  o.notes.insert(o.notes.begin(), std::to_string(cases) + " ordered pairs");
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"lattice cardinalities", lattice_sizes},
      {"two-bit copy family", tbc_family},
      {"BROJA against the grid oracle", broja_oracle},
      {"MES closed form against IPF", mes_ipf},
      {"bound chain wedge <= alpha <= prec <= mmi", bound_chain},
      {"verification grid against the golden table", verification_grid},
      {"logic engine", logic_engine},
      {"Moebius round trip and recomposition", moebius},
      {"specific information and chain rule identities", identities},
      {"Blackwell LP against Fourier-Motzkin", blackwell},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict r;
    try {
      r = criteria[i].second();
    } catch (const std::exception& e) {
      r.pass = false;
      r.notes.push_back(std::string("exception: ") + e.what());
    }
    if (!r.pass) ++failed;
    std::string detail;
    for (const auto& n : r.notes) detail += (detail.empty() ? "" : "; ") + n;
    std::printf("criterion %zu: %s  %s%s%s\n", i + 1, r.pass ? "PASS" : "FAIL", criteria[i].first.c_str(),
                detail.empty() ? "" : "  [", detail.empty() ? "" : (detail + "]").c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
