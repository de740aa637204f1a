#include "pidwb/axioms.hpp"

#include "pidwb/blackwell.hpp"
#include "pidwb/gates.hpp"
#include "pidwb/info.hpp"
#include "pidwb/lattice.hpp"
#include "pidwb/maxent.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace pidwb {

using Rel = Comparison::Relation;

const std::vector<PropertySpec>& property_catalog() {
  using K = CheckerKind;
  static const std::vector<PropertySpec> props = {
      {"SR", "self-redundancy", K::Equation, closed_form_tolerance},
      {"S0", "weak symmetry", K::Equation, closed_form_tolerance},
      {"M0", "weak monotonicity", K::Inequality, closed_form_tolerance},
      {"GP", "global positivity", K::Inequality, closed_form_tolerance},
      {"LP0", "weak local positivity", K::Inequality, closed_form_tolerance},
      {"LP1", "strong local positivity", K::Inequality, closed_form_tolerance},
      {"IID", "independent identity", K::ConstructedWitness, closed_form_tolerance},
      {"ID", "identity", K::ConstructedWitness, closed_form_tolerance},
      {"TM", "target monotonicity", K::Inequality, closed_form_tolerance},
      {"TC", "target chain rule", K::Equation, closed_form_tolerance},
      {"SE", "subset equality", K::ConstructedWitness, closed_form_tolerance},
      {"LB", "lower bound", K::Inequality, closed_form_tolerance},
      {"TE", "target equality", K::ConstructedWitness, closed_form_tolerance},
      {"M1", "strong monotonicity", K::ConstructedWitness, closed_form_tolerance},
      {"S1", "strong symmetry", K::ConstructedWitness, closed_form_tolerance},
      {"AST", "pairwise marginal dependence", K::ConstructedWitness, closed_form_tolerance},
      {"BP", "Blackwell property", K::ConstructedWitness, closed_form_tolerance},
      {"AD", "additivity", K::ConstructedWitness, closed_form_tolerance},
      {"CO", "continuity", K::Perturbation, closed_form_tolerance},
      {"EI", "equivalence-class invariance", K::Equation, closed_form_tolerance},
  };
  return props;
}

const PropertySpec& describe_property(const std::string& id) {
  for (const auto& p : property_catalog())
    if (p.id == id) return p;
  throw std::invalid_argument("unknown property '" + id + "'");
}

double tolerance_for(const std::string& measure_id) {
  return describe_measure(measure_id).needs_optimizer ? optimizer_tolerance : closed_form_tolerance;
}

bool Comparison::violated(double tol) const {
  if (!std::isfinite(lhs) || !std::isfinite(rhs)) return false;
  switch (relation) {
    case Rel::Equal: return std::abs(lhs - rhs) > tol;
    case Rel::AtLeast: return lhs < rhs - tol;
    case Rel::AtMost: return lhs > rhs + tol;
    case Rel::Positive: return lhs <= tol;
  }
  return false;
}

std::string status_name(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::NoCounterexample: return "no-counterexample";
    case VerdictStatus::Counterexample: return "counterexample";
    case VerdictStatus::NotApplicable: return "na";
  }
  return "?";
}

// Derived systems -------------------------------------------------------------------------------

JointDistribution append_function(const JointDistribution& d, const IndexSet& args, const std::vector<int>& table,
                                  int out_card, const std::string& name) {
  std::vector<int> cards;
  for (int a : args) cards.push_back(d.variable(static_cast<std::size_t>(a)).cardinality);
  Shape arg_shape(cards);
  if (table.size() != arg_shape.size()) throw std::invalid_argument("append_function: table size mismatch");
  auto vars = d.variables();
  vars.emplace_back(name, out_card);
  std::vector<Rational> pmf(d.size() * static_cast<std::size_t>(out_card), Rational(0));
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (sgn(d.p(i)) == 0) continue;
    Outcome o(args.size());
    for (std::size_t k = 0; k < args.size(); ++k) o[k] = d.shape().digit(i, static_cast<std::size_t>(args[k]));
    int f = table[arg_shape.encode(o)];
    if (f < 0 || f >= out_card) throw std::out_of_range("append_function: value outside output cardinality");
    pmf[i * static_cast<std::size_t>(out_card) + static_cast<std::size_t>(f)] = d.p(i);
  }
  return JointDistribution(std::move(vars), std::move(pmf));
}

SystemSpec regroup(const SystemSpec& s, const std::vector<IndexSet>& source_groups, const IndexSet& target,
                   const std::string& name) {
  std::vector<IndexSet> groups = source_groups;
  groups.push_back(target);
  std::vector<IndexSet> src;
  for (std::size_t i = 0; i < source_groups.size(); ++i) src.push_back({static_cast<int>(i)});
  return SystemSpec(s.dist.coarsen(groups), src, {static_cast<int>(source_groups.size())}, name);
}

SystemSpec copy_target_system(const JointDistribution& pair, const std::string& name) {
  if (pair.num_variables() != 2) throw std::invalid_argument("copy_target_system: expected two variables");
  return SystemSpec(pair.coarsen({{0}, {1}, {0, 1}}, {"X1", "X2", "Y"}), {{0}, {1}}, {2}, name);
}

namespace {

// One variable per source and one for the target.
SystemSpec canonical(const SystemSpec& s) {
  if (s.dist.num_variables() == s.n_sources() + 1 && s.target.size() == 1) {
    bool plain = true;
    for (std::size_t i = 0; i < s.n_sources(); ++i) plain = plain && s.sources[i] == IndexSet{static_cast<int>(i)};
    if (plain && s.target[0] == static_cast<int>(s.n_sources())) return s;
  }
  return regroup(s, s.sources, s.target, s.name);
}

// Maps outcome 0 and 1 together, the rest shifted down. Constant for binary variables.
std::vector<int> merge_first_two(int card) {
  std::vector<int> f(static_cast<std::size_t>(card));
  for (int x = 0; x < card; ++x) f[static_cast<std::size_t>(x)] = x <= 1 ? 0 : x - 1;
  return f;
}

}  // namespace

std::pair<SystemSpec, SystemSpec> witness_ast_pair(const SystemSpec& s) {
  if (s.n_sources() != 2) throw UnsupportedArity("witness_ast_pair needs two sources");
  SystemSpec c = canonical(s);
  SystemSpec m(maxent_pairwise(c.dist), {{0}, {1}}, {2}, s.name + "/maxent");
  return {c, m};
}

std::vector<SystemSpec> witness_equality_cases(const SystemSpec& s) {
  if (s.n_sources() != 2) throw UnsupportedArity("witness_equality_cases needs two sources");
  SystemSpec c = canonical(s);
  std::vector<SystemSpec> out;
  out.push_back(regroup(c, {{0}, {0}}, {2}, s.name + "/dup"));
  int card = c.dist.variable(0).cardinality;
  JointDistribution with_f = append_function(c.dist, {0}, merge_first_two(card), std::max(card - 1, 1), "F");
  SystemSpec fs(with_f, {{0}, {1}}, {2}, "");
  out.push_back(regroup(fs, {{3}, {0}}, {2}, s.name + "/func"));
  out.push_back(regroup(c, {{0}, {2}}, {2}, s.name + "/target"));
  return out;
}

TargetOps witness_target_ops(const SystemSpec& s) {
  if (s.target.size() < 2) throw std::invalid_argument("witness_target_ops: target has a single variable");
  IndexSet y1 = {s.target[0]};
  IndexSet y2(s.target.begin() + 1, s.target.end());
  const int n = static_cast<int>(s.n_sources());
  std::vector<IndexSet> groups = s.sources;
  groups.push_back(y1);
  groups.push_back(y2);
  JointDistribution flat = s.dist.coarsen(groups);
  std::vector<IndexSet> src;
  for (int i = 0; i < n; ++i) src.push_back({i});
  TargetOps ops{SystemSpec(flat, src, {n}, s.name + "/Y1"), SystemSpec(flat, src, {n, n + 1}, s.name + "/Y1Y2"), {}};
  JointDistribution py1 = flat.marginal({n});
  for (int v = 0; v < flat.variable(static_cast<std::size_t>(n)).cardinality; ++v) {
    const Rational& w = py1.p(static_cast<std::size_t>(v));
    if (sgn(w) == 0) continue;
    JointDistribution cond = flat.condition({n}, {v});
    ops.conditioned.emplace_back(w.get_d(),
                                 SystemSpec(cond, src, {n}, s.name + "/Y2|y1=" + std::to_string(v)));
  }
  return ops;
}

// Corpus ----------------------------------------------------------------------------------------

namespace {

JointDistribution random_pair(int c1, int c2, std::uint64_t seed, bool independent) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> w(1, 100);
  std::vector<Rational> weights;
  if (independent) {
    std::vector<int> a(static_cast<std::size_t>(c1)), b(static_cast<std::size_t>(c2));
    for (auto& x : a) x = w(rng);
    for (auto& x : b) x = w(rng);
    for (int i = 0; i < c1; ++i)
      for (int j = 0; j < c2; ++j) weights.emplace_back(a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j)]);
  } else {
    for (int i = 0; i < c1 * c2; ++i) weights.emplace_back(w(rng));
  }
  return JointDistribution::from_weights({VariableSpec("X1", c1), VariableSpec("X2", c2)}, weights);
}

SystemSpec two_target_random(std::uint64_t seed) {
  SystemSpec r = random_system(3, {2, 2, 2, 2}, seed);
  return SystemSpec(r.dist, {{0}, {1}}, {2, 3}, "random_two_target:" + std::to_string(seed));
}

}  // namespace

Corpus default_corpus() {
  Corpus c;
  for (const char* g : {"xor", "and", "tbc:0", "tbc:1/2", "tbc:1", "rdn", "unq", "noisy_copy", "sum"})
    c.bivariate.push_back(make_gate(g));
  for (std::uint64_t seed = 1; seed <= 6; ++seed) c.bivariate.push_back(random_system(2, {2, 2, 2}, seed));
  for (std::uint64_t seed = 7; seed <= 8; ++seed) {
    SystemSpec s = random_system(2, {2, 2, 2}, seed, 0);
    s.name += ":sparse";
    c.bivariate.push_back(s);
  }
  c.bivariate.push_back(random_system(2, {3, 2, 2}, 9));
  c.bivariate.push_back(random_system(2, {2, 3, 2}, 10));

  for (const char* g : {"xor_source_copy", "three_copy", "and3"}) c.trivariate.push_back(make_gate(g));
  for (std::uint64_t seed = 1; seed <= 3; ++seed) c.trivariate.push_back(random_system(3, {2, 2, 2, 2}, seed));

  c.two_target.push_back(two_target_copy());
  c.two_target.push_back(two_target_xor());
  for (std::uint64_t seed = 1; seed <= 8; ++seed) c.two_target.push_back(two_target_random(seed));
  return c;
}

// Probes ----------------------------------------------------------------------------------------

namespace {

using Collection = std::vector<IndexSet>;

// Redundancy of an arbitrary collection of source groups. Single elements fall back to the mutual
// information for measures that only accept pairs, which is how the lattice evaluates them.
double red(const std::string& m, const SystemSpec& s, const Collection& c, const MeasureConfig& cfg) {
  JointDistribution view = s.view(c);
  if (c.size() == 1) {
    try {
      return redundancy(m, view, cfg).value;
    } catch (const UnsupportedArity&) {
      return mutual_information(view, {0}, {1});
    }
  }
  return redundancy(m, view, cfg).value;
}

double mi_of(const SystemSpec& s, const IndexSet& sources) {
  IndexSet vars;
  for (int i : sources) vars.insert(vars.end(), s.sources[static_cast<std::size_t>(i)].begin(), s.sources[static_cast<std::size_t>(i)].end());
  return mutual_information(s.dist, vars, s.target);
}

const Collection kPair = {{0}, {1}};
const Collection kTriple = {{0}, {1}, {2}};

}  // namespace

std::size_t Probe::max_sources() const {
  std::size_t n = 0;
  for (const auto& s : systems) n = std::max(n, s.n_sources());
  return n;
}

bool Probe::full_support() const {
  return std::all_of(systems.begin(), systems.end(),
                     [](const SystemSpec& s) { return s.dist.support().size() == s.dist.size(); });
}

namespace {

Probe make_probe(std::string desc, std::vector<SystemSpec> systems, ProbeFn fn) {
  return Probe{std::move(desc), std::move(systems), std::move(fn)};
}

std::vector<Probe> probes_sr(const Corpus& c) {
  std::vector<Probe> out;
  auto add = [&](const SystemSpec& s) {
    out.push_back(make_probe("self-redundancy on " + s.name, {s}, [s](const std::string& m, const MeasureConfig& cfg) {
      std::vector<Comparison> r;
      for (int i = 0; i < static_cast<int>(s.n_sources()); ++i)
        r.push_back({red(m, s, {{i}}, cfg), mi_of(s, {i}), Rel::Equal, "I(X" + std::to_string(i + 1) + ";Y)"});
      IndexSet all(s.n_sources());
      std::iota(all.begin(), all.end(), 0);
      r.push_back({red(m, s, {all}, cfg), mi_of(s, all), Rel::Equal, "joint source"});
      return r;
    }));
  };
  for (const auto& s : c.bivariate) add(s);
  for (const auto& s : c.trivariate) add(s);
  return out;
}

std::vector<Probe> probes_s0(const Corpus& c) {
  std::vector<Probe> out;
  for (const auto& s : c.bivariate)
    out.push_back(make_probe("source swap on " + s.name, {s}, [s](const std::string& m, const MeasureConfig& cfg) {
      return std::vector<Comparison>{{red(m, s, kPair, cfg), red(m, s, {{1}, {0}}, cfg), Rel::Equal, "swap"}};
    }));
  for (const auto& s : c.trivariate)
    out.push_back(make_probe("source permutations on " + s.name, {s}, [s](const std::string& m, const MeasureConfig& cfg) {
      std::vector<Comparison> r;
      double base = red(m, s, kTriple, cfg);
      std::vector<int> perm = {0, 1, 2};
      while (std::next_permutation(perm.begin(), perm.end()))
        r.push_back({red(m, s, {{perm[0]}, {perm[1]}, {perm[2]}}, cfg), base, Rel::Equal, "permuted"});
      return r;
    }));
  return out;
}

// Equality when the added source is a refinement of one already present.
std::vector<Probe> probes_subset_equality(const Corpus& c) {
  std::vector<Probe> out;
  for (const auto& s : c.bivariate) {
    auto cases = witness_equality_cases(s);
    for (std::size_t k = 0; k < 2; ++k) {
      const SystemSpec w = cases[k];
      out.push_back(make_probe("refined source added on " + w.name, {w}, [w](const std::string& m, const MeasureConfig& cfg) {
        return std::vector<Comparison>{{red(m, w, kPair, cfg), red(m, w, {{0}}, cfg), Rel::Equal, "I(Z,f^-1(Z);Y) vs I(Z;Y)"}};
      }));
    }
    SystemSpec t = regroup(s, {s.sources[0], s.sources[1], s.sources[1]}, s.target, s.name + "/dup3");
    out.push_back(make_probe("duplicate third source on " + s.name, {t}, [t](const std::string& m, const MeasureConfig& cfg) {
      return std::vector<Comparison>{{red(m, t, kTriple, cfg), red(m, t, kPair, cfg), Rel::Equal, "(X1,X2,X2) vs (X1,X2)"}};
    }));
  }
  return out;
}

std::vector<Probe> probes_monotone(const Corpus& c) {
  std::vector<Probe> out;
  for (const auto& s : c.bivariate)
    out.push_back(make_probe("added source on " + s.name, {s}, [s](const std::string& m, const MeasureConfig& cfg) {
      double both = red(m, s, kPair, cfg);
      return std::vector<Comparison>{{both, red(m, s, {{0}}, cfg), Rel::AtMost, "vs X1 alone"},
                                     {both, red(m, s, {{1}}, cfg), Rel::AtMost, "vs X2 alone"}};
    }));
  for (const auto& s : c.trivariate)
    out.push_back(make_probe("added source on " + s.name, {s}, [s](const std::string& m, const MeasureConfig& cfg) {
      double all = red(m, s, kTriple, cfg);
      std::vector<Comparison> r;
      for (const Collection& p : {Collection{{0}, {1}}, Collection{{0}, {2}}, Collection{{1}, {2}}})
        r.push_back({all, red(m, s, p, cfg), Rel::AtMost, "vs pair"});
      return r;
    }));
  auto eq = probes_subset_equality(c);
  out.insert(out.end(), eq.begin(), eq.end());
  return out;
}

std::vector<Probe> probes_target_equality(const Corpus& c) {
  std::vector<Probe> out;
  for (const auto& s0 : c.bivariate) {
    SystemSpec s = canonical(s0);
    for (int i = 0; i < 2; ++i) {
      SystemSpec w = regroup(s, {{i}, {2}}, {2}, s.name + "/X" + std::to_string(i + 1) + "Y");
      out.push_back(make_probe("target added to X" + std::to_string(i + 1) + " on " + s.name, {w},
                               [w](const std::string& m, const MeasureConfig& cfg) {
                                 return std::vector<Comparison>{{red(m, w, kPair, cfg), red(m, w, {{0}}, cfg), Rel::Equal, "(Xi,Y;Y) vs (Xi;Y)"}};
                               }));
    }
    SystemSpec w3 = regroup(s, {{0}, {1}, {2}}, {2}, s.name + "/X1X2Y");
    out.push_back(make_probe("target added to the pair on " + s.name, {w3}, [w3](const std::string& m, const MeasureConfig& cfg) {
      return std::vector<Comparison>{{red(m, w3, kTriple, cfg), red(m, w3, kPair, cfg), Rel::Equal, "(X1,X2,Y;Y) vs (X1,X2;Y)"}};
    }));
  }
  return out;
}

// Systems whose target is a function of the second source.
std::vector<Probe> probes_target_function(const Corpus& c) {
  std::vector<Probe> out;
  for (const auto& s0 : c.bivariate) {
    SystemSpec s = canonical(s0);
    int card = s.dist.variable(1).cardinality;
    if (card < 3) continue;
    JointDistribution d = append_function(s.dist, {1}, merge_first_two(card), card - 1, "F");
    SystemSpec w(d, {{0}, {1}}, {3}, s.name + "/Y=f(X2)");
    out.push_back(make_probe("target a function of X2 on " + s.name, {w}, [w](const std::string& m, const MeasureConfig& cfg) {
      return std::vector<Comparison>{{red(m, w, kPair, cfg), red(m, w, {{0}}, cfg), Rel::Equal, "(X1,X2;f(X2)) vs (X1;f(X2))"}};
    }));
  }
  return out;
}

std::vector<Probe> probes_gp(const Corpus& c) {
  std::vector<Probe> out;
  for (const auto& s : c.bivariate)
    out.push_back(make_probe("redundancy sign on " + s.name, {s}, [s](const std::string& m, const MeasureConfig& cfg) {
      return std::vector<Comparison>{{red(m, s, kPair, cfg), 0.0, Rel::AtLeast, "{1}{2}"}};
    }));
  for (const auto& s : c.trivariate)
    out.push_back(make_probe("redundancy sign on " + s.name, {s}, [s](const std::string& m, const MeasureConfig& cfg) {
      std::vector<Comparison> r;
      auto lat = lattice_for(3);
      for (const auto& node : lat->nodes())
        if (node.elements.size() > 1) r.push_back({redundancy(m, s, node, cfg).value, 0.0, Rel::AtLeast, node.str()});
      return r;
    }));
  return out;
}

Probe lp_probe(const SystemSpec& s) {
  return make_probe("atom signs on " + s.name, {s}, [s](const std::string& m, const MeasureConfig& cfg) {
    Decomposition d = decompose(m, s, cfg);
    std::vector<Comparison> r;
    for (std::size_t i = 0; i < d.atoms.size(); ++i) r.push_back({d.atoms[i], 0.0, Rel::AtLeast, d.lattice->node(i).str()});
    return r;
  });
}

std::vector<Probe> probes_identity(const Corpus&, bool independent) {
  std::vector<Probe> out;
  std::vector<SystemSpec> systems;
  if (independent) {
    systems.push_back(tbc(Rational(0)));
    systems.push_back(copy_target_system(random_pair(2, 2, 11, true), "copy:indep2x2"));
    systems.push_back(copy_target_system(random_pair(2, 3, 12, true), "copy:indep2x3"));
    systems.push_back(copy_target_system(random_pair(3, 3, 13, true), "copy:indep3x3"));
  } else {
    for (const char* c : {"0", "1/4", "1/2", "3/4", "1"}) systems.push_back(tbc(Rational(c)));
    systems.push_back(copy_target_system(random_pair(2, 2, 21, false), "copy:2x2"));
    systems.push_back(copy_target_system(random_pair(2, 3, 22, false), "copy:2x3"));
    systems.push_back(copy_target_system(random_pair(3, 3, 23, false), "copy:3x3"));
  }
  for (const auto& s : systems)
    out.push_back(make_probe("copy target on " + s.name, {s}, [s, independent](const std::string& m, const MeasureConfig& cfg) {
      double mi = independent ? 0.0 : mutual_information(s.dist, {0}, {1});
      return std::vector<Comparison>{{red(m, s, kPair, cfg), mi, Rel::Equal, "I(X1;X2)"}};
    }));
  return out;
}

std::vector<SystemSpec> target_systems(const Corpus& c) {
  std::vector<SystemSpec> out;
  for (const auto& s : c.two_target) {
    out.push_back(s);
    IndexSet rev(s.target.rbegin(), s.target.rend());
    out.push_back(SystemSpec(s.dist, s.sources, rev, s.name + "/reversed"));
  }
  return out;
}

std::vector<Probe> probes_tm(const Corpus& c) {
  std::vector<Probe> out;
  for (const auto& s : target_systems(c)) {
    TargetOps ops = witness_target_ops(s);
    out.push_back(make_probe("target extension on " + s.name, {ops.first, ops.joint},
                             [ops](const std::string& m, const MeasureConfig& cfg) {
                               return std::vector<Comparison>{{red(m, ops.joint, kPair, cfg), red(m, ops.first, kPair, cfg), Rel::AtLeast, "Y1Y2 vs Y1"}};
                             }));
  }
  return out;
}

std::vector<Probe> probes_tc(const Corpus& c) {
  std::vector<Probe> out;
  for (const auto& s : target_systems(c)) {
    TargetOps ops = witness_target_ops(s);
    std::vector<SystemSpec> sys = {ops.first, ops.joint};
    for (const auto& [w, cs] : ops.conditioned) sys.push_back(cs);
    out.push_back(make_probe("target chain rule on " + s.name, sys, [ops](const std::string& m, const MeasureConfig& cfg) {
      double chain = red(m, ops.first, kPair, cfg);
      for (const auto& [w, cs] : ops.conditioned) chain += w * red(m, cs, kPair, cfg);
      return std::vector<Comparison>{{red(m, ops.joint, kPair, cfg), chain, Rel::Equal, "Y1Y2 vs chain"}};
    }));
  }
  return out;
}

std::vector<Probe> probes_lb(const Corpus& c) {
  std::vector<Probe> out;
  auto add = [&](const SystemSpec& s, const Collection& coll) {
    out.push_back(make_probe("common-variable bound on " + s.name, {s}, [s, coll](const std::string& m, const MeasureConfig& cfg) {
      double bound = i_wedge(s.view(coll), cfg).value;
      return std::vector<Comparison>{{red(m, s, coll, cfg), bound, Rel::AtLeast, "I(Q;Y) for the common variable Q"}};
    }));
  };
  for (const auto& s : c.bivariate) add(s, kPair);
  for (const auto& s : c.bivariate)
    for (const auto& w : witness_equality_cases(s)) add(w, kPair);
  for (const auto& s : c.trivariate) add(s, kTriple);
  return out;
}

std::vector<Probe> probes_s1(const Corpus& c) {
  std::vector<Probe> out;
  for (const auto& s0 : c.bivariate) {
    SystemSpec s = canonical(s0);
    SystemSpec sw = regroup(s, {{0}, {2}}, {1}, s.name + "/swapX2Y");
    out.push_back(make_probe("source and target swapped on " + s.name, {s, sw}, [s, sw](const std::string& m, const MeasureConfig& cfg) {
      return std::vector<Comparison>{{red(m, s, kPair, cfg), red(m, sw, kPair, cfg), Rel::Equal, "(X1,X2;Y) vs (X1,Y;X2)"}};
    }));
  }
  return out;
}

std::vector<Probe> probes_ast(const Corpus& c) {
  std::vector<Probe> out;
  for (const auto& s : c.bivariate) {
    auto [a, b] = witness_ast_pair(s);
    out.push_back(make_probe("pairwise maxent partner of " + s.name, {a, b}, [a, b](const std::string& m, const MeasureConfig& cfg) {
      return std::vector<Comparison>{{red(m, a, kPair, cfg), red(m, b, kPair, cfg), Rel::Equal, "p vs maxent(p)"}};
    }));
  }
  return out;
}

// X1 produced from X2 by a channel, so X1 is Blackwell-inferior to X2 whatever the target.
SystemSpec garbled_system(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> w(1, 100);
  std::vector<Rational> weights;
  // p(x2, y) times k(x1 | x2)
  std::vector<int> pxy(4), k(4);
  for (auto& x : pxy) x = w(rng);
  for (auto& x : k) x = w(rng);
  for (int x1 = 0; x1 < 2; ++x1)
    for (int x2 = 0; x2 < 2; ++x2)
      for (int y = 0; y < 2; ++y) {
        Rational row = Rational(k[static_cast<std::size_t>(x2 * 2 + x1)]) /
                       Rational(k[static_cast<std::size_t>(x2 * 2)] + k[static_cast<std::size_t>(x2 * 2 + 1)]);
        weights.push_back(Rational(pxy[static_cast<std::size_t>(x2 * 2 + y)]) * row);
      }
  return SystemSpec(JointDistribution::from_weights({VariableSpec("X1", 2), VariableSpec("X2", 2), VariableSpec("Y", 2)}, weights),
                    {{0}, {1}}, {2}, "garbled:" + std::to_string(seed));
}

Probe bp_probe(const SystemSpec& s0) {
  SystemSpec s = canonical(s0);
  return make_probe("unique information vs Blackwell order on " + s.name, {s}, [s](const std::string& m, const MeasureConfig& cfg) {
    std::vector<Comparison> r;
    double shared = red(m, s, kPair, cfg);
    for (int i = 0; i < 2; ++i) {
      double unique = red(m, s, {{i}}, cfg) - shared;
      bool leq = blackwell_leq(s.dist, {i}, {1 - i}, {2}).leq;
      r.push_back({unique, 0.0, leq ? Rel::Equal : Rel::Positive,
                   "unique of X" + std::to_string(i + 1) + (leq ? " (Blackwell inferior)" : " (not inferior)")});
    }
    return r;
  });
}

std::vector<Probe> probes_bp(const Corpus& c) {
  std::vector<Probe> out;
  for (const auto& s : c.bivariate) out.push_back(bp_probe(s));
  for (std::uint64_t seed = 31; seed <= 34; ++seed) out.push_back(bp_probe(garbled_system(seed)));
  return out;
}

std::vector<Probe> probes_ad() {
  std::vector<Probe> out;
  const std::vector<std::pair<const char*, const char*>> pairs = {
      {"xor", "and"}, {"and", "and"}, {"rdn", "unq"}, {"tbc:1/2", "xor"}, {"noisy_copy", "and"}, {"rdn", "noisy_copy"}};
  for (const auto& [ga, gb] : pairs) {
    SystemSpec a = make_gate(ga), b = make_gate(gb);
    SystemSpec p = product_system(a, b);
    out.push_back(make_probe("independent product " + a.name + " x " + b.name, {a, b, p},
                             [a, b, p](const std::string& m, const MeasureConfig& cfg) {
                               return std::vector<Comparison>{
                                   {red(m, p, kPair, cfg), red(m, a, kPair, cfg) + red(m, b, kPair, cfg), Rel::Equal, "product vs sum"}};
                             }));
  }
  return out;
}

// Ratio of the smallest scaled jump over the schedule; above 1 means the jump persisted throughout.
Comparison continuity_comparison(const std::string& m, const SystemSpec& s, const Collection& coll, int n_perturbations,
                                 double epsilon, const MeasureConfig& cfg) {
  double base = red(m, s, coll, cfg);
  std::mt19937_64 rng(cfg.seed ^ 0xC0C0C0C0ULL);
  std::uniform_int_distribution<int> w(1, 100);
  double worst_ratio = std::numeric_limits<double>::infinity();
  double eps = epsilon, K = 10.0;
  // epsilon as an exact decimal rational with 12 digits
  Rational eps_q(std::to_string(std::llround(epsilon * 1e12)) + "/1000000000000");
  eps_q.canonicalize();
  for (int j = 0; j < 3; ++j) {
    double max_delta = 0.0;
    for (int t = 0; t < n_perturbations; ++t) {
      std::vector<Rational> pmf(s.dist.size());
      std::vector<Rational> r(s.dist.size());
      Rational total = 0;
      for (auto& x : r) {
        x = Rational(w(rng));
        total += x;
      }
      for (std::size_t i = 0; i < pmf.size(); ++i)
        pmf[i] = (Rational(1) - eps_q / 2) * s.dist.p(i) + (eps_q / 2) * r[i] / total;
      SystemSpec sp = with_distribution(s, JointDistribution(s.dist.variables(), pmf));
      max_delta = std::max(max_delta, std::abs(red(m, sp, coll, cfg) - base));
    }
    worst_ratio = std::min(worst_ratio, max_delta / (K * eps));
    eps /= 10.0;
    eps_q /= 10;
    K *= 10.0;
  }
  return {worst_ratio, 1.0, Rel::AtMost, "persistent jump ratio"};
}

Probe continuity_probe(const SystemSpec& s, const Collection& coll, int n_perturbations, double epsilon) {
  return make_probe("perturbations around " + s.name, {s}, [=](const std::string& m, const MeasureConfig& cfg) {
    return std::vector<Comparison>{continuity_comparison(m, s, coll, n_perturbations, epsilon, cfg)};
  });
}

std::vector<Probe> probes_co(const Corpus&) {
  std::vector<Probe> out;
  for (const char* g : {"rdn", "noisy_copy", "xor", "and", "unq", "sum", "tbc:1/2"})
    out.push_back(continuity_probe(make_gate(g), kPair, 3, 1e-3));
  // interior points
  for (std::uint64_t seed : {1u, 4u}) out.push_back(continuity_probe(random_system(2, {2, 2, 2}, seed), kPair, 3, 1e-3));
  out.push_back(continuity_probe(make_gate("three_copy"), kTriple, 3, 1e-3));
  return out;
}

std::vector<Probe> probes_ei(const Corpus& c) {
  std::vector<Probe> out;
  auto add = [&](const SystemSpec& s0, const Collection& coll) {
    SystemSpec s = canonical(s0);
    for (int v = 0; v < static_cast<int>(s.dist.num_variables()); ++v) {
      int card = s.dist.variable(static_cast<std::size_t>(v)).cardinality;
      if (card < 2) continue;
      std::vector<std::vector<int>> perms;
      std::vector<int> shift(static_cast<std::size_t>(card)), rev(static_cast<std::size_t>(card));
      for (int x = 0; x < card; ++x) {
        shift[static_cast<std::size_t>(x)] = (x + 1) % card;
        rev[static_cast<std::size_t>(x)] = card - 1 - x;
      }
      perms.push_back(shift);
      if (card > 2) perms.push_back(rev);
      for (const auto& perm : perms) {
        SystemSpec t = relabel_outcomes(s, v, perm);
        t.name = s.name + "/relabel" + std::to_string(v);
        out.push_back(make_probe("outcome relabelling of variable " + std::to_string(v) + " on " + s.name, {s, t},
                                 [s, t, coll](const std::string& m, const MeasureConfig& cfg) {
                                   return std::vector<Comparison>{{red(m, t, coll, cfg), red(m, s, coll, cfg), Rel::Equal, "relabelled vs original"}};
                                 }));
      }
    }
  };
  for (const auto& s : c.bivariate) add(s, kPair);
  for (const auto& s : c.trivariate) add(s, kTriple);
  return out;
}

}  // namespace

std::vector<Probe> property_probes(const std::string& id, const Corpus& c) {
  describe_property(id);
  if (id == "SR") return probes_sr(c);
  if (id == "S0") return probes_s0(c);
  if (id == "M0") return probes_monotone(c);
  if (id == "GP") return probes_gp(c);
  if (id == "LP0") {
    std::vector<Probe> out;
    for (const auto& s : c.bivariate) out.push_back(lp_probe(s));
    return out;
  }
  if (id == "LP1") {
    std::vector<Probe> out;
    for (const auto& s : c.trivariate) out.push_back(lp_probe(s));
    return out;
  }
  if (id == "IID") return probes_identity(c, true);
  if (id == "ID") return probes_identity(c, false);
  if (id == "TM") return probes_tm(c);
  if (id == "TC") return probes_tc(c);
  if (id == "SE") return probes_subset_equality(c);
  if (id == "LB") return probes_lb(c);
  if (id == "TE") return probes_target_equality(c);
  if (id == "M1") {
    auto out = probes_monotone(c);
    for (auto& p : probes_target_equality(c)) out.push_back(std::move(p));
    for (auto& p : probes_target_function(c)) out.push_back(std::move(p));
    return out;
  }
  if (id == "S1") return probes_s1(c);
  if (id == "AST") return probes_ast(c);
  if (id == "BP") return probes_bp(c);
  if (id == "AD") return probes_ad();
  if (id == "CO") return probes_co(c);
  return probes_ei(c);
}

namespace {

PropertyVerdict run_probes(const std::string& property_id, const std::string& measure_id, const std::vector<Probe>& probes,
                           const MeasureConfig& cfg) {
  PropertyVerdict v;
  v.measure_id = measure_id;
  v.property_id = property_id;
  const double tol = tolerance_for(measure_id);
  for (const auto& p : probes) {
    std::vector<Comparison> cmp;
    try {
      cmp = p.evaluate(measure_id, cfg);
    } catch (const UnsupportedArity&) {
      ++v.probes_skipped;
      continue;
    } catch (const SolverFailure&) {
      ++v.probes_skipped;
      continue;
    }
    ++v.systems_tested;
    for (const auto& c : cmp)
      if (c.violated(tol)) {
        v.status = VerdictStatus::Counterexample;
        v.witness = Witness{p, c};
        return v;
      }
  }
  v.status = v.systems_tested > 0 ? VerdictStatus::NoCounterexample : VerdictStatus::NotApplicable;
  return v;
}

}  // namespace

PropertyVerdict check_property(const PropertySpec& prop, const std::string& measure_id, const Corpus& corpus,
                               const MeasureConfig& cfg) {
  describe_measure(measure_id);
  return run_probes(prop.id, measure_id, property_probes(prop.id, corpus), cfg);
}

PropertyVerdict check_property(const std::string& property_id, const std::string& measure_id, const Corpus& corpus,
                               const MeasureConfig& cfg) {
  return check_property(describe_property(property_id), measure_id, corpus, cfg);
}

PropertyVerdict check_lp(const std::string& measure_id, const SystemSpec& s, const MeasureConfig& cfg) {
  return run_probes(s.n_sources() <= 2 ? "LP0" : "LP1", measure_id, {lp_probe(s)}, cfg);
}

PropertyVerdict check_bp(const std::string& measure_id, const SystemSpec& s, const MeasureConfig& cfg) {
  if (s.n_sources() != 2) throw UnsupportedArity("check_bp needs two sources");
  return run_probes("BP", measure_id, {bp_probe(s)}, cfg);
}

PropertyVerdict check_continuity(const std::string& measure_id, const SystemSpec& s, int n_perturbations, double epsilon,
                                 const MeasureConfig& cfg) {
  if (!(epsilon > 0)) throw std::invalid_argument("check_continuity: epsilon must be positive");
  Collection coll;
  for (int i = 0; i < static_cast<int>(s.n_sources()); ++i) coll.push_back({i});
  return run_probes("CO", measure_id, {continuity_probe(s, coll, n_perturbations, epsilon)}, cfg);
}

bool revalidate(const PropertyVerdict& v, const MeasureConfig& cfg) {
  if (v.status != VerdictStatus::Counterexample || !v.witness) return false;
  auto cmp = v.witness->probe.evaluate(v.measure_id, cfg);
  const double tol = tolerance_for(v.measure_id);
  for (const auto& c : cmp)
    if (c.what == v.witness->failed.what && c.violated(tol)) return true;
  return false;
}

}  // namespace pidwb
