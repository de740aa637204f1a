#pragma once

#include "pidwb/measures.hpp"
#include "pidwb/system.hpp"

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace pidwb {

enum class CheckerKind { Equation, Inequality, ConstructedWitness, Perturbation };

struct PropertySpec {
  std::string id;
  std::string name;
  CheckerKind checker_kind = CheckerKind::Equation;
  double tolerance = 1e-6;  // closed-form tier; optimizer-backed measures use optimizer_tolerance
};

inline constexpr double closed_form_tolerance = 1e-6;
inline constexpr double optimizer_tolerance = 1e-4;

// The twenty properties in canonical order.
const std::vector<PropertySpec>& property_catalog();
const PropertySpec& describe_property(const std::string& id);  // throws std::invalid_argument
double tolerance_for(const std::string& measure_id);

// One comparison produced by a probe. Violated when the relation fails by more than the tolerance.
struct Comparison {
  enum class Relation { Equal, AtLeast, AtMost, Positive };
  double lhs = 0.0;
  double rhs = 0.0;
  Relation relation = Relation::Equal;
  std::string what;

  bool violated(double tol) const;
};

using ProbeFn = std::function<std::vector<Comparison>(const std::string& measure_id, const MeasureConfig& cfg)>;

// A finite instance of a property predicate. Throws UnsupportedArity from evaluate when the measure
// cannot be applied, in which case the probe does not count as tested.
struct Probe {
  std::string description;
  std::vector<SystemSpec> systems;
  ProbeFn evaluate;

  // Largest source count among the probe's systems.
  std::size_t max_sources() const;
  // Every system puts positive mass on every outcome.
  bool full_support() const;
};

enum class VerdictStatus { NoCounterexample, Counterexample, NotApplicable };
std::string status_name(VerdictStatus s);

struct Witness {
  Probe probe;
  Comparison failed;
};

struct PropertyVerdict {
  std::string measure_id;
  std::string property_id;
  VerdictStatus status = VerdictStatus::NotApplicable;
  std::optional<Witness> witness;
  int systems_tested = 0;  // probes evaluated; never a proof of the property
  int probes_skipped = 0;  // unsupported arity or solver failure
};

// Re-evaluates a counterexample's probe from scratch. True iff the violation reproduces.
bool revalidate(const PropertyVerdict& v, const MeasureConfig& cfg = {});

// Systems the harness draws on. Two-source systems carry a single target variable; the target
// systems carry a two-variable target group.
struct Corpus {
  std::vector<SystemSpec> bivariate;
  std::vector<SystemSpec> trivariate;
  std::vector<SystemSpec> two_target;
};

Corpus default_corpus();

// Derived systems ----------------------------------------------------------------------------

// Appends a variable F = f(args), f given as a table over the joint outcomes of args (mixed radix,
// last variable fastest).
JointDistribution append_function(const JointDistribution& d, const IndexSet& args, const std::vector<int>& table,
                                  int out_card, const std::string& name);

// Source groups replaced by the listed group expressions over the system's variables. Groups may
// repeat or overlap; the result materializes each one as its own variable.
SystemSpec regroup(const SystemSpec& s, const std::vector<IndexSet>& source_groups, const IndexSet& target,
                   const std::string& name);

// Target set to the joint (X1, X2) of a two-variable distribution.
SystemSpec copy_target_system(const JointDistribution& pair, const std::string& name);

std::pair<SystemSpec, SystemSpec> witness_ast_pair(const SystemSpec& s);

// (X1, X1; Y), (f(X1), X1; Y) with f merging outcomes, and (X1, Y; Y).
std::vector<SystemSpec> witness_equality_cases(const SystemSpec& s);

struct TargetOps {
  SystemSpec first;                       // target Y1
  SystemSpec joint;                       // target Y1 Y2
  std::vector<std::pair<double, SystemSpec>> conditioned;  // (p(y1), system with target Y2 given y1)
};
// Y1 is the first variable of the target group, Y2 the rest. Throws when the target has one variable.
TargetOps witness_target_ops(const SystemSpec& s);

// Checkers ------------------------------------------------------------------------------------

// Probes for a property over a corpus, in deterministic order.
std::vector<Probe> property_probes(const std::string& property_id, const Corpus& corpus);

PropertyVerdict check_property(const PropertySpec& prop, const std::string& measure_id, const Corpus& corpus,
                               const MeasureConfig& cfg = {});
PropertyVerdict check_property(const std::string& property_id, const std::string& measure_id, const Corpus& corpus,
                               const MeasureConfig& cfg = {});

// Single-system entry points.
PropertyVerdict check_lp(const std::string& measure_id, const SystemSpec& s, const MeasureConfig& cfg = {});
PropertyVerdict check_bp(const std::string& measure_id, const SystemSpec& s, const MeasureConfig& cfg = {});
// Falsification only. A pmf p' = (1 - e/2) p + (e/2) r with r a seeded random pmf lies within L1
// distance e of p. A counterexample is a jump |dI| > K e that persists for every (e, K) in the
// escalating schedule e = epsilon * 10^-j, K = 10^(j+1), j < 3.
PropertyVerdict check_continuity(const std::string& measure_id, const SystemSpec& s, int n_perturbations = 3,
                                 double epsilon = 1e-3, const MeasureConfig& cfg = {});

// Grid -----------------------------------------------------------------------------------------

enum class Expectation { Yes, No, NotApplicable };
std::string expectation_name(Expectation e);
Expectation parse_expectation(const std::string& s);  // "yes", "no", "na"

// Cells may carry a qualifier restricting where the expectation is claimed:
//   n2            only for two sources; the cell is tested on two-source probes only
//   pointwise     only for the pointwise lattices taken separately
//   full_support  only for full-support distributions
//   empirical     supported by simulation, not proven
enum class Qualifier { None, TwoSources, Pointwise, FullSupport, Empirical };
std::string qualifier_name(Qualifier q);
Qualifier parse_qualifier(const std::string& s);  // "" maps to None

struct GoldenCell {
  std::string measure;
  std::string property;
  Expectation expected = Expectation::Yes;
  Qualifier qualifier = Qualifier::None;
};

struct GoldenTable {
  std::vector<GoldenCell> cells;
  const GoldenCell* find(const std::string& measure, const std::string& property) const;
  std::optional<Expectation> lookup(const std::string& measure, const std::string& property) const;
};

GoldenTable parse_golden(const std::string& csv_text);
GoldenTable load_golden(const std::string& path);
// Golden table shipped with the library (build tree or install prefix).
std::string default_golden_path();

struct GridOptions {
  std::vector<std::string> measures;    // empty means every measure
  std::vector<std::string> properties;  // empty means every property
  int threads = 0;                      // 0 reads PID_WORKBENCH_THREADS, falling back to hardware
  const GoldenTable* qualifiers = nullptr;  // when set, qualified cells run only their admissible probes
  double tolerance = 0.0;                   // positive values replace the per-measure tolerance tier
};

struct Grid {
  std::vector<std::string> measures;
  std::vector<std::string> properties;
  std::vector<PropertyVerdict> cells;  // measure-major

  const PropertyVerdict& at(const std::string& measure, const std::string& property) const;
};

Grid verify_table(const Corpus& corpus, const GridOptions& opt = {}, const MeasureConfig& cfg = {});

struct GoldenDiff {
  enum class Kind {
    Contradiction,     // counterexample found where the golden table expects the property to hold
    Unconfirmed,       // golden expects a violation the harness did not find
    ApplicabilityGap,  // applicability differs
  };
  std::string measure, property;
  Kind kind;
  Expectation expected;
  VerdictStatus found;
};
std::string diff_kind_name(GoldenDiff::Kind k);

std::vector<GoldenDiff> compare_with_golden(const Grid& grid, const GoldenTable& golden);
std::size_t count_contradictions(const std::vector<GoldenDiff>& diffs);

}  // namespace pidwb
