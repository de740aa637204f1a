#pragma once

#include "pidwb/distribution.hpp"
#include "pidwb/lattice.hpp"
#include "pidwb/system.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace pidwb {

struct MeasureDescriptor {
  std::string id;
  std::string display;
  int max_sources = 2;         // largest number of elements in a collection the measure accepts
  bool pointwise = false;
  bool needs_optimizer = false;  // numerical search, evaluated with the looser tolerance tier
};

const std::vector<MeasureDescriptor>& measure_catalog();
const MeasureDescriptor& describe_measure(const std::string& id);  // throws std::invalid_argument

struct OptimizerReport {
  double objective_value = 0.0;
  int iterations = 0;
  double residual = 0.0;
  int restarts_used = 0;
  bool approximate = false;
  std::string note;
};

struct MeasureConfig {
  std::uint64_t seed = 20240601;
  int rav_exhaustive_limit = 10;  // largest joint source support enumerated exhaustively
  int rav_random_functions = 4000;
  double ipf_tol = 1e-12;
  int ipf_max_iter = 200000;
  double broja_tol = 1e-12;
};

struct RedundancyValue {
  double value = 0.0;
  OptimizerReport report;
};

class UnsupportedArity : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class SolverFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// All per-measure functions take a "view": a distribution whose last variable is the target and
// whose leading variables are the elements of the collection (see SystemSpec::view).
RedundancyValue i_min(const JointDistribution& view, const MeasureConfig& cfg = {});
RedundancyValue i_mmi(const JointDistribution& view, const MeasureConfig& cfg = {});
RedundancyValue i_rr(const JointDistribution& view, const MeasureConfig& cfg = {});
RedundancyValue i_ccs(const JointDistribution& view, const MeasureConfig& cfg = {});
RedundancyValue i_broja(const JointDistribution& view, const MeasureConfig& cfg = {});
RedundancyValue i_mes(const JointDistribution& view, const MeasureConfig& cfg = {});
RedundancyValue i_wedge(const JointDistribution& view, const MeasureConfig& cfg = {});
RedundancyValue i_alpha(const JointDistribution& view, const MeasureConfig& cfg = {});
RedundancyValue i_prec(const JointDistribution& view, const MeasureConfig& cfg = {});
RedundancyValue i_do(const JointDistribution& view, const MeasureConfig& cfg = {});
RedundancyValue i_ct(const JointDistribution& view, const MeasureConfig& cfg = {});
RedundancyValue i_dep(const JointDistribution& view, const MeasureConfig& cfg = {});
RedundancyValue i_pm(const JointDistribution& view, const MeasureConfig& cfg = {});
RedundancyValue i_sx(const JointDistribution& view, const MeasureConfig& cfg = {});
RedundancyValue i_rav(const JointDistribution& view, const MeasureConfig& cfg = {});

// Gacs-Korner common variable of the leading k variables: component label per outcome of
// their joint (outcomes with zero mass get -1). Returns the number of components.
int gacs_korner_labels(const JointDistribution& view, int k, std::vector<int>& labels);

// MES computed from an IPF fit of the pairwise marginals instead of the closed form.
double mes_via_ipf(const JointDistribution& view, double tol = 1e-13);

// Raw measure evaluation on any collection. Throws UnsupportedArity when the collection is larger
// than the measure allows.
RedundancyValue redundancy(const std::string& measure_id, const JointDistribution& view, const MeasureConfig& cfg = {});
RedundancyValue redundancy(const std::string& measure_id, const SystemSpec& s, const Antichain& alpha,
                           const MeasureConfig& cfg = {});

// Evaluates every lattice node (singletons by self-redundancy) and Moebius-inverts.
Decomposition decompose(const std::string& measure_id, const SystemSpec& s, const MeasureConfig& cfg = {});

}  // namespace pidwb
