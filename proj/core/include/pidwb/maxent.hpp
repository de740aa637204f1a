#pragma once

#include "pidwb/distribution.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace pidwb {

// q(x1,x2,y) = p(x1,y) p(x2,y) / p(y), exact. Groups default to variables 0, 1, 2.
JointDistribution maxent_pairwise(const JointDistribution& d, const IndexSet& x1, const IndexSet& x2,
                                  const IndexSet& y);
JointDistribution maxent_pairwise(const JointDistribution& d);

struct IpfOptions {
  double tol = 1e-12;
  int max_iter = 20000;
};

struct IpfReport {
  int iterations = 0;
  double residual = 0.0;  // max abs deviation over all constrained marginals
  double last_kl = 0.0;   // KL(previous || current) of the final sweep, bits
};

class IpfError : public std::runtime_error {
 public:
  IpfError(const std::string& what, IpfReport r) : std::runtime_error(what), report(r) {}
  IpfReport report;
};

// Cells that are positive in at least one table sharing the target's constrained marginals. The
// maximum entropy fit has exactly this support.
std::vector<char> feasible_support(const ProbTable& target, const std::vector<IndexSet>& constraints);

// Iterative proportional fitting. The default seed is uniform over feasible_support, which keeps
// convergence geometric when the fit lies on the boundary of the simplex.
ProbTable ipf_table(const ProbTable& target, const std::vector<IndexSet>& constraints, const IpfOptions& opt,
                    IpfReport* report = nullptr, const ProbTable* seed = nullptr);

struct IpfFit {
  JointDistribution dist;  // rationalized fitted pmf, mass exactly 1
  ProbTable table;         // the floating point fit
  IpfReport report;
};

IpfFit ipf_fit(const JointDistribution& d, const std::vector<IndexSet>& constraints, double tol = 1e-12,
               int max_iter = 20000);

}  // namespace pidwb
