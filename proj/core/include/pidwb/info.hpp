#pragma once

#include "pidwb/distribution.hpp"

#include <vector>

// Information functionals in bits. 0 log 0 is taken as 0.
namespace pidwb {

double entropy(const ProbTable& t, const IndexSet& vars);
double entropy(const JointDistribution& d, const IndexSet& vars);

double mutual_information(const ProbTable& t, const IndexSet& a, const IndexSet& b);
double mutual_information(const JointDistribution& d, const IndexSet& a, const IndexSet& b);

double conditional_mutual_information(const ProbTable& t, const IndexSet& a, const IndexSet& b, const IndexSet& c);
double conditional_mutual_information(const JointDistribution& d, const IndexSet& a, const IndexSet& b,
                                      const IndexSet& c);

// I(G1;...;Gk) with the sign convention I(X;Y;Z) = I(X;Y) - I(X;Y|Z).
double coinformation(const ProbTable& t, const std::vector<IndexSet>& groups);
double coinformation(const JointDistribution& d, const std::vector<IndexSet>& groups);

// I(A;Y=y) = sum_a p(a|y) [log p(y|a) - log p(y)]; y is an outcome of the target group.
double specific_information(const ProbTable& t, const IndexSet& source, const IndexSet& target, const Outcome& y);
double specific_information(const JointDistribution& d, const IndexSet& source, const IndexSet& target,
                            const Outcome& y);

// Throws std::invalid_argument when any two groups share a variable.
void require_disjoint(const std::vector<IndexSet>& groups, bool allow_empty_last = false);

}  // namespace pidwb
