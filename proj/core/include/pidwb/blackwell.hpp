#pragma once

#include "pidwb/distribution.hpp"

#include <optional>
#include <vector>

namespace pidwb {

struct Channel {
  int input_card = 0;
  int output_card = 0;
  std::vector<std::vector<Rational>> matrix;  // matrix[input][output]

  void validate() const;  // rows stochastic, entries in [0,1]
};

struct BlackwellResult {
  bool leq = false;
  std::optional<Channel> witness;  // k(a|b) as a channel from B outcomes to A outcomes
};

// A precedes B relative to the target iff some channel k gives p(a|y) = sum_b k(a|b) p(b|y) on supp(Y).
// Decided by exact rational phase-1 simplex.
BlackwellResult blackwell_leq(const JointDistribution& d, const IndexSet& a, const IndexSet& b,
                              const IndexSet& target);

}  // namespace pidwb
