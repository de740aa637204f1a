#pragma once

#include "pidwb/distribution.hpp"
#include "pidwb/measures.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace pidwb::detail {

// Marginals of a view: sources A_0..A_{k-1} followed by the target.
struct ViewData {
  int k = 0;
  int ny = 0;
  const ProbTable* t = nullptr;
  std::vector<int> cards;
  std::vector<double> py;
  std::vector<std::vector<double>> pa;   // p(a_i)
  std::vector<std::vector<double>> pay;  // p(a_i, y) at a * ny + y

  explicit ViewData(const JointDistribution& view);

  std::size_t target_var() const { return static_cast<std::size_t>(k); }
  IndexSet sources() const;
};

inline void require_arity(const ViewData& v, int lo, int hi, const char* name) {
  if (v.k < lo || v.k > hi)
    throw UnsupportedArity(std::string(name) + " is defined for collections of " + std::to_string(lo) +
                           (lo == hi ? "" : "-" + std::to_string(hi)) + " elements, got " + std::to_string(v.k));
}

inline double xlog2x_ratio(double p, double num, double den) {
  // p * log2(num / den), zero when p is zero
  return p > 0 ? p * std::log2(num / den) : 0.0;
}

RedundancyValue exact(double v);

}  // namespace pidwb::detail
