#pragma once

#include "pidwb/distribution.hpp"

#include <string>
#include <vector>

namespace pidwb {

struct SystemSpec {
  JointDistribution dist;
  std::vector<IndexSet> sources;
  IndexSet target;
  std::string name;

  SystemSpec() = default;
  SystemSpec(JointDistribution d, std::vector<IndexSet> source_groups, IndexSet target_group, std::string label = "");

  std::size_t n_sources() const { return sources.size(); }
  void validate() const;

  // Distribution over (A_1, ..., A_k, Y) where A_j is the joint of the source groups listed in
  // collection[j] (0-based source indices) and Y is the joint target.
  JointDistribution view(const std::vector<IndexSet>& collection) const;
  // View with one variable per source group followed by the target.
  JointDistribution bivariate_view() const;
};

// Independent product; source group i of the result joins group i of both inputs.
SystemSpec product_system(const SystemSpec& a, const SystemSpec& b);

// Moves the mass of outcome i of `var` to outcome perm[i]. Labels stay attached to positions
// unless `labels` is given, in which case they replace the variable's labels.
SystemSpec relabel_outcomes(const SystemSpec& s, int var, const std::vector<int>& perm,
                            const std::vector<std::string>& labels = {});

// Replaces the pmf, keeping variables and grouping.
SystemSpec with_distribution(const SystemSpec& s, JointDistribution d);

// System file format (JSON).
SystemSpec parse_system(const std::string& text);
SystemSpec load_system(const std::string& path);
std::string dump_system(const SystemSpec& s, int indent = 2);

}  // namespace pidwb
