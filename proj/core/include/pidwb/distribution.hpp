#pragma once

#include "pidwb/rational.hpp"

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace pidwb {

using IndexSet = std::vector<int>;
using Outcome = std::vector<int>;

struct VariableSpec {
  std::string name;
  int cardinality = 1;
  std::vector<std::string> labels;

  VariableSpec() = default;
  VariableSpec(std::string name, int cardinality);  // labels "0".."k-1"
  VariableSpec(std::string name, std::vector<std::string> labels);

  int label_index(const std::string& label) const;  // -1 when absent
  void validate() const;
};

// Mixed-radix addressing of a full outcome box, last variable fastest.
class Shape {
 public:
  Shape() = default;
  explicit Shape(std::vector<int> cards);

  const std::vector<int>& cards() const { return cards_; }
  std::size_t size() const { return size_; }
  std::size_t rank() const { return cards_.size(); }
  std::size_t stride(std::size_t var) const { return strides_[var]; }

  std::size_t encode(const Outcome& o) const;
  Outcome decode(std::size_t index) const;
  int digit(std::size_t index, std::size_t var) const {
    return static_cast<int>((index / strides_[var]) % static_cast<std::size_t>(cards_[var]));
  }

 private:
  std::vector<int> cards_;
  std::vector<std::size_t> strides_;
  std::size_t size_ = 1;
};

// Floating point pmf over a box. Used by solvers and information functionals.
struct ProbTable {
  Shape shape;
  std::vector<double> p;

  ProbTable() = default;
  ProbTable(Shape s, std::vector<double> values);

  std::size_t rank() const { return shape.rank(); }
  int card(std::size_t v) const { return shape.cards()[v]; }

  ProbTable marginal(const IndexSet& keep) const;
  // Index of each cell's projection onto `keep` inside marginal(keep).
  std::vector<std::size_t> projection(const IndexSet& keep) const;
  double total() const;
};

class JointDistribution {
 public:
  JointDistribution() = default;
  // Dense pmf in Shape order. Throws unless every entry is >= 0 and the mass is exactly 1.
  JointDistribution(std::vector<VariableSpec> vars, std::vector<Rational> pmf);

  static JointDistribution from_sparse(std::vector<VariableSpec> vars,
                                       const std::vector<std::pair<Outcome, Rational>>& cells);
  // Normalizes non-negative weights exactly; doubles are read as their exact binary value.
  static JointDistribution from_weights(std::vector<VariableSpec> vars, const std::vector<double>& weights);
  static JointDistribution from_weights(std::vector<VariableSpec> vars, const std::vector<Rational>& weights);
  static JointDistribution point_mass(std::vector<VariableSpec> vars, const Outcome& at);

  const std::vector<VariableSpec>& variables() const { return vars_; }
  const VariableSpec& variable(std::size_t i) const { return vars_.at(i); }
  std::size_t num_variables() const { return vars_.size(); }
  const Shape& shape() const { return shape_; }
  std::size_t size() const { return shape_.size(); }

  const Rational& p(std::size_t index) const { return pmf_[index]; }
  const Rational& p(const Outcome& o) const { return pmf_[shape_.encode(o)]; }
  const std::vector<Rational>& pmf() const { return pmf_; }
  const ProbTable& table() const { return table_; }

  std::vector<std::size_t> support() const;
  Rational mass() const;

  JointDistribution marginal(const IndexSet& keep) const;
  JointDistribution condition(const IndexSet& on, const Outcome& values) const;
  // One new variable per group holding the joint outcome of its members. Groups may overlap.
  JointDistribution coarsen(const std::vector<IndexSet>& groups, const std::vector<std::string>& names = {}) const;
  JointDistribution permute_variables(const IndexSet& order) const;

  bool operator==(const JointDistribution& other) const;

 private:
  void check_index_set(const IndexSet& s, const char* what) const;

  std::vector<VariableSpec> vars_;
  Shape shape_;
  std::vector<Rational> pmf_;
  ProbTable table_;
};

JointDistribution marginalize(const JointDistribution& d, const IndexSet& keep);
JointDistribution condition(const JointDistribution& d, const IndexSet& on, const Outcome& values);

}  // namespace pidwb
