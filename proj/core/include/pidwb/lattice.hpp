#pragma once

#include <memory>
#include <string>
#include <vector>

namespace pidwb {

using SourceSet = std::vector<int>;  // sorted, 0-based source indices

struct Antichain {
  std::vector<SourceSet> elements;  // canonical: each element sorted, elements sorted

  Antichain() = default;
  explicit Antichain(std::vector<SourceSet> elems);  // canonicalizes and validates

  bool operator==(const Antichain& o) const { return elements == o.elements; }
  bool operator<(const Antichain& o) const { return elements < o.elements; }
  std::string str() const;  // 1-based, e.g. "{1}{23}"
};

// Parses "{1}{23}" (1-based) into an antichain.
Antichain parse_antichain(const std::string& text);

// alpha below beta iff every B in beta contains some A in alpha.
bool below(const Antichain& alpha, const Antichain& beta);

std::vector<Antichain> enumerate_antichains(int n);

class RedundancyLattice {
 public:
  explicit RedundancyLattice(int n_sources);

  int n_sources() const { return n_; }
  std::size_t size() const { return nodes_.size(); }
  const Antichain& node(std::size_t i) const { return nodes_[i]; }
  const std::vector<Antichain>& nodes() const { return nodes_; }
  // Nodes are stored in a topological order: everything strictly below i has a smaller index.
  const std::vector<int>& strictly_below(std::size_t i) const { return down_[i]; }
  const std::vector<int>& hasse_predecessors(std::size_t i) const { return hasse_[i]; }
  bool leq(std::size_t i, std::size_t j) const { return order_[i * nodes_.size() + j]; }
  std::size_t bottom() const { return bottom_; }
  std::size_t top() const { return top_; }
  std::size_t index_of(const Antichain& a) const;  // throws if absent

 private:
  int n_;
  std::vector<Antichain> nodes_;
  std::vector<char> order_;
  std::vector<std::vector<int>> down_;
  std::vector<std::vector<int>> hasse_;
  std::size_t bottom_ = 0, top_ = 0;
};

// Shared immutable lattice for 1 <= n <= 4.
std::shared_ptr<const RedundancyLattice> lattice_for(int n);

std::vector<double> moebius_atoms(const RedundancyLattice& lattice, const std::vector<double>& icap);
std::vector<double> recompose(const RedundancyLattice& lattice, const std::vector<double>& atoms);

struct NodeNote {
  double residual = 0.0;
  bool approximate = false;
  std::string message;
};

struct Decomposition {
  std::string measure_id;
  std::string system_name;
  std::shared_ptr<const RedundancyLattice> lattice;
  std::vector<double> icap;
  std::vector<double> atoms;
  std::vector<NodeNote> notes;

  double icap_of(const Antichain& a) const { return icap[lattice->index_of(a)]; }
  double atom_of(const Antichain& a) const { return atoms[lattice->index_of(a)]; }
};

// Inclusion-exclusion over redundancies of singleton collections.
double union_information(const Decomposition& d);
// True when the union information exceeds the joint mutual information by more than tol.
bool union_lp_violation(const Decomposition& d, double joint_mi, double tol = 1e-9);

}  // namespace pidwb
