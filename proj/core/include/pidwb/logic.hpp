#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace pidwb {

// Propositional web over the property atoms. The clause file has one clause per line:
//   ATOM MECH
//   IMPLIES SR TC TE -> ID
//   UNSAT S0 SR EI LP1 IID
// "LP" in a clause stands for the conjunction LP0 LP1. Lines starting with '#' are comments. An
// optional trailing "@n=2" marks a clause proved only for two sources.
struct Clause {
  enum class Kind { Implies, Unsat };
  Kind kind = Kind::Implies;
  std::vector<int> antecedent;  // atom indices; for Unsat the incompatible set
  int consequent = -1;
  bool bivariate_only = false;
  std::vector<std::string> members;  // antecedent or incompatible set as written, before expanding LP
  std::string text;
};

class TheoremWeb {
 public:
  // The twenty properties come first, in catalog order. Extra atoms come from ATOM lines.
  static TheoremWeb parse(const std::string& text);  // throws std::invalid_argument with the line number
  static TheoremWeb load(const std::string& path);
  static TheoremWeb shipped();                        // the web file installed with the library
  static std::string default_path();

  const std::vector<std::string>& atoms() const { return atoms_; }
  int property_count() const { return property_count_; }  // atoms beyond this are extensions
  int atom(const std::string& name) const;                 // throws on unknown names
  const std::vector<Clause>& clauses() const { return clauses_; }

  // Expands names ("LP" to LP0 LP1) into an atom mask.
  std::uint32_t mask_of(const std::vector<std::string>& names) const;
  std::vector<std::string> names_of(std::uint32_t mask, bool properties_only = false) const;

  bool satisfies(std::uint32_t assignment) const;
  // First clause the assignment violates, if any.
  const Clause* violated_clause(std::uint32_t assignment) const;

 private:
  std::vector<std::string> atoms_;
  int property_count_ = 0;
  std::vector<Clause> clauses_;
};

struct ConsistencyResult {
  bool consistent = false;
  std::optional<std::uint32_t> model;
};

// A model making every asserted atom true.
ConsistencyResult is_consistent(const std::vector<std::string>& asserted, const TheoremWeb& web);

// Forward chaining of the implications to a fixed point. Throws std::invalid_argument when the
// input is inconsistent.
std::vector<std::string> implication_closure(const std::vector<std::string>& asserted, const TheoremWeb& web);

// Inclusion-maximal sets of properties that can hold together and contain the base. Extension atoms
// are existentially quantified and never reported. Sorted by size then lexicographically.
std::vector<std::vector<std::string>> maximal_compatible_sets(const std::vector<std::string>& base,
                                                              const TheoremWeb& web);

struct ProfileCheck {
  bool consistent = false;
  std::string violated;  // a clause falsified by the fixed part of the profile, when one exists
};

// True/false per property; missing atoms are unconstrained.
ProfileCheck validate_profile(const std::map<std::string, bool>& profile, const TheoremWeb& web);

struct EntailmentReport {
  std::string clause;
  bool holds = false;
};
// Each implication: antecedent with the consequent negated is unsatisfiable.
std::vector<EntailmentReport> check_implications(const TheoremWeb& web);

struct MinimalityReport {
  std::string clause;
  bool unsat = false;
  std::vector<std::string> removable;  // members whose removal leaves an unsatisfiable set
};
// Each incompatibility set is unsatisfiable and every one-removed subset is satisfiable.
std::vector<MinimalityReport> check_incompatibilities(const TheoremWeb& web);

}  // namespace pidwb
