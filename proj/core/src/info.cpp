#include "pidwb/info.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

namespace pidwb {

void require_disjoint(const std::vector<IndexSet>& groups, bool allow_empty_last) {
  std::set<int> seen;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    if (groups[g].empty() && !(allow_empty_last && g + 1 == groups.size()))
      throw std::invalid_argument("information functional: empty variable group");
    for (int v : groups[g])
      if (!seen.insert(v).second) throw std::invalid_argument("information functional: groups overlap");
  }
}

namespace {

IndexSet join(const IndexSet& a, const IndexSet& b) {
  IndexSet out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

void check_range(const ProbTable& t, const IndexSet& s) {
  for (int v : s)
    if (v < 0 || static_cast<std::size_t>(v) >= t.rank()) throw std::out_of_range("variable index out of range");
}

}  // namespace

double entropy(const ProbTable& t, const IndexSet& vars) {
  if (vars.empty()) return 0.0;
  check_range(t, vars);
  require_disjoint({vars});
  ProbTable m = t.marginal(vars);
  double h = 0.0;
  for (double q : m.p)
    if (q > 0) h -= q * std::log2(q);
  return h;
}

double entropy(const JointDistribution& d, const IndexSet& vars) {
  if (vars.empty()) throw std::invalid_argument("entropy: empty variable set");
  return entropy(d.table(), vars);
}

double mutual_information(const ProbTable& t, const IndexSet& a, const IndexSet& b) {
  require_disjoint({a, b});
  return entropy(t, a) + entropy(t, b) - entropy(t, join(a, b));
}

double mutual_information(const JointDistribution& d, const IndexSet& a, const IndexSet& b) {
  return mutual_information(d.table(), a, b);
}

double conditional_mutual_information(const ProbTable& t, const IndexSet& a, const IndexSet& b, const IndexSet& c) {
  require_disjoint({a, b, c}, true);
  if (c.empty()) return mutual_information(t, a, b);
  return entropy(t, join(a, c)) + entropy(t, join(b, c)) - entropy(t, join(join(a, b), c)) - entropy(t, c);
}

double conditional_mutual_information(const JointDistribution& d, const IndexSet& a, const IndexSet& b,
                                      const IndexSet& c) {
  return conditional_mutual_information(d.table(), a, b, c);
}

double coinformation(const ProbTable& t, const std::vector<IndexSet>& groups) {
  if (groups.size() < 2) throw std::invalid_argument("coinformation needs at least two groups");
  require_disjoint(groups);
  const std::size_t k = groups.size();
  double total = 0.0;
  for (std::size_t mask = 1; mask < (std::size_t{1} << k); ++mask) {
    IndexSet u;
    int bits = 0;
    for (std::size_t g = 0; g < k; ++g)
      if (mask & (std::size_t{1} << g)) {
        u = join(u, groups[g]);
        ++bits;
      }
    total += (bits % 2 == 1 ? 1.0 : -1.0) * entropy(t, u);
  }
  return total;
}

double coinformation(const JointDistribution& d, const std::vector<IndexSet>& groups) {
  return coinformation(d.table(), groups);
}

double specific_information(const ProbTable& t, const IndexSet& source, const IndexSet& target, const Outcome& y) {
  require_disjoint({source, target});
  check_range(t, source);
  check_range(t, target);
  if (y.size() != target.size()) throw std::invalid_argument("specific_information: target outcome arity mismatch");
  IndexSet both = join(source, target);
  ProbTable joint = t.marginal(both);
  ProbTable src = t.marginal(source);
  ProbTable tgt = t.marginal(target);

  std::vector<int> ycards;
  for (int v : target) ycards.push_back(t.card(static_cast<std::size_t>(v)));
  std::size_t yi = Shape(ycards).encode(y);
  double py = tgt.p[yi];
  if (!(py > 0)) throw std::domain_error("specific_information: target outcome has zero probability");

  const std::size_t ny = tgt.p.size();
  double acc = 0.0;
  for (std::size_t a = 0; a < src.p.size(); ++a) {
    double pay = joint.p[a * ny + yi];
    if (!(pay > 0)) continue;
    double p_a_given_y = pay / py;
    double p_y_given_a = pay / src.p[a];
    acc += p_a_given_y * (std::log2(p_y_given_a) - std::log2(py));
  }
  return acc;
}

double specific_information(const JointDistribution& d, const IndexSet& source, const IndexSet& target,
                            const Outcome& y) {
  return specific_information(d.table(), source, target, y);
}

}  // namespace pidwb
