#include "pidwb/maxent.hpp"

#include "pidwb/info.hpp"
#include "pidwb/simplex.hpp"

#include <algorithm>
#include <cmath>

namespace pidwb {

JointDistribution maxent_pairwise(const JointDistribution& d, const IndexSet& x1, const IndexSet& x2,
                                  const IndexSet& y) {
  require_disjoint({x1, x2, y});
  IndexSet all = x1;
  all.insert(all.end(), x2.begin(), x2.end());
  all.insert(all.end(), y.begin(), y.end());
  if (all.size() != d.num_variables())
    throw std::invalid_argument("maxent_pairwise: groups must cover every variable");

  IndexSet x1y = x1, x2y = x2;
  x1y.insert(x1y.end(), y.begin(), y.end());
  x2y.insert(x2y.end(), y.begin(), y.end());
  JointDistribution m1 = d.marginal(x1y), m2 = d.marginal(x2y), my = d.marginal(y);
  auto p1 = d.table().projection(x1y);
  auto p2 = d.table().projection(x2y);
  auto py = d.table().projection(y);

  std::vector<Rational> q(d.size(), Rational(0));
  for (std::size_t i = 0; i < d.size(); ++i) {
    const Rational& den = my.p(py[i]);
    if (sgn(den) == 0) continue;
    q[i] = m1.p(p1[i]) * m2.p(p2[i]) / den;
    q[i].canonicalize();
  }
  return JointDistribution(d.variables(), std::move(q));
}

JointDistribution maxent_pairwise(const JointDistribution& d) {
  if (d.num_variables() != 3) throw std::invalid_argument("maxent_pairwise: expected three variables (X1, X2, Y)");
  return maxent_pairwise(d, {0}, {1}, {2});
}

std::vector<char> feasible_support(const ProbTable& target, const std::vector<IndexSet>& constraints) {
  std::vector<ProbTable> goals;
  std::vector<std::vector<std::size_t>> projs;
  for (const auto& c : constraints) {
    goals.push_back(target.marginal(c));
    projs.push_back(target.projection(c));
  }
  const std::size_t n = target.p.size();
  std::vector<std::size_t> cand;
  for (std::size_t i = 0; i < n; ++i) {
    bool ok = true;
    for (std::size_t c = 0; c < goals.size() && ok; ++c) ok = goals[c].p[projs[c][i]] > 0;
    if (ok) cand.push_back(i);
  }
  std::vector<char> support(n, 0);
  std::vector<std::vector<double>> A;
  std::vector<double> b;
  for (std::size_t c = 0; c < goals.size(); ++c)
    for (std::size_t j = 0; j < goals[c].p.size(); ++j) {
      if (!(goals[c].p[j] > 0)) continue;
      std::vector<double> row(cand.size(), 0.0);
      for (std::size_t k = 0; k < cand.size(); ++k)
        if (projs[c][cand[k]] == j) row[k] = 1.0;
      A.push_back(std::move(row));
      b.push_back(goals[c].p[j]);
    }
  // Each LP pushes mass onto cells not yet known to be positive; stop once none can be reached.
  std::vector<char> found(cand.size(), 0);
  while (true) {
    std::vector<double> c(cand.size(), 0.0);
    bool open = false;
    for (std::size_t k = 0; k < cand.size(); ++k)
      if (!found[k]) {
        c[k] = -1.0;
        open = true;
      }
    if (!open) break;
    auto lp = solve_lp<double>(A, b, c);
    if (lp.status != LpStatus::Optimal) {
      // numerical trouble: fall back to every candidate cell
      std::fill(found.begin(), found.end(), 1);
      break;
    }
    bool progress = false;
    for (std::size_t k = 0; k < cand.size(); ++k)
      if (!found[k] && lp.x[k] > 1e-12) {
        found[k] = 1;
        progress = true;
      }
    if (!progress) break;
  }
  for (std::size_t k = 0; k < cand.size(); ++k)
    if (found[k]) support[cand[k]] = 1;
  return support;
}

ProbTable ipf_table(const ProbTable& target, const std::vector<IndexSet>& constraints, const IpfOptions& opt,
                    IpfReport* report, const ProbTable* seed) {
  if (!(opt.tol > 0)) throw std::invalid_argument("ipf: tolerance must be positive");
  std::vector<ProbTable> goals;
  std::vector<std::vector<std::size_t>> projs;
  for (const auto& c : constraints) {
    if (c.empty()) throw std::invalid_argument("ipf: empty constraint");
    goals.push_back(target.marginal(c));
    projs.push_back(target.projection(c));
  }

  ProbTable q;
  if (seed) {
    q = *seed;
  } else {
    auto support = feasible_support(target, constraints);
    double count = static_cast<double>(std::count(support.begin(), support.end(), 1));
    q = ProbTable(target.shape, std::vector<double>(target.shape.size(), 0.0));
    for (std::size_t i = 0; i < support.size(); ++i)
      if (support[i]) q.p[i] = 1.0 / count;
  }
  std::vector<double> prev(q.p.size());
  IpfReport r;
  for (int it = 1; it <= opt.max_iter; ++it) {
    prev = q.p;
    for (std::size_t c = 0; c < goals.size(); ++c) {
      std::vector<double> cur(goals[c].p.size(), 0.0);
      for (std::size_t i = 0; i < q.p.size(); ++i) cur[projs[c][i]] += q.p[i];
      for (std::size_t i = 0; i < q.p.size(); ++i) {
        double have = cur[projs[c][i]];
        q.p[i] = have > 0 ? q.p[i] * goals[c].p[projs[c][i]] / have : 0.0;
      }
    }
    double residual = 0.0;
    for (std::size_t c = 0; c < goals.size(); ++c) {
      std::vector<double> cur(goals[c].p.size(), 0.0);
      for (std::size_t i = 0; i < q.p.size(); ++i) cur[projs[c][i]] += q.p[i];
      for (std::size_t j = 0; j < cur.size(); ++j) residual = std::max(residual, std::abs(cur[j] - goals[c].p[j]));
    }
    double kl = 0.0;
    for (std::size_t i = 0; i < q.p.size(); ++i)
      if (prev[i] > 0 && q.p[i] > 0) kl += prev[i] * std::log2(prev[i] / q.p[i]);
    r = IpfReport{it, residual, std::abs(kl)};
    if (residual < opt.tol && r.last_kl < opt.tol) {
      if (report) *report = r;
      return q;
    }
  }
  if (report) *report = r;
  throw IpfError("ipf: no convergence within " + std::to_string(opt.max_iter) + " sweeps (residual " +
                     std::to_string(r.residual) + ")",
                 r);
}

IpfFit ipf_fit(const JointDistribution& d, const std::vector<IndexSet>& constraints, double tol, int max_iter) {
  for (const auto& c : constraints) {
    for (int v : c)
      if (v < 0 || static_cast<std::size_t>(v) >= d.num_variables()) throw std::out_of_range("ipf: constraint index out of range");
    require_disjoint({c});
  }
  IpfReport r;
  ProbTable t = ipf_table(d.table(), constraints, IpfOptions{tol, max_iter}, &r);
  JointDistribution q = JointDistribution::from_weights(d.variables(), t.p);
  return IpfFit{std::move(q), std::move(t), r};
}

}  // namespace pidwb
