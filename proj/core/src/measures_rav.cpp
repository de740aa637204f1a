#include "pidwb/info.hpp"
#include "pidwb/measures.hpp"
#include "view_data.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <unordered_map>

namespace pidwb {

namespace {

// Coinformation I(A_1;...;A_k;Y;F) for F = f(A_1..A_k), with the F-free terms precomputed.
class RavObjective {
 public:
  explicit RavObjective(const JointDistribution& view) : t_(view.table()) {
    k_ = static_cast<int>(t_.rank()) - 1;
    ny_ = t_.card(static_cast<std::size_t>(k_));
    IndexSet src;
    for (int i = 0; i < k_; ++i) src.push_back(i);
    ProbTable joint = t_.marginal(src);
    std::vector<int> joint_index(joint.p.size(), -1);
    for (std::size_t j = 0; j < joint.p.size(); ++j)
      if (joint.p[j] > 0) {
        joint_index[j] = static_cast<int>(support_.size());
        support_.push_back(j);
      }
    for (std::size_t c = 0; c < t_.p.size(); ++c)
      if (t_.p[c] > 0) cells_.push_back({joint_index[c / static_cast<std::size_t>(ny_)], c, t_.p[c]});

    const int nvars = k_ + 1;  // sources and target
    for (int mask = 1; mask < (1 << nvars); ++mask) {
      IndexSet s;
      for (int v = 0; v < nvars; ++v)
        if (mask & (1 << v)) s.push_back(v);
      base_ += (__builtin_popcount(static_cast<unsigned>(mask)) % 2 == 1 ? 1.0 : -1.0) * entropy(t_, s);
    }
    // Projections for the subsets that are joined with F.
    for (int mask = 0; mask < (1 << nvars); ++mask) {
      IndexSet s;
      for (int v = 0; v < nvars; ++v)
        if (mask & (1 << v)) s.push_back(v);
      subsets_.push_back(s);
      projections_.push_back(s.empty() ? std::vector<std::size_t>(t_.p.size(), 0) : t_.projection(s));
    }
  }

  int support_size() const { return static_cast<int>(support_.size()); }

  // f maps each supported joint source outcome (by support position) to a label.
  double operator()(const std::vector<int>& f) const {
    int nlab = *std::max_element(f.begin(), f.end()) + 1;
    double total = base_;
    std::unordered_map<std::size_t, double> acc;
    for (std::size_t m = 0; m < subsets_.size(); ++m) {
      acc.clear();
      for (const auto& cell : cells_) {
        std::size_t key = projections_[m][cell.index] * static_cast<std::size_t>(nlab) +
                          static_cast<std::size_t>(f[static_cast<std::size_t>(cell.joint)]);
        acc[key] += cell.p;
      }
      double h = 0.0;
      for (const auto& [key, p] : acc) h -= p * std::log2(p);
      // subset S joined with F has |S|+1 members
      total += ((subsets_[m].size() + 1) % 2 == 1 ? 1.0 : -1.0) * h;
    }
    return total;
  }

 private:
  struct Cell {
    int joint;
    std::size_t index;
    double p;
  };
  const ProbTable& t_;
  int k_ = 0, ny_ = 0;
  std::vector<std::size_t> support_;
  std::vector<Cell> cells_;
  double base_ = 0.0;
  std::vector<IndexSet> subsets_;
  std::vector<std::vector<std::size_t>> projections_;
};

}  // namespace

RedundancyValue i_rav(const JointDistribution& view, const MeasureConfig& cfg) {
  detail::ViewData v(view);
  RavObjective objective(view);
  const int m = objective.support_size();
  RedundancyValue r;
  double best = -std::numeric_limits<double>::infinity();
  long evaluations = 0;

  if (m <= cfg.rav_exhaustive_limit) {
    // restricted growth strings enumerate set partitions once each
    std::vector<int> f(static_cast<std::size_t>(m), 0), mx(static_cast<std::size_t>(m), 0);
    while (true) {
      best = std::max(best, objective(f));
      ++evaluations;
      int i = m - 1;
      while (i > 0 && f[static_cast<std::size_t>(i)] == mx[static_cast<std::size_t>(i) - 1] + 1) --i;
      if (i <= 0) break;
      ++f[static_cast<std::size_t>(i)];
      mx[static_cast<std::size_t>(i)] = std::max(mx[static_cast<std::size_t>(i) - 1], f[static_cast<std::size_t>(i)]);
      for (int j = i + 1; j < m; ++j) {
        f[static_cast<std::size_t>(j)] = 0;
        mx[static_cast<std::size_t>(j)] = mx[static_cast<std::size_t>(i)];
      }
    }
  } else {
    std::mt19937_64 rng(cfg.seed ^ 0x5241560000000000ULL);
    auto canonical = [](std::vector<int> f) {
      std::map<int, int> relabel;
      for (auto& x : f) x = relabel.emplace(x, static_cast<int>(relabel.size())).first->second;
      return f;
    };
    std::vector<int> ident(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) ident[static_cast<std::size_t>(i)] = i;
    std::vector<std::vector<int>> starts = {std::vector<int>(static_cast<std::size_t>(m), 0), ident};
    for (int s = 0; s < cfg.rav_random_functions / 50; ++s) {
      std::uniform_int_distribution<int> nl(1, m);
      int labels = nl(rng);
      std::uniform_int_distribution<int> pick(0, labels - 1);
      std::vector<int> f(static_cast<std::size_t>(m));
      for (auto& x : f) x = pick(rng);
      starts.push_back(canonical(f));
    }
    for (auto f : starts) {
      double cur = objective(f);
      ++evaluations;
      bool improved = true;
      while (improved && evaluations < cfg.rav_random_functions * 10L) {
        improved = false;
        for (int i = 0; i < m && !improved; ++i)
          for (int lab = 0; lab <= m && !improved; ++lab) {
            auto g = f;
            g[static_cast<std::size_t>(i)] = lab;
            g = canonical(g);
            double val = objective(g);
            ++evaluations;
            if (val > cur + 1e-13) {
              cur = val;
              f = g;
              improved = true;
            }
          }
      }
      best = std::max(best, cur);
    }
    r.report.approximate = true;
    r.report.note = "local search over functions";
  }
  if (v.k > 2) r.report.note += r.report.note.empty() ? "n>2 evaluation is not covered by the n=2 properties" : "; n>2";
  r.value = best;
  r.report.objective_value = best;
  r.report.iterations = static_cast<int>(evaluations);
  return r;
}

}  // namespace pidwb
