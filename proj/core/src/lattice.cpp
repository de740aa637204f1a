#include "pidwb/lattice.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <mutex>
#include <stdexcept>

namespace pidwb {

namespace {

bool subset_of(const SourceSet& a, const SourceSet& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

}  // namespace

Antichain::Antichain(std::vector<SourceSet> elems) : elements(std::move(elems)) {
  if (elements.empty()) throw std::invalid_argument("antichain must be nonempty");
  for (auto& e : elements) {
    if (e.empty()) throw std::invalid_argument("antichain elements must be nonempty");
    std::sort(e.begin(), e.end());
    if (std::adjacent_find(e.begin(), e.end()) != e.end()) throw std::invalid_argument("repeated source in element");
    if (e.front() < 0) throw std::invalid_argument("negative source index");
  }
  std::sort(elements.begin(), elements.end());
  for (std::size_t i = 0; i < elements.size(); ++i)
    for (std::size_t j = 0; j < elements.size(); ++j)
      if (i != j && subset_of(elements[i], elements[j]))
        throw std::invalid_argument("not an antichain: " + str());
}

std::string Antichain::str() const {
  std::string s;
  for (const auto& e : elements) {
    s += '{';
    for (int v : e) s += std::to_string(v + 1);
    s += '}';
  }
  return s;
}

Antichain parse_antichain(const std::string& text) {
  std::vector<SourceSet> elems;
  SourceSet cur;
  bool open = false;
  for (char c : text) {
    if (c == '{') {
      if (open) throw std::invalid_argument("nested brace in '" + text + "'");
      open = true;
      cur.clear();
    } else if (c == '}') {
      if (!open) throw std::invalid_argument("unbalanced brace in '" + text + "'");
      open = false;
      elems.push_back(cur);
    } else if (std::isdigit(static_cast<unsigned char>(c)) && open) {
      int v = c - '0';
      if (v < 1) throw std::invalid_argument("source indices are 1-based");
      cur.push_back(v - 1);
    } else if (!std::isspace(static_cast<unsigned char>(c)) && c != ',') {
      throw std::invalid_argument("unexpected character in '" + text + "'");
    }
  }
  if (open) throw std::invalid_argument("unbalanced brace in '" + text + "'");
  return Antichain(std::move(elems));
}

bool below(const Antichain& alpha, const Antichain& beta) {
  for (const auto& b : beta.elements) {
    bool found = false;
    for (const auto& a : alpha.elements)
      if (subset_of(a, b)) {
        found = true;
        break;
      }
    if (!found) return false;
  }
  return true;
}

std::vector<Antichain> enumerate_antichains(int n) {
  if (n < 1 || n > 4) throw std::invalid_argument("enumerate_antichains supports 1 <= n <= 4");
  const int nsets = (1 << n) - 1;  // nonempty subsets, encoded by mask 1..nsets
  std::vector<Antichain> out;
  for (unsigned pick = 1; pick < (1u << nsets); ++pick) {
    std::vector<int> masks;
    for (int s = 0; s < nsets; ++s)
      if (pick & (1u << s)) masks.push_back(s + 1);
    bool ok = true;
    for (std::size_t i = 0; i < masks.size() && ok; ++i)
      for (std::size_t j = 0; j < masks.size() && ok; ++j)
        if (i != j && (masks[i] & masks[j]) == masks[i]) ok = false;
    if (!ok) continue;
    std::vector<SourceSet> elems;
    for (int m : masks) {
      SourceSet e;
      for (int v = 0; v < n; ++v)
        if (m & (1 << v)) e.push_back(v);
      elems.push_back(std::move(e));
    }
    out.emplace_back(std::move(elems));
  }
  std::sort(out.begin(), out.end());
  return out;
}

RedundancyLattice::RedundancyLattice(int n) : n_(n) {
  std::vector<Antichain> all = enumerate_antichains(n);
  const std::size_t N = all.size();
  std::vector<std::size_t> below_count(N, 0);
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j)
      if (below(all[j], all[i])) ++below_count[i];
  std::vector<std::size_t> order(N);
  for (std::size_t i = 0; i < N; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return below_count[a] < below_count[b]; });
  for (std::size_t i : order) nodes_.push_back(all[i]);

  order_.assign(N * N, 0);
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) order_[i * N + j] = below(nodes_[i], nodes_[j]) ? 1 : 0;

  down_.assign(N, {});
  hasse_.assign(N, {});
  for (std::size_t j = 0; j < N; ++j) {
    for (std::size_t i = 0; i < N; ++i)
      if (i != j && order_[i * N + j]) down_[j].push_back(static_cast<int>(i));
    for (int i : down_[j]) {
      bool covered = true;
      for (int k : down_[j])
        if (k != i && order_[static_cast<std::size_t>(i) * N + static_cast<std::size_t>(k)]) {
          covered = false;
          break;
        }
      if (covered) hasse_[j].push_back(i);
    }
  }
  bottom_ = 0;
  top_ = N - 1;
  if (down_[top_].size() != N - 1) throw std::logic_error("lattice top is not above every node");
}

std::size_t RedundancyLattice::index_of(const Antichain& a) const {
  for (std::size_t i = 0; i < nodes_.size(); ++i)
    if (nodes_[i] == a) return i;
  throw std::out_of_range("antichain " + a.str() + " is not a node of this lattice");
}

std::shared_ptr<const RedundancyLattice> lattice_for(int n) {
  if (n < 1 || n > 4) throw std::invalid_argument("lattices are available for 1 <= n <= 4");
  static std::array<std::shared_ptr<const RedundancyLattice>, 5> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[static_cast<std::size_t>(n)];
  if (!slot) slot = std::make_shared<const RedundancyLattice>(n);
  return slot;
}

std::vector<double> moebius_atoms(const RedundancyLattice& lattice, const std::vector<double>& icap) {
  if (icap.size() != lattice.size()) throw std::invalid_argument("moebius_atoms: icap size mismatch");
  std::vector<double> atoms(icap.size());
  for (std::size_t i = 0; i < icap.size(); ++i) {
    double s = 0.0;
    for (int j : lattice.strictly_below(i)) s += atoms[static_cast<std::size_t>(j)];
    atoms[i] = icap[i] - s;
  }
  return atoms;
}

std::vector<double> recompose(const RedundancyLattice& lattice, const std::vector<double>& atoms) {
  if (atoms.size() != lattice.size()) throw std::invalid_argument("recompose: atom vector size mismatch");
  std::vector<double> icap(atoms.size());
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    double s = atoms[i];
    for (int j : lattice.strictly_below(i)) s += atoms[static_cast<std::size_t>(j)];
    icap[i] = s;
  }
  return icap;
}

double union_information(const Decomposition& d) {
  const int n = d.lattice->n_sources();
  double total = 0.0;
  for (int mask = 1; mask < (1 << n); ++mask) {
    std::vector<SourceSet> elems;
    for (int v = 0; v < n; ++v)
      if (mask & (1 << v)) elems.push_back({v});
    double sign = (elems.size() % 2 == 1) ? 1.0 : -1.0;
    total += sign * d.icap_of(Antichain(elems));
  }
  return total;
}

bool union_lp_violation(const Decomposition& d, double joint_mi, double tol) {
  return union_information(d) > joint_mi + tol;
}

}  // namespace pidwb
