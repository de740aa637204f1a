#pragma once

// Independent reference computations for the tests. Everything here is written from the
// definitions with plain loops and shares no code with the library beyond its data types.

#include "pidwb/distribution.hpp"
#include "pidwb/lattice.hpp"
#include "pidwb/rational.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <vector>

namespace oracle {

using pidwb::JointDistribution;
using pidwb::Rational;

// Dense 3-way table p[a][b][y] from a three-variable distribution.
struct Table3 {
  int na = 0, nb = 0, ny = 0;
  std::vector<double> p;
  double& at(int a, int b, int y) { return p[static_cast<std::size_t>((a * nb + b) * ny + y)]; }
  double at(int a, int b, int y) const { return p[static_cast<std::size_t>((a * nb + b) * ny + y)]; }
};

inline Table3 table3(const JointDistribution& d) {
  Table3 t;
  t.na = d.variable(0).cardinality;
  t.nb = d.variable(1).cardinality;
  t.ny = d.variable(2).cardinality;
  t.p.assign(static_cast<std::size_t>(t.na * t.nb * t.ny), 0.0);
  for (int a = 0; a < t.na; ++a)
    for (int b = 0; b < t.nb; ++b)
      for (int y = 0; y < t.ny; ++y) t.at(a, b, y) = d.p({a, b, y}).get_d();
  return t;
}

inline double xlogx_ratio(double p, double q) { return p > 0 ? p * std::log2(p / q) : 0.0; }

// I(A;Y), I(B;Y), I(AB;Y) and I(A;B) of a 3-way table.
struct Infos {
  double ay = 0, by = 0, aby = 0, ab = 0;
};

inline Infos infos(const Table3& t) {
  std::vector<double> pa(t.na, 0), pb(t.nb, 0), py(t.ny, 0), pab(t.na * t.nb, 0), pay(t.na * t.ny, 0),
      pby(t.nb * t.ny, 0);
  for (int a = 0; a < t.na; ++a)
    for (int b = 0; b < t.nb; ++b)
      for (int y = 0; y < t.ny; ++y) {
        double v = t.at(a, b, y);
        pa[a] += v;
        pb[b] += v;
        py[y] += v;
        pab[a * t.nb + b] += v;
        pay[a * t.ny + y] += v;
        pby[b * t.ny + y] += v;
      }
  Infos r;
  for (int a = 0; a < t.na; ++a)
    for (int y = 0; y < t.ny; ++y) r.ay += xlogx_ratio(pay[a * t.ny + y], pa[a] * py[y]);
  for (int b = 0; b < t.nb; ++b)
    for (int y = 0; y < t.ny; ++y) r.by += xlogx_ratio(pby[b * t.ny + y], pb[b] * py[y]);
  for (int a = 0; a < t.na; ++a)
    for (int b = 0; b < t.nb; ++b) {
      r.ab += xlogx_ratio(pab[a * t.nb + b], pa[a] * pb[b]);
      for (int y = 0; y < t.ny; ++y) r.aby += xlogx_ratio(t.at(a, b, y), pab[a * t.nb + b] * py[y]);
    }
  return r;
}

// Entropy in bits of the marginal on `vars` of a distribution, by direct summation.
inline double entropy(const JointDistribution& d, const std::vector<int>& vars) {
  std::map<std::vector<int>, double> m;
  for (std::size_t i = 0; i < d.size(); ++i) {
    auto o = d.shape().decode(i);
    std::vector<int> key;
    for (int v : vars) key.push_back(o[static_cast<std::size_t>(v)]);
    m[key] += d.p(i).get_d();
  }
  double h = 0;
  for (auto& [k, p] : m)
    if (p > 0) h -= p * std::log2(p);
  return h;
}

// Fourier-Motzkin feasibility of { x : G x <= h } over the rationals.
struct Ineq {
  std::vector<Rational> g;
  Rational h;
};

inline bool fm_feasible(std::vector<Ineq> sys, int nvars) {
  auto normalize = [](Ineq& c) {
    Rational scale = 0;
    for (auto& v : c.g)
      if (v != 0) {
        scale = abs(v);
        break;
      }
    if (scale == 0) return;
    for (auto& v : c.g) v /= scale;
    c.h /= scale;
  };
  for (int j = 0; j < nvars; ++j) {
    std::vector<Ineq> pos, neg, next;
    for (auto& c : sys) {
      if (c.g[static_cast<std::size_t>(j)] > 0)
        pos.push_back(c);
      else if (c.g[static_cast<std::size_t>(j)] < 0)
        neg.push_back(c);
      else
        next.push_back(c);
    }
    for (const auto& p : pos)
      for (const auto& n : neg) {
        Rational lp = -n.g[static_cast<std::size_t>(j)], ln = p.g[static_cast<std::size_t>(j)];
        Ineq c;
        c.g.resize(static_cast<std::size_t>(nvars));
        for (int k = 0; k < nvars; ++k)
          c.g[static_cast<std::size_t>(k)] = lp * p.g[static_cast<std::size_t>(k)] + ln * n.g[static_cast<std::size_t>(k)];
        c.h = lp * p.h + ln * n.h;
        c.g[static_cast<std::size_t>(j)] = 0;
        next.push_back(c);
      }
    // drop duplicates to keep the pairwise blow-up in check
    for (auto& c : next) normalize(c);
    std::sort(next.begin(), next.end(), [](const Ineq& a, const Ineq& b) {
      if (a.g != b.g) return a.g < b.g;
      return a.h < b.h;
    });
    std::vector<Ineq> dedup;
    for (auto& c : next) {
      if (!dedup.empty() && dedup.back().g == c.g) continue;  // sorted by h: the first is the tightest
      dedup.push_back(c);
    }
    sys = std::move(dedup);
  }
  for (const auto& c : sys)
    if (c.h < 0) return false;
  return true;
}

// Is A below B in the Blackwell order relative to Y? Variables are single indices of d.
// Unknowns k(a|b); constraints k >= 0, sum_a k(a|b) = 1, sum_b k(a|b) p(b|y) = p(a|y) for p(y) > 0.
inline bool blackwell_oracle(const JointDistribution& d, int A, int B, int Y) {
  const int na = d.variable(static_cast<std::size_t>(A)).cardinality;
  const int nb = d.variable(static_cast<std::size_t>(B)).cardinality;
  const int ny = d.variable(static_cast<std::size_t>(Y)).cardinality;
  std::vector<Rational> pay(static_cast<std::size_t>(na * ny), 0), pby(static_cast<std::size_t>(nb * ny), 0),
      py(static_cast<std::size_t>(ny), 0);
  for (std::size_t i = 0; i < d.size(); ++i) {
    auto o = d.shape().decode(i);
    const Rational& p = d.p(i);
    int a = o[static_cast<std::size_t>(A)], b = o[static_cast<std::size_t>(B)], y = o[static_cast<std::size_t>(Y)];
    pay[static_cast<std::size_t>(a * ny + y)] += p;
    pby[static_cast<std::size_t>(b * ny + y)] += p;
    py[static_cast<std::size_t>(y)] += p;
  }
  const int n = na * nb;
  auto var = [&](int a, int b) { return static_cast<std::size_t>(a * nb + b); };
  std::vector<Ineq> sys;
  auto add_eq = [&](std::vector<Rational> g, Rational h) {
    sys.push_back({g, h});
    for (auto& v : g) v = -v;
    sys.push_back({g, -h});
  };
  for (int a = 0; a < na; ++a)
    for (int b = 0; b < nb; ++b) {
      std::vector<Rational> g(static_cast<std::size_t>(n), 0);
      g[var(a, b)] = -1;
      sys.push_back({g, 0});
    }
  for (int b = 0; b < nb; ++b) {
    std::vector<Rational> g(static_cast<std::size_t>(n), 0);
    for (int a = 0; a < na; ++a) g[var(a, b)] = 1;
    add_eq(g, 1);
  }
  for (int y = 0; y < ny; ++y) {
    if (py[static_cast<std::size_t>(y)] == 0) continue;
    for (int a = 0; a < na; ++a) {
      std::vector<Rational> g(static_cast<std::size_t>(n), 0);
      for (int b = 0; b < nb; ++b) g[var(a, b)] = pby[static_cast<std::size_t>(b * ny + y)] / py[static_cast<std::size_t>(y)];
      add_eq(g, pay[static_cast<std::size_t>(a * ny + y)] / py[static_cast<std::size_t>(y)]);
    }
  }
  return fm_feasible(sys, n);
}

// BROJA redundancy of a binary (X1, X2, Y) table by exhaustive search over the free coordinates
// q(0,0|y), each on a grid of the given step including both interval ends.
inline double broja_grid(const Table3& t, double step = 1e-3) {
  std::vector<double> py(t.ny, 0), a(t.ny, 0), b(t.ny, 0);
  for (int y = 0; y < t.ny; ++y) {
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) py[y] += t.at(i, j, y);
    if (py[y] > 0) {
      a[y] = (t.at(0, 0, y) + t.at(0, 1, y)) / py[y];
      b[y] = (t.at(0, 0, y) + t.at(1, 0, y)) / py[y];
    }
  }
  std::vector<std::vector<double>> grid(t.ny);
  for (int y = 0; y < t.ny; ++y) {
    if (!(py[y] > 0)) {
      grid[y] = {0.0};
      continue;
    }
    double lo = std::max(0.0, a[y] + b[y] - 1), hi = std::min(a[y], b[y]);
    for (double v = lo; v < hi; v += step) grid[y].push_back(v);
    grid[y].push_back(hi);
  }
  Table3 q = t;
  double best = INFINITY;
  std::vector<std::size_t> idx(t.ny, 0);
  while (true) {
    for (int y = 0; y < t.ny; ++y) {
      double s = grid[y][idx[y]];
      q.at(0, 0, y) = py[y] * s;
      q.at(0, 1, y) = std::max(0.0, py[y] * (a[y] - s));
      q.at(1, 0, y) = std::max(0.0, py[y] * (b[y] - s));
      q.at(1, 1, y) = std::max(0.0, py[y] * (1 - a[y] - b[y] + s));
    }
    best = std::min(best, infos(q).aby);
    int y = 0;
    while (y < t.ny && ++idx[y] == grid[y].size()) idx[y++] = 0;
    if (y == t.ny) break;
  }
  Infos base = infos(t);
  return base.ay + base.by - best;
}

// Pairwise maximum entropy fit of (A,Y), (B,Y) by iterative proportional fitting from uniform.
inline Table3 ipf_pairwise(const Table3& t, int sweeps = 5000) {
  Table3 q = t;
  std::fill(q.p.begin(), q.p.end(), 1.0 / static_cast<double>(q.p.size()));
  std::vector<double> pay(t.na * t.ny, 0), pby(t.nb * t.ny, 0);
  for (int a = 0; a < t.na; ++a)
    for (int b = 0; b < t.nb; ++b)
      for (int y = 0; y < t.ny; ++y) {
        pay[a * t.ny + y] += t.at(a, b, y);
        pby[b * t.ny + y] += t.at(a, b, y);
      }
  for (int s = 0; s < sweeps; ++s) {
    std::vector<double> m(t.na * t.ny, 0);
    for (int a = 0; a < t.na; ++a)
      for (int b = 0; b < t.nb; ++b)
        for (int y = 0; y < t.ny; ++y) m[a * t.ny + y] += q.at(a, b, y);
    for (int a = 0; a < t.na; ++a)
      for (int b = 0; b < t.nb; ++b)
        for (int y = 0; y < t.ny; ++y) q.at(a, b, y) = m[a * t.ny + y] > 0 ? q.at(a, b, y) * pay[a * t.ny + y] / m[a * t.ny + y] : 0;
    std::vector<double> n(t.nb * t.ny, 0);
    for (int a = 0; a < t.na; ++a)
      for (int b = 0; b < t.nb; ++b)
        for (int y = 0; y < t.ny; ++y) n[b * t.ny + y] += q.at(a, b, y);
    for (int a = 0; a < t.na; ++a)
      for (int b = 0; b < t.nb; ++b)
        for (int y = 0; y < t.ny; ++y) q.at(a, b, y) = n[b * t.ny + y] > 0 ? q.at(a, b, y) * pby[b * t.ny + y] / n[b * t.ny + y] : 0;
  }
  return q;
}

// Cascade redundancy: min over the two orders of sum p(a,y) log [sum_b p(b|a) p(y|b)] / p(y).
inline double ct_reference(const Table3& t) {
  auto cascade = [&](bool swap) {
    int ns = swap ? t.nb : t.na, nm = swap ? t.na : t.nb;
    auto P = [&](int s, int m, int y) { return swap ? t.at(m, s, y) : t.at(s, m, y); };
    std::vector<double> ps(ns, 0), pm(nm, 0), py(t.ny, 0);
    for (int s = 0; s < ns; ++s)
      for (int m = 0; m < nm; ++m)
        for (int y = 0; y < t.ny; ++y) {
          ps[s] += P(s, m, y);
          pm[m] += P(s, m, y);
          py[y] += P(s, m, y);
        }
    double total = 0;
    for (int s = 0; s < ns; ++s)
      for (int y = 0; y < t.ny; ++y) {
        double psy = 0;
        for (int m = 0; m < nm; ++m) psy += P(s, m, y);
        if (!(psy > 0)) continue;
        double r = 0;
        for (int m = 0; m < nm; ++m) {
          if (!(pm[m] > 0)) continue;
          double psm = 0, pmy = 0;
          for (int yy = 0; yy < t.ny; ++yy) psm += P(s, m, yy);
          for (int ss = 0; ss < ns; ++ss) pmy += P(ss, m, y);
          r += (psm / ps[s]) * (pmy / pm[m]);
        }
        total += psy * std::log2(r / py[y]);
      }
    return total;
  };
  return std::min(cascade(false), cascade(true));
}

// Antichains of nonempty subsets of {1..n}, counted by brute force over families of subsets.
inline int count_antichains(int n) {
  const int nsub = (1 << n) - 1;  // nonempty subsets as masks 1..2^n-1
  int count = 0;
  for (long fam = 1; fam < (1L << nsub); ++fam) {
    bool ok = true;
    for (int i = 0; i < nsub && ok; ++i) {
      if (!(fam >> i & 1)) continue;
      for (int j = 0; j < nsub && ok; ++j) {
        if (i == j || !(fam >> j & 1)) continue;
        int si = i + 1, sj = j + 1;
        if ((si & sj) == si) ok = false;  // si subset of sj
      }
    }
    if (ok) ++count;
  }
  return count;
}

}  // namespace oracle
