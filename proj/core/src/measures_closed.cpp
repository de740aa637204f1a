#include "pidwb/info.hpp"
#include "pidwb/maxent.hpp"
#include "pidwb/measures.hpp"
#include "view_data.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace pidwb {

namespace detail {

ViewData::ViewData(const JointDistribution& view) : t(&view.table()) {
  if (view.num_variables() < 2) throw std::invalid_argument("a view needs at least one source and a target");
  k = static_cast<int>(view.num_variables()) - 1;
  cards = view.shape().cards();
  ny = cards.back();
  py = t->marginal({k}).p;
  for (int i = 0; i < k; ++i) {
    pa.push_back(t->marginal({i}).p);
    pay.push_back(t->marginal({i, k}).p);
  }
}

IndexSet ViewData::sources() const {
  IndexSet s(static_cast<std::size_t>(k));
  std::iota(s.begin(), s.end(), 0);
  return s;
}

RedundancyValue exact(double v) {
  RedundancyValue r;
  r.value = v;
  r.report.objective_value = v;
  return r;
}

}  // namespace detail

using detail::ViewData;

RedundancyValue i_min(const JointDistribution& view, const MeasureConfig&) {
  ViewData v(view);
  double total = 0.0;
  for (int y = 0; y < v.ny; ++y) {
    double py = v.py[static_cast<std::size_t>(y)];
    if (!(py > 0)) continue;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < v.k; ++i) {
      double s = 0.0;
      for (int a = 0; a < v.cards[static_cast<std::size_t>(i)]; ++a) {
        double pay = v.pay[static_cast<std::size_t>(i)][static_cast<std::size_t>(a * v.ny + y)];
        if (!(pay > 0)) continue;
        double pa = v.pa[static_cast<std::size_t>(i)][static_cast<std::size_t>(a)];
        s += (pay / py) * (std::log2(pay / pa) - std::log2(py));
      }
      best = std::min(best, s);
    }
    total += py * best;
  }
  return detail::exact(total);
}

RedundancyValue i_mmi(const JointDistribution& view, const MeasureConfig&) {
  ViewData v(view);
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < v.k; ++i) best = std::min(best, mutual_information(*v.t, {i}, {v.k}));
  return detail::exact(best);
}

RedundancyValue i_rr(const JointDistribution& view, const MeasureConfig&) {
  ViewData v(view);
  detail::require_arity(v, 2, 2, "rr");
  const ProbTable& t = *v.t;
  double r_min = std::max(0.0, coinformation(t, {{0}, {1}, {2}}));
  double r_mmi = std::min(mutual_information(t, {0}, {2}), mutual_information(t, {1}, {2}));
  double hmin = std::min(entropy(t, {0}), entropy(t, {1}));
  double is = hmin > 0 ? mutual_information(t, {0}, {1}) / hmin : 0.0;
  return detail::exact(r_min + is * (r_mmi - r_min));
}

RedundancyValue i_mes(const JointDistribution& view, const MeasureConfig&) {
  ViewData v(view);
  detail::require_arity(v, 2, 2, "mes");
  JointDistribution q = maxent_pairwise(view);
  return detail::exact(mutual_information(q, {0}, {1}));
}

double mes_via_ipf(const JointDistribution& view, double tol) {
  if (view.num_variables() != 3) throw UnsupportedArity("mes is defined for two-element collections");
  ProbTable q = ipf_table(view.table(), {{0, 2}, {1, 2}}, IpfOptions{tol, 100000});
  return coinformation(q, {{0}, {1}, {2}});
}

RedundancyValue i_do(const JointDistribution& view, const MeasureConfig&) {
  ViewData v(view);
  detail::require_arity(v, 2, 2, "do");
  const int n1 = v.cards[0], n2 = v.cards[1], ny = v.ny;
  // p(x_i' = a, x_j = b) = sum_y p(a|y) p(y|b) p(b)
  auto intervened = [&](int i, int j, int ni, int nj) {
    std::vector<double> joint(static_cast<std::size_t>(ni * nj), 0.0);
    for (int a = 0; a < ni; ++a)
      for (int b = 0; b < nj; ++b) {
        double s = 0.0;
        for (int y = 0; y < ny; ++y) {
          double py = v.py[static_cast<std::size_t>(y)];
          if (!(py > 0)) continue;
          double p_a_y = v.pay[static_cast<std::size_t>(i)][static_cast<std::size_t>(a * ny + y)];
          double p_b_y = v.pay[static_cast<std::size_t>(j)][static_cast<std::size_t>(b * ny + y)];
          s += (p_a_y / py) * p_b_y;
        }
        joint[static_cast<std::size_t>(a * nj + b)] = s;
      }
    return mutual_information(ProbTable(Shape({ni, nj}), joint), {0}, {1});
  };
  double i12 = intervened(0, 1, n1, n2);
  double i21 = intervened(1, 0, n2, n1);
  RedundancyValue r = detail::exact(i12);
  r.report.residual = std::abs(i12 - i21);
  return r;
}

RedundancyValue i_ct(const JointDistribution& view, const MeasureConfig&) {
  ViewData v(view);
  detail::require_arity(v, 2, 2, "ct");
  const ProbTable& t = *v.t;
  ProbTable p12 = t.marginal({0, 1});
  const int n1 = v.cards[0], n2 = v.cards[1], ny = v.ny;
  // cascade through `mid`: sum_{a,y} p(a,y) log2 [sum_b p(b|a) p(y|b)] / p(y)
  auto cascade = [&](int src, int mid) {
    const int ns = src == 0 ? n1 : n2, nm = mid == 0 ? n1 : n2;
    double total = 0.0;
    for (int a = 0; a < ns; ++a) {
      double pa = v.pa[static_cast<std::size_t>(src)][static_cast<std::size_t>(a)];
      if (!(pa > 0)) continue;
      for (int y = 0; y < ny; ++y) {
        double pay = v.pay[static_cast<std::size_t>(src)][static_cast<std::size_t>(a * ny + y)];
        if (!(pay > 0)) continue;
        double r = 0.0;
        for (int b = 0; b < nm; ++b) {
          double pb = v.pa[static_cast<std::size_t>(mid)][static_cast<std::size_t>(b)];
          if (!(pb > 0)) continue;
          double pab = src == 0 ? p12.p[static_cast<std::size_t>(a * n2 + b)] : p12.p[static_cast<std::size_t>(b * n2 + a)];
          double pby = v.pay[static_cast<std::size_t>(mid)][static_cast<std::size_t>(b * ny + y)];
          r += (pab / pa) * (pby / pb);
        }
        total += pay * std::log2(r / v.py[static_cast<std::size_t>(y)]);
      }
    }
    return total;
  };
  return detail::exact(std::min(cascade(0, 1), cascade(1, 0)));
}

RedundancyValue i_dep(const JointDistribution& view, const MeasureConfig& cfg) {
  ViewData v(view);
  detail::require_arity(v, 2, 2, "dep");
  ProbTable q1 = maxent_pairwise(view).table();
  IpfReport rep;
  ProbTable q3;
  bool approximate = false;
  try {
    q3 = ipf_table(*v.t, {{0, 1}, {0, 2}, {1, 2}}, IpfOptions{cfg.ipf_tol, cfg.ipf_max_iter}, &rep);
  } catch (const IpfError& e) {
    if (e.report.residual > 1e-7) throw SolverFailure(std::string("dep: ") + e.what());
    // slow boundary convergence: refit with the looser tolerance the residual supports
    q3 = ipf_table(*v.t, {{0, 1}, {0, 2}, {1, 2}}, IpfOptions{std::max(e.report.residual, e.report.last_kl) * 2, cfg.ipf_max_iter}, &rep);
    approximate = true;
  }
  double i1 = mutual_information(*v.t, {0}, {2});
  double i2 = mutual_information(*v.t, {1}, {2});
  double u1 = std::min(conditional_mutual_information(q1, {0}, {2}, {1}), conditional_mutual_information(q3, {0}, {2}, {1}));
  double u2 = std::min(conditional_mutual_information(q1, {1}, {2}, {0}), conditional_mutual_information(q3, {1}, {2}, {0}));
  RedundancyValue r = detail::exact(i1 - u1);
  r.report.iterations = rep.iterations;
  r.report.residual = std::max(rep.residual, std::abs((i1 - u1) - (i2 - u2)));
  r.report.approximate = approximate;
  return r;
}

RedundancyValue i_pm(const JointDistribution& view, const MeasureConfig&) {
  ViewData v(view);
  const ProbTable& t = *v.t;
  double total = 0.0;
  for (std::size_t c = 0; c < t.p.size(); ++c) {
    double p = t.p[c];
    if (!(p > 0)) continue;
    int y = t.shape.digit(c, v.target_var());
    double spec = std::numeric_limits<double>::infinity(), amb = std::numeric_limits<double>::infinity();
    for (int i = 0; i < v.k; ++i) {
      int a = t.shape.digit(c, static_cast<std::size_t>(i));
      double pa = v.pa[static_cast<std::size_t>(i)][static_cast<std::size_t>(a)];
      double pay = v.pay[static_cast<std::size_t>(i)][static_cast<std::size_t>(a * v.ny + y)];
      spec = std::min(spec, -std::log2(pa));
      amb = std::min(amb, -std::log2(pay / v.py[static_cast<std::size_t>(y)]));
    }
    total += p * (spec - amb);
  }
  return detail::exact(total);
}

RedundancyValue i_sx(const JointDistribution& view, const MeasureConfig&) {
  ViewData v(view);
  const ProbTable& t = *v.t;
  std::vector<std::size_t> supp;
  for (std::size_t c = 0; c < t.p.size(); ++c)
    if (t.p[c] > 0) supp.push_back(c);
  double total = 0.0;
  for (std::size_t c : supp) {
    int y = t.shape.digit(c, v.target_var());
    double pu = 0.0, pyu = 0.0;
    for (std::size_t d : supp) {
      bool in_union = false;
      for (int i = 0; i < v.k && !in_union; ++i)
        in_union = t.shape.digit(d, static_cast<std::size_t>(i)) == t.shape.digit(c, static_cast<std::size_t>(i));
      if (!in_union) continue;
      pu += t.p[d];
      if (t.shape.digit(d, v.target_var()) == y) pyu += t.p[d];
    }
    total += t.p[c] * std::log2(pyu / (pu * v.py[static_cast<std::size_t>(y)]));
  }
  return detail::exact(total);
}

int gacs_korner_labels(const JointDistribution& view, int k, std::vector<int>& labels) {
  IndexSet src(static_cast<std::size_t>(k));
  std::iota(src.begin(), src.end(), 0);
  ProbTable joint = view.table().marginal(src);
  // union-find over (variable, value) nodes
  std::vector<int> offset(static_cast<std::size_t>(k) + 1, 0);
  for (int i = 0; i < k; ++i) offset[static_cast<std::size_t>(i) + 1] = offset[static_cast<std::size_t>(i)] + joint.card(static_cast<std::size_t>(i));
  std::vector<int> parent(static_cast<std::size_t>(offset.back()));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };
  for (std::size_t c = 0; c < joint.p.size(); ++c) {
    if (!(joint.p[c] > 0)) continue;
    int root = find(offset[0] + joint.shape.digit(c, 0));
    for (int i = 1; i < k; ++i) {
      int other = find(offset[static_cast<std::size_t>(i)] + joint.shape.digit(c, static_cast<std::size_t>(i)));
      if (other != root) parent[static_cast<std::size_t>(other)] = root;
    }
  }
  labels.assign(joint.p.size(), -1);
  std::vector<int> comp_id(parent.size(), -1);
  int ncomp = 0;
  for (std::size_t c = 0; c < joint.p.size(); ++c) {
    if (!(joint.p[c] > 0)) continue;
    int root = find(offset[0] + joint.shape.digit(c, 0));
    if (comp_id[static_cast<std::size_t>(root)] < 0) comp_id[static_cast<std::size_t>(root)] = ncomp++;
    labels[c] = comp_id[static_cast<std::size_t>(root)];
  }
  return ncomp;
}

RedundancyValue i_wedge(const JointDistribution& view, const MeasureConfig&) {
  ViewData v(view);
  std::vector<int> labels;
  int ncomp = gacs_korner_labels(view, v.k, labels);
  if (ncomp == 1) return detail::exact(0.0);  // constant common part
  const ProbTable& t = *v.t;
  std::vector<double> qy(static_cast<std::size_t>(ncomp * v.ny), 0.0);
  for (std::size_t c = 0; c < t.p.size(); ++c) {
    if (!(t.p[c] > 0)) continue;
    std::size_t src_index = c / static_cast<std::size_t>(v.ny);
    int y = t.shape.digit(c, v.target_var());
    qy[static_cast<std::size_t>(labels[src_index] * v.ny + y)] += t.p[c];
  }
  return detail::exact(mutual_information(ProbTable(Shape({ncomp, v.ny}), qy), {0}, {1}));
}

RedundancyValue i_ccs(const JointDistribution& view, const MeasureConfig& cfg) {
  ViewData v(view);
  const int k = v.k;
  std::vector<IndexSet> constraints;
  for (int i = 0; i < k; ++i) constraints.push_back({i, k});
  constraints.push_back(v.sources());
  IpfReport rep;
  ProbTable q;
  bool approximate = false;
  try {
    q = ipf_table(*v.t, constraints, IpfOptions{cfg.ipf_tol, cfg.ipf_max_iter}, &rep);
  } catch (const IpfError& e) {
    if (e.report.residual > 1e-7) throw SolverFailure(std::string("ccs: ") + e.what());
    q = ipf_table(*v.t, constraints, IpfOptions{std::max(e.report.residual, e.report.last_kl) * 2, cfg.ipf_max_iter}, &rep);
    approximate = true;
  }

  // p(y | a_S) for every nonempty subset S of the sources, via marginals of the fitted pmf
  const std::size_t nsub = (std::size_t{1} << k);
  std::vector<ProbTable> with_y(nsub), without_y(nsub);
  std::vector<std::vector<std::size_t>> proj_with(nsub), proj_without(nsub);
  for (std::size_t mask = 1; mask < nsub; ++mask) {
    IndexSet s;
    for (int i = 0; i < k; ++i)
      if (mask & (std::size_t{1} << i)) s.push_back(i);
    without_y[mask] = q.marginal(s);
    proj_without[mask] = q.projection(s);
    s.push_back(k);
    with_y[mask] = q.marginal(s);
    proj_with[mask] = q.projection(s);
  }
  std::vector<double> qy = q.marginal({k}).p;

  auto sgn = [](double x) { return x > 1e-12 ? 1 : (x < -1e-12 ? -1 : 0); };
  double total = 0.0;
  for (std::size_t c = 0; c < q.p.size(); ++c) {
    if (!(q.p[c] > 0)) continue;
    int y = q.shape.digit(c, static_cast<std::size_t>(k));
    std::vector<double> local(nsub, 0.0);
    double coi = 0.0;
    for (std::size_t mask = 1; mask < nsub; ++mask) {
      double num = with_y[mask].p[proj_with[mask][c]] / without_y[mask].p[proj_without[mask][c]];
      local[mask] = std::log2(num / qy[static_cast<std::size_t>(y)]);
      coi += (__builtin_popcountll(mask) % 2 == 1 ? 1.0 : -1.0) * local[mask];
    }
    int s = sgn(coi);
    if (s == 0) continue;
    bool agree = sgn(local[nsub - 1]) == s;
    for (int i = 0; i < k && agree; ++i) agree = sgn(local[std::size_t{1} << i]) == s;
    if (agree) total += q.p[c] * coi;
  }
  RedundancyValue r = detail::exact(total);
  r.report.iterations = rep.iterations;
  r.report.residual = rep.residual;
  r.report.approximate = approximate;
  return r;
}

}  // namespace pidwb
