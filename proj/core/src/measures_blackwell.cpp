#include "cone.hpp"
#include "pidwb/measures.hpp"
#include "pidwb/simplex.hpp"
#include "view_data.hpp"

#include <algorithm>
#include <cmath>

namespace pidwb {

namespace {

// I(Q;Y) is a sum over q of f(v_q), where f is convex and positively homogeneous and every v_q lies
// in the cone {v >= 0 : C v = 0} with sum_q v_q = 1. Subadditivity of f puts the optimum on a
// conic combination of extreme rays, so the problem reduces to one LP over the rays.
struct RayProgram {
  std::vector<std::vector<Rational>> C;
  std::size_t n = 0;
  std::vector<double> py;
  std::vector<std::vector<double>> w_of_v;  // w_y(v) = sum_j w_of_v[y][j] v_j, i.e. p(q|y) per unit of v

  double f(const std::vector<double>& v) const {
    std::vector<double> w(py.size(), 0.0);
    double m = 0.0;
    for (std::size_t y = 0; y < py.size(); ++y) {
      for (std::size_t j = 0; j < n; ++j) w[y] += w_of_v[y][j] * v[j];
      m += py[y] * w[y];
    }
    if (!(m > 0)) return 0.0;
    double total = 0.0;
    for (std::size_t y = 0; y < py.size(); ++y)
      if (w[y] > 0 && py[y] > 0) total += py[y] * w[y] * std::log2(w[y] / m);
    return total;
  }

  RedundancyValue solve(const char* name) const {
    auto rays = detail::extreme_rays(C, n);
    if (rays.empty()) throw SolverFailure(std::string(name) + ": empty feasible cone");
    const std::size_t m = rays.size();
    std::vector<std::vector<double>> A(n, std::vector<double>(m, 0.0));
    std::vector<double> cost(m), b(n, 1.0);
    std::vector<std::vector<double>> rd(m, std::vector<double>(n));
    for (std::size_t k = 0; k < m; ++k) {
      for (std::size_t j = 0; j < n; ++j) rd[k][j] = rays[k][j].get_d();
      for (std::size_t j = 0; j < n; ++j) A[j][k] = rd[k][j];
      cost[k] = -f(rd[k]);
    }
    auto lp = solve_lp<double>(A, b, cost);
    if (lp.status != LpStatus::Optimal) throw SolverFailure(std::string(name) + ": ray program did not solve");
    double residual = 0.0;
    int used = 0;
    for (std::size_t j = 0; j < n; ++j) {
      double s = -1.0;
      for (std::size_t k = 0; k < m; ++k) s += A[j][k] * lp.x[k];
      residual = std::max(residual, std::abs(s));
    }
    for (double x : lp.x)
      if (x > 1e-12) ++used;
    RedundancyValue r;
    r.value = std::max(0.0, -lp.objective);
    r.report.objective_value = -lp.objective;
    r.report.iterations = lp.pivots;
    r.report.residual = residual;
    r.report.note = std::to_string(m) + " extreme rays, |Q|=" + std::to_string(used);
    return r;
  }
};

std::vector<int> support_of(const std::vector<double>& p) {
  std::vector<int> s;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] > 0) s.push_back(static_cast<int>(i));
  return s;
}

}  // namespace

// Largest I(Q;Y) with Q - A_i - Y Markov for every element. Q is an arbitrary extension of the
// view, i.e. a channel from the supported cells (a_1..a_k, y).
RedundancyValue i_alpha(const JointDistribution& view, const MeasureConfig&) {
  detail::ViewData v(view);
  const int k = v.k, ny = v.ny;
  std::vector<std::size_t> cells;
  for (std::size_t c = 0; c < view.size(); ++c)
    if (sgn(view.p(c)) > 0) cells.push_back(c);
  const std::size_t n = cells.size();

  std::vector<JointDistribution> marg_ay;
  for (int i = 0; i < k; ++i) marg_ay.push_back(view.marginal({i, k}));
  JointDistribution marg_y = view.marginal({k});

  RayProgram prog;
  prog.n = n;
  prog.py = v.py;
  // p(q, a_i, y) = p(y | a_i) p(q, a_i)
  for (int i = 0; i < k; ++i)
    for (int a = 0; a < v.cards[static_cast<std::size_t>(i)]; ++a) {
      Rational pa = 0;
      for (int y = 0; y < ny; ++y) pa += marg_ay[static_cast<std::size_t>(i)].p(static_cast<std::size_t>(a * ny + y));
      if (sgn(pa) == 0) continue;
      for (int y = 0; y < ny; ++y) {
        if (sgn(marg_y.p(static_cast<std::size_t>(y))) == 0) continue;
        Rational py_a = marg_ay[static_cast<std::size_t>(i)].p(static_cast<std::size_t>(a * ny + y)) / pa;
        std::vector<Rational> row(n, Rational(0));
        bool any = false;
        for (std::size_t m = 0; m < n; ++m) {
          std::size_t c = cells[m];
          if (view.shape().digit(c, static_cast<std::size_t>(i)) != a) continue;
          row[m] = -py_a * view.p(c);
          if (view.shape().digit(c, static_cast<std::size_t>(k)) == y) row[m] += view.p(c);
          any = any || sgn(row[m]) != 0;
        }
        if (any) prog.C.push_back(std::move(row));
      }
    }
  prog.w_of_v.assign(static_cast<std::size_t>(ny), std::vector<double>(n, 0.0));
  for (std::size_t m = 0; m < n; ++m) {
    int y = view.shape().digit(cells[m], static_cast<std::size_t>(k));
    prog.w_of_v[static_cast<std::size_t>(y)][m] = v.t->p[cells[m]] / v.py[static_cast<std::size_t>(y)];
  }
  return prog.solve("alpha");
}

// Largest I(Q;Y) over Q that is Blackwell-inferior to every element of the collection.
RedundancyValue i_prec(const JointDistribution& view, const MeasureConfig&) {
  detail::ViewData v(view);
  const int k = v.k, ny = v.ny;
  std::vector<std::vector<int>> S(static_cast<std::size_t>(k));
  std::vector<std::size_t> offset(static_cast<std::size_t>(k) + 1, 0);
  for (int i = 0; i < k; ++i) {
    S[static_cast<std::size_t>(i)] = support_of(v.pa[static_cast<std::size_t>(i)]);
    offset[static_cast<std::size_t>(i) + 1] = offset[static_cast<std::size_t>(i)] + S[static_cast<std::size_t>(i)].size();
  }
  const std::size_t n = offset.back();
  std::vector<JointDistribution> marg_ay;
  for (int i = 0; i < k; ++i) marg_ay.push_back(view.marginal({i, k}));
  JointDistribution marg_y = view.marginal({k});

  RayProgram prog;
  prog.n = n;
  prog.py = v.py;
  // every element induces the same channel y -> q as the first one
  for (int i = 1; i < k; ++i)
    for (int y = 0; y < ny; ++y) {
      const Rational& py = marg_y.p(static_cast<std::size_t>(y));
      if (sgn(py) == 0) continue;
      std::vector<Rational> row(n, Rational(0));
      for (std::size_t ai = 0; ai < S[0].size(); ++ai)
        row[offset[0] + ai] += marg_ay[0].p(static_cast<std::size_t>(S[0][ai] * ny + y)) / py;
      for (std::size_t ai = 0; ai < S[static_cast<std::size_t>(i)].size(); ++ai)
        row[offset[static_cast<std::size_t>(i)] + ai] -=
            marg_ay[static_cast<std::size_t>(i)].p(static_cast<std::size_t>(S[static_cast<std::size_t>(i)][ai] * ny + y)) / py;
      prog.C.push_back(std::move(row));
    }
  prog.w_of_v.assign(static_cast<std::size_t>(ny), std::vector<double>(n, 0.0));
  for (int y = 0; y < ny; ++y) {
    double py = v.py[static_cast<std::size_t>(y)];
    if (!(py > 0)) continue;
    for (std::size_t ai = 0; ai < S[0].size(); ++ai)
      prog.w_of_v[static_cast<std::size_t>(y)][offset[0] + ai] = v.pay[0][static_cast<std::size_t>(S[0][ai] * ny + y)] / py;
  }
  return prog.solve("prec");
}

}  // namespace pidwb
