#include "pidwb/info.hpp"
#include "pidwb/measures.hpp"
#include "view_data.hpp"

#include <Eigen/Dense>

#include <cmath>

namespace pidwb {

namespace {

// min over Delta_P of I_Q(X1X2;Y), parametrized as q = q0 + N t on the product support of each
// target slice, solved by a log-barrier Newton continuation.
struct BrojaProblem {
  int n1 = 0, n2 = 0, ny = 0;
  std::vector<int> cell_x12;   // joint source index x1*n2+x2 of each free cell
  std::vector<int> cell_full;  // index into the view table
  std::vector<double> q0;
  Eigen::MatrixXd N;           // cells x dims

  explicit BrojaProblem(const detail::ViewData& v) {
    n1 = v.cards[0];
    n2 = v.cards[1];
    ny = v.ny;
    std::vector<std::vector<std::pair<int, double>>> dirs;
    for (int y = 0; y < ny; ++y) {
      double py = v.py[static_cast<std::size_t>(y)];
      if (!(py > 0)) continue;
      std::vector<int> rows, cols;
      for (int a = 0; a < n1; ++a)
        if (v.pay[0][static_cast<std::size_t>(a * ny + y)] > 0) rows.push_back(a);
      for (int b = 0; b < n2; ++b)
        if (v.pay[1][static_cast<std::size_t>(b * ny + y)] > 0) cols.push_back(b);
      std::vector<std::vector<int>> id(rows.size(), std::vector<int>(cols.size()));
      for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) {
          id[i][j] = static_cast<int>(q0.size());
          int a = rows[i], b = cols[j];
          q0.push_back(v.pay[0][static_cast<std::size_t>(a * ny + y)] * v.pay[1][static_cast<std::size_t>(b * ny + y)] / py);
          cell_x12.push_back(a * n2 + b);
          cell_full.push_back((a * n2 + b) * ny + y);
        }
      for (std::size_t i = 1; i < rows.size(); ++i)
        for (std::size_t j = 1; j < cols.size(); ++j)
          dirs.push_back({{id[i][j], 1.0}, {id[i][0], -1.0}, {id[0][j], -1.0}, {id[0][0], 1.0}});
    }
    N = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(q0.size()), static_cast<Eigen::Index>(dirs.size()));
    for (std::size_t d = 0; d < dirs.size(); ++d)
      for (auto [c, s] : dirs[d]) N(c, static_cast<Eigen::Index>(d)) = s;
  }

  // f(q) = -H(Y|X1X2) in nats, i.e. sum q log q - sum_x q(x) log q(x)
  double objective(const Eigen::VectorXd& q) const {
    std::vector<double> qx(static_cast<std::size_t>(n1 * n2), 0.0);
    double f = 0.0;
    for (Eigen::Index c = 0; c < q.size(); ++c) {
      qx[static_cast<std::size_t>(cell_x12[static_cast<std::size_t>(c)])] += q(c);
      if (q(c) > 0) f += q(c) * std::log(q(c));
    }
    for (double s : qx)
      if (s > 0) f -= s * std::log(s);
    return f;
  }
};

}  // namespace

RedundancyValue i_broja(const JointDistribution& view, const MeasureConfig& cfg) {
  detail::ViewData v(view);
  detail::require_arity(v, 2, 2, "broja");
  BrojaProblem pb(v);
  const Eigen::Index ncell = static_cast<Eigen::Index>(pb.q0.size());
  const Eigen::Index dim = pb.N.cols();
  Eigen::VectorXd q = Eigen::Map<const Eigen::VectorXd>(pb.q0.data(), ncell);

  int iterations = 0;
  double decrement = 0.0;
  if (dim > 0) {
    double mu = 1e-3;
    auto barrier_value = [&](const Eigen::VectorXd& x, double m) {
      double b = 0.0;
      for (Eigen::Index c = 0; c < x.size(); ++c) b -= std::log(x(c));
      return pb.objective(x) + m * b;
    };
    while (true) {
      for (int inner = 0; inner < 100; ++inner) {
        std::vector<double> qx(static_cast<std::size_t>(pb.n1 * pb.n2), 0.0);
        for (Eigen::Index c = 0; c < ncell; ++c) qx[static_cast<std::size_t>(pb.cell_x12[static_cast<std::size_t>(c)])] += q(c);
        Eigen::VectorXd g(ncell);
        Eigen::MatrixXd H = Eigen::MatrixXd::Zero(ncell, ncell);
        for (Eigen::Index c = 0; c < ncell; ++c) {
          double sx = qx[static_cast<std::size_t>(pb.cell_x12[static_cast<std::size_t>(c)])];
          g(c) = std::log(q(c)) - std::log(sx) - mu / q(c);
          H(c, c) += 1.0 / q(c) + mu / (q(c) * q(c));
          for (Eigen::Index d = 0; d < ncell; ++d)
            if (pb.cell_x12[static_cast<std::size_t>(d)] == pb.cell_x12[static_cast<std::size_t>(c)]) H(c, d) -= 1.0 / sx;
        }
        Eigen::VectorXd gr = pb.N.transpose() * g;
        Eigen::MatrixXd Hr = pb.N.transpose() * H * pb.N;
        Eigen::VectorXd step = Hr.ldlt().solve(-gr);
        if (!step.allFinite()) throw SolverFailure("broja: singular Newton system");
        decrement = -gr.dot(step);
        ++iterations;
        if (decrement < 1e-18) break;
        Eigen::VectorXd dq = pb.N * step;
        double alpha = 1.0;
        for (Eigen::Index c = 0; c < ncell; ++c)
          if (dq(c) < 0) alpha = std::min(alpha, -0.99 * q(c) / dq(c));
        double f0 = barrier_value(q, mu);
        Eigen::VectorXd cand = q + alpha * dq;
        while (barrier_value(cand, mu) > f0 - 0.25 * alpha * decrement && alpha > 1e-16) {
          alpha *= 0.5;
          cand = q + alpha * dq;
        }
        if (alpha <= 1e-16) break;
        q = cand;
      }
      if (mu < cfg.broja_tol * 1e-3) break;
      mu *= 0.1;
    }
  }

  // Objective in bits: min I_Q(X1X2;Y) = H(Y) + f(q)/ln 2.
  std::vector<double> full(v.t->p.size(), 0.0);
  for (Eigen::Index c = 0; c < ncell; ++c) full[static_cast<std::size_t>(pb.cell_full[static_cast<std::size_t>(c)])] = std::max(q(c), 0.0);
  ProbTable qt(v.t->shape, full);
  double min_joint = mutual_information(qt, {0, 1}, {2});
  double i1 = mutual_information(*v.t, {0}, {2});
  double i2 = mutual_information(*v.t, {1}, {2});

  double marginal_residual = 0.0;
  for (int src = 0; src < 2; ++src) {
    auto m = qt.marginal({src, 2}).p;
    for (std::size_t j = 0; j < m.size(); ++j) marginal_residual = std::max(marginal_residual, std::abs(m[j] - v.pay[static_cast<std::size_t>(src)][j]));
  }
  RedundancyValue r;
  r.value = i1 + i2 - min_joint;
  r.report.objective_value = min_joint;
  r.report.iterations = iterations;
  r.report.residual = std::max(marginal_residual, decrement);
  r.report.restarts_used = 0;
  return r;
}

}  // namespace pidwb
