#include "pidwb/blackwell.hpp"

#include "pidwb/info.hpp"
#include "pidwb/simplex.hpp"

#include <stdexcept>

namespace pidwb {

void Channel::validate() const {
  if (input_card < 1 || output_card < 1) throw std::invalid_argument("channel: cardinalities must be positive");
  if (matrix.size() != static_cast<std::size_t>(input_card)) throw std::invalid_argument("channel: row count mismatch");
  for (const auto& row : matrix) {
    if (row.size() != static_cast<std::size_t>(output_card)) throw std::invalid_argument("channel: row length mismatch");
    Rational s = 0;
    for (const auto& v : row) {
      if (sgn(v) < 0 || v > 1) throw std::invalid_argument("channel: entry outside [0,1]");
      s += v;
    }
    if (s != 1) throw std::invalid_argument("channel: row does not sum to 1");
  }
}

BlackwellResult blackwell_leq(const JointDistribution& d, const IndexSet& a, const IndexSet& b,
                              const IndexSet& target) {
  require_disjoint({a, b, target});
  JointDistribution v = d.coarsen({a, b, target});
  const int na = v.variable(0).cardinality, nb = v.variable(1).cardinality, ny = v.variable(2).cardinality;

  // p(a,y), p(b,y), p(b), p(y)
  std::vector<std::vector<Rational>> pay(static_cast<std::size_t>(na), std::vector<Rational>(static_cast<std::size_t>(ny)));
  std::vector<std::vector<Rational>> pby(static_cast<std::size_t>(nb), std::vector<Rational>(static_cast<std::size_t>(ny)));
  std::vector<Rational> pb(static_cast<std::size_t>(nb)), py(static_cast<std::size_t>(ny));
  for (std::size_t i : v.support()) {
    Outcome o = v.shape().decode(i);
    const Rational& q = v.p(i);
    pay[static_cast<std::size_t>(o[0])][static_cast<std::size_t>(o[2])] += q;
    pby[static_cast<std::size_t>(o[1])][static_cast<std::size_t>(o[2])] += q;
    pb[static_cast<std::size_t>(o[1])] += q;
    py[static_cast<std::size_t>(o[2])] += q;
  }

  // Unknown k(a|b) at column b*na + a, only for b in the support of B.
  std::vector<int> live_b;
  for (int j = 0; j < nb; ++j)
    if (sgn(pb[static_cast<std::size_t>(j)]) > 0) live_b.push_back(j);
  const std::size_t nvar = live_b.size() * static_cast<std::size_t>(na);
  std::vector<std::vector<Rational>> A;
  std::vector<Rational> rhs;
  for (std::size_t jb = 0; jb < live_b.size(); ++jb) {
    std::vector<Rational> row(nvar, Rational(0));
    for (int ia = 0; ia < na; ++ia) row[jb * static_cast<std::size_t>(na) + static_cast<std::size_t>(ia)] = 1;
    A.push_back(std::move(row));
    rhs.emplace_back(1);
  }
  for (int y = 0; y < ny; ++y) {
    const Rational& pyv = py[static_cast<std::size_t>(y)];
    if (sgn(pyv) == 0) continue;
    for (int ia = 0; ia < na; ++ia) {
      std::vector<Rational> row(nvar, Rational(0));
      for (std::size_t jb = 0; jb < live_b.size(); ++jb) {
        Rational c = pby[static_cast<std::size_t>(live_b[jb])][static_cast<std::size_t>(y)] / pyv;
        row[jb * static_cast<std::size_t>(na) + static_cast<std::size_t>(ia)] = c;
      }
      A.push_back(std::move(row));
      Rational t = pay[static_cast<std::size_t>(ia)][static_cast<std::size_t>(y)] / pyv;
      rhs.push_back(t);
    }
  }

  LpResult<Rational> lp = solve_lp<Rational>(A, rhs, {});
  BlackwellResult res;
  if (lp.status == LpStatus::IterationLimit) throw std::runtime_error("blackwell_leq: simplex iteration limit");
  res.leq = lp.status == LpStatus::Optimal;
  if (res.leq) {
    Channel k;
    k.input_card = nb;
    k.output_card = na;
    k.matrix.assign(static_cast<std::size_t>(nb), std::vector<Rational>(static_cast<std::size_t>(na), Rational(0)));
    for (int j = 0; j < nb; ++j) k.matrix[static_cast<std::size_t>(j)][0] = 1;
    for (std::size_t jb = 0; jb < live_b.size(); ++jb) {
      auto& row = k.matrix[static_cast<std::size_t>(live_b[jb])];
      for (int ia = 0; ia < na; ++ia)
        row[static_cast<std::size_t>(ia)] = lp.x[jb * static_cast<std::size_t>(na) + static_cast<std::size_t>(ia)];
    }
    res.witness = std::move(k);
  }
  return res;
}

}  // namespace pidwb
