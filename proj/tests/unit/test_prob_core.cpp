#include "oracles.hpp"
#include "pidwb/blackwell.hpp"
#include "pidwb/gates.hpp"
#include "pidwb/info.hpp"
#include "pidwb/maxent.hpp"
#include "pidwb/system.hpp"

#include <doctest.h>

using namespace pidwb;

namespace {

JointDistribution two_bits(const std::vector<Rational>& p) { return JointDistribution({{"A", 2}, {"B", 2}}, p); }

}  // namespace

TEST_CASE("distribution construction is exact and validated") {
  auto d = two_bits({Rational(1, 4), Rational(1, 4), Rational(1, 4), Rational(1, 4)});
  CHECK(d.mass() == 1);
  CHECK_THROWS_AS(two_bits({Rational(1, 4), Rational(1, 4), Rational(1, 4), Rational(1, 8)}), std::invalid_argument);
  CHECK_THROWS_AS(two_bits({Rational(-1, 4), Rational(3, 4), Rational(1, 4), Rational(1, 4)}), std::invalid_argument);
  auto w = JointDistribution::from_weights({{"A", 2}}, std::vector<double>{1.0, 3.0});
  CHECK(w.p(std::size_t{0}) == Rational(1, 4));
}

TEST_CASE("marginals") {
  auto u = two_bits({Rational(1, 4), Rational(1, 4), Rational(1, 4), Rational(1, 4)});
  auto m = u.marginal({0});
  CHECK(m.p(std::size_t{0}) == Rational(1, 2));

  auto t = tbc(0);
  auto y = t.dist.marginal(t.target);
  for (std::size_t i = 0; i < y.size(); ++i) CHECK(y.p(i) == Rational(1, 4));

  auto a = and_gate();
  auto ay = a.dist.marginal(a.target);
  CHECK(ay.p(std::size_t{1}) == Rational(1, 4));
}

TEST_CASE("conditioning") {
  auto x = xor_gate();
  // the conditioned variables are dropped
  auto c = x.dist.condition({2}, {1});
  REQUIRE(c.num_variables() == 2);
  CHECK(c.p(Outcome{0, 1}) == Rational(1, 2));
  CHECK(c.p(Outcome{1, 0}) == Rational(1, 2));
  CHECK(c.p(Outcome{0, 0}) == 0);

  auto t = tbc(0);
  auto ct = t.dist.condition(t.target, {0});
  CHECK(ct.p(Outcome{0, 0}) == 1);

  auto u = two_bits({Rational(1, 8), Rational(3, 8), Rational(1, 8), Rational(3, 8)});
  auto c0 = u.condition({0}, {0});
  CHECK(c0.p(std::size_t{1}) == Rational(3, 4));
  CHECK_THROWS_AS(u.condition({0}, {0, 1}), std::invalid_argument);
}

TEST_CASE("entropy values") {
  auto bit = JointDistribution({{"A", 2}}, {Rational(1, 2), Rational(1, 2)});
  CHECK(entropy(bit, {0}) == doctest::Approx(1.0));
  auto pm = JointDistribution::point_mass({{"A", 3}}, {2});
  CHECK(entropy(pm, {0}) == doctest::Approx(0.0));
  auto q = JointDistribution({{"A", 2}}, {Rational(1, 4), Rational(3, 4)});
  CHECK(entropy(q, {0}) == doctest::Approx(0.8112781245).epsilon(1e-9));
}

TEST_CASE("mutual information and coinformation on gates") {
  auto x = xor_gate();
  CHECK(mutual_information(x.dist, {0}, {2}) == doctest::Approx(0.0));
  CHECK(mutual_information(x.dist, {0, 1}, {2}) == doctest::Approx(1.0));
  CHECK(conditional_mutual_information(x.dist, {0}, {1}, {2}) == doctest::Approx(1.0));
  CHECK(coinformation(x.dist, {{0}, {1}, {2}}) == doctest::Approx(-1.0));

  auto a = and_gate();
  CHECK(coinformation(a.dist, {{0}, {1}, {2}}) == doctest::Approx(-0.1887218755).epsilon(1e-9));
  auto t = tbc(0);
  CHECK(coinformation(t.dist, {{0}, {1}, {2}}) == doctest::Approx(0.0).epsilon(1e-12));

  auto ind = random_system(2, {2, 2, 2}, 5);
  auto prod = JointDistribution({{"A", 2}, {"B", 2}, {"C", 2}},
                                std::vector<Rational>(8, Rational(1, 8)));
  CHECK(conditional_mutual_information(prod, {0}, {1}, {2}) == doctest::Approx(0.0));
  CHECK(mutual_information(ind.dist, {0, 1}, {2}) >= 0.0);
}

TEST_CASE("specific information") {
  auto t = tbc(0);
  CHECK(specific_information(t.dist, {0}, t.target, {0}) == doctest::Approx(1.0));
  auto u = unq_gate();  // X2 is independent of Y
  for (int y = 0; y < 2; ++y) CHECK(specific_information(u.dist, {1}, u.target, {y}) == doctest::Approx(0.0));
}

TEST_CASE("information functionals agree with direct summation") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto s = random_system(2, {2, 3, 2}, seed, 0);
    double h = oracle::entropy(s.dist, {0, 1});
    CHECK(entropy(s.dist, {0, 1}) == doctest::Approx(h).epsilon(1e-12));
    double mi = oracle::entropy(s.dist, {0}) + oracle::entropy(s.dist, {2}) - oracle::entropy(s.dist, {0, 2});
    CHECK(mutual_information(s.dist, {0}, {2}) == doctest::Approx(mi).epsilon(1e-10));
  }
}

TEST_CASE("pairwise maxent") {
  auto t = tbc(0);
  CHECK(maxent_pairwise(t.dist) == t.dist);

  auto prod = JointDistribution({{"A", 2}, {"B", 2}, {"C", 2}},
                                {Rational(1, 24), Rational(2, 24), Rational(1, 24), Rational(2, 24), Rational(3, 24),
                                 Rational(6, 24), Rational(3, 24), Rational(6, 24)});
  CHECK(maxent_pairwise(prod) == prod);

  auto x = xor_gate();
  auto q = maxent_pairwise(x.dist);
  for (std::size_t i = 0; i < q.size(); ++i) CHECK(q.p(i) == Rational(1, 8));
}

TEST_CASE("IPF") {
  auto s = random_system(2, {2, 2, 2}, 3);
  auto fit = ipf_fit(s.dist, {{0, 2}, {1, 2}}, 1e-13, 100000);
  auto exact = maxent_pairwise(s.dist);
  for (std::size_t i = 0; i < exact.size(); ++i) CHECK(fit.table.p[i] == doctest::Approx(exact.p(i).get_d()).epsilon(1e-10));

  auto full = ipf_fit(s.dist, {{0, 1, 2}});
  for (std::size_t i = 0; i < s.dist.size(); ++i) CHECK(full.table.p[i] == doctest::Approx(s.dist.p(i).get_d()));

  auto a = and_gate();
  IpfReport rep;
  auto q = ipf_table(a.dist.table(), {{0, 1}, {0, 2}, {1, 2}}, IpfOptions{1e-12, 200000}, &rep);
  for (const IndexSet& m : {IndexSet{0, 1}, IndexSet{0, 2}, IndexSet{1, 2}}) {
    auto qm = q.marginal(m), pm = a.dist.table().marginal(m);
    for (std::size_t i = 0; i < qm.p.size(); ++i) CHECK(std::abs(qm.p[i] - pm.p[i]) < 1e-10);
  }

  auto r = random_system(2, {2, 2, 2}, 3);
  CHECK_THROWS_AS(ipf_table(r.dist.table(), {{0, 1}, {0, 2}, {1, 2}}, IpfOptions{1e-15, 1}), IpfError);
}

TEST_CASE("Blackwell order") {
  // X1 = f(X2): garbling by the function itself
  auto s = random_system(1, {3, 2}, 4);
  std::vector<int> table = {0, 0, 1};
  auto d = s.dist.coarsen({{0}, {0}, {1}});
  // a coarser copy of X built from the same variable: merge the first two outcomes
  std::vector<std::pair<Outcome, Rational>> cells;
  for (std::size_t i = 0; i < d.size(); ++i) {
    auto o = d.shape().decode(i);
    if (o[0] != o[1] || d.p(i) == 0) continue;
    cells.push_back({{table[static_cast<std::size_t>(o[0])], o[1], o[2]}, d.p(i)});
  }
  auto g = JointDistribution::from_sparse({{"F", 2}, {"X", 3}, {"Y", 2}}, cells);
  auto r = blackwell_leq(g, {0}, {1}, {2});
  CHECK(r.leq);
  REQUIRE(r.witness.has_value());
  r.witness->validate();

  auto t = tbc(0);
  auto ty = t.dist.coarsen({{0}, {2}, {2}});
  CHECK(blackwell_leq(ty, {0}, {1}, {2}).leq);

  auto x = xor_gate();
  CHECK(blackwell_leq(x.dist, {0}, {1}, {2}).leq);

  auto u = unq_gate();  // Y = X1, X2 independent noise
  CHECK_FALSE(blackwell_leq(u.dist, {0}, {1}, {2}).leq);
  CHECK(blackwell_leq(u.dist, {1}, {0}, {2}).leq);
}

TEST_CASE("Blackwell LP matches the Fourier-Motzkin oracle on random systems") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    auto s = random_system(2, {2, 2, 2}, seed, seed % 3 == 0 ? 0 : 1);
    CHECK(blackwell_leq(s.dist, {0}, {1}, {2}).leq == oracle::blackwell_oracle(s.dist, 0, 1, 2));
    CHECK(blackwell_leq(s.dist, {1}, {0}, {2}).leq == oracle::blackwell_oracle(s.dist, 1, 0, 2));
  }
}

TEST_CASE("system operations") {
  auto x = xor_gate(), a = and_gate();
  auto p = product_system(x, a);
  CHECK(p.n_sources() == 2);
  double joint = mutual_information(p.dist, [&] {
    IndexSet v;
    for (const auto& g : p.sources) v.insert(v.end(), g.begin(), g.end());
    return v;
  }(), p.target);
  CHECK(joint == doctest::Approx(1.0 + 0.8112781245).epsilon(1e-9));

  auto t = tbc(0);
  auto same = relabel_outcomes(t, 2, {0, 1, 2, 3});
  CHECK(same.dist == t.dist);
  auto moved = relabel_outcomes(t, 2, {3, 2, 1, 0});
  CHECK(entropy(moved.dist, {0, 1, 2}) == doctest::Approx(entropy(t.dist, {0, 1, 2})));
  CHECK_THROWS_AS(relabel_outcomes(t, 2, {0, 0, 1, 2}), std::invalid_argument);

  auto round = parse_system(dump_system(a));
  CHECK(round.dist == a.dist);
  CHECK(round.sources == a.sources);
  CHECK_THROWS_AS(parse_system("{not json"), std::invalid_argument);
}

TEST_CASE("random systems are deterministic") {
  auto a = random_system(2, {2, 2, 2}, 17), b = random_system(2, {2, 2, 2}, 17);
  CHECK(a.dist == b.dist);
  for (std::size_t i = 0; i < a.dist.size(); ++i) CHECK(a.dist.p(i) > 0);
  auto c = tbc(Rational(1, 2));
  CHECK(mutual_information(c.dist, {0}, {1}) == doctest::Approx(0.1887218755).epsilon(1e-9));
  CHECK(mutual_information(tbc(1).dist, {0}, {1}) == doctest::Approx(1.0));
}
