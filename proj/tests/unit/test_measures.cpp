#include "oracles.hpp"
#include "pidwb/axioms.hpp"
#include "pidwb/gates.hpp"
#include "pidwb/info.hpp"
#include "pidwb/measures.hpp"

#include <doctest.h>

#include <cmath>

using namespace pidwb;

namespace {

double bottom(const std::string& m, const SystemSpec& s) { return redundancy(m, s, parse_antichain("{1}{2}")).value; }
double mi(const SystemSpec& s, const IndexSet& src) {
  IndexSet v;
  for (int i : src) v.insert(v.end(), s.sources[static_cast<std::size_t>(i)].begin(), s.sources[static_cast<std::size_t>(i)].end());
  return mutual_information(s.dist, v, s.target);
}

// Sources X1 and Y, target Y.
SystemSpec second_source_is_target(const SystemSpec& s) { return regroup(s, {{0}, {2}}, {2}, s.name + "/x2=y"); }

}  // namespace

TEST_CASE("catalog") {
  CHECK(measure_catalog().size() == 15);
  CHECK(describe_measure("broja").needs_optimizer);
  CHECK(describe_measure("pm").pointwise);
  CHECK_THROWS_AS(describe_measure("nope"), std::invalid_argument);
  CHECK_THROWS_AS(redundancy("broja", three_copy(), parse_antichain("{1}{2}{3}")), UnsupportedArity);
  CHECK_NOTHROW(redundancy("mmi", three_copy(), parse_antichain("{1}{2}{3}")));
}

TEST_CASE("I_min and I_MMI") {
  CHECK(bottom("min", tbc(0)) == 1.0);
  CHECK(bottom("min", and_gate()) == doctest::Approx(0.3112781245).epsilon(1e-9));
  CHECK(redundancy("min", and_gate(), parse_antichain("{1}")).value == doctest::Approx(mi(and_gate(), {0})));
  CHECK(bottom("mmi", tbc(0)) == doctest::Approx(1.0));
  CHECK(bottom("mmi", xor_gate()) == doctest::Approx(0.0));
}

TEST_CASE("measures on the two-bit copy family") {
  for (const char* m : {"broja", "mes", "dep", "ct", "do", "rav", "ccs", "rr", "wedge", "alpha", "prec"}) {
    INFO(m);
    CHECK(std::abs(bottom(m, tbc(0))) < 1e-4);
  }
  CHECK(bottom("pm", tbc(0)) > 0.1);
  CHECK(bottom("sx", tbc(0)) > 0.1);
  for (const char* m : {"broja", "mes", "dep", "ct", "do", "rav"})
    for (const char* c : {"1/4", "1/2", "3/4", "1"}) {
      auto s = tbc(parse_rational(c));
      INFO(m << " at correlation " << c);
      CHECK(bottom(m, s) == doctest::Approx(mutual_information(s.dist, {0}, {1})).epsilon(1e-4));
    }
}

TEST_CASE("redundant bit") {
  for (const char* m : {"min", "mmi", "rr", "ccs", "pm", "sx", "broja", "wedge", "alpha", "prec"}) {
    INFO(m);
    CHECK(bottom(m, rdn_gate()) == doctest::Approx(1.0).epsilon(1e-4));
  }
}

TEST_CASE("target as a source") {
  for (std::uint64_t seed : {2u, 5u}) {
    auto s = second_source_is_target(random_system(2, {2, 2, 2}, seed));
    for (const char* m : {"rr", "prec", "do", "dep", "rav", "broja"}) {
      INFO(m << " seed " << seed);
      CHECK(bottom(m, s) == doctest::Approx(mi(s, {0})).epsilon(1e-4));
    }
  }
}

TEST_CASE("identical sources") {
  auto s = noisy_copy_pair(Rational(1, 10));
  const double i1 = mi(s, {0});
  CHECK(bottom("wedge", s) == doctest::Approx(i1));
  CHECK(bottom("alpha", s) == doctest::Approx(i1).epsilon(1e-4));
  CHECK(bottom("prec", s) == doctest::Approx(i1).epsilon(1e-4));
  CHECK(bottom("mes", s) < i1 - 1e-3);
  CHECK(bottom("do", s) < i1 - 1e-3);
}

TEST_CASE("Gacs-Korner redundancy vanishes on full-support sources") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) CHECK(bottom("wedge", random_system(2, {2, 2, 2}, seed)) == 0.0);
}

TEST_CASE("BROJA matches the grid oracle") {
  for (const auto& s : {xor_gate(), and_gate(), random_system(2, {2, 2, 2}, 3), random_system(2, {2, 2, 2}, 8, 0)}) {
    INFO(s.name);
    auto t = oracle::table3(s.bivariate_view());
    CHECK(bottom("broja", s) == doctest::Approx(oracle::broja_grid(t)).epsilon(1e-4));
  }
  auto d = decompose("broja", xor_gate());
  for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(d.atoms[i]) < 1e-4);
  CHECK(d.atoms[3] == doctest::Approx(1.0).epsilon(1e-4));
  auto ind = decompose("broja", tbc(0));
  const std::vector<double> want = {0, 1, 1, 0};
  for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(ind.atoms[i] - want[i]) < 1e-4);
}

TEST_CASE("MES closed form matches an independent IPF fit") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto s = random_system(2, {2, 3, 2}, seed);
    auto q = oracle::ipf_pairwise(oracle::table3(s.bivariate_view()));
    CHECK(bottom("mes", s) == doctest::Approx(oracle::infos(q).ab).epsilon(1e-8));
  }
}

TEST_CASE("CT matches the cascade recomputation") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto s = random_system(2, {2, 3, 2}, seed, seed % 2 ? 0 : 1);
    CHECK(bottom("ct", s) == doctest::Approx(oracle::ct_reference(oracle::table3(s.bivariate_view()))).epsilon(1e-10));
  }
  // the cascade can fall below zero
  CHECK(bottom("ct", random_system(2, {2, 2, 2}, 7, 0)) < -0.02);
}

TEST_CASE("CCS keeps only sign-coherent local terms") {
  // X uniform on three outcomes, Z merges the first two, p(y = 0 | x) = 3/5, 1/10, 4/5
  const Rational py0[3] = {Rational(3, 5), Rational(1, 10), Rational(4, 5)};
  std::vector<std::pair<Outcome, Rational>> cells;
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 2; ++y) cells.push_back({{x < 2 ? 0 : 1, x, y}, Rational(1, 3) * (y == 0 ? py0[x] : 1 - py0[x])});
  auto d = JointDistribution::from_sparse({{"Z", 2}, {"X", 3}, {"Y", 2}}, cells);

  // Z is a function of X, so the maximum entropy fit is p and the local coinformation is i(z;y)
  double expected = 0.0;
  for (const auto& [o, p] : cells) {
    double pyy = d.marginal({2}).p(Outcome{o[2]}).get_d();
    double pzy = d.marginal({0, 2}).p(Outcome{o[0], o[2]}).get_d() / d.marginal({0}).p(Outcome{o[0]}).get_d();
    double pxy = d.marginal({1, 2}).p(Outcome{o[1], o[2]}).get_d() / d.marginal({1}).p(Outcome{o[1]}).get_d();
    double iz = std::log2(pzy / pyy), ix = std::log2(pxy / pyy);
    if ((iz > 0) == (ix > 0)) expected += p.get_d() * iz;
  }
  double value = i_ccs(d).value;
  CHECK(value == doctest::Approx(expected).epsilon(1e-9));
  CHECK(std::abs(value - mutual_information(d, {0}, {2})) > 1e-3);
}

TEST_CASE("bound chain wedge <= alpha <= prec <= mmi") {
  for (const auto& s : {and_gate(), xor_gate(), noisy_copy_pair(Rational(1, 5)), random_system(2, {2, 2, 2}, 4),
                        random_system(2, {2, 3, 2}, 6, 0)}) {
    INFO(s.name);
    double w = bottom("wedge", s), a = bottom("alpha", s), p = bottom("prec", s), m = bottom("mmi", s);
    CHECK(w <= a + 2e-4);
    CHECK(a <= p + 2e-4);
    CHECK(p <= m + 2e-4);
  }
}

TEST_CASE("single-source and self redundancy") {
  auto s = random_system(2, {2, 2, 2}, 9);
  for (const char* m : {"min", "mmi", "ccs", "pm", "sx", "wedge", "alpha", "prec"}) {
    INFO(m);
    CHECK(redundancy(m, s, parse_antichain("{1}")).value == doctest::Approx(mi(s, {0})).epsilon(1e-4));
  }
}

TEST_CASE("decompositions recompose") {
  for (const auto& m : measure_catalog())
    for (const auto& s : {and_gate(), xor_gate(), random_system(2, {2, 2, 2}, 11)}) {
      auto d = decompose(m.id, s);
      auto back = recompose(*d.lattice, d.atoms);
      for (std::size_t i = 0; i < back.size(); ++i) CHECK(std::abs(back[i] - d.icap[i]) < 1e-9);
    }
  auto d3 = decompose("mmi", xor_source_copy());
  CHECK(d3.lattice->size() == 18);
  CHECK_THROWS_AS(decompose("broja", xor_source_copy()), UnsupportedArity);
}
