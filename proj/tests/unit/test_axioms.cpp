#include "pidwb/axioms.hpp"
#include "pidwb/gates.hpp"
#include "pidwb/info.hpp"

#include <doctest.h>

#include <cmath>

using namespace pidwb;

TEST_CASE("property catalog") {
  const auto& c = property_catalog();
  REQUIRE(c.size() == 20);
  CHECK(c.front().id == "SR");
  CHECK(c.back().id == "EI");
  CHECK(describe_property("CO").checker_kind == CheckerKind::Perturbation);
  CHECK_THROWS_AS(describe_property("XX"), std::invalid_argument);
  CHECK(tolerance_for("min") == closed_form_tolerance);
  CHECK(tolerance_for("broja") == optimizer_tolerance);
}

TEST_CASE("comparisons") {
  Comparison eq{1.0, 1.0 + 1e-8, Comparison::Relation::Equal, ""};
  CHECK_FALSE(eq.violated(1e-6));
  Comparison ge{0.5, 0.6, Comparison::Relation::AtLeast, ""};
  CHECK(ge.violated(1e-6));
  Comparison le{0.5, 0.6, Comparison::Relation::AtMost, ""};
  CHECK_FALSE(le.violated(1e-6));
  Comparison nan{std::nan(""), 0.0, Comparison::Relation::Equal, ""};
  CHECK_FALSE(nan.violated(1e-6));
}

TEST_CASE("derived systems") {
  auto s = random_system(2, {3, 2, 2}, 9);
  auto cases = witness_equality_cases(s);
  REQUIRE(cases.size() == 3);
  // (X1, X1; Y): both sources carry the same information
  CHECK(mutual_information(cases[0].dist, cases[0].sources[0], cases[0].target) ==
        doctest::Approx(mutual_information(cases[0].dist, cases[0].sources[1], cases[0].target)));

  auto [a, b] = witness_ast_pair(and_gate());
  for (int i = 0; i < 2; ++i)
    CHECK(a.dist.marginal({i, 2}) == b.dist.marginal({i, 2}));

  auto ops = witness_target_ops(two_target_xor());
  double pmass = 0;
  for (const auto& [p, sys] : ops.conditioned) pmass += p;
  CHECK(pmass == doctest::Approx(1.0));
  CHECK_THROWS(witness_target_ops(and_gate()));
}

TEST_CASE("single-property verdicts") {
  auto corpus = default_corpus();
  CHECK(check_property("IID", "min", corpus).status == VerdictStatus::Counterexample);
  CHECK(check_property("IID", "broja", corpus).status == VerdictStatus::NoCounterexample);
  CHECK(check_property("SE", "mes", corpus).status == VerdictStatus::Counterexample);
  CHECK(check_property("TE", "wedge", corpus).status == VerdictStatus::Counterexample);
  CHECK(check_property("M0", "ccs", corpus).status == VerdictStatus::Counterexample);

  auto lp = check_lp("mmi", and_gate());
  CHECK(lp.status == VerdictStatus::NoCounterexample);
  auto bp = check_bp("min", and_gate());
  CHECK(bp.status != VerdictStatus::NotApplicable);
  CHECK(check_continuity("min", and_gate()).status == VerdictStatus::NoCounterexample);
}

TEST_CASE("counterexamples revalidate") {
  auto v = check_property("IID", "mmi", default_corpus());
  REQUIRE(v.status == VerdictStatus::Counterexample);
  REQUIRE(v.witness.has_value());
  CHECK(revalidate(v));
}

TEST_CASE("golden table parsing") {
  auto g = parse_golden("# comment\nmeasure,property,expected,qualifier\nmin,SR,yes\nrav,TE,yes,n2\nbroja,LP1,na\n");
  REQUIRE(g.cells.size() == 3);
  CHECK(g.lookup("broja", "LP1") == Expectation::NotApplicable);
  CHECK(g.find("rav", "TE")->qualifier == Qualifier::TwoSources);
  CHECK_FALSE(g.lookup("min", "TE").has_value());
  CHECK_THROWS_AS(parse_golden("min,SR,maybe\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_golden("min,SR,yes\nmin,SR,no\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_golden("nope,SR,yes\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_golden("min,SR,yes,sometimes\n"), std::invalid_argument);

  auto shipped = load_golden(default_golden_path());
  CHECK(shipped.cells.size() == measure_catalog().size() * property_catalog().size());
}

TEST_CASE("sub-grid and golden comparison") {
  GridOptions opt;
  opt.measures = {"min", "mmi"};
  opt.properties = {"IID", "ID"};
  opt.threads = 2;
  auto g = verify_table(default_corpus(), opt);
  CHECK(g.cells.size() == 4);
  CHECK(g.at("min", "IID").status == VerdictStatus::Counterexample);

  auto golden = load_golden(default_golden_path());
  CHECK(count_contradictions(compare_with_golden(g, golden)) == 0);
  auto flipped = parse_golden("min,IID,yes\n");
  auto diffs = compare_with_golden(g, flipped);
  REQUIRE(diffs.size() == 1);
  CHECK(diffs[0].kind == GoldenDiff::Kind::Contradiction);
}

TEST_CASE("grid output does not depend on the thread count") {
  GridOptions a, b;
  a.measures = b.measures = {"min", "mes"};
  a.properties = b.properties = {"SR", "SE", "TE"};
  a.threads = 1;
  b.threads = 3;
  auto ga = verify_table(default_corpus(), a), gb = verify_table(default_corpus(), b);
  REQUIRE(ga.cells.size() == gb.cells.size());
  for (std::size_t i = 0; i < ga.cells.size(); ++i) {
    CHECK(ga.cells[i].measure_id == gb.cells[i].measure_id);
    CHECK(ga.cells[i].property_id == gb.cells[i].property_id);
    CHECK(ga.cells[i].status == gb.cells[i].status);
    CHECK(ga.cells[i].systems_tested == gb.cells[i].systems_tested);
  }
}

TEST_CASE("two-source qualifier restricts probes") {
  auto golden = load_golden(default_golden_path());
  GridOptions opt;
  opt.measures = {"rav"};
  opt.properties = {"M0"};
  auto unrestricted = verify_table(default_corpus(), opt);
  opt.qualifiers = &golden;
  auto restricted = verify_table(default_corpus(), opt);
  CHECK(restricted.cells[0].probes_skipped > unrestricted.cells[0].probes_skipped);
  CHECK(restricted.cells[0].status == VerdictStatus::NoCounterexample);
}

TEST_CASE("full-support qualifier restricts probes") {
  auto golden = load_golden(default_golden_path());
  GridOptions opt;
  opt.measures = {"ccs"};
  opt.properties = {"CO"};
  auto unrestricted = verify_table(default_corpus(), opt);
  opt.qualifiers = &golden;
  auto restricted = verify_table(default_corpus(), opt);
  CHECK(restricted.cells[0].probes_skipped > unrestricted.cells[0].probes_skipped);
  CHECK(restricted.cells[0].systems_tested > 0);
}
