#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <map>

#include "doctest.h"
#include "flipcert/verifier.hpp"

using namespace flipcert;

namespace {

GitDatum flop5(const std::string& f) {
  return parse_datum({1, 1, -1, -1, 0}, {0}, {f}, "t5");
}

GitDatum flop6(const std::string& f1, const std::string& f2) {
  return parse_datum({1, 1, -1, -1, 0, 0}, {0, 0}, {f1, f2}, "t6");
}

}  // namespace

TEST_CASE("table rows for hypersurface flops") {
  CHECK(match_table(flop5("x1*y1 + x2*y2 + z^2 + z^3")) == "flop5.smooth");
  // extra monomials beyond the two pairs are allowed
  CHECK(match_table(flop5("x2*y2 + x1*y1 + x1*y2*z + z^2")) == "flop5.smooth");
  CHECK(match_table(flop5("x1*y2 + x2*y1 + z^4")) == "flop5.smooth");
  CHECK(match_table(flop5("x2*y2 + z^2 + x1^2*y1^2")) == "flop5.cA");
  // x1(y1 + y2) has a rank-one coefficient matrix: one pair after a change
  CHECK(match_table(flop5("x1*y1 + x1*y2 + z^2")) == "flop5.cA");
  // the z-part must be nonzero of order >= 2
  CHECK(match_table(flop5("x1*y1 + x2*y2")) == "");
  CHECK(match_table(flop5("x1*y1 + x2*y2 + z + z^2")) == "");
}

TEST_CASE("table rows for codimension-two flops") {
  CHECK(match_table(flop6("x1*y1 + x2*y2 + z1^2", "x1*y2 + x2*y1 + z2^2")) ==
        "flop6.1");
  CHECK(match_table(catalog_select("ex2flop6/cA")[0]->datum) == "flop6.2");
  CHECK(match_table(flop6("x1*y1 + x2^2*y2^2 + z1^3",
                          "x2*y2 + x1^2*y1^2 + z2^3")) == "flop6.3");
  // row membership is a property of the ideal: recombining the equations
  // cannot change the pencil invariants
  CHECK(match_table(flop6("x1*y1 + x2*y2 + z1^2", "x1*y1 + z2^2")) ==
        "flop6.3");
  // z-parts with a common positive-dimensional zero set disqualify
  CHECK(match_table(flop6("x1*y1 + x2*y2 + z1^2", "x1*y2 + x2*y1 + z1^2")) ==
        "");
  // a shared x-factor degenerates every member of the pencil
  CHECK(match_table(flop6("x1*y1 + z1^2", "x1*y2 + z2^2")) == "");
}

TEST_CASE("flip rows enforce the weight conditions") {
  // right support shape, but gcd(a1, a2) = 3
  GitDatum d = parse_datum({9, 3, 2, -3, -3, 0}, {6, 0},
                           {"x1*y1 - x2^2 + x3^3", "x2*y2 + z^2 + x3^3*y1^2"},
                           "bad-battery");
  CHECK(match_table(d) == "");
}

TEST_CASE("every catalog entry matches its table row") {
  for (const CatalogEntry& e : catalog()) {
    INFO(e.name);
    CHECK(match_table(e.datum) == e.expected.table_row);
  }
}

TEST_CASE("catalog verification end to end") {
  // classes actually computed where they differ from the recorded labels
  const std::map<std::string, std::vector<std::string>> computed = {
      {"ex2flop6/cE6", {"cDV(cD)", "smooth", "cDV(cD)", "smooth"}},
      {"ex2flop6/cE7", {"cDV(cD)", "smooth", "cDV(cD)", "smooth"}},
      {"ex2flop6/cE8", {"cDV(cD)", "smooth", "cDV(cD)", "smooth"}},
  };
  for (const CatalogEntry& e : catalog()) {
    INFO(e.name);
    VerificationReport rep = verify(e.datum);
    CHECK(verdict_name(rep.verdict) == verdict_name(e.expected.verdict));
    CHECK(rep.table_row == e.expected.table_row);
    CHECK(rep.curve_components == e.expected.curve_components);
    CHECK(rep.reduced);
    CHECK(rep.pattern_ok);
    CHECK((rep.tau == 0) == (rep.verdict == Verdict::Flop));
    CHECK((rep.tau > 0) == (rep.verdict == Verdict::Flip));
    auto it = computed.find(e.name);
    if (it != computed.end()) CHECK(!e.note.empty());
    const std::vector<std::string>& want =
        it != computed.end() ? it->second : e.expected.point_classes;
    REQUIRE(rep.points.size() == want.size());
    for (size_t i = 0; i < want.size(); ++i) {
      INFO(rep.points[i].label);
      std::string got =
          rep.points[i].member ? rep.points[i].cls.str() : "non-member";
      CHECK(got == want[i]);
    }
    for (const LocusCheck& lc : rep.locus) CHECK(lc.ok);
  }
}

TEST_CASE("row matching survives linear changes of presentation") {
  struct Wild {
    const char* f1;
    const char* f2;
    const char* row;
    std::vector<std::string> classes;
  };
  // mixed xy supports that a linear change brings to a row presentation
  const std::vector<Wild> data = {
      {"x1*y1 + x1*y2 + x2*y2 + z1^2", "x2*y1 + z1^2 + z2^2", "flop6.3",
       {"cDV(cA)", "smooth", "smooth", "cDV(cA)"}},
      {"x1*y1 + x2*y1 + z1^2 + z2^2", "x2*y2 + z1*z2", "flop6.3",
       {"cDV(cA)", "smooth", "cDV(cA)", "cDV(cA)"}},
      {"x1*y1 + x2*y2 + z1^2", "x1*y2 + x2*y1 + x2*y2 + z2^2", "flop6.1",
       {"smooth", "smooth", "smooth", "smooth"}},
      {"x1*y2 + x2*y1 + z2^2", "x2*y2 + z1^2 + z2^2 + x1*y1*z1", "flop6.2",
       {"cDV(cA)", "smooth", "cDV(cA)", "smooth"}},
      // isolated interior nodes where the pencil members degenerate
      {"x1*y1 + x2*y2 + z1^2", "x1*y2 + x2*y1 + z2^2", "flop6.1",
       {"smooth", "smooth", "smooth", "smooth"}},
  };
  for (const Wild& w : data) {
    GitDatum d = flop6(w.f1, w.f2);
    INFO(w.f1 << " | " << w.f2);
    VerificationReport rep = verify(d);
    CHECK(rep.verdict == Verdict::Flop);
    CHECK(rep.table_row == w.row);
    REQUIRE(rep.points.size() == 4);
    for (size_t i = 0; i < 4; ++i) CHECK(rep.points[i].cls.str() == w.classes[i]);
  }
  // hypersurface analogue: rank-one matrix through two coordinates
  GitDatum d5 = flop5("x1*y2 + x2*y2 + x1*y1*z + z^3");
  VerificationReport rep5 = verify(d5);
  CHECK(rep5.verdict == Verdict::Flop);
  CHECK(rep5.table_row == "flop5.cA");
  REQUIRE(rep5.points.size() == 4);
  CHECK(rep5.points[2].cls.str() == "cDV(cA)");
}

TEST_CASE("negative tau is rejected after the cone checks") {
  GitDatum d = parse_datum({7, 1, 1, -2, -5, 0}, {5, 0},
                           {"x1*y1 + x2^5", "x2^5*y2 + z^2"}, "tau-neg");
  VerificationReport rep = verify(d);
  CHECK(rep.verdict == Verdict::Neither);
  CHECK(rep.reason == "TAU_NEGATIVE");
  CHECK(rep.tau == -3);
  CHECK(rep.pattern_ok);
  CHECK(rep.condition_c.pass);
  CHECK(rep.points.empty());
}

TEST_CASE("non-isolated singularity at a fixed point") {
  // once y1 is eliminated at P1 the chart equation x2*y2 + z2^2 ignores z1,
  // so the z1-axis is singular; the support still matches a row shape (rows
  // state necessary conditions, not sufficient ones)
  GitDatum d = flop6("x1*y1 + z1^2", "x2*y2 + z2^2");
  VerificationReport rep = verify(d);
  CHECK(rep.verdict == Verdict::Neither);
  CHECK(rep.reason == "NONISOLATED(P1)");
  CHECK(match_table(d) == "flop6.3");
}

TEST_CASE("infinitely many contracted curves fail condition C") {
  // the z-parts share the line z1 = 0, and the fiber over each of its points
  // contains a whole curve of the x-plane
  GitDatum d = flop6("x1*y1 + x2*y2 + z1^2", "x2*y1 + z1^3");
  VerificationReport rep = verify(d);
  CHECK(rep.verdict == Verdict::Neither);
  CHECK(rep.reason == "COR_CORC");
  CHECK(!rep.condition_c.pass);
}

TEST_CASE("singular locus away from the fixed points") {
  // all four fixed points are smooth, but the second equation factors as
  // (x1 + x2)(y1 + y2) + z2^2: X is singular along a curve through the
  // x2 = -1 locus of the first chart
  GitDatum d = flop6("x1*y1 + x2*y2 + z1^2",
                     "x1*y1 + x1*y2 + x2*y1 + x2*y2 + z2^2");
  VerificationReport rep = verify(d);
  CHECK(rep.verdict == Verdict::Neither);
  CHECK(rep.reason == "NONISOLATED(P1)");
  REQUIRE(rep.points.size() == 4);
  for (const PointReport& p : rep.points) {
    CHECK(p.member);
    CHECK(p.cls.kind == SingKind::Smooth);
  }
  CHECK(rep.table_row.empty());
}

TEST_CASE("non-terminal quotient point") {
  // both equations eliminate their y-coordinate at P1, leaving the quotient
  // 1/5(2,2,1), which is isolated but not of the terminal form
  GitDatum d = parse_datum({5, 1, 2, 2, -1, -3}, {4, 2},
                           {"x1*y1 + x3^2 + x4^2", "x1*y2 + x2^2"}, "qt");
  VerificationReport rep = verify(d);
  CHECK(rep.verdict == Verdict::Neither);
  CHECK(rep.reason == "NONTERMINAL(P1)");
  REQUIRE(!rep.points.empty());
  CHECK(rep.points.back().cls.kind == SingKind::NonTerminal);
}

TEST_CASE("tiny groebner budgets are reported, not masked") {
  const CatalogEntry* e = catalog_select("ex1flop6").at(0);
  ClassifyOptions opt;
  opt.budget.max_pairs = 1;
  VerificationReport rep = verify(e->datum, opt);
  CHECK(rep.verdict == Verdict::Inconclusive);
  CHECK(rep.reason.substr(0, 6) == "BUDGET");
}

TEST_CASE("deep chart eliminations abstain under a tight operation budget") {
  // eliminating through a unit like 1/(1+x2) leaves dense truncated series
  // whose Jacobian cutoff ideals swell over Q; uncapped this datum runs for
  // tens of seconds before concluding NONISOLATED(P1)
  GitDatum d = parse_datum({1, 1, -1, -1, 0, 0}, {0, 0},
                           {"x1*y2 + x2*y1 + x2*y2 + z2^2",
                            "x2*y2*z2 + x1*y2 + z1^2 + z2^2"},
                           "deep");
  ClassifyOptions opt;
  opt.budget.max_coeff_ops = 100000;
  VerificationReport rep = verify(d, opt);
  CHECK(rep.verdict == Verdict::Inconclusive);
  CHECK(rep.reason.substr(0, 7) == "BUDGET(");
}

TEST_CASE("non-reduced input verifies but matches no row") {
  GitDatum d = flop5("x1*y1 + x2*y2 + z + z^2");
  VerificationReport rep = verify(d);
  CHECK(!rep.reduced);
  CHECK(rep.verdict == Verdict::Flop);
  CHECK(rep.table_row == "");
}

TEST_CASE("catalog lookup by substring") {
  CHECK(catalog().size() == 23);
  CHECK(catalog_select("flop6").size() == 6);
  CHECK(catalog_select("ex2flop6").size() == 5);
  CHECK(catalog_select("flip").size() == 12);
  CHECK(catalog_select("exflop5").size() == 4);
  CHECK(catalog_select("").size() == 23);
}
