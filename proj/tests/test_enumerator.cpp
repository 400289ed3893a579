#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "flipcert/enumerator.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace flipcert;

namespace {

SearchBounds mini5() {
  SearchBounds b;
  b.n = 5;
  b.max_weight = 1;
  b.max_degree = 2;
  b.max_terms = 3;
  return b;
}

SearchBounds mini6() {
  SearchBounds b;
  b.n = 6;
  b.max_weight = 1;
  b.max_degree = 2;
  b.max_terms = 2;
  return b;
}

std::set<std::string> keys_of(const std::vector<ActionItem>& items) {
  std::set<std::string> out;
  for (const ActionItem& it : items) out.insert(action_key(it.act));
  return out;
}

// survivor identity independent of enumeration ordinals
std::set<std::string> survivor_data(const SurveyResult& r) {
  std::set<std::string> out;
  for (const Survivor& sv : r.survivors) {
    std::ostringstream os;
    os << action_key(sv.datum.act) << " :: ";
    std::vector<std::string> names = coordinate_names(sv.datum.act);
    for (const Polynomial& f : sv.datum.f) os << f.str(names) << "; ";
    os << verdict_name(sv.report.verdict) << " " << sv.report.table_row;
    out.insert(os.str());
  }
  return out;
}

std::string digest(const SurveyResult& r) {
  std::ostringstream os;
  os << r.weight_tuples << "|" << r.actions << "|" << r.control_actions << "|";
  for (const SurveyStage& st : r.stages) os << st.name << "=" << st.count << ",";
  os << "|";
  for (const Survivor& sv : r.survivors)
    os << sv.datum.name << ":" << verdict_name(sv.report.verdict) << ":"
       << sv.report.table_row << ";";
  os << "|";
  for (const SurveyAnomaly& an : r.anomalies) os << an.note << ";";
  os << "|" << r.inconclusive_total << "|" << r.verify_calls << "|"
     << (r.truncated ? "T" : "F");
  return os.str();
}

long long stage(const SurveyResult& r, const std::string& name) {
  for (const SurveyStage& st : r.stages)
    if (st.name == name) return st.count;
  return -1;
}

}  // namespace

TEST_CASE("five-coordinate weight enumeration at unit weights") {
  SearchBounds b = mini5();
  long long tuples = 0;
  std::vector<ActionItem> items = enumerate_weights(b, &tuples);
  // three shapes, every magnitude 1, equation weight scanned in [-2, 2]
  CHECK(tuples == 15);
  CHECK(keys_of(items) == std::set<std::string>{
                              "w:1,1,1,-1,-1|e:1",
                              "w:1,1,1,-1,-1|e:2",
                              "w:1,1,-1,-1,0|e:0",
                          });
  for (const ActionItem& it : items) CHECK_FALSE(it.control);

  // without the necessity filters the negative-total-weight orientation of
  // the third admissible shape is searched too (and dies at verification)
  b.necessity_filters = false;
  items = enumerate_weights(b, &tuples);
  std::set<std::string> got = keys_of(items);
  CHECK(got.size() == 5);
  CHECK(got.count("w:1,1,-1,-1,-1|e:-1") == 1);
  CHECK(got.count("w:1,1,-1,-1,-1|e:-2") == 1);
}

TEST_CASE("form selection separates rows from controls") {
  SearchBounds b;
  b.n = 6;
  b.max_weight = 1;
  b.max_degree = 3;

  b.forms = FormSelection::AllowedOnly;
  std::vector<ActionItem> allowed = enumerate_weights(b);
  CHECK(keys_of(allowed) == std::set<std::string>{
                                "w:1,1,1,-1,-1,0|e:1,0",
                                "w:1,1,1,-1,-1,0|e:2,0",
                                "w:1,1,1,-1,-1,0|e:3,0",
                                "w:1,1,-1,-1,0,0|e:0,0",
                            });
  for (const ActionItem& it : allowed) CHECK_FALSE(it.control);

  b.forms = FormSelection::ExcludedOnly;
  std::vector<ActionItem> controls = enumerate_weights(b);
  // (+,+,-,-,0,0;+,-): 9   (+,+,+,-,-,-;+,-): 9   (+,+,+,+,-,-;+,+): 6
  // the other two excluded forms have negative total weight at unit
  // magnitudes and are pruned
  CHECK(controls.size() == 24);
  for (const ActionItem& it : controls) CHECK(it.control);

  b.forms = FormSelection::All;
  CHECK(enumerate_weights(b).size() == 28);

  b.only_forms = {SignPattern{2, 2, 2, {0, 0}}};
  std::vector<ActionItem> only = enumerate_weights(b);
  REQUIRE(only.size() == 1);
  CHECK(action_key(only[0].act) == "w:1,1,-1,-1,0,0|e:0,0");
}

TEST_CASE("weight enumeration rejects out-of-range dimensions") {
  SearchBounds b;
  b.n = 9;
  CHECK_THROWS_AS(enumerate_weights(b), input_error);
  b.n = 4;
  CHECK_THROWS_AS(enumerate_weights(b), input_error);
}

TEST_CASE("codimension-2 flop pool at degree two") {
  CStarAction act = make_action({1, 1, -1, -1, 0, 0}, {0, 0});
  SearchBounds b = mini6();
  std::vector<Monomial> pool = monomial_pool(act, 0, b);
  std::vector<std::string> names = coordinate_names(act);
  std::set<std::string> got;
  for (const Monomial& m : pool) got.insert(m.str(names));
  CHECK(got == std::set<std::string>{"x1*y1", "x1*y2", "x2*y1", "x2*y2",
                                     "z1^2", "z1*z2", "z2^2"});
  CHECK(pool.size() == 7);
}

TEST_CASE("support enumeration prunes and canonicalizes") {
  CStarAction act = make_action({1, 1, -1, -1, 0, 0}, {0, 0});
  SearchBounds b = mini6();
  std::vector<GitDatum> seen;
  SupportCounts sc =
      enumerate_supports(act, b, [&](GitDatum&& d) { seen.push_back(d); });
  // every kept subset pairs one xy monomial with one z monomial: 12 per
  // equation; 16 orbit representatives under the two coordinate swaps, the z
  // swap and the equation swap; 4 pass the two-sided distinct-witness check
  CHECK(sc.candidates == 144);
  CHECK(sc.membership == 144);
  CHECK(sc.canonical == 16);
  CHECK(sc.witnessed == 4);
  CHECK_FALSE(sc.truncated);
  REQUIRE(seen.size() == 4);
  for (const GitDatum& d : seen) {
    CHECK(support_filters_pass(d));
    CHECK(is_reduced(d));
    CHECK(d.name.rfind("w:1,1,-1,-1,0,0|e:0,0#", 0) == 0);
  }
}

TEST_CASE("support enumeration validates its bounds") {
  CStarAction act = make_action({1, 1, -1, -1, 0}, {0});
  SearchBounds b = mini5();
  b.max_terms = 7;
  CHECK_THROWS_AS(enumerate_supports(act, b, [](GitDatum&&) {}), input_error);
  b.max_terms = 3;
  b.max_degree = 1;
  CHECK_THROWS_AS(enumerate_supports(act, b, [](GitDatum&&) {}), input_error);
}

TEST_CASE("support filters reject what the lemmas forbid") {
  // weight-zero equation with no monomial surviving the z-restriction
  GitDatum no_z = parse_datum({1, 1, -1, -1, 0, 0}, {0, 0},
                              {"x1*y1 + z1^2", "x1*y2 + x2*y1"}, "no_z");
  CHECK_FALSE(support_filters_pass(no_z));

  // pure power of a maximal-weight coordinate
  GitDatum pure = parse_datum({1, 1, 1, -1, -1}, {2}, {"x1^2 + x2*x3"}, "pure");
  CHECK_FALSE(support_filters_pass(pure));

  // no witness-shaped monomial on the minus side
  GitDatum no_wit =
      parse_datum({1, 1, -1, -1, 0}, {0}, {"x1*y1*z + z^2"}, "no_wit");
  CHECK_FALSE(support_filters_pass(no_wit));

  GitDatum good = parse_datum({1, 1, -1, -1, 0}, {0},
                              {"x1*y1 + x2*y2 + z^2"}, "good");
  CHECK(support_filters_pass(good));
}

TEST_CASE("mini survey finds the smooth quadric flop") {
  SurveyResult r = survey(mini5());
  CHECK(r.weight_tuples == 15);
  CHECK(r.actions == 3);
  CHECK(r.control_actions == 0);
  CHECK(stage(r, "candidates") == 10);
  CHECK(stage(r, "membership") == 10);
  CHECK(stage(r, "canonical") == 4);
  CHECK(stage(r, "witnessed") == 4);
  CHECK(stage(r, "survivors") == 1);
  CHECK(stage(r, "matched") == 1);
  CHECK(r.verify_calls == 4);
  CHECK(r.anomalies.empty());
  CHECK(r.inconclusive_total == 0);
  CHECK_FALSE(r.truncated);
  REQUIRE(r.survivors.size() == 1);
  const Survivor& sv = r.survivors[0];
  CHECK(sv.report.verdict == Verdict::Flop);
  CHECK(sv.report.table_row == "flop5.smooth");
  CHECK(action_key(sv.datum.act) == "w:1,1,-1,-1,0|e:0");
  CHECK_FALSE(sv.control);
  REQUIRE_FALSE(r.notes.empty());
  CHECK(r.notes[0].find("bounded search") != std::string::npos);
}

TEST_CASE("necessity filters only speed the search up") {
  SurveyResult with = survey(mini5());
  SearchBounds b = mini5();
  b.necessity_filters = false;
  SurveyResult without = survey(b);
  CHECK(survivor_data(with) == survivor_data(without));
  CHECK(without.verify_calls >= with.verify_calls);
  CHECK(stage(without, "candidates") >= stage(with, "candidates"));
  // the stage chain stays monotone in both modes
  for (const SurveyResult* r : {&with, &without}) {
    REQUIRE(r->stages.size() == 6);
    for (size_t i = 1; i + 2 < r->stages.size(); ++i)
      CHECK(r->stages[i].count <= r->stages[i - 1].count);
    CHECK(stage(*r, "survivors") <= stage(*r, "witnessed"));
    CHECK(stage(*r, "matched") <= stage(*r, "survivors"));
  }
}

TEST_CASE("six-coordinate survey at degree two stays empty") {
  SurveyResult r = survey(mini6());
  CHECK(r.weight_tuples == 90);
  CHECK(r.actions == 14);
  CHECK(r.control_actions == 11);
  // only the codimension-2 flop action produces candidates at this degree;
  // each excluded-form equation is missing a witness shape for one side
  CHECK(stage(r, "candidates") == 144);
  CHECK(stage(r, "canonical") == 16);
  CHECK(stage(r, "witnessed") == 4);
  CHECK(r.verify_calls == 4);
  CHECK(stage(r, "survivors") == 0);
  CHECK(r.anomalies.empty());
  CHECK(r.inconclusive_total == 0);
}

TEST_CASE("sign sweep verifies coefficient variants") {
  SearchBounds b = mini6();
  b.sweep_signs = true;
  SurveyResult r = survey(b);
  // four witnessed supports, each with 2 equations of 2 terms: 4 variants each
  CHECK(stage(r, "witnessed") == 4);
  CHECK(r.verify_calls == 16);
  CHECK(stage(r, "survivors") == 0);
}

TEST_CASE("worker count does not change the result") {
  SurveyOptions one, two;
  one.jobs = 1;
  two.jobs = 2;
  SurveyResult a = survey(mini5(), one);
  SurveyResult b = survey(mini5(), two);
  CHECK(digest(a) == digest(b));
  SurveyResult c = survey(mini6(), one);
  SurveyResult d = survey(mini6(), two);
  CHECK(digest(c) == digest(d));
}

TEST_CASE("shard file replays finished actions") {
  const std::string path = "/tmp/flipcert_test_shards.jsonl";
  std::remove(path.c_str());
  SurveyOptions opts;
  opts.resume_path = path;
  SurveyResult first = survey(mini5(), opts);
  SurveyResult replay = survey(mini5(), opts);
  CHECK(digest(first) == digest(replay));
  CHECK(survivor_data(first) == survivor_data(replay));

  // a shard file written under different bounds is ignored, not misused
  SurveyResult other = survey(mini6(), opts);
  bool noted = false;
  for (const std::string& nt : other.notes)
    noted = noted || nt.find("resume file ignored") != std::string::npos;
  CHECK(noted);
  CHECK(stage(other, "candidates") == 144);
  std::remove(path.c_str());
}

TEST_CASE("candidate cap truncates honestly") {
  SearchBounds b = mini5();
  b.max_candidates_per_action = 5;
  SurveyResult r = survey(b);
  CHECK(r.truncated);
  bool noted = false;
  for (const std::string& nt : r.notes)
    noted = noted || nt.find("candidate cap") != std::string::npos;
  CHECK(noted);
}

TEST_CASE("catalog data pass every pruning filter") {
  for (const CatalogEntry& entry : catalog()) {
    CAPTURE(entry.name);
    const GitDatum& d = entry.datum;
    SearchBounds b;
    b.n = d.act.n;
    b.max_weight = 1;
    for (long long w : d.act.a) b.max_weight = std::max(b.max_weight, w);
    for (long long w : d.act.b) b.max_weight = std::max(b.max_weight, w);
    b.max_degree = 2;
    b.max_terms = 1;
    for (const Polynomial& f : d.f) {
      b.max_degree = std::max(b.max_degree, f.total_degree());
      b.max_terms = std::max(b.max_terms, (int)f.term_count());
    }
    CHECK(weight_filters_pass(d.act, b));
    CHECK(support_filters_pass(d));
    for (size_t k = 0; k < d.f.size(); ++k) {
      std::vector<Monomial> pool = monomial_pool(d.act, (int)k, b);
      for (const Term& t : d.f[k].terms()) {
        bool found = false;
        for (const Monomial& m : pool)
          found = found || (!(m < t.mono) && !(t.mono < m));
        CHECK(found);
      }
    }
  }
}

TEST_CASE("catalog actions appear in the weight enumeration") {
  SearchBounds b;
  b.n = 6;
  b.max_weight = 1;
  b.max_degree = 3;
  std::set<std::string> keys = keys_of(enumerate_weights(b));
  CHECK(keys.count("w:1,1,-1,-1,0,0|e:0,0") == 1);

  // the unit-weight codimension-2 flip actions
  b.max_weight = 3;
  b.max_degree = 4;
  keys = keys_of(enumerate_weights(b));
  CHECK(keys.count("w:3,1,1,-1,-1,0|e:2,0") == 1);
}

TEST_CASE("codimension helper") {
  SearchBounds b;
  b.n = 7;
  CHECK(codimension(b) == 3);
}
