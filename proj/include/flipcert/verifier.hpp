#pragma once

#include "flipcert/action.hpp"
#include "flipcert/germ.hpp"

#include <string>
#include <vector>

namespace flipcert {

enum class Verdict { Flip, Flop, Neither, Inconclusive };
std::string verdict_name(Verdict v);

// One fixed point of the ambient action, reported on the side it lies on.
struct PointReport {
  std::string label;     // P1..P_{r+s}
  int coord = -1;        // normalized coordinate index
  long long weight = 0;  // signed coordinate weight
  bool minus_side = false;
  bool member = false;   // lies on X^- (resp. X^+)
  SingularityClass cls;  // meaningful when member
};

// Jacobian singular-locus bound for one affine chart cover.
struct LocusCheck {
  std::string label;
  GBStatus status = GBStatus::Ok;
  bool ok = false;
  int dim = -1;  // -1: empty singular locus
};

struct VerificationReport {
  std::string name;
  Verdict verdict = Verdict::Neither;
  // First failing certificate: PATTERN | CURVE_DIM | COR_CORC | TAU_NEGATIVE |
  // NONTERMINAL(Pk) | NONISOLATED(Pk); Inconclusive carries BUDGET(stage),
  // UNSTABLE(Pk) or INDETERMINATE(Pk). Empty on Flip/Flop.
  std::string reason;
  std::string detail;
  long long tau = 0;
  bool pattern_ok = false;
  std::string pattern_form;
  bool reduced = true;  // recorded flag; non-reduced data are still verified
  ConditionC condition_c;
  std::vector<PointReport> points;
  std::vector<LocusCheck> locus;
  long long curve_components = 0;  // 0 when not applicable
  std::string table_row;           // matched classification row id, "" if none
};

// Decision procedure, in order: admissible weight pattern; reducedness flag;
// contracted-curve conditions; tau sign; membership, chart and terminality
// classification at every fixed point of both sides; Jacobian singular-locus
// bound on every chart cover. The first failure wins and is certified in
// `reason`/`detail`; Groebner budget exhaustion yields Inconclusive, never
// Neither. Among passing data, tau > 0 -> Flip and tau == 0 -> Flop.
VerificationReport verify(const GitDatum& d, const ClassifyOptions& opt = {});

// A classification-table row: its id and constraint summary.
struct TableRow {
  std::string id;
  std::string family;  // "flop5", "flop6", "flip6"
  std::string constraints;
};
const std::vector<TableRow>& table_rows();

// The unique row whose action shape, required monomials and arithmetic side
// conditions are consistent with the datum, or "" when none is. For the
// codimension-2 flop shapes membership is decided through invariants of the
// pencil of bilinear xy forms, so it does not depend on the chosen ideal
// basis. Throws std::logic_error if two rows match.
std::string match_table(const GitDatum& d);

// Worked-example catalog. `point_classes` holds one entry per fixed point
// P1..P_{r+s}: "non-member", or the expected SingularityClass::str() value.
struct CatalogExpected {
  Verdict verdict = Verdict::Flop;
  std::string table_row;
  std::vector<std::string> point_classes;
  long long curve_components = 0;
};
struct CatalogEntry {
  std::string name;
  GitDatum datum;
  CatalogExpected expected;
  // Nonempty when the tabulated singularity label is known to differ from the
  // computed generic-section class; the expectation keeps the tabulated label.
  std::string note;
};
const std::vector<CatalogEntry>& catalog();
std::vector<const CatalogEntry*> catalog_select(const std::string& substring);

}  // namespace flipcert
