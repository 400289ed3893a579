#pragma once
// Bounded exhaustive search over weight vectors and monomial supports.  The
// classification lemmas act as pruning filters; everything that survives is
// handed to the verifier, and every survivor must match a classification row
// (a survivor that matches none is an anomaly, recorded for inspection).

#include "flipcert/verifier.hpp"

#include <functional>
#include <string>
#include <vector>

namespace flipcert {

// Which admissible weight forms to search.  The two forms carrying
// classification rows are "allowed"; the five forms excluded by the
// codimension-2 weight-form proposition are searched as controls so their
// emptiness is verified rather than assumed.
enum class FormSelection { All, AllowedOnly, ExcludedOnly };

struct SearchBounds {
  int n = 6;                 // ambient dimension (5..8); c = n - 4 equations
  long long max_weight = 1;  // W: weight magnitudes drawn from [1, W]
  int max_degree = 3;        // D: monomial total degrees drawn from [2, D]
  int max_terms = 4;         // T: monomials per polynomial
  GroebnerBudget budget{};
  FormSelection forms = FormSelection::All;
  std::vector<SignPattern> only_forms;  // nonempty: restrict to these forms
  bool necessity_filters = true;  // lemma-based pruning (never changes the
                                  // survivor set, only the work done)
  bool sweep_signs = false;       // also verify +-1 coefficient variations
  long long max_candidates_per_action = 20'000'000;
};

int codimension(const SearchBounds& b);  // n - 4

struct ActionItem {
  CStarAction act;
  bool control = false;  // excluded weight form, searched for emptiness
};

// All actions with the given n up to block-permutation symmetry (weights
// descending within each block), pruned by the admissible-form list and, when
// necessity_filters is set, by the two weight lemmas: a1 > 1 implies a1 > a2,
// and n > 6 implies a1 > a2.  `weight_tuples`, when given, receives the raw
// tuple count before any filter.
std::vector<ActionItem> enumerate_weights(const SearchBounds& bounds,
                                          long long* weight_tuples = nullptr);

// The weight-level filters alone (admissible pattern plus the two lemmas),
// form selection not included.  Every catalog action passes.
bool weight_filters_pass(const CStarAction& act, const SearchBounds& bounds);

// The support-level necessity filters alone: no pure power of a maximal-weight
// x-coordinate (fixed-point membership), a monomial witness system on both
// sides, and a pure z-monomial in every weight-zero equation.  Every catalog
// datum passes.
bool support_filters_pass(const GitDatum& d);

// All monomials of total degree in [2, max_degree] and weight e_k, in
// canonical monomial order.
std::vector<Monomial> monomial_pool(const CStarAction& act, int k,
                                    const SearchBounds& bounds);

struct SupportCounts {
  long long candidates = 0;  // support combinations formed
  long long membership = 0;  // after the fixed-point membership prune
  long long canonical = 0;   // orbit representatives among those
  long long witnessed = 0;   // after the two-sided witness prune
  bool truncated = false;    // stopped at max_candidates_per_action
};

// Streams every canonical support for one action into `sink` (coefficients 1;
// sign variations appended when sweep_signs is set) and returns the stage
// counts.  With necessity_filters off the prunes are skipped and the
// membership/witnessed counts simply repeat the surviving totals.
SupportCounts enumerate_supports(const CStarAction& act,
                                 const SearchBounds& bounds,
                                 const std::function<void(GitDatum&&)>& sink);

// Canonical per-action identifier: signed weights and equation weights.
std::string action_key(const CStarAction& act);

struct SurveyStage {
  std::string name;
  long long count = 0;
};

struct Survivor {
  GitDatum datum;
  VerificationReport report;
  bool control = false;
};

struct SurveyAnomaly {
  GitDatum datum;
  VerificationReport report;
  std::string note;
};

struct SurveyResult {
  SearchBounds bounds;
  long long weight_tuples = 0;    // raw weight tuples before filters
  long long actions = 0;          // actions searched
  long long control_actions = 0;  // of which excluded-form controls
  std::vector<SurveyStage> stages;  // counts, non-increasing along the chain
  std::vector<Survivor> survivors;
  std::vector<SurveyAnomaly> anomalies;  // survivor with no row, or control
  std::vector<Survivor> inconclusive;    // sample, capped
  long long inconclusive_total = 0;
  long long verify_calls = 0;
  bool truncated = false;
  std::vector<std::string> notes;  // scope notice, truncation notices
};

struct SurveyOptions {
  int jobs = 1;
  std::string resume_path;  // shard-progress file (one JSON line per action)
  ClassifyOptions classify{};
};

// Full pipeline: weights -> supports -> verify -> row matching.  Results are
// merged in enumeration order, so the output is independent of `jobs`.  The
// Groebner budget inside `bounds` overrides the one in `opts.classify`.
SurveyResult survey(const SearchBounds& bounds, const SurveyOptions& opts = {});

}  // namespace flipcert
