#pragma once

#include "flipcert/action.hpp"
#include "flipcert/groebner.hpp"
#include "flipcert/poly.hpp"

#include <array>
#include <string>
#include <vector>

namespace flipcert {

enum class SingKind {
  Smooth,
  TerminalQuotient,
  CAoverM,
  CAx2,
  CAx4,
  CD3,
  CDV,
  IndeterminateH1m2q1,
  NonIsolated,
  NonTerminal,
};

enum class CdvSub { cA, cD, cE6, cE7, cE8 };

// Terminal-singularity verdict for a chart germ. Equality ignores the free-form
// reason text; TerminalQuotient data is stored in canonical form (minimal
// weight triple over unit rescalings and permutations).
struct SingularityClass {
  SingKind kind = SingKind::Smooth;
  long long m = 1;                      // quotient order (TerminalQuotient, CAoverM)
  std::array<long long, 3> v{{0, 0, 0}};  // TerminalQuotient weights, canonical
  CdvSub sub = CdvSub::cA;              // CDV subtype
  std::string reason;                   // NonTerminal explanation

  std::string str() const;
  bool operator==(const SingularityClass& o) const;
  bool operator!=(const SingularityClass& o) const { return !(*this == o); }
};

SingularityClass smooth_class();
SingularityClass quotient_class(long long m, std::array<long long, 3> v);
SingularityClass ca_over_m(long long m);
SingularityClass cdv_class(CdvSub sub);
SingularityClass simple_class(SingKind kind);  // CAx2, CAx4, CD3, Indeterminate, NonIsolated
SingularityClass nonterminal(std::string reason);

// canonical representative of 1/m(v1,v2,v3): minimal sorted triple over units
std::array<long long, 3> canonical_quotient_weights(long long m,
                                                    std::array<long long, 3> v);

// Result of the linear-term elimination: the residual germ data. The quotient
// index is carried through unchanged; weights/eqs shrink together.
struct ElimOutcome {
  long long index = 1;
  std::vector<long long> weights;
  std::vector<long long> eweights;
  std::vector<Polynomial> eqs;
  std::vector<std::string> names;
};
// Repeatedly solves an equation with a linear monomial for that coordinate (by
// fixed-point iteration, truncated at degree D) and substitutes into the rest.
ElimOutcome eliminate_linear(const ChartGerm& g, int D);

// rank of the symmetric matrix of the degree-2 part
int quadratic_rank(const Polynomial& f);

// Splitting lemma to finite order: f ~ sum of squares + residual(corank vars).
// With m > 1 only weight-compatible changes are used (coordinates of equal
// residual weight mod m may mix; hyperbolic pairs w_i w_j split jointly);
// ok=false reports an equivariant split obstruction.
struct SplitResult {
  bool ok = true;
  int squares = 0;
  Polynomial residual;             // compressed to the residual variables
  std::vector<int> residual_vars;  // original indices of the residual variables
};
SplitResult split_quadratic(const Polynomial& f, int D, long long m = 1,
                            const std::vector<long long>& weights = {});

struct MilnorResult {
  GBStatus status = GBStatus::Ok;
  bool stable = true;   // false: value differs between D and D+2 truncations
  bool finite = false;
  long long mu = -1;
};
// colength of the ideal of partial derivatives of the D-truncation
MilnorResult milnor_number(const Polynomial& f, int D,
                           const GroebnerBudget& budget = {});

struct ClassifyOptions {
  int truncation = 12;
  GroebnerBudget budget{};
  unsigned long long seed = 0x5eedULL;
};

struct ClassifyResult {
  GBStatus status = GBStatus::Ok;  // BudgetExceeded: inconclusive, cls invalid
  bool stable = true;              // false: truncation-unstable, cls invalid
  SingularityClass cls;
};

// Compound-Du-Val typing of an isolated hypersurface germ (trivial quotient):
// the class of the generic hyperplane section. rank(2-jet) >= 2 -> cDV(cA);
// rank 1 -> split one square and read the 3-jet of the residual (zero -> not
// cDV; not a perfect cube -> cDV(cD); cube -> cE6/7/8 by the Milnor number of
// a sampled generic section); rank 0 -> not cDV. Not-cDV outcomes are reported
// as NonTerminal with the failing condition.
ClassifyResult cdv_classify(const Polynomial& f, const ClassifyOptions& opt = {});

// Full decision procedure: eliminate linear terms, reduce to the effective
// quotient group, then dispatch on (#equations, index) through the terminal
// classification rows.
ClassifyResult classify(const ChartGerm& g, const ClassifyOptions& opt = {});

}  // namespace flipcert
