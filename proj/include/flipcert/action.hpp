#pragma once

#include "flipcert/groebner.hpp"
#include "flipcert/poly.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace flipcert {

// Malformed GIT input; `field` is a dotted path into the input document.
class input_error : public std::runtime_error {
public:
  input_error(std::string field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

private:
  std::string field_;
};

// Diagonal C*-action on C^n: positive block a_1 >= ... >= a_r, negative block
// stored as magnitudes b_1 >= ... >= b_s, t zero weights, equation weights e.
struct CStarAction {
  int n = 0;
  std::vector<long long> a;
  std::vector<long long> b;
  int t = 0;
  std::vector<long long> e;
  // perm[i] = position in the caller's coordinate order of normalized coordinate i
  std::vector<int> perm;

  int r() const { return static_cast<int>(a.size()); }
  int s() const { return static_cast<int>(b.size()); }
  int c() const { return static_cast<int>(e.size()); }
  long long weight(int i) const;            // signed weight of normalized coordinate i
  std::vector<long long> weights() const;   // all n signed weights, normalized order
};

// Sorts each block by weight magnitude (descending, stable) and records the
// permutation back to the caller's order. Throws input_error on n > kMaxVars
// or n < 1.
CStarAction make_action(const std::vector<long long>& signed_weights,
                        const std::vector<long long>& equation_weights);

// Block-structured names in normalized order: x1..xr, y1..ys, z (or z1..zt).
std::vector<std::string> coordinate_names(const CStarAction& act);
// Same naming scheme applied to an un-normalized signed weight list.
std::vector<std::string> original_names(const std::vector<long long>& signed_weights);

long long tau(const CStarAction& act);

struct SignPattern {
  int r = 0, s = 0, t = 0;
  std::vector<int> esign;  // entries -1, 0, 1 in equation order
};
SignPattern sign_pattern(const CStarAction& act);
std::string pattern_string(const SignPattern& p);

struct PatternCheck {
  bool pass = false;
  std::string form;  // matched canonical form, e.g. "(+,+,-,-,0;0)"
};
// n = 5, 6: membership in the explicit admissible-form lists; n = 7, 8: the
// general rule r >= 2, s >= 2 with #{e_k > 0} >= r-2 and #{e_k < 0} >= s-2.
PatternCheck check_pattern(const CStarAction& act);

struct GitDatum {
  CStarAction act;
  std::vector<Polynomial> f;  // in normalized coordinate order
  std::string name;
};

// Validates each polynomial (nonzero, no constant term, quasi-homogeneous of
// weight e_k) and permutes variables into the normalized coordinate order.
// `polys` are read in the same coordinate order as make_action's input.
GitDatum make_datum(const CStarAction& act, std::vector<Polynomial> polys,
                    std::string name);

// Convenience: build action and datum from signed weights and polynomial
// strings written with original_names(signed_weights).
GitDatum parse_datum(const std::vector<long long>& signed_weights,
                     const std::vector<long long>& equation_weights,
                     const std::vector<std::string>& poly_exprs, std::string name);

bool is_reduced(const GitDatum& d);

struct FixedPoint {
  int coord = 0;       // normalized coordinate index
  bool minus_side = false;
  std::string label;   // P1 .. P_{r+s}
};
// P_1..P_r on the minus side (x-block), P_{r+1}..P_{r+s} on the plus side.
std::vector<FixedPoint> fixed_points(const CStarAction& act);

// True iff no defining polynomial contains a pure power of P's coordinate.
bool fixed_point_in_side(const GitDatum& d, const FixedPoint& p);

// Local model of X^-/X^+ at a fixed point: a complete-intersection germ in the
// remaining n-1 coordinates over the cyclic quotient 1/index(residual weights).
struct ChartGerm {
  long long index = 1;
  std::vector<long long> weights;   // residual coordinate weights, length n-1
  std::vector<long long> eweights;  // equation weights
  std::vector<Polynomial> eqs;      // dehomogenized, no constant terms
  std::vector<std::string> names;
};
ChartGerm chart_at(const GitDatum& d, const FixedPoint& p);

// Ideal of the contracted-curve cone: the f_k restricted to the x-block
// (side=false -> minus) or y-block (side=true -> plus), in r (resp. s) variables.
Ideal curve_ideal(const GitDatum& d, bool plus_side);

struct ConditionC {
  GBStatus status = GBStatus::Ok;  // BudgetExceeded -> inconclusive
  bool pass = false;
  std::string reason;  // "CURVE_DIM" or "COR_CORC" when failing
  std::string detail;
  int dim_minus = -2, dim_plus = -2;
};
ConditionC check_condition_C(const GitDatum& d, const GroebnerBudget& budget = {});

// Number of irreducible components e_1/(a_2 a_3) of C^- for the codimension-2
// flip shape (r,s,t)=(3,2,1), e_2=0, e_1>0. input_error otherwise.
long long curve_components(const GitDatum& d);

struct MonomialWitness {
  int k = 0;           // equation index
  int omega = 0;       // coordinate index of the linear factor
  Monomial mu;         // nonconstant block monomial, mu * omega in supp(f_k)
};
// Necessary condition on supports: each f_k contains mu_k * w_k with mu_k a
// nonconstant x-block (minus) or y-block (plus) monomial; the w_k must be
// pairwise distinct across k where wt(w_k) <= 0 (minus) resp. >= 0 (plus).
std::optional<std::vector<MonomialWitness>> forced_monomial_witness(
    const GitDatum& d, bool plus_side);

}  // namespace flipcert
