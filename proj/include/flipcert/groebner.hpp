#pragma once
// Buchberger engine (sugar strategy, coprime + chain criteria) over the
// rationals and over word-size prime fields, with the dimension and
// colength combinatorics on the leading-term staircase. Budget overruns
// surface as an explicit status, never as a wrong answer.
#include <cstdint>
#include <vector>

#include "flipcert/poly.hpp"

namespace flipcert {

enum class OrderType { DegRevLex, Lex };

struct MonomialOrder {
  OrderType type = OrderType::DegRevLex;
  // perm[k] = variable occupying rank k (rank 0 is most significant);
  // empty means identity
  std::vector<int> perm;
  bool less(const Monomial& a, const Monomial& b) const;
  bool greater(const Monomial& a, const Monomial& b) const { return less(b, a); }
};

struct Ideal {
  int nvars = 0;
  std::vector<Polynomial> gens;
};

struct GroebnerBudget {
  long max_pairs = 200000;                  // S-pairs processed
  long long max_standard_monomials = 200000;  // colength enumeration cap
  // total coefficient operations per basis computation; bounds the reduction
  // work itself, which max_pairs alone does not (a single normal form can
  // swell arbitrarily over the rationals)
  long long max_coeff_ops = 400'000'000;
};

enum class GBStatus { Ok, BudgetExceeded };

struct GBResult {
  GBStatus status = GBStatus::Ok;
  std::vector<Polynomial> basis;  // reduced, monic, sorted by leading monomial
  long pairs_processed = 0;
};

GBResult groebner_basis(const Ideal& ideal, const MonomialOrder& order = {},
                        const GroebnerBudget& budget = {});

struct DimensionResult {
  GBStatus status = GBStatus::Ok;
  bool unit_ideal = false;  // reported distinctly; dim is -1 in that case
  int dim = -1;
};
DimensionResult krull_dimension(const Ideal& ideal, const GroebnerBudget& budget = {});

struct ColengthResult {
  GBStatus status = GBStatus::Ok;
  bool unit_ideal = false;
  bool finite = false;
  long long colength = -1;  // valid when finite (unit ideal: 0)
};
ColengthResult colength(const Ideal& ideal, const GroebnerBudget& budget = {});

// colength of the ideal together with (x_1^degree, ..., x_n^degree). The
// quotient is supported at the origin only, so components of V(ideal) away
// from 0 contribute nothing; the count stabilizes in `degree` exactly when
// the colength in the local ring at 0 is finite.
ColengthResult local_colength(const Ideal& ideal, int degree,
                              const GroebnerBudget& budget = {});

struct ProbeResult {
  GBStatus status = GBStatus::Ok;
  bool bad_prime = false;  // p divides a denominator or a leading numerator
  bool unit_ideal = false;
  int dim = -1;
  bool finite = false;
  long long colength = -1;
};
ProbeResult finite_field_dimension_probe(const Ideal& ideal, uint64_t p,
                                         const GroebnerBudget& budget = {});

// staircase combinatorics, exposed for reuse given leading monomials
int dimension_from_leads(const std::vector<Monomial>& leads, int nvars);
bool staircase_finite(const std::vector<Monomial>& leads, int nvars);
long long count_standard_monomials(const std::vector<Monomial>& leads, int nvars,
                                   long long cap, bool* exceeded);

}  // namespace flipcert
