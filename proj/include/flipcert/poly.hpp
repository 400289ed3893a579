#pragma once
// sparse exact polynomials in at most 8 variables, plus degree-truncated
// power series built on them. Values are immutable in spirit: every
// operation returns a fresh object.
#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "flipcert/rational.hpp"

namespace flipcert {

constexpr int kMaxVars = 8;

class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(int nvars);
  static Monomial one(int nvars) { return Monomial(nvars); }
  static Monomial var(int nvars, int i, int power = 1);
  static Monomial from_exponents(const std::vector<int>& exps);

  int nvars() const { return n_; }
  int exp(int i) const { return e_[static_cast<size_t>(i)]; }
  void set_exp(int i, int v);
  int total_degree() const;
  bool is_one() const { return total_degree() == 0; }
  // exactly one variable, any positive power
  bool is_pure_power() const;
  // index of the unique variable with positive exponent, or -1
  int sole_var() const;
  bool contains(int i) const { return exp(i) > 0; }

  Monomial operator*(const Monomial& o) const;
  bool divides(const Monomial& o) const;
  Monomial divide_into(const Monomial& o) const;  // o / *this, pre: divides(o)
  Monomial lcm(const Monomial& o) const;
  bool coprime(const Monomial& o) const;

  long long weight(const std::vector<long long>& w) const;
  std::vector<int> exponents() const;
  uint64_t packed() const;

  bool operator==(const Monomial& o) const { return n_ == o.n_ && e_ == o.e_; }
  // canonical storage order: total degree, then exponent tuple
  bool operator<(const Monomial& o) const;

  std::string str(const std::vector<std::string>& names) const;

 private:
  std::array<uint8_t, kMaxVars> e_{};
  uint8_t n_ = 0;
};

struct Term {
  Monomial mono;
  Rational coef;
};

class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(int nvars) : n_(nvars) {}
  static Polynomial zero(int nvars) { return Polynomial(nvars); }
  static Polynomial constant(int nvars, const Rational& c);
  static Polynomial term(const Monomial& m, const Rational& c);
  static Polynomial from_terms(int nvars, std::vector<Term> terms);

  int nvars() const { return n_; }
  bool is_zero() const { return terms_.empty(); }
  size_t term_count() const { return terms_.size(); }
  const std::vector<Term>& terms() const { return terms_; }
  Rational coefficient(const Monomial& m) const;
  int total_degree() const;  // -1 for zero polynomial
  int order() const;         // smallest term degree, large sentinel for zero
  Rational constant_term() const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator-() const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial scale(const Rational& c) const;
  bool operator==(const Polynomial& o) const { return n_ == o.n_ && terms_same(o); }

  // terms of total degree <= d
  Polynomial truncate(int d) const;
  // homogeneous part of total degree exactly d
  Polynomial jet(int d) const;
  Polynomial derivative(int i) const;
  // substitute zero for the listed variables (drop terms containing them)
  Polynomial restrict_zero(const std::vector<int>& vars) const;
  // set variable i to 1 and remove it; result lives in nvars-1 variables
  Polynomial dehomogenize(int i) const;
  // substitute variable i by a polynomial in the same variable space;
  // degree_cap < 0 means exact, otherwise the result is truncated
  Polynomial substitute(int i, const Polynomial& repl, int degree_cap = -1) const;
  // move terms into a new variable space: image[i] is the new index of old
  // variable i, or -1 if the variable must not occur (throws if it does)
  Polynomial map_vars(int new_nvars, const std::vector<int>& image) const;
  bool uses_var(int i) const;

  std::string str(const std::vector<std::string>& names) const;

 private:
  bool terms_same(const Polynomial& o) const;
  void compress();  // sort + merge + drop zeros
  int n_ = 0;
  std::vector<Term> terms_;  // sorted ascending by Monomial::operator<
  friend Polynomial add_impl(const Polynomial&, const Polynomial&, bool);
};

long long weight_of(const Monomial& m, const std::vector<long long>& w);

struct Homogeneity {
  bool homogeneous = true;
  long long weight = 0;
  Monomial witness_a, witness_b;  // a pair of differing-weight monomials
};
Homogeneity quasi_homogeneous_weight(const Polynomial& f,
                                     const std::vector<long long>& w);

// power series known exactly up to and including total degree `bound`
class TruncatedSeries {
 public:
  TruncatedSeries() = default;
  TruncatedSeries(Polynomial p, int bound);
  static TruncatedSeries zero(int nvars, int bound);

  const Polynomial& poly() const { return p_; }
  int bound() const { return bound_; }
  int nvars() const { return p_.nvars(); }
  bool is_zero() const { return p_.is_zero(); }

  TruncatedSeries operator+(const TruncatedSeries& o) const;
  TruncatedSeries operator-(const TruncatedSeries& o) const;
  TruncatedSeries operator*(const TruncatedSeries& o) const;
  TruncatedSeries scale(const Rational& c) const;
  TruncatedSeries rebound(int bound) const;  // tighten only
  TruncatedSeries derivative(int i) const;

  // substitute a series with zero constant term for variable i
  TruncatedSeries substitute(int i, const TruncatedSeries& repl) const;

 private:
  Polynomial p_;
  int bound_ = 0;
};

std::vector<std::string> default_names(int nvars);

}  // namespace flipcert
