#include "flipcert/poly.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <sstream>
#include <stdexcept>

namespace flipcert {

Monomial::Monomial(int nvars) {
  if (nvars < 0 || nvars > kMaxVars) throw std::invalid_argument("monomial: bad variable count");
  n_ = static_cast<uint8_t>(nvars);
}

Monomial Monomial::var(int nvars, int i, int power) {
  Monomial m(nvars);
  m.set_exp(i, power);
  return m;
}

Monomial Monomial::from_exponents(const std::vector<int>& exps) {
  Monomial m(static_cast<int>(exps.size()));
  for (size_t i = 0; i < exps.size(); ++i) m.set_exp(static_cast<int>(i), exps[i]);
  return m;
}

void Monomial::set_exp(int i, int v) {
  if (i < 0 || i >= n_) throw std::out_of_range("monomial: variable index");
  if (v < 0 || v > 255) throw std::invalid_argument("monomial: exponent out of range");
  e_[static_cast<size_t>(i)] = static_cast<uint8_t>(v);
}

int Monomial::total_degree() const {
  int d = 0;
  for (int i = 0; i < n_; ++i) d += e_[static_cast<size_t>(i)];
  return d;
}

bool Monomial::is_pure_power() const {
  return sole_var() >= 0;
}

int Monomial::sole_var() const {
  int found = -1;
  for (int i = 0; i < n_; ++i)
    if (e_[static_cast<size_t>(i)] > 0) {
      if (found >= 0) return -1;
      found = i;
    }
  return found;
}

Monomial Monomial::operator*(const Monomial& o) const {
  if (n_ != o.n_) throw std::invalid_argument("monomial product: mixed variable counts");
  Monomial r(n_);
  for (int i = 0; i < n_; ++i) {
    int s = e_[static_cast<size_t>(i)] + o.e_[static_cast<size_t>(i)];
    if (s > 255) throw std::overflow_error("monomial exponent overflow");
    r.e_[static_cast<size_t>(i)] = static_cast<uint8_t>(s);
  }
  return r;
}

bool Monomial::divides(const Monomial& o) const {
  if (n_ != o.n_) return false;
  for (int i = 0; i < n_; ++i)
    if (e_[static_cast<size_t>(i)] > o.e_[static_cast<size_t>(i)]) return false;
  return true;
}

Monomial Monomial::divide_into(const Monomial& o) const {
  Monomial r(n_);
  for (int i = 0; i < n_; ++i)
    r.e_[static_cast<size_t>(i)] = static_cast<uint8_t>(o.e_[static_cast<size_t>(i)] - e_[static_cast<size_t>(i)]);
  return r;
}

Monomial Monomial::lcm(const Monomial& o) const {
  Monomial r(n_);
  for (int i = 0; i < n_; ++i)
    r.e_[static_cast<size_t>(i)] = std::max(e_[static_cast<size_t>(i)], o.e_[static_cast<size_t>(i)]);
  return r;
}

bool Monomial::coprime(const Monomial& o) const {
  for (int i = 0; i < n_; ++i)
    if (e_[static_cast<size_t>(i)] > 0 && o.e_[static_cast<size_t>(i)] > 0) return false;
  return true;
}

long long Monomial::weight(const std::vector<long long>& w) const {
  long long acc = 0;
  for (int i = 0; i < n_; ++i) acc += static_cast<long long>(e_[static_cast<size_t>(i)]) * w[static_cast<size_t>(i)];
  return acc;
}

std::vector<int> Monomial::exponents() const {
  std::vector<int> v(n_);
  for (int i = 0; i < n_; ++i) v[static_cast<size_t>(i)] = e_[static_cast<size_t>(i)];
  return v;
}

uint64_t Monomial::packed() const { return std::bit_cast<uint64_t>(e_); }

bool Monomial::operator<(const Monomial& o) const {
  int da = total_degree(), db = o.total_degree();
  if (da != db) return da < db;
  if (n_ != o.n_) return n_ < o.n_;
  return e_ < o.e_;
}

std::string Monomial::str(const std::vector<std::string>& names) const {
  if (is_one()) return "1";
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i < n_; ++i) {
    int d = exp(i);
    if (d == 0) continue;
    if (!first) os << "*";
    os << names[static_cast<size_t>(i)];
    if (d > 1) os << "^" << d;
    first = false;
  }
  return os.str();
}

long long weight_of(const Monomial& m, const std::vector<long long>& w) {
  if (static_cast<int>(w.size()) != m.nvars())
    throw std::invalid_argument("weight_of: weight vector length mismatch");
  return m.weight(w);
}

Polynomial Polynomial::constant(int nvars, const Rational& c) {
  Polynomial p(nvars);
  if (c != 0) p.terms_.push_back({Monomial::one(nvars), c});
  return p;
}

Polynomial Polynomial::term(const Monomial& m, const Rational& c) {
  Polynomial p(m.nvars());
  if (c != 0) p.terms_.push_back({m, c});
  return p;
}

Polynomial Polynomial::from_terms(int nvars, std::vector<Term> terms) {
  Polynomial p(nvars);
  for (auto& t : terms)
    if (t.mono.nvars() != nvars) throw std::invalid_argument("from_terms: variable count mismatch");
  p.terms_ = std::move(terms);
  p.compress();
  return p;
}

void Polynomial::compress() {
  std::sort(terms_.begin(), terms_.end(),
            [](const Term& a, const Term& b) { return a.mono < b.mono; });
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!out.empty() && out.back().mono == t.mono)
      out.back().coef += t.coef;
    else
      out.push_back(t);
    if (!out.empty() && out.back().coef == 0) out.pop_back();
  }
  terms_ = std::move(out);
}

Rational Polynomial::coefficient(const Monomial& m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                             [](const Term& t, const Monomial& k) { return t.mono < k; });
  if (it != terms_.end() && it->mono == m) return it->coef;
  return Rational(0);
}

int Polynomial::total_degree() const {
  return terms_.empty() ? -1 : terms_.back().mono.total_degree();
}

int Polynomial::order() const {
  return terms_.empty() ? 1 << 20 : terms_.front().mono.total_degree();
}

Rational Polynomial::constant_term() const { return coefficient(Monomial::one(n_)); }

bool Polynomial::terms_same(const Polynomial& o) const {
  if (terms_.size() != o.terms_.size()) return false;
  for (size_t i = 0; i < terms_.size(); ++i)
    if (!(terms_[i].mono == o.terms_[i].mono) || terms_[i].coef != o.terms_[i].coef) return false;
  return true;
}

Polynomial add_impl(const Polynomial& a, const Polynomial& b, bool negate_b) {
  if (a.n_ != b.n_) throw std::invalid_argument("polynomial sum: mixed variable counts");
  Polynomial r(a.n_);
  r.terms_.reserve(a.terms_.size() + b.terms_.size());
  size_t i = 0, j = 0;
  while (i < a.terms_.size() || j < b.terms_.size()) {
    bool take_a;
    if (i >= a.terms_.size()) take_a = false;
    else if (j >= b.terms_.size()) take_a = true;
    else if (a.terms_[i].mono == b.terms_[j].mono) {
      Rational c = negate_b ? Rational(a.terms_[i].coef - b.terms_[j].coef)
                            : Rational(a.terms_[i].coef + b.terms_[j].coef);
      if (c != 0) r.terms_.push_back({a.terms_[i].mono, c});
      ++i; ++j;
      continue;
    } else take_a = a.terms_[i].mono < b.terms_[j].mono;
    if (take_a) { r.terms_.push_back(a.terms_[i]); ++i; }
    else {
      Term t = b.terms_[j];
      if (negate_b) t.coef = -t.coef;
      r.terms_.push_back(t);
      ++j;
    }
  }
  return r;
}

Polynomial Polynomial::operator+(const Polynomial& o) const { return add_impl(*this, o, false); }
Polynomial Polynomial::operator-(const Polynomial& o) const { return add_impl(*this, o, true); }

Polynomial Polynomial::operator-() const {
  Polynomial r(*this);
  for (auto& t : r.terms_) t.coef = -t.coef;
  return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  if (n_ != o.n_) throw std::invalid_argument("polynomial product: mixed variable counts");
  std::map<Monomial, Rational> acc;
  for (const auto& ta : terms_)
    for (const auto& tb : o.terms_) {
      Monomial m = ta.mono * tb.mono;
      acc[m] += ta.coef * tb.coef;
    }
  Polynomial r(n_);
  r.terms_.reserve(acc.size());
  for (auto& [m, c] : acc)
    if (c != 0) r.terms_.push_back({m, c});
  return r;
}

Polynomial Polynomial::scale(const Rational& c) const {
  if (c == 0) return Polynomial(n_);
  Polynomial r(*this);
  for (auto& t : r.terms_) t.coef *= c;
  return r;
}

Polynomial Polynomial::truncate(int d) const {
  Polynomial r(n_);
  for (const auto& t : terms_)
    if (t.mono.total_degree() <= d) r.terms_.push_back(t);
    else break;  // terms are degree-sorted
  return r;
}

Polynomial Polynomial::jet(int d) const {
  Polynomial r(n_);
  for (const auto& t : terms_)
    if (t.mono.total_degree() == d) r.terms_.push_back(t);
  return r;
}

Polynomial Polynomial::derivative(int i) const {
  Polynomial r(n_);
  for (const auto& t : terms_) {
    int d = t.mono.exp(i);
    if (d == 0) continue;
    Monomial m = t.mono;
    m.set_exp(i, d - 1);
    r.terms_.push_back({m, t.coef * d});
  }
  r.compress();
  return r;
}

Polynomial Polynomial::restrict_zero(const std::vector<int>& vars) const {
  Polynomial r(n_);
  for (const auto& t : terms_) {
    bool keep = true;
    for (int v : vars)
      if (t.mono.exp(v) > 0) { keep = false; break; }
    if (keep) r.terms_.push_back(t);
  }
  return r;
}

Polynomial Polynomial::dehomogenize(int i) const {
  if (i < 0 || i >= n_) throw std::out_of_range("dehomogenize: variable index");
  std::vector<int> image(static_cast<size_t>(n_));
  for (int j = 0; j < n_; ++j) image[static_cast<size_t>(j)] = j < i ? j : j - 1;
  image[static_cast<size_t>(i)] = -2;  // sentinel: variable disappears (set to 1)
  Polynomial r(n_ - 1);
  for (const auto& t : terms_) {
    Monomial m(n_ - 1);
    for (int j = 0; j < n_; ++j) {
      if (j == i) continue;
      m.set_exp(image[static_cast<size_t>(j)], t.mono.exp(j));
    }
    r.terms_.push_back({m, t.coef});
  }
  r.compress();
  return r;
}

Polynomial Polynomial::substitute(int i, const Polynomial& repl, int degree_cap) const {
  if (repl.nvars() != n_) throw std::invalid_argument("substitute: variable count mismatch");
  // group by the exponent of variable i, reuse powers of repl
  int maxd = 0;
  for (const auto& t : terms_) maxd = std::max(maxd, t.mono.exp(i));
  std::vector<Polynomial> pow;
  pow.push_back(Polynomial::constant(n_, rat(1)));
  for (int d = 1; d <= maxd; ++d) {
    Polynomial p = pow.back() * repl;
    if (degree_cap >= 0) p = p.truncate(degree_cap);
    pow.push_back(std::move(p));
  }
  Polynomial acc(n_);
  for (const auto& t : terms_) {
    int d = t.mono.exp(i);
    Monomial m = t.mono;
    m.set_exp(i, 0);
    Polynomial piece = pow[static_cast<size_t>(d)] * Polynomial::term(m, t.coef);
    if (degree_cap >= 0) piece = piece.truncate(degree_cap);
    acc = acc + piece;
  }
  return acc;
}

Polynomial Polynomial::map_vars(int new_nvars, const std::vector<int>& image) const {
  if (static_cast<int>(image.size()) != n_) throw std::invalid_argument("map_vars: image length mismatch");
  Polynomial r(new_nvars);
  for (const auto& t : terms_) {
    Monomial m(new_nvars);
    for (int j = 0; j < n_; ++j) {
      int d = t.mono.exp(j);
      if (d == 0) continue;
      if (image[static_cast<size_t>(j)] < 0)
        throw std::invalid_argument("map_vars: dropped variable occurs in polynomial");
      m.set_exp(image[static_cast<size_t>(j)], m.exp(image[static_cast<size_t>(j)]) + d);
    }
    r.terms_.push_back({m, t.coef});
  }
  r.compress();
  return r;
}

bool Polynomial::uses_var(int i) const {
  for (const auto& t : terms_)
    if (t.mono.exp(i) > 0) return true;
  return false;
}

std::string Polynomial::str(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  // print descending by degree for readability
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    Rational c = it->coef;
    bool first = it == terms_.rbegin();
    if (c < 0) { os << (first ? "-" : " - "); c = -c; }
    else if (!first) os << " + ";
    if (c != 1 || it->mono.is_one()) {
      os << rat_str(c);
      if (!it->mono.is_one()) os << "*";
    }
    if (!it->mono.is_one()) os << it->mono.str(names);
  }
  return os.str();
}

Homogeneity quasi_homogeneous_weight(const Polynomial& f, const std::vector<long long>& w) {
  Homogeneity h;
  if (f.is_zero()) return h;
  bool have = false;
  Monomial first;
  for (const auto& t : f.terms()) {
    long long tw = weight_of(t.mono, w);
    if (!have) { h.weight = tw; first = t.mono; have = true; continue; }
    if (tw != h.weight) {
      h.homogeneous = false;
      h.witness_a = first;
      h.witness_b = t.mono;
      return h;
    }
  }
  return h;
}

TruncatedSeries::TruncatedSeries(Polynomial p, int bound) : bound_(bound) {
  if (bound < 0) throw std::invalid_argument("series: negative truncation bound");
  p_ = p.truncate(bound);
}

TruncatedSeries TruncatedSeries::zero(int nvars, int bound) {
  return TruncatedSeries(Polynomial::zero(nvars), bound);
}

TruncatedSeries TruncatedSeries::operator+(const TruncatedSeries& o) const {
  int b = std::min(bound_, o.bound_);
  return TruncatedSeries(p_ + o.p_, b);
}

TruncatedSeries TruncatedSeries::operator-(const TruncatedSeries& o) const {
  int b = std::min(bound_, o.bound_);
  return TruncatedSeries(p_ - o.p_, b);
}

TruncatedSeries TruncatedSeries::operator*(const TruncatedSeries& o) const {
  int b = std::min(bound_, o.bound_);
  return TruncatedSeries(p_ * o.p_, b);
}

TruncatedSeries TruncatedSeries::scale(const Rational& c) const {
  return TruncatedSeries(p_.scale(c), bound_);
}

TruncatedSeries TruncatedSeries::rebound(int bound) const {
  if (bound > bound_) throw std::invalid_argument("series: cannot loosen truncation bound");
  return TruncatedSeries(p_, bound);
}

TruncatedSeries TruncatedSeries::derivative(int i) const {
  // knowing f through degree b determines df/dx_i through degree b-1
  return TruncatedSeries(p_.derivative(i), bound_ > 0 ? bound_ - 1 : 0);
}

TruncatedSeries TruncatedSeries::substitute(int i, const TruncatedSeries& repl) const {
  if (repl.p_.constant_term() != 0)
    throw std::domain_error("series substitution requires zero constant term");
  int b = std::min(bound_, repl.bound_);
  Polynomial out = p_.substitute(i, repl.p_, b);
  return TruncatedSeries(out, b);
}

std::vector<std::string> default_names(int nvars) {
  std::vector<std::string> v;
  for (int i = 1; i <= nvars; ++i) v.push_back("v" + std::to_string(i));
  return v;
}

}  // namespace flipcert
