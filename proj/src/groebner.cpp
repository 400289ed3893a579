#include "flipcert/groebner.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <stdexcept>
#include <unordered_set>

namespace flipcert {

bool MonomialOrder::less(const Monomial& a, const Monomial& b) const {
  int n = a.nvars();
  int da = a.total_degree(), db = b.total_degree();
  auto at = [&](int k) { return perm.empty() ? k : perm[static_cast<size_t>(k)]; };
  if (type == OrderType::DegRevLex) {
    if (da != db) return da < db;
    for (int k = n - 1; k >= 0; --k) {
      int i = at(k);
      if (a.exp(i) != b.exp(i)) return a.exp(i) > b.exp(i);
    }
    return false;
  }
  for (int k = 0; k < n; ++k) {
    int i = at(k);
    if (a.exp(i) != b.exp(i)) return a.exp(i) < b.exp(i);
  }
  return false;
}

namespace {

struct RationalField {
  using Elt = Rational;
  static Elt from_rational(const Rational& q, bool*) { return q; }
  static bool is_zero(const Elt& e) { return e == 0; }
  static Elt neg(const Elt& e) { return -e; }
  static Elt mul(const Elt& a, const Elt& b) { return a * b; }
  static Elt sub(const Elt& a, const Elt& b) { return a - b; }
  static Elt div(const Elt& a, const Elt& b) { return a / b; }
  static Elt one() { return Rational(1); }
};

struct PrimeField {
  uint64_t p;
  using Elt = uint64_t;
  Elt from_rational(const Rational& q, bool* bad) const {
    Integer num = q.get_num(), den = q.get_den();
    Integer pz(static_cast<unsigned long>(p));
    Integer dm = den % pz;
    if (dm == 0) { *bad = true; return 0; }
    Integer nm = num % pz;
    if (nm < 0) nm += pz;
    uint64_t nv = nm.get_ui(), dv = dm.get_ui();
    return mul_(nv, inv_(dv));
  }
  bool is_zero(Elt e) const { return e == 0; }
  Elt neg(Elt e) const { return e == 0 ? 0 : p - e; }
  Elt mul(Elt a, Elt b) const { return mul_(a, b); }
  Elt sub(Elt a, Elt b) const { return a >= b ? a - b : a + p - b; }
  Elt div(Elt a, Elt b) const { return mul_(a, inv_(b)); }
  Elt one() const { return 1; }

  uint64_t mul_(uint64_t a, uint64_t b) const {
    return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
  }
  uint64_t inv_(uint64_t a) const {
    // extended euclid on (a, p), p prime, a != 0
    long long t = 0, newt = 1;
    long long r = static_cast<long long>(p), newr = static_cast<long long>(a);
    while (newr != 0) {
      long long q = r / newr;
      long long tmp = t - q * newt; t = newt; newt = tmp;
      tmp = r - q * newr; r = newr; newr = tmp;
    }
    if (r != 1) throw std::domain_error("prime field: non-invertible element");
    if (t < 0) t += static_cast<long long>(p);
    return static_cast<uint64_t>(t);
  }
};

// sorted descending in the monomial order
template <class F>
struct GBPoly {
  std::vector<Monomial> mons;
  std::vector<typename F::Elt> cofs;
  int sugar = 0;
  bool empty() const { return mons.empty(); }
  const Monomial& lead() const { return mons.front(); }
};

template <class F>
class Engine {
 public:
  Engine(const F& field, const MonomialOrder& order, int nvars)
      : f_(field), ord_(order), n_(nvars) {}

  GBPoly<F> import(const Polynomial& p, bool* bad) const {
    std::vector<std::pair<Monomial, typename F::Elt>> ts;
    for (const auto& t : p.terms()) {
      auto c = f_.from_rational(t.coef, bad);
      if (*bad) return {};
      if (!f_.is_zero(c)) ts.emplace_back(t.mono, c);
    }
    std::sort(ts.begin(), ts.end(), [&](const auto& a, const auto& b) {
      return ord_.less(b.first, a.first);
    });
    GBPoly<F> g;
    for (auto& [m, c] : ts) { g.mons.push_back(m); g.cofs.push_back(c); }
    g.sugar = p.total_degree() < 0 ? 0 : p.total_degree();
    return g;
  }

  // r - c * m * g
  GBPoly<F> combine(const GBPoly<F>& r, const typename F::Elt& c, const Monomial& m,
                    const GBPoly<F>& g) const {
    ops_ += static_cast<long long>(r.mons.size() + g.mons.size());
    GBPoly<F> out;
    out.sugar = std::max(r.sugar, g.sugar + m.total_degree());
    out.mons.reserve(r.mons.size() + g.mons.size());
    out.cofs.reserve(r.mons.size() + g.mons.size());
    size_t i = 0, j = 0;
    while (i < r.mons.size() || j < g.mons.size()) {
      if (j >= g.mons.size()) { out.mons.push_back(r.mons[i]); out.cofs.push_back(r.cofs[i]); ++i; continue; }
      Monomial gm = m * g.mons[j];
      if (i >= r.mons.size()) {
        out.mons.push_back(gm);
        out.cofs.push_back(f_.neg(f_.mul(c, g.cofs[j])));
        ++j; continue;
      }
      if (r.mons[i] == gm) {
        auto v = f_.sub(r.cofs[i], f_.mul(c, g.cofs[j]));
        if (!f_.is_zero(v)) { out.mons.push_back(gm); out.cofs.push_back(v); }
        ++i; ++j;
      } else if (ord_.greater(r.mons[i], gm)) {
        out.mons.push_back(r.mons[i]); out.cofs.push_back(r.cofs[i]); ++i;
      } else {
        out.mons.push_back(gm);
        out.cofs.push_back(f_.neg(f_.mul(c, g.cofs[j])));
        ++j;
      }
    }
    return out;
  }

  GBPoly<F> normal_form(GBPoly<F> work, const std::vector<GBPoly<F>>& basis) const {
    GBPoly<F> out;
    out.sugar = work.sugar;
    while (!work.empty()) {
      if (ops_ > ops_cap_) { overrun_ = true; return {}; }
      out.sugar = std::max(out.sugar, work.sugar);
      bool reduced = false;
      for (const auto& g : basis) {
        if (g.empty()) continue;
        if (g.lead().divides(work.lead())) {
          Monomial q = g.lead().divide_into(work.lead());
          auto c = f_.div(work.cofs.front(), g.cofs.front());
          work = combine(work, c, q, g);
          reduced = true;
          break;
        }
      }
      if (!reduced) {
        out.mons.push_back(work.lead());
        out.cofs.push_back(work.cofs.front());
        work.mons.erase(work.mons.begin());
        work.cofs.erase(work.cofs.begin());
      }
    }
    return out;
  }

  void make_monic(GBPoly<F>& g) const {
    if (g.empty()) return;
    auto lc = g.cofs.front();
    for (auto& c : g.cofs) c = f_.div(c, lc);
  }

  GBStatus run(std::vector<GBPoly<F>> input, const GroebnerBudget& budget,
               std::vector<GBPoly<F>>* out, long* pairs_processed) const {
    ops_ = 0;
    ops_cap_ = budget.max_coeff_ops;
    overrun_ = false;
    std::vector<GBPoly<F>> basis;
    for (auto& g : input) {
      if (g.empty()) continue;
      make_monic(g);
      basis.push_back(std::move(g));
    }
    struct Pair {
      int sugar; int lcmdeg; int i; int j;
      bool operator>(const Pair& o) const {
        if (sugar != o.sugar) return sugar > o.sugar;
        if (lcmdeg != o.lcmdeg) return lcmdeg > o.lcmdeg;
        if (i != o.i) return i > o.i;
        return j > o.j;
      }
    };
    std::priority_queue<Pair, std::vector<Pair>, std::greater<Pair>> queue;
    auto push_pair = [&](int i, int j) {
      Monomial l = basis[static_cast<size_t>(i)].lead().lcm(basis[static_cast<size_t>(j)].lead());
      int di = l.total_degree() - basis[static_cast<size_t>(i)].lead().total_degree();
      int dj = l.total_degree() - basis[static_cast<size_t>(j)].lead().total_degree();
      int sug = std::max(basis[static_cast<size_t>(i)].sugar + di,
                         basis[static_cast<size_t>(j)].sugar + dj);
      queue.push({sug, l.total_degree(), i, j});
    };
    for (size_t i = 0; i < basis.size(); ++i)
      for (size_t j = i + 1; j < basis.size(); ++j)
        push_pair(static_cast<int>(i), static_cast<int>(j));

    std::unordered_set<uint64_t> done;
    auto key = [](int i, int j) {
      return (static_cast<uint64_t>(i) << 32) | static_cast<uint64_t>(j);
    };
    long processed = 0;
    while (!queue.empty()) {
      Pair pr = queue.top();
      queue.pop();
      const auto& gi = basis[static_cast<size_t>(pr.i)];
      const auto& gj = basis[static_cast<size_t>(pr.j)];
      done.insert(key(pr.i, pr.j));
      if (gi.lead().coprime(gj.lead())) continue;
      Monomial l = gi.lead().lcm(gj.lead());
      bool chain = false;
      for (size_t k = 0; k < basis.size(); ++k) {
        int ki = static_cast<int>(k);
        if (ki == pr.i || ki == pr.j) continue;
        if (!basis[k].lead().divides(l)) continue;
        auto sub1 = key(std::min(pr.i, ki), std::max(pr.i, ki));
        auto sub2 = key(std::min(pr.j, ki), std::max(pr.j, ki));
        if (done.count(sub1) && done.count(sub2)) { chain = true; break; }
      }
      if (chain) continue;
      if (processed >= budget.max_pairs) {
        *pairs_processed = processed;
        return GBStatus::BudgetExceeded;
      }
      ++processed;
      // S-polynomial: (l/lt_i)*gi - (l/lt_j)*gj, both monic
      Monomial qi = gi.lead().divide_into(l);
      Monomial qj = gj.lead().divide_into(l);
      GBPoly<F> s;
      s.sugar = std::max(gi.sugar + qi.total_degree(), gj.sugar + qj.total_degree());
      for (size_t t = 0; t < gi.mons.size(); ++t) {
        s.mons.push_back(qi * gi.mons[t]);
        s.cofs.push_back(gi.cofs[t]);
      }
      // already sorted: multiplying by a monomial preserves the order
      s = combine(s, f_.one(), qj, gj);
      GBPoly<F> nf = normal_form(std::move(s), basis);
      if (overrun_) {
        *pairs_processed = processed;
        return GBStatus::BudgetExceeded;
      }
      if (!nf.empty()) {
        make_monic(nf);
        basis.push_back(std::move(nf));
        int newi = static_cast<int>(basis.size()) - 1;
        for (int i = 0; i < newi; ++i) push_pair(i, newi);
      }
    }
    // minimalize: drop elements whose lead is divisible by another lead
    std::vector<bool> keep(basis.size(), true);
    for (size_t i = 0; i < basis.size(); ++i)
      for (size_t j = 0; j < basis.size(); ++j) {
        if (i == j || !keep[i] || !keep[j]) continue;
        if (basis[j].lead().divides(basis[i].lead()) &&
            !(basis[j].lead() == basis[i].lead() && j > i))
          keep[i] = false;
      }
    std::vector<GBPoly<F>> minimal;
    for (size_t i = 0; i < basis.size(); ++i)
      if (keep[i]) minimal.push_back(std::move(basis[i]));
    // inter-reduce tails
    std::vector<GBPoly<F>> reduced;
    for (size_t i = 0; i < minimal.size(); ++i) {
      std::vector<GBPoly<F>> others;
      for (size_t j = 0; j < minimal.size(); ++j)
        if (j != i) others.push_back(minimal[j]);
      GBPoly<F> nf = normal_form(minimal[i], others);
      if (overrun_) {
        *pairs_processed = processed;
        return GBStatus::BudgetExceeded;
      }
      if (!nf.empty()) {
        make_monic(nf);
        reduced.push_back(std::move(nf));
      }
    }
    std::sort(reduced.begin(), reduced.end(), [&](const GBPoly<F>& a, const GBPoly<F>& b) {
      return ord_.less(a.lead(), b.lead());
    });
    *out = std::move(reduced);
    *pairs_processed = processed;
    return GBStatus::Ok;
  }

 private:
  const F& f_;
  const MonomialOrder& ord_;
  int n_;
  mutable long long ops_ = 0;
  mutable long long ops_cap_ = 0;
  mutable bool overrun_ = false;
};

Polynomial export_rational(const GBPoly<RationalField>& g, int nvars) {
  std::vector<Term> ts;
  for (size_t i = 0; i < g.mons.size(); ++i) ts.push_back({g.mons[i], g.cofs[i]});
  return Polynomial::from_terms(nvars, std::move(ts));
}

void check_ambient(const Ideal& ideal) {
  if (ideal.nvars < 0 || ideal.nvars > kMaxVars)
    throw std::invalid_argument("ideal ambient dimension must be between 0 and 8");
  for (const auto& g : ideal.gens)
    if (!g.is_zero() && g.nvars() != ideal.nvars)
      throw std::invalid_argument("ideal generator has wrong variable count");
}

template <class F>
GBStatus run_engine(const F& field, const Ideal& ideal, const MonomialOrder& order,
                    const GroebnerBudget& budget, std::vector<GBPoly<F>>* out,
                    long* pairs, bool* bad) {
  Engine<F> eng(field, order, ideal.nvars);
  std::vector<GBPoly<F>> input;
  for (const auto& g : ideal.gens) {
    if (g.is_zero()) continue;
    auto gp = eng.import(g, bad);
    if (*bad) return GBStatus::Ok;
    input.push_back(std::move(gp));
  }
  return eng.run(std::move(input), budget, out, pairs);
}

}  // namespace

GBResult groebner_basis(const Ideal& ideal, const MonomialOrder& order,
                        const GroebnerBudget& budget) {
  check_ambient(ideal);
  RationalField field;
  std::vector<GBPoly<RationalField>> basis;
  bool bad = false;
  GBResult r;
  r.status = run_engine(field, ideal, order, budget, &basis, &r.pairs_processed, &bad);
  if (r.status != GBStatus::Ok) return r;
  for (const auto& g : basis) r.basis.push_back(export_rational(g, ideal.nvars));
  return r;
}

int dimension_from_leads(const std::vector<Monomial>& leads, int nvars) {
  std::vector<uint32_t> supp;
  for (const auto& l : leads) {
    uint32_t s = 0;
    for (int i = 0; i < nvars; ++i)
      if (l.exp(i) > 0) s |= (1u << i);
    supp.push_back(s);
  }
  int best = -1;
  for (uint32_t mask = 0; mask < (1u << nvars); ++mask) {
    bool independent = true;
    for (uint32_t s : supp)
      if ((s & mask) == s) { independent = false; break; }
    if (independent) best = std::max(best, __builtin_popcount(mask));
  }
  return best;
}

bool staircase_finite(const std::vector<Monomial>& leads, int nvars) {
  for (int i = 0; i < nvars; ++i) {
    bool has = false;
    for (const auto& l : leads)
      if (l.sole_var() == i) { has = true; break; }
    if (!has) return false;
  }
  return true;
}

long long count_standard_monomials(const std::vector<Monomial>& leads, int nvars,
                                   long long cap, bool* exceeded) {
  *exceeded = false;
  std::set<uint64_t> seen;
  std::vector<Monomial> frontier{Monomial::one(nvars)};
  seen.insert(Monomial::one(nvars).packed());
  long long count = 0;
  auto standard = [&](const Monomial& m) {
    for (const auto& l : leads)
      if (l.divides(m)) return false;
    return true;
  };
  if (!standard(Monomial::one(nvars))) return 0;  // unit ideal
  while (!frontier.empty()) {
    Monomial m = frontier.back();
    frontier.pop_back();
    ++count;
    if (count > cap) { *exceeded = true; return -1; }
    for (int i = 0; i < nvars; ++i) {
      Monomial nm = m * Monomial::var(nvars, i);
      if (!seen.insert(nm.packed()).second) continue;
      if (standard(nm)) frontier.push_back(nm);
    }
  }
  return count;
}

namespace {

template <class Fn>
GBStatus with_leads(const Ideal& ideal, const GroebnerBudget& budget, bool* unit, Fn fn) {
  GBResult gb = groebner_basis(ideal, MonomialOrder{}, budget);
  if (gb.status != GBStatus::Ok) return gb.status;
  MonomialOrder ord;
  std::vector<Monomial> leads;
  for (const auto& g : gb.basis) {
    Monomial lead = g.terms().front().mono;
    for (const auto& t : g.terms())
      if (ord.less(lead, t.mono)) lead = t.mono;
    leads.push_back(lead);
  }
  *unit = false;
  for (const auto& l : leads)
    if (l.is_one()) { *unit = true; break; }
  fn(leads);
  return GBStatus::Ok;
}

}  // namespace

DimensionResult krull_dimension(const Ideal& ideal, const GroebnerBudget& budget) {
  DimensionResult r;
  bool unit = false;
  r.status = with_leads(ideal, budget, &unit, [&](const std::vector<Monomial>& leads) {
    if (unit) { r.unit_ideal = true; r.dim = -1; return; }
    r.dim = dimension_from_leads(leads, ideal.nvars);
  });
  return r;
}

ColengthResult colength(const Ideal& ideal, const GroebnerBudget& budget) {
  ColengthResult r;
  bool unit = false;
  r.status = with_leads(ideal, budget, &unit, [&](const std::vector<Monomial>& leads) {
    if (unit) { r.unit_ideal = true; r.finite = true; r.colength = 0; return; }
    if (ideal.nvars == 0) { r.finite = true; r.colength = 1; return; }
    if (!staircase_finite(leads, ideal.nvars)) { r.finite = false; return; }
    bool exceeded = false;
    long long c = count_standard_monomials(leads, ideal.nvars, budget.max_standard_monomials, &exceeded);
    if (exceeded) { r.status = GBStatus::BudgetExceeded; return; }
    r.finite = true;
    r.colength = c;
  });
  return r;
}

ColengthResult local_colength(const Ideal& ideal, int degree,
                              const GroebnerBudget& budget) {
  Ideal J = ideal;
  for (int v = 0; v < ideal.nvars; ++v)
    J.gens.push_back(
        Polynomial::term(Monomial::var(ideal.nvars, v, degree), Rational(1)));
  return colength(J, budget);
}

ProbeResult finite_field_dimension_probe(const Ideal& ideal, uint64_t p,
                                         const GroebnerBudget& budget) {
  check_ambient(ideal);
  ProbeResult r;
  Integer pz(static_cast<unsigned long>(p));
  MonomialOrder ord;
  for (const auto& g : ideal.gens) {
    if (g.is_zero()) continue;
    Monomial lead = g.terms().front().mono;
    Rational lc = g.terms().front().coef;
    for (const auto& t : g.terms()) {
      if (ord.less(lead, t.mono)) { lead = t.mono; lc = t.coef; }
      if (t.coef.get_den() % pz == 0) { r.bad_prime = true; return r; }
    }
    if (lc.get_num() % pz == 0) { r.bad_prime = true; return r; }
  }
  PrimeField field{p};
  std::vector<GBPoly<PrimeField>> basis;
  long pairs = 0;
  bool bad = false;
  r.status = run_engine(field, ideal, ord, budget, &basis, &pairs, &bad);
  if (bad) { r.bad_prime = true; return r; }
  if (r.status != GBStatus::Ok) return r;
  std::vector<Monomial> leads;
  for (const auto& g : basis) leads.push_back(g.lead());
  for (const auto& l : leads)
    if (l.is_one()) { r.unit_ideal = true; r.dim = -1; r.finite = true; r.colength = 0; return r; }
  r.dim = dimension_from_leads(leads, ideal.nvars);
  if (ideal.nvars == 0) { r.finite = true; r.colength = 1; return r; }
  if (staircase_finite(leads, ideal.nvars)) {
    bool exceeded = false;
    long long c = count_standard_monomials(leads, ideal.nvars, budget.max_standard_monomials, &exceeded);
    if (exceeded) { r.status = GBStatus::BudgetExceeded; return r; }
    r.finite = true;
    r.colength = c;
  }
  return r;
}

}  // namespace flipcert
