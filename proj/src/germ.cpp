#include "flipcert/germ.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace flipcert {
namespace {

long long mod_pos(long long x, long long m) { return ((x % m) + m) % m; }

struct Rng {  // xorshift64*, deterministic across platforms
  unsigned long long s;
  explicit Rng(unsigned long long seed) : s(seed ? seed : 0x9e3779b97f4a7c15ULL) {}
  unsigned long long next() {
    s ^= s >> 12;
    s ^= s << 25;
    s ^= s >> 27;
    return s * 0x2545f4914f6cdd1dULL;
  }
  long long small_int(int lo, int hi) {  // inclusive
    return lo + static_cast<long long>(next() % static_cast<unsigned long long>(hi - lo + 1));
  }
};

Monomial mono_1(int n, int i) {
  Monomial m(n);
  m.set_exp(i, 1);
  return m;
}

Monomial mono_2(int n, int i, int j) {
  Monomial m(n);
  m.set_exp(i, m.exp(i) + 1);
  m.set_exp(j, m.exp(j) + 1);
  return m;
}

Monomial mono_pow(int n, int i, int k) {
  Monomial m(n);
  m.set_exp(i, k);
  return m;
}

// symmetric matrix of the degree-2 part; M[i][j] = coef(w_i w_j)/ (i==j ? 1 : 2)
std::vector<std::vector<Rational>> quadratic_matrix(const Polynomial& f) {
  int n = f.nvars();
  std::vector<std::vector<Rational>> M(n, std::vector<Rational>(n, Rational(0)));
  Polynomial j2 = f.jet(2);
  for (const Term& t : j2.terms()) {
    int a = -1, b = -1;
    for (int v = 0; v < n; ++v) {
      for (int e = 0; e < t.mono.exp(v); ++e) (a < 0 ? a : b) = v;
    }
    if (a == b)
      M[a][a] = t.coef;
    else {
      M[a][b] = t.coef / 2;
      M[b][a] = t.coef / 2;
    }
  }
  return M;
}

int matrix_rank(std::vector<std::vector<Rational>> M) {
  int n = static_cast<int>(M.size());
  int rank = 0;
  for (int col = 0; col < n && rank < n; ++col) {
    int piv = -1;
    for (int r = rank; r < n; ++r)
      if (M[r][col] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(M[rank], M[piv]);
    for (int r = 0; r < n; ++r) {
      if (r == rank || M[r][col] == 0) continue;
      Rational factor = M[r][col] / M[rank][col];
      for (int c = 0; c < n; ++c) M[r][c] -= factor * M[rank][c];
    }
    ++rank;
  }
  return rank;
}

// coefficient polynomial A with f = ... + w_i * A + (w_i-degree != 1 part),
// A free of w_i
Polynomial linear_coefficient(const Polynomial& f, int i) {
  Polynomial a(f.nvars());
  for (const Term& t : f.terms()) {
    if (t.mono.exp(i) != 1) continue;
    Monomial m = t.mono;
    m.set_exp(i, 0);
    a = a + Polynomial::term(m, t.coef);
  }
  return a;
}

bool proportional(const Polynomial& p, const Polynomial& q) {
  if (p.is_zero() || q.is_zero()) return p.is_zero() && q.is_zero();
  Rational cp = p.terms().back().coef;
  Rational cq = q.terms().back().coef;
  return p.scale(cq) == q.scale(cp);
}

// C homogeneous cubic: is it lambda * L^3 for a linear form L?
bool cube_up_to_scalar(const Polynomial& C) {
  if (C.is_zero()) return false;
  Polynomial ref;
  for (int i = 0; i < C.nvars(); ++i) {
    Polynomial p = C.derivative(i);
    if (p.is_zero()) continue;
    if (ref.is_zero())
      ref = p;
    else if (!proportional(ref, p))
      return false;
  }
  return matrix_rank(quadratic_matrix(ref)) == 1;
}

std::string sub_name(CdvSub s) {
  switch (s) {
    case CdvSub::cA: return "cA";
    case CdvSub::cD: return "cD";
    case CdvSub::cE6: return "cE6";
    case CdvSub::cE7: return "cE7";
    default: return "cE8";
  }
}

}  // namespace

std::array<long long, 3> canonical_quotient_weights(long long m,
                                                    std::array<long long, 3> v) {
  std::array<long long, 3> best{{0, 0, 0}};
  bool have = false;
  for (long long u = 1; u < m; ++u) {
    if (std::gcd(u, m) != 1) continue;
    std::array<long long, 3> c;
    for (int i = 0; i < 3; ++i) c[i] = mod_pos(v[i] * u, m);
    std::sort(c.begin(), c.end());
    if (!have || c < best) {
      best = c;
      have = true;
    }
  }
  if (!have)
    for (int i = 0; i < 3; ++i) best[i] = mod_pos(v[i], std::max(m, 1LL));
  return best;
}

std::string SingularityClass::str() const {
  std::ostringstream os;
  switch (kind) {
    case SingKind::Smooth: return "smooth";
    case SingKind::TerminalQuotient:
      os << "1/" << m << "(" << v[0] << "," << v[1] << "," << v[2] << ")";
      return os.str();
    case SingKind::CAoverM:
      os << "cA/" << m;
      return os.str();
    case SingKind::CAx2: return "cAx/2";
    case SingKind::CAx4: return "cAx/4";
    case SingKind::CD3: return "cD/3";
    case SingKind::CDV: return "cDV(" + sub_name(sub) + ")";
    case SingKind::IndeterminateH1m2q1: return "indeterminate(m=2,q=1)";
    case SingKind::NonIsolated: return "non-isolated";
    default: return "non-terminal(" + reason + ")";
  }
}

bool SingularityClass::operator==(const SingularityClass& o) const {
  if (kind != o.kind) return false;
  switch (kind) {
    case SingKind::TerminalQuotient: return m == o.m && v == o.v;
    case SingKind::CAoverM: return m == o.m;
    case SingKind::CDV: return sub == o.sub;
    default: return true;  // reason text is advisory
  }
}

SingularityClass smooth_class() { return {}; }

SingularityClass quotient_class(long long m, std::array<long long, 3> v) {
  SingularityClass c;
  c.kind = SingKind::TerminalQuotient;
  c.m = m;
  c.v = canonical_quotient_weights(m, v);
  return c;
}

SingularityClass ca_over_m(long long m) {
  SingularityClass c;
  c.kind = SingKind::CAoverM;
  c.m = m;
  return c;
}

SingularityClass cdv_class(CdvSub sub) {
  SingularityClass c;
  c.kind = SingKind::CDV;
  c.sub = sub;
  return c;
}

SingularityClass simple_class(SingKind kind) {
  SingularityClass c;
  c.kind = kind;
  return c;
}

SingularityClass nonterminal(std::string reason) {
  SingularityClass c;
  c.kind = SingKind::NonTerminal;
  c.reason = std::move(reason);
  return c;
}

ElimOutcome eliminate_linear(const ChartGerm& g, int D) {
  ElimOutcome out;
  out.index = g.index;
  out.weights = g.weights;
  out.eweights = g.eweights;
  out.names = g.names;
  out.eqs = g.eqs;
  for (;;) {
    int k = -1, j = -1;
    Rational c;
    for (size_t kk = 0; kk < out.eqs.size() && k < 0; ++kk)
      for (const Term& t : out.eqs[kk].terms())
        if (t.mono.total_degree() == 1) {
          k = static_cast<int>(kk);
          j = t.mono.sole_var();
          c = t.coef;
          break;
        }
    if (k < 0) break;
    int n = out.eqs[k].nvars();
    Polynomial rhs =
        (Polynomial::term(mono_1(n, j), c) - out.eqs[k]).scale(Rational(1) / c);
    // fixed-point solve w_j = rhs(w_j) to degree D
    Polynomial s(n);
    for (int pass = 0; pass <= D + 2; ++pass) {
      Polynomial next = rhs.substitute(j, s, D);
      if (next == s) break;
      s = next;
    }
    std::vector<int> image(n);
    for (int v = 0; v < n; ++v) image[v] = v < j ? v : (v == j ? -1 : v - 1);
    std::vector<Polynomial> neweqs;
    for (size_t kk = 0; kk < out.eqs.size(); ++kk) {
      if (static_cast<int>(kk) == k) continue;
      neweqs.push_back(out.eqs[kk].substitute(j, s, D).map_vars(n - 1, image));
    }
    out.eqs = std::move(neweqs);
    out.eweights.erase(out.eweights.begin() + k);
    out.weights.erase(out.weights.begin() + j);
    out.names.erase(out.names.begin() + j);
  }
  return out;
}

int quadratic_rank(const Polynomial& f) { return matrix_rank(quadratic_matrix(f)); }

SplitResult split_quadratic(const Polynomial& f, int D, long long m,
                            const std::vector<long long>& weights) {
  SplitResult res;
  int n = f.nvars();
  std::vector<long long> w = weights;
  if (w.empty()) w.assign(n, 0);
  Polynomial work = f.truncate(D);
  std::vector<bool> removed(n, false);

  auto diagonal_split = [&](int i, const Rational& c) -> bool {
    for (int pass = 0; pass <= D + 2; ++pass) {
      Polynomial a = linear_coefficient(work, i);
      if (a.is_zero()) {
        res.squares += 1;
        removed[i] = true;
        work = work.restrict_zero({i});
        return true;
      }
      Polynomial repl =
          Polynomial::term(mono_1(n, i), Rational(1)) - a.scale(Rational(1) / (2 * c));
      work = work.substitute(i, repl, D);
    }
    return false;
  };

  auto hyperbolic_split = [&](int i, int j, const Rational& c) -> bool {
    for (int pass = 0; pass <= D + 2; ++pass) {
      Polynomial a = linear_coefficient(work.restrict_zero({j}), i);
      Polynomial b = linear_coefficient(work.restrict_zero({i}), j);
      if (a.is_zero() && b.is_zero()) {
        res.squares += 2;
        removed[i] = removed[j] = true;
        work = work.restrict_zero({i, j});
        return true;
      }
      Polynomial ri =
          Polynomial::term(mono_1(n, i), Rational(1)) - b.scale(Rational(1) / c);
      Polynomial rj =
          Polynomial::term(mono_1(n, j), Rational(1)) - a.scale(Rational(1) / c);
      work = work.substitute(i, ri, D).substitute(j, rj, D);
    }
    return false;
  };

  for (;;) {
    auto M = quadratic_matrix(work);
    int pi = -1, pj = -1;
    for (int i = 0; i < n && pi < 0; ++i)
      if (!removed[i] && M[i][i] != 0) pi = pj = i;
    if (pi < 0) {  // an equal-weight mix creates a diagonal pivot at j
      bool mixed = false;
      for (int i = 0; i < n && !mixed; ++i)
        for (int j = i + 1; j < n && !mixed; ++j)
          if (!removed[i] && !removed[j] && M[i][j] != 0 &&
              mod_pos(w[i] - w[j], std::max(m, 1LL)) == 0) {
            Polynomial repl = Polynomial::term(mono_1(n, i), Rational(1)) +
                              Polynomial::term(mono_1(n, j), Rational(1));
            work = work.substitute(i, repl, D);
            mixed = true;
          }
      if (mixed) continue;
    }
    if (pi < 0) {  // hyperbolic pair
      for (int i = 0; i < n && pi < 0; ++i)
        for (int j = i + 1; j < n && pi < 0; ++j)
          if (!removed[i] && !removed[j] && M[i][j] != 0) {
            pi = i;
            pj = j;
          }
    }
    if (pi < 0) break;  // 2-jet exhausted
    bool done = (pi == pj) ? diagonal_split(pi, M[pi][pi])
                           : hyperbolic_split(pi, pj, 2 * M[pi][pj]);
    if (!done) {
      res.ok = false;
      return res;
    }
  }

  int kept = 0;
  std::vector<int> image(n, -1);
  for (int v = 0; v < n; ++v)
    if (!removed[v]) {
      res.residual_vars.push_back(v);
      image[v] = kept++;
    }
  res.residual = work.map_vars(kept, image);
  return res;
}

MilnorResult milnor_number(const Polynomial& f, int D, const GroebnerBudget& budget) {
  // Milnor number of the germ at the origin: the cutoff colength sees only
  // the origin component of the critical scheme, and agreement between the
  // two cutoffs certifies both finiteness and truncation adequacy.
  MilnorResult out;
  long long mus[2] = {-1, -1};
  for (int round = 0; round < 2; ++round) {
    Polynomial g = f.truncate(D + 2 * round);
    Ideal J;
    J.nvars = f.nvars();
    for (int i = 0; i < f.nvars(); ++i) {
      Polynomial d = g.derivative(i);
      if (!d.is_zero()) J.gens.push_back(std::move(d));
    }
    ColengthResult cr = local_colength(J, D + 2 * round, budget);
    if (cr.status != GBStatus::Ok) {
      out.status = cr.status;
      return out;
    }
    mus[round] = cr.colength;
  }
  out.stable = (mus[0] == mus[1]);
  out.finite = out.stable;
  out.mu = out.finite ? mus[0] : -1;
  return out;
}

ClassifyResult cdv_classify(const Polynomial& f, const ClassifyOptions& opt) {
  ClassifyResult out;
  int q = f.nvars();
  int Dw = std::max(opt.truncation, f.total_degree() + 2);

  {  // isolated singular point of V(f) at the origin. The staircase test is
     // global, so a positive answer may come from singular points away from
     // 0; in that case fall back to the cutoff colength, which is supported
     // at the origin only and stabilizes iff the local colength is finite.
    Ideal J;
    J.nvars = q;
    J.gens.push_back(f);
    for (int i = 0; i < q; ++i) {
      Polynomial d = f.derivative(i);
      if (!d.is_zero()) J.gens.push_back(std::move(d));
    }
    DimensionResult dr = krull_dimension(J, opt.budget);
    if (dr.status != GBStatus::Ok) {
      out.status = dr.status;
      return out;
    }
    if (!dr.unit_ideal && dr.dim >= 1) {
      long long cnt[2] = {0, 0};
      for (int round = 0; round < 2; ++round) {
        ColengthResult cr = local_colength(J, Dw + 2 * round, opt.budget);
        if (cr.status != GBStatus::Ok) {
          out.status = cr.status;
          return out;
        }
        cnt[round] = cr.colength;
      }
      if (cnt[0] != cnt[1]) {
        out.cls = simple_class(SingKind::NonIsolated);
        return out;
      }
    }
  }

  int rank = quadratic_rank(f);
  if (rank >= 2) {
    out.cls = cdv_class(CdvSub::cA);
    return out;
  }
  if (rank == 0) {
    out.cls = nonterminal("2-jet vanishes; the generic hyperplane section is not Du Val");
    return out;
  }

  SplitResult sp = split_quadratic(f, Dw);
  if (!sp.ok || sp.residual_vars.size() < 2) {
    out.cls = nonterminal("quadratic split failed");
    return out;
  }
  Polynomial C = sp.residual.jet(3);
  if (C.is_zero()) {
    out.cls = nonterminal("3-jet of the split residual vanishes; the generic "
                          "hyperplane section is not Du Val");
    return out;
  }
  if (!cube_up_to_scalar(C)) {
    out.cls = cdv_class(CdvSub::cD);
    return out;
  }

  // E-branch: Milnor number of a generic hyperplane section
  std::vector<long long> mus;
  if (q <= 3) {
    MilnorResult mr = milnor_number(f, Dw, opt.budget);
    if (mr.status != GBStatus::Ok) {
      out.status = mr.status;
      return out;
    }
    if (mr.finite) mus.push_back(mr.mu);
  } else {
    Rng rng(opt.seed);
    auto run_sample = [&](int trial) -> bool {  // false on budget failure
      int d = trial % q;
      Polynomial repl(q);
      for (int v = 0; v < q; ++v)
        if (v != d)
          repl = repl + Polynomial::term(
                            mono_1(q, v),
                            Rational(static_cast<long>(rng.small_int(-3, 3))));
      std::vector<int> image(q);
      for (int v = 0; v < q; ++v) image[v] = v < d ? v : (v == d ? -1 : v - 1);
      Polynomial section = f.substitute(d, repl, Dw).map_vars(q - 1, image);
      MilnorResult mr = milnor_number(section, Dw, opt.budget);
      if (mr.status != GBStatus::Ok) {
        out.status = mr.status;
        return false;
      }
      if (mr.finite) mus.push_back(mr.mu);
      return true;
    };
    int trial = 0;
    for (; trial < 3; ++trial)
      if (!run_sample(trial)) return out;
    bool agree = mus.size() == 3 &&
                 mus[0] == mus[1] && mus[1] == mus[2];
    if (!agree)
      for (; trial < 7; ++trial)
        if (!run_sample(trial)) return out;
  }
  if (mus.empty()) {
    out.cls = nonterminal("no sampled hyperplane section has a finite Milnor number");
    return out;
  }
  long long mu = *std::min_element(mus.begin(), mus.end());
  if (mu == 6)
    out.cls = cdv_class(CdvSub::cE6);
  else if (mu == 7)
    out.cls = cdv_class(CdvSub::cE7);
  else if (mu == 8)
    out.cls = cdv_class(CdvSub::cE8);
  else
    out.cls = nonterminal("generic-section Milnor number " + std::to_string(mu) +
                          " is not one of 6, 7, 8");
  return out;
}

namespace {

// the H1/H2 hyperquotient rows for an isolated 4-variable germ over 1/m'(vm; e)
SingularityClass match_hyperquotient_rows(const Polynomial& f, long long mp,
                                          std::vector<long long> vm, long long e) {
  const int n = 4;
  // (Q) row: weights (a, -a, b, 0; 0) with an honest w_i w_j in the 2-jet
  if (mp >= 3 && e == 0) {
    for (int l = 0; l < n; ++l) {
      if (vm[l] != 0) continue;
      for (int i = 0; i < n; ++i) {
        if (i == l) continue;
        for (int j = i + 1; j < n; ++j) {
          if (j == l) continue;
          int k = 0 + 1 + 2 + 3 - l - i - j;
          if (mod_pos(vm[i] + vm[j], mp) != 0) continue;
          if (std::gcd(mp, vm[i]) != 1 || std::gcd(mp, vm[j]) != 1 ||
              std::gcd(mp, vm[k]) != 1)
            continue;
          if (f.coefficient(mono_2(n, i, j)) != 0) return ca_over_m(mp);
        }
      }
    }
  }
  if (mp == 2) {
    std::vector<long long> sorted = vm;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != std::vector<long long>{0, 1, 1, 1} || e != 0)
      return nonterminal("index-2 germ does not match the 1/2(1,1,1,0;0) row");
    int l = -1;
    std::vector<int> odd;
    for (int i = 0; i < n; ++i) {
      if (vm[i] == 0)
        l = i;
      else
        odd.push_back(i);
    }
    auto M = quadratic_matrix(f);
    std::vector<std::vector<Rational>> Modd(3, std::vector<Rational>(3));
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) Modd[a][b] = M[odd[a]][odd[b]];
    int qo = matrix_rank(Modd);
    bool cz = f.coefficient(mono_pow(n, l, 2)) != 0;
    if (qo >= 2) return ca_over_m(2);
    if (qo == 1 && cz) return simple_class(SingKind::CAx2);
    if (qo + (cz ? 1 : 0) == 1) return simple_class(SingKind::IndeterminateH1m2q1);
    return nonterminal("index-2 germ has vanishing 2-jet (rows need q >= 1)");
  }
  if (mp == 3 && e == 0) {
    for (long long u = 1; u <= 2; ++u) {
      std::vector<long long> wu(n);
      for (int i = 0; i < n; ++i) wu[i] = mod_pos(vm[i] * u, 3);
      std::vector<long long> sorted = wu;
      std::sort(sorted.begin(), sorted.end());
      if (sorted != std::vector<long long>{0, 1, 1, 2}) continue;
      int i1 = -1, l = -1;
      std::vector<int> ones;
      for (int i = 0; i < n; ++i) {
        if (wu[i] == 2) i1 = i;
        else if (wu[i] == 0) l = i;
        else ones.push_back(i);
      }
      // strict normal form w4^2 + w1^3 + h
      Polynomial j2 = f.jet(2);
      Rational c = f.coefficient(mono_pow(n, l, 2));
      if (c == 0 || j2 != Polynomial::term(mono_pow(n, l, 2), c)) continue;
      Polynomial g = f - Polynomial::term(mono_pow(n, l, 2), c);
      if (g.uses_var(l)) continue;
      Rational a3 = g.coefficient(mono_pow(n, i1, 3));
      if (a3 == 0) continue;
      Polynomial h = g - Polynomial::term(mono_pow(n, i1, 3), a3);
      for (int flip = 0; flip < 2; ++flip) {
        int p2 = ones[flip], p3 = ones[1 - flip];
        auto in_extras = [&](const Monomial& mo) {
          int al = mo.exp(i1), be = mo.exp(p3);
          if (al + be != mo.total_degree()) return false;
          return (al >= 1 && al + be >= 5) || (al + be >= 6);
        };
        Monomial p2sqp3 = mono_pow(n, p2, 2);
        p2sqp3.set_exp(p3, 1);
        bool has_p2cube = false, has_p2sqp3 = false, has_p3cube = false;
        bool extras_ok = true;
        size_t extra_count = 0;
        for (const Term& t : h.terms()) {
          if (t.mono == mono_pow(n, p2, 3)) { has_p2cube = true; continue; }
          if (t.mono == mono_pow(n, p3, 3)) { has_p3cube = true; continue; }
          if (t.mono == p2sqp3) { has_p2sqp3 = true; continue; }
          ++extra_count;
          if (!in_extras(t.mono)) extras_ok = false;
        }
        // (a) exactly w2^3 + w3^3
        if (has_p2cube && has_p3cube && !has_p2sqp3 && extra_count == 0)
          return simple_class(SingKind::CD3);
        // (b) w2^2 w3 plus extras; (c) w2^3 plus extras
        if (extras_ok && !has_p3cube) {
          if (has_p2sqp3 && !has_p2cube) return simple_class(SingKind::CD3);
          if (has_p2cube && !has_p2sqp3) return simple_class(SingKind::CD3);
        }
      }
    }
    return nonterminal("index-3 germ: cD/3 normalization incomplete");
  }
  if (mp == 4 && e == 2) {
    for (long long u = 1; u <= 3; u += 2) {
      std::vector<long long> wu(n);
      for (int i = 0; i < n; ++i) wu[i] = mod_pos(vm[i] * u, 4);
      std::vector<long long> sorted = wu;
      std::sort(sorted.begin(), sorted.end());
      if (sorted != std::vector<long long>{1, 1, 2, 3}) continue;
      int w1 = -1, p3 = -1, p4 = -1;
      for (int i = 0; i < n; ++i) {
        if (wu[i] == 3) w1 = i;
        else if (wu[i] == 1) (p3 < 0 ? p3 : p4) = i;
      }
      bool head = f.coefficient(mono_pow(n, w1, 2)) != 0;
      bool tail = f.coefficient(mono_pow(n, p3, 2)) != 0 ||
                  f.coefficient(mono_pow(n, p4, 2)) != 0 ||
                  f.coefficient(mono_2(n, p3, p4)) != 0;
      if (head && tail) return simple_class(SingKind::CAx4);
    }
    return nonterminal("index-4 germ does not match the 1/4(3,2,1,1;2) row");
  }
  return nonterminal("no terminal classification row matches index " +
                     std::to_string(mp));
}

}  // namespace

ClassifyResult classify(const ChartGerm& g, const ClassifyOptions& opt) {
  ClassifyResult out;
  int maxdeg = 0;
  for (const Polynomial& f : g.eqs) maxdeg = std::max(maxdeg, f.total_degree());
  int Dw = std::max(opt.truncation, maxdeg + 2);

  ElimOutcome lo = eliminate_linear(g, Dw);
  ElimOutcome hi = eliminate_linear(g, Dw + 2);
  bool stable = lo.eqs.size() == hi.eqs.size() && lo.names == hi.names;
  for (size_t k = 0; stable && k < lo.eqs.size(); ++k)
    if (hi.eqs[k].truncate(Dw) != lo.eqs[k]) stable = false;
  if (!stable) {
    out.stable = false;
    out.cls = nonterminal("elimination is unstable between truncation depths");
    return out;
  }

  for (const Polynomial& f : hi.eqs)
    if (f.is_zero()) {
      out.cls = nonterminal("an equation reduced to zero; the germ is not a "
                            "complete intersection of the expected codimension");
      return out;
    }
  if (hi.eqs.size() >= 2) {
    out.cls = nonterminal("two or more equations of order >= 2 remain; the germ "
                          "does not reduce to a hypersurface");
    return out;
  }

  long long m = std::max(hi.index, 1LL);
  long long k = m;
  for (long long w : hi.weights) k = std::gcd(k, mod_pos(w, m));
  for (long long e : hi.eweights) k = std::gcd(k, mod_pos(e, m));
  long long mp = m / k;  // effective quotient: weights (w mod m)/k over 1/mp

  if (hi.eqs.empty()) {
    if (mp <= 1) {
      out.cls = smooth_class();
      return out;
    }
    if (hi.weights.size() != 3) {
      out.cls = nonterminal("quotient germ does not have 3 coordinates");
      return out;
    }
    std::array<long long, 3> v;
    for (int i = 0; i < 3; ++i) v[i] = mod_pos(hi.weights[i], m) / k;
    bool pair = false;
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j)
        if (mod_pos(v[i] + v[j], mp) == 0) pair = true;
    bool coprime = std::gcd(mp, v[0]) == 1 && std::gcd(mp, v[1]) == 1 &&
                   std::gcd(mp, v[2]) == 1;
    if (pair && coprime)
      out.cls = quotient_class(mp, v);
    else
      out.cls = nonterminal("cyclic quotient fails the terminal 1/m(a,-a,b) "
                            "criterion with gcd(m,abc)=1");
    return out;
  }

  const Polynomial& f = hi.eqs[0];
  if (hi.weights.size() != 4) {
    out.cls = nonterminal("hypersurface germ does not have 4 coordinates");
    return out;
  }

  if (mp <= 1) {
    ClassifyOptions sub = opt;
    sub.truncation = Dw;
    ClassifyResult r = cdv_classify(f, sub);
    out.status = r.status;
    out.stable = r.stable;
    out.cls = r.cls;
    return out;
  }

  {  // isolated singular point of the cover hypersurface; same origin-local
     // fallback as in cdv_classify
    Ideal J;
    J.nvars = 4;
    J.gens.push_back(f);
    for (int i = 0; i < 4; ++i) {
      Polynomial d = f.derivative(i);
      if (!d.is_zero()) J.gens.push_back(std::move(d));
    }
    DimensionResult dr = krull_dimension(J, opt.budget);
    if (dr.status != GBStatus::Ok) {
      out.status = dr.status;
      return out;
    }
    if (!dr.unit_ideal && dr.dim >= 1) {
      long long cnt[2] = {0, 0};
      for (int round = 0; round < 2; ++round) {
        ColengthResult cr = local_colength(J, Dw + 2 * round, opt.budget);
        if (cr.status != GBStatus::Ok) {
          out.status = cr.status;
          return out;
        }
        cnt[round] = cr.colength;
      }
      if (cnt[0] != cnt[1]) {
        out.cls = simple_class(SingKind::NonIsolated);
        return out;
      }
    }
  }

  std::vector<long long> vm(4);
  for (int i = 0; i < 4; ++i) vm[i] = mod_pos(hi.weights[i], m) / k;
  long long e = mod_pos(hi.eweights[0], m) / k;
  out.cls = match_hyperquotient_rows(f, mp, vm, e);
  return out;
}

}  // namespace flipcert
