#include "flipcert/action.hpp"

#include "flipcert/expr.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

namespace flipcert {
namespace {

int sgn(long long v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

std::vector<std::string> block_names(int r, int s, int t) {
  std::vector<std::string> names;
  for (int i = 1; i <= r; ++i) names.push_back("x" + std::to_string(i));
  for (int j = 1; j <= s; ++j) names.push_back("y" + std::to_string(j));
  if (t == 1) {
    names.push_back("z");
  } else {
    for (int k = 1; k <= t; ++k) names.push_back("z" + std::to_string(k));
  }
  return names;
}

}  // namespace

long long CStarAction::weight(int i) const {
  if (i < r()) return a[i];
  if (i < r() + s()) return -b[i - r()];
  return 0;
}

std::vector<long long> CStarAction::weights() const {
  std::vector<long long> w(n);
  for (int i = 0; i < n; ++i) w[i] = weight(i);
  return w;
}

CStarAction make_action(const std::vector<long long>& signed_weights,
                        const std::vector<long long>& equation_weights) {
  const int n = static_cast<int>(signed_weights.size());
  if (n < 1 || n > kMaxVars)
    throw input_error("action.weights",
                      "expected between 1 and " + std::to_string(kMaxVars) +
                          " coordinate weights, got " + std::to_string(n));
  CStarAction act;
  act.n = n;
  act.e = equation_weights;
  std::vector<int> pos, neg, zer;
  for (int i = 0; i < n; ++i) {
    int s = sgn(signed_weights[i]);
    (s > 0 ? pos : s < 0 ? neg : zer).push_back(i);
  }
  auto by_magnitude = [&](int i, int j) {
    return std::llabs(signed_weights[i]) > std::llabs(signed_weights[j]);
  };
  std::stable_sort(pos.begin(), pos.end(), by_magnitude);
  std::stable_sort(neg.begin(), neg.end(), by_magnitude);
  for (int i : pos) {
    act.a.push_back(signed_weights[i]);
    act.perm.push_back(i);
  }
  for (int i : neg) {
    act.b.push_back(-signed_weights[i]);
    act.perm.push_back(i);
  }
  for (int i : zer) act.perm.push_back(i);
  act.t = static_cast<int>(zer.size());
  return act;
}

std::vector<std::string> coordinate_names(const CStarAction& act) {
  return block_names(act.r(), act.s(), act.t);
}

std::vector<std::string> original_names(const std::vector<long long>& w) {
  int r = 0, s = 0, t = 0;
  for (long long v : w) (v > 0 ? r : v < 0 ? s : t)++;
  std::vector<std::string> all = block_names(r, s, t);
  // hand the names back out in the listed order
  std::vector<std::string> names(w.size());
  int ir = 0, is = 0, iz = 0;
  for (size_t i = 0; i < w.size(); ++i) {
    if (w[i] > 0)
      names[i] = all[ir++];
    else if (w[i] < 0)
      names[i] = all[r + is++];
    else
      names[i] = all[r + s + iz++];
  }
  return names;
}

long long tau(const CStarAction& act) {
  auto sum = [](const std::vector<long long>& v) {
    return std::accumulate(v.begin(), v.end(), 0LL);
  };
  return sum(act.a) - sum(act.b) - sum(act.e);
}

SignPattern sign_pattern(const CStarAction& act) {
  SignPattern p;
  p.r = act.r();
  p.s = act.s();
  p.t = act.t;
  for (long long ek : act.e) p.esign.push_back(sgn(ek));
  return p;
}

std::string pattern_string(const SignPattern& p) {
  std::ostringstream os;
  os << "(";
  for (int i = 0; i < p.r; ++i) os << "+,";
  for (int i = 0; i < p.s; ++i) os << "-,";
  for (int i = 0; i < p.t; ++i) os << "0,";
  std::string head = os.str();
  head.back() = ';';
  for (int s : p.esign) head += (s > 0 ? "+," : s < 0 ? "-," : "0,");
  head.back() = ')';
  return head;
}

PatternCheck check_pattern(const CStarAction& act) {
  SignPattern p = sign_pattern(act);
  std::vector<int> es = p.esign;
  std::sort(es.begin(), es.end(), std::greater<int>());
  struct Form {
    int r, s, t;
    std::vector<int> es;  // descending
  };
  static const std::vector<Form> forms5 = {
      {3, 2, 0, {1}}, {2, 2, 1, {0}}, {2, 3, 0, {-1}}};
  static const std::vector<Form> forms6 = {
      {4, 2, 0, {1, 1}},  {2, 4, 0, {-1, -1}}, {3, 2, 1, {1, 0}},
      {2, 3, 1, {0, -1}}, {3, 3, 0, {1, -1}},  {2, 2, 2, {0, 0}},
      {2, 2, 2, {1, -1}}};
  auto try_list = [&](const std::vector<Form>& forms) -> PatternCheck {
    for (const Form& f : forms) {
      if (f.r == p.r && f.s == p.s && f.t == p.t && f.es == es) {
        SignPattern canon{f.r, f.s, f.t, f.es};
        return {true, pattern_string(canon)};
      }
    }
    return {false, pattern_string(p)};
  };
  if (act.n == 5) return try_list(forms5);
  if (act.n == 6) return try_list(forms6);
  if (act.n == 7 || act.n == 8) {
    long long ep = std::count_if(es.begin(), es.end(), [](int v) { return v > 0; });
    long long en = std::count_if(es.begin(), es.end(), [](int v) { return v < 0; });
    bool ok = p.r >= 2 && p.s >= 2 && ep >= p.r - 2 && en >= p.s - 2;
    return {ok, pattern_string(p)};
  }
  return {false, pattern_string(p)};
}

GitDatum make_datum(const CStarAction& act, std::vector<Polynomial> polys,
                    std::string name) {
  const int n = act.n;
  // reconstruct the caller's weight order for validation messages
  std::vector<long long> worig(n);
  std::vector<int> image(n);  // original index -> normalized index
  for (int i = 0; i < n; ++i) {
    worig[act.perm[i]] = act.weight(i);
    image[act.perm[i]] = i;
  }
  std::vector<std::string> onames = original_names(worig);
  if (polys.size() != act.e.size())
    throw input_error("f", "expected " + std::to_string(act.e.size()) +
                               " polynomials, got " + std::to_string(polys.size()));
  for (size_t k = 0; k < polys.size(); ++k) {
    std::string field = "f[" + std::to_string(k) + "]";
    const Polynomial& fk = polys[k];
    if (fk.nvars() != n)
      throw input_error(field, "has " + std::to_string(fk.nvars()) +
                                   " variables, ambient dimension is " +
                                   std::to_string(n));
    if (fk.is_zero()) throw input_error(field, "zero polynomial");
    if (fk.constant_term() != 0)
      throw input_error(field, "has a constant term; the origin must lie on the variety");
    Homogeneity h = quasi_homogeneous_weight(fk, worig);
    if (!h.homogeneous)
      throw input_error(
          field, "not quasi-homogeneous: monomials " + h.witness_a.str(onames) +
                     " (weight " + std::to_string(h.witness_a.weight(worig)) +
                     ") and " + h.witness_b.str(onames) + " (weight " +
                     std::to_string(h.witness_b.weight(worig)) + ") disagree");
    if (h.weight != act.e[k])
      throw input_error(field, "has weight " + std::to_string(h.weight) +
                                   ", declared equation weight is " +
                                   std::to_string(act.e[k]));
  }
  GitDatum d;
  d.act = act;
  d.name = std::move(name);
  for (auto& fk : polys) d.f.push_back(fk.map_vars(n, image));
  return d;
}

GitDatum parse_datum(const std::vector<long long>& signed_weights,
                     const std::vector<long long>& equation_weights,
                     const std::vector<std::string>& poly_exprs, std::string name) {
  CStarAction act = make_action(signed_weights, equation_weights);
  std::vector<std::string> names = original_names(signed_weights);
  std::vector<Polynomial> polys;
  for (size_t k = 0; k < poly_exprs.size(); ++k) {
    try {
      polys.push_back(parse_polynomial(poly_exprs[k], names));
    } catch (const std::invalid_argument& ex) {
      throw input_error("f[" + std::to_string(k) + "]", ex.what());
    }
  }
  return make_datum(act, std::move(polys), std::move(name));
}

bool is_reduced(const GitDatum& d) {
  for (const Polynomial& fk : d.f)
    for (const Term& t : fk.terms())
      if (t.mono.total_degree() == 1) return false;
  return true;
}

std::vector<FixedPoint> fixed_points(const CStarAction& act) {
  std::vector<FixedPoint> pts;
  for (int i = 0; i < act.r() + act.s(); ++i)
    pts.push_back({i, i < act.r(), "P" + std::to_string(i + 1)});
  return pts;
}

bool fixed_point_in_side(const GitDatum& d, const FixedPoint& p) {
  for (const Polynomial& fk : d.f)
    for (const Term& t : fk.terms())
      if (t.mono.is_pure_power() && t.mono.sole_var() == p.coord) return false;
  return true;
}

ChartGerm chart_at(const GitDatum& d, const FixedPoint& p) {
  if (!fixed_point_in_side(d, p))
    throw input_error("fixed_point",
                      p.label + " is not on the variety (a defining polynomial "
                                "contains a pure power of its coordinate)");
  ChartGerm g;
  g.index = std::llabs(d.act.weight(p.coord));
  std::vector<std::string> names = coordinate_names(d.act);
  for (int i = 0; i < d.act.n; ++i) {
    if (i == p.coord) continue;
    g.weights.push_back(d.act.weight(i));
    g.names.push_back(names[i]);
  }
  g.eweights = d.act.e;
  for (const Polynomial& fk : d.f) {
    Polynomial eq = fk.dehomogenize(p.coord);
    if (eq.constant_term() != 0)
      throw input_error("fixed_point", p.label + ": chart equation has a constant term");
    g.eqs.push_back(std::move(eq));
  }
  return g;
}

Ideal curve_ideal(const GitDatum& d, bool plus_side) {
  const int n = d.act.n, r = d.act.r(), s = d.act.s();
  int lo = plus_side ? r : 0;
  int hi = plus_side ? r + s : r;
  std::vector<int> kill;
  std::vector<int> image(n, -1);
  for (int i = 0; i < n; ++i) {
    if (i >= lo && i < hi)
      image[i] = i - lo;
    else
      kill.push_back(i);
  }
  Ideal I;
  I.nvars = hi - lo;
  for (const Polynomial& fk : d.f) {
    Polynomial g = fk.restrict_zero(kill).map_vars(hi - lo, image);
    if (!g.is_zero()) I.gens.push_back(std::move(g));
  }
  return I;
}

ConditionC check_condition_C(const GitDatum& d, const GroebnerBudget& budget) {
  ConditionC res;
  for (int side = 0; side < 2; ++side) {
    DimensionResult dr = krull_dimension(curve_ideal(d, side == 1), budget);
    if (dr.status != GBStatus::Ok) {
      res.status = dr.status;
      res.detail = "Groebner budget exceeded while computing the contracted-curve dimension";
      return res;
    }
    (side == 0 ? res.dim_minus : res.dim_plus) = dr.dim;
  }
  if (res.dim_minus != 2 || res.dim_plus != 2) {
    res.reason = "CURVE_DIM";
    res.detail = "contracted-curve cone dimensions (" + std::to_string(res.dim_minus) +
                 "," + std::to_string(res.dim_plus) + "), expected (2,2)";
    return res;
  }
  // weight-zero equations must survive restriction to the z-block
  const int nz = d.act.r() + d.act.s();
  std::vector<int> kill;
  for (int i = 0; i < nz; ++i) kill.push_back(i);
  for (int k = 0; k < d.act.c(); ++k) {
    if (d.act.e[k] != 0) continue;
    if (d.f[k].restrict_zero(kill).is_zero()) {
      res.reason = "COR_CORC";
      res.detail = "f[" + std::to_string(k) +
                   "] has equation weight 0 but vanishes on the z-block";
      return res;
    }
  }
  // When every equation weight is zero, restricting to y = 0 (or x = 0) kills
  // every monomial except the pure z-parts, so the fiber over a common zero of
  // the z-parts contains the whole x-plane (resp. y-plane).  A positive-
  // dimensional common zero locus therefore carries a contracted curve over
  // each of its points, contradicting finiteness.
  bool all_zero = true;
  for (long long ek : d.act.e) all_zero = all_zero && ek == 0;
  if (all_zero && d.act.t >= 2) {
    std::vector<int> image(d.act.n, -1);
    for (int i = nz; i < d.act.n; ++i) image[i] = i - nz;
    Ideal zideal;
    zideal.nvars = d.act.t;
    for (const Polynomial& fk : d.f)
      zideal.gens.push_back(fk.restrict_zero(kill).map_vars(d.act.t, image));
    DimensionResult dz = krull_dimension(zideal, budget);
    if (dz.status != GBStatus::Ok) {
      res.status = dz.status;
      res.detail = "Groebner budget exceeded while computing the z-part zero locus";
      return res;
    }
    if (!dz.unit_ideal && dz.dim >= 1) {
      res.reason = "COR_CORC";
      res.detail = "the z-parts share a positive-dimensional zero locus, so "
                   "infinitely many curves are contracted";
      return res;
    }
  }
  res.pass = true;
  return res;
}

long long curve_components(const GitDatum& d) {
  const CStarAction& act = d.act;
  bool shape = act.n == 6 && act.r() == 3 && act.s() == 2 && act.t == 1 &&
               act.c() == 2;
  int kpos = -1, kzero = -1;
  if (shape) {
    for (int k = 0; k < 2; ++k) {
      if (act.e[k] > 0) kpos = k;
      if (act.e[k] == 0) kzero = k;
    }
  }
  if (!shape || kpos < 0 || kzero < 0)
    throw input_error("action",
                      "curve_components requires the codimension-2 flip shape "
                      "(+,+,+,-,-,0; e>0, 0)");
  std::vector<int> kill = {3, 4, 5};
  if (d.f[kpos].restrict_zero(kill).is_zero())
    throw input_error("f[" + std::to_string(kpos) + "]",
                      "the x-block restriction (h) vanishes");
  long long prod = act.a[1] * act.a[2];
  if (act.e[kpos] % prod != 0)
    throw input_error("action", "a2*a3 = " + std::to_string(prod) +
                                    " does not divide e1 = " +
                                    std::to_string(act.e[kpos]));
  return act.e[kpos] / prod;
}

std::optional<std::vector<MonomialWitness>> forced_monomial_witness(
    const GitDatum& d, bool plus_side) {
  const int n = d.act.n, r = d.act.r(), s = d.act.s();
  int lo = plus_side ? r : 0;
  int hi = plus_side ? r + s : r;
  auto in_block = [&](int v) { return v >= lo && v < hi; };
  // constrained linear factors must be distinct across equations
  auto constrained = [&](int v) {
    long long w = d.act.weight(v);
    return plus_side ? (w >= 0) : (w <= 0);
  };
  struct Cand {
    int omega;
    Monomial mu;
  };
  std::vector<std::vector<Cand>> cands(d.f.size());
  for (size_t k = 0; k < d.f.size(); ++k) {
    std::set<int> seen;
    for (const Term& t : d.f[k].terms()) {
      const Monomial& m = t.mono;
      int block_deg = 0, other_var = -1, other_deg = 0;
      for (int v = 0; v < n; ++v) {
        int e = m.exp(v);
        if (e == 0) continue;
        if (in_block(v)) {
          block_deg += e;
        } else {
          other_var = v;
          other_deg += e;
        }
      }
      if (other_deg == 0 && block_deg >= 2) {
        // pure block monomial of degree >= 2: any of its variables can be omega
        for (int v = lo; v < hi; ++v)
          if (m.exp(v) > 0 && !seen.count(v)) {
            Monomial mu = m;
            mu.set_exp(v, m.exp(v) - 1);
            cands[k].push_back({v, mu});
            seen.insert(v);
          }
      } else if (other_deg == 1 && block_deg >= 1) {
        if (!seen.count(other_var)) {
          Monomial mu = m;
          mu.set_exp(other_var, 0);
          cands[k].push_back({other_var, mu});
          seen.insert(other_var);
        }
      }
    }
    if (cands[k].empty()) return std::nullopt;
  }
  std::vector<MonomialWitness> pick(d.f.size());
  std::set<int> used;
  std::function<bool(size_t)> assign = [&](size_t k) -> bool {
    if (k == cands.size()) return true;
    for (const Cand& c : cands[k]) {
      bool con = constrained(c.omega);
      if (con && used.count(c.omega)) continue;
      pick[k] = {static_cast<int>(k), c.omega, c.mu};
      if (con) used.insert(c.omega);
      if (assign(k + 1)) return true;
      if (con) used.erase(c.omega);
    }
    return false;
  };
  if (!assign(0)) return std::nullopt;
  return pick;
}

}  // namespace flipcert
