#include "flipcert/verifier.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <set>
#include <stdexcept>

namespace flipcert {

namespace {

std::vector<int> block_indices(const CStarAction& a, bool x, bool y, bool z) {
  std::vector<int> v;
  const int r = a.r(), s = a.s();
  for (int i = 0; i < a.n; ++i) {
    bool in_x = i < r, in_y = !in_x && i < r + s, in_z = i >= r + s;
    if ((in_x && x) || (in_y && y) || (in_z && z)) v.push_back(i);
  }
  return v;
}

// pure z-block part, compressed to t variables
Polynomial z_part(const Polynomial& f, const CStarAction& a) {
  Polynomial g = f.restrict_zero(block_indices(a, true, true, false));
  std::vector<int> image(a.n, -1);
  for (int i = 0; i < a.t; ++i) image[a.r() + a.s() + i] = i;
  return g.map_vars(a.t, image);
}

int min_total_degree(const Polynomial& f) {
  int d = -1;
  for (const Term& t : f.terms()) {
    int td = t.mono.total_degree();
    if (d < 0 || td < d) d = td;
  }
  return d;
}

// bare x_i y_j monomials (total degree 2, one factor from each block),
// as block-local index pairs
std::set<std::pair<int, int>> bare_pair_set(const Polynomial& f,
                                            const CStarAction& a) {
  std::set<std::pair<int, int>> out;
  const int r = a.r(), s = a.s();
  for (const Term& t : f.terms()) {
    if (t.mono.total_degree() != 2) continue;
    int xi = -1, yj = -1;
    bool clean = true;
    for (int v = 0; v < a.n && clean; ++v) {
      int e = t.mono.exp(v);
      if (e == 0) continue;
      if (e == 1 && v < r)
        xi = v;
      else if (e == 1 && v < r + s)
        yj = v - r;
      else
        clean = false;
    }
    if (clean && xi >= 0 && yj >= 0) out.insert({xi, yj});
  }
  return out;
}

bool has_bare_pair(const Polynomial& f, const CStarAction& a, int xi, int yj) {
  return bare_pair_set(f, a).count({xi, yj}) > 0;
}

bool has_pure_z_power(const Polynomial& f, const CStarAction& a, int min_deg) {
  const int z0 = a.r() + a.s();
  for (const Term& t : f.terms())
    if (t.mono.is_pure_power() && t.mono.sole_var() >= z0 &&
        t.mono.total_degree() >= min_deg)
      return true;
  return false;
}

// a monomial x_i * y_yj^k with i drawn from `xs` (block-local), k >= 1 and no
// other variables
bool has_xy_power_extra(const Polynomial& f, const CStarAction& a,
                        const std::vector<int>& xs, int yj) {
  const int r = a.r();
  for (const Term& t : f.terms()) {
    int xi = -1, k = 0;
    bool clean = true;
    for (int v = 0; v < a.n && clean; ++v) {
      int e = t.mono.exp(v);
      if (e == 0) continue;
      if (v < r && e == 1 && xi < 0)
        xi = v;
      else if (v == r + yj)
        k = e;
      else
        clean = false;
    }
    if (clean && k >= 1 && xi >= 0 &&
        std::find(xs.begin(), xs.end(), xi) != xs.end())
      return true;
  }
  return false;
}

bool finite_plane_ideal(std::vector<Polynomial> gens, int nvars) {
  DimensionResult dr = krull_dimension({nvars, std::move(gens)}, {});
  if (dr.status != GBStatus::Ok) return false;
  return dr.unit_ideal || dr.dim <= 0;
}

// --- codimension-2 flop rows -------------------------------------------------
// Row membership must not depend on the chosen ideal basis or on weight-
// preserving linear coordinate changes, so it is decided through invariants of
// the pencil of bilinear forms spanned by the degree-2 xy parts.  For a single
// form the invariant is its rank.  For a pencil (M1, M2) the determinant form
// det(u*M1 + v*M2) = A u^2 + B uv + C v^2 either has two distinct roots (two
// independent rank-one members: the diagonalizable rows, told apart by whether
// both x-side fixed points carry two independent linear terms), a repeated
// root whose member has rank one (the x2*y1 row), or degenerates (no row).

using XYMat = std::array<std::array<Rational, 2>, 2>;

XYMat xy_matrix(const Polynomial& f, const CStarAction& a) {
  XYMat M{};
  const int r = a.r();
  for (const Term& t : f.terms()) {
    if (t.mono.total_degree() != 2) continue;
    int xi = -1, yj = -1;
    bool clean = true;
    for (int v = 0; v < a.n && clean; ++v) {
      int e = t.mono.exp(v);
      if (e == 0) continue;
      if (e == 1 && v < r)
        xi = v;
      else if (e == 1 && v < r + a.s())
        yj = v - r;
      else
        clean = false;
    }
    if (clean && xi >= 0 && yj >= 0) M[xi][yj] = t.coef;
  }
  return M;
}

std::vector<std::string> match_flop5(const GitDatum& d) {
  const CStarAction& a = d.act;
  Polynomial zp = z_part(d.f[0], a);
  if (zp.is_zero() || min_total_degree(zp) < 2) return {};
  XYMat M = xy_matrix(d.f[0], a);
  Rational det = M[0][0] * M[1][1] - M[0][1] * M[1][0];
  if (det != 0) return {"flop5.smooth"};
  if (M[0][0] != 0 || M[0][1] != 0 || M[1][0] != 0 || M[1][1] != 0)
    return {"flop5.cA"};
  return {};
}

std::vector<std::string> match_flop6(const GitDatum& d) {
  const CStarAction& a = d.act;
  Polynomial g1 = z_part(d.f[0], a), g2 = z_part(d.f[1], a);
  if (g1.is_zero() || g2.is_zero()) return {};
  if (min_total_degree(g1) < 2 || min_total_degree(g2) < 2) return {};
  // the z-plane locus cut out by the two z-parts must be finite: over each of
  // its points the fiber contains a whole contracted curve
  if (!finite_plane_ideal({g1, g2}, a.t)) return {};
  XYMat M1 = xy_matrix(d.f[0], a), M2 = xy_matrix(d.f[1], a);
  Rational A = M1[0][0] * M1[1][1] - M1[0][1] * M1[1][0];
  Rational C = M2[0][0] * M2[1][1] - M2[0][1] * M2[1][0];
  Rational B = M1[0][0] * M2[1][1] + M2[0][0] * M1[1][1] -
               M1[0][1] * M2[1][0] - M2[0][1] * M1[1][0];
  if (A == 0 && B == 0 && C == 0) return {};  // every member of the pencil degenerate
  Rational disc = B * B - A * C * 4;
  if (disc != 0) {
    bool s1 = (M1[0][0] * M2[0][1] - M1[0][1] * M2[0][0]) != 0;
    bool s2 = (M1[1][0] * M2[1][1] - M1[1][1] * M2[1][0]) != 0;
    return {(s1 && s2) ? "flop6.1" : "flop6.3"};
  }
  // repeated root: the corresponding member must have rank exactly one
  Rational al = A != 0 ? -B : Rational(1);
  Rational be = A != 0 ? A * 2 : Rational(0);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      if (al * M1[i][j] + be * M2[i][j] != 0) return {"flop6.2"};
  return {};
}

std::vector<std::string> match_flip6(const GitDatum& d) {
  const CStarAction& a = d.act;
  int k1 = -1, k0 = -1;
  for (int k = 0; k < 2; ++k) {
    if (a.e[k] > 0) k1 = k;
    if (a.e[k] == 0) k0 = k;
  }
  if (k1 < 0 || k0 < 0) return {};
  const Polynomial& f1 = d.f[k1];
  const Polynomial& f2 = d.f[k0];
  const long long a1 = a.a[0], a2 = a.a[1], a3 = a.a[2];
  std::vector<std::string> found;
  for (int yA = 0; yA < 2; ++yA) {
    const int yB = 1 - yA;
    const long long bA = a.b[yA], bB = a.b[yB];
    if (!has_bare_pair(f1, a, 0, yA)) continue;  // x1 yA
    if (!has_bare_pair(f2, a, 1, yB)) continue;  // x2 yB
    if (bB != a2) continue;
    if (a.e[k1] != a1 - bA) continue;
    if (!(a1 > a2 && a1 > a3)) continue;
    if (a.e[k1] % (a2 * a3) != 0) continue;
    if (std::gcd(a1, a2) != 1 || std::gcd(a1, a3) != 1 ||
        std::gcd(a2, a3) != 1 || std::gcd(a2, bA) != 1 ||
        std::gcd(a3, bA) != 1)
      continue;
    if (!has_pure_z_power(f2, a, 2)) continue;
    Polynomial h = f1.restrict_zero(block_indices(a, false, true, true));
    if (h.is_zero() || h.uses_var(0)) continue;
    std::vector<int> image(a.n, -1);
    image[1] = 0;
    image[2] = 1;
    Polynomial h2 = h.map_vars(2, image);
    // the contracted-curve cone V(h) must be reduced: h squarefree
    if (!finite_plane_ideal({h2, h2.derivative(0), h2.derivative(1)}, 2))
      continue;
    bool e1x = has_xy_power_extra(f1, a, {0, 2}, yB);
    bool e2x = has_xy_power_extra(f2, a, {1, 2}, yA);
    std::string id;
    if (e1x && e2x) {
      if (a2 == 1 && bA == 1) id = "flip6.1";
    } else if (e1x) {
      if (a2 == 1) id = "flip6.2";
    } else if (e2x) {
      if (bA == 1) id = "flip6.3";
    } else {
      id = "flip6.4";
    }
    if (!id.empty()) found.push_back(id);
  }
  return found;
}

// --- chart singular locus ----------------------------------------------------

// Exact graph projections: a coordinate appearing in exactly one, linear, term
// of an equation is solved for and substituted away. This is an isomorphism of
// the chart cover, so singular-locus dimensions are preserved.
struct ReducedChart {
  int nvars = 0;
  std::vector<Polynomial> eqs;
};

ReducedChart exact_reduce(std::vector<Polynomial> eqs, int nvars) {
  for (bool changed = true; changed;) {
    changed = false;
    for (size_t k = 0; k < eqs.size() && !changed; ++k) {
      const auto& terms = eqs[k].terms();
      for (size_t ti = 0; ti < terms.size(); ++ti) {
        if (terms[ti].mono.total_degree() != 1) continue;
        const int v = terms[ti].mono.sole_var();
        bool solo = true;
        for (size_t tj = 0; tj < terms.size() && solo; ++tj)
          if (tj != ti && terms[tj].mono.exp(v) > 0) solo = false;
        if (!solo) continue;
        Polynomial rest = eqs[k] - Polynomial::term(terms[ti].mono, terms[ti].coef);
        Polynomial repl = rest.scale(Rational(-1) / terms[ti].coef);
        std::vector<Polynomial> next;
        for (size_t l = 0; l < eqs.size(); ++l) {
          if (l == k) continue;
          Polynomial g = eqs[l].substitute(v, repl);
          if (!g.is_zero()) next.push_back(std::move(g));
        }
        std::vector<int> image(nvars);
        for (int i = 0, j = 0; i < nvars; ++i) image[i] = (i == v) ? -1 : j++;
        for (Polynomial& g : next) g = g.map_vars(nvars - 1, image);
        eqs = std::move(next);
        --nvars;
        changed = true;
        break;
      }
    }
  }
  return {nvars, std::move(eqs)};
}

Polynomial poly_det(const std::vector<std::vector<Polynomial>>& m,
                    const std::vector<int>& rows, const std::vector<int>& cols) {
  if (rows.size() == 1) return m[rows[0]][cols[0]];
  const int nv = m[0][0].nvars();
  Polynomial acc = Polynomial::zero(nv);
  std::vector<int> sub_rows(rows.begin() + 1, rows.end());
  for (size_t j = 0; j < cols.size(); ++j) {
    const Polynomial& head = m[rows[0]][cols[j]];
    if (head.is_zero()) continue;
    std::vector<int> sub_cols;
    for (size_t l = 0; l < cols.size(); ++l)
      if (l != j) sub_cols.push_back(cols[l]);
    Polynomial minor = poly_det(m, sub_rows, sub_cols);
    if (minor.is_zero()) continue;
    Polynomial piece = head * minor;
    acc = (j % 2 == 0) ? acc + piece : acc - piece;
  }
  return acc;
}

// singular-locus ideal of one chart cover: equations plus the maximal minors
// of their Jacobian, after exact linear reduction
struct LocusIdeal {
  bool trivially_smooth = false;
  Ideal ideal;
};

LocusIdeal chart_locus_ideal(const GitDatum& d, const FixedPoint& p) {
  std::vector<Polynomial> eqs;
  for (const Polynomial& fk : d.f) eqs.push_back(fk.dehomogenize(p.coord));
  ReducedChart rc = exact_reduce(std::move(eqs), d.act.n - 1);
  LocusIdeal out;
  if (rc.eqs.empty()) {
    out.trivially_smooth = true;
    return out;
  }
  const int c = static_cast<int>(rc.eqs.size());
  const int nv = rc.nvars;
  std::vector<std::vector<Polynomial>> jac(c);
  for (int k = 0; k < c; ++k)
    for (int v = 0; v < nv; ++v) jac[k].push_back(rc.eqs[k].derivative(v));
  out.ideal.nvars = nv;
  out.ideal.gens = rc.eqs;
  std::vector<int> rows(c);
  std::iota(rows.begin(), rows.end(), 0);
  std::vector<int> cols(c, 0);
  // iterate over all c-subsets of columns in lexicographic order
  std::iota(cols.begin(), cols.end(), 0);
  if (c > nv) return out;  // no minors; degenerate system
  while (true) {
    Polynomial det = poly_det(jac, rows, cols);
    if (!det.is_zero()) out.ideal.gens.push_back(std::move(det));
    int i = c - 1;
    while (i >= 0 && cols[i] == nv - c + i) --i;
    if (i < 0) break;
    ++cols[i];
    for (int j = i + 1; j < c; ++j) cols[j] = cols[j - 1] + 1;
  }
  return out;
}

bool flip_component_shape(const CStarAction& a) {
  if (a.n != 6 || a.r() != 3 || a.s() != 2 || a.t != 1 || a.c() != 2)
    return false;
  bool pos = false, zero = false;
  for (long long e : a.e) {
    if (e > 0) pos = true;
    if (e == 0) zero = true;
  }
  return pos && zero;
}

}  // namespace

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Flip: return "Flip";
    case Verdict::Flop: return "Flop";
    case Verdict::Neither: return "Neither";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

const std::vector<TableRow>& table_rows() {
  static const std::vector<TableRow> rows = {
      {"flop5.smooth", "flop5",
       "(1,1,-1,-1,0;0); invertible xy coefficient matrix (x1y1 + x2y2 after "
       "a linear change); nonzero z-part of order >= 2; all four fixed points "
       "smooth"},
      {"flop5.cA", "flop5",
       "(1,1,-1,-1,0;0); rank-one xy coefficient matrix (a single pair after "
       "a linear change); nonzero z-part of order >= 2; cA points on both "
       "sides"},
      {"flop6.1", "flop6",
       "(1,1,-1,-1,0,0;0,0); xy pencil with distinct degenerate members and "
       "independent linear terms at both x-side fixed points (x1y1+x2y2 / "
       "x1y2+x2y1 after a linear change); z-parts nonzero, finite common "
       "locus; all four fixed points smooth"},
      {"flop6.2", "flop6",
       "(1,1,-1,-1,0,0;0,0); xy pencil with a repeated degenerate member of "
       "rank one (x1y1+x2y2 / x2y1 after a linear change); z-parts nonzero, "
       "finite common locus"},
      {"flop6.3", "flop6",
       "(1,1,-1,-1,0,0;0,0); xy pencil with distinct degenerate members, "
       "dependent linear terms at an x-side fixed point (x1y1 / x2y2 after a "
       "linear change); z-parts nonzero, finite common locus"},
      {"flip6.1", "flip6",
       "(a1,1,a3,-1,-1,0;a1-1,0); x1y1, x2y2, z^m, squarefree h(x2,x3); both "
       "extras x_i y2^k and x_j y1^l present"},
      {"flip6.2", "flip6",
       "(a1,1,a3,-b1,-1,0;a1-b1,0); x1y1, x2y2, z^m, squarefree h; extra "
       "x_i y2^k only"},
      {"flip6.3", "flip6",
       "(a1,a2,a3,-1,-a2,0;a1-1,0); x1y1, x2y2, z^m, squarefree h; extra "
       "x_j y1^l only"},
      {"flip6.4", "flip6",
       "(a1,a2,a3,-b1,-a2,0;a1-b1,0); x1y1, x2y2, z^m, squarefree h; no xy "
       "extras; a1 > a2, a3; a2a3 | a1-b1; weights pairwise coprime except "
       "(a1,b1)"},
  };
  return rows;
}

std::string match_table(const GitDatum& d) {
  const CStarAction& a = d.act;
  std::vector<std::string> hits;
  if (a.n == 5 && a.r() == 2 && a.s() == 2 && a.t == 1 && a.c() == 1 &&
      a.e[0] == 0)
    hits = match_flop5(d);
  else if (a.n == 6 && a.r() == 2 && a.s() == 2 && a.t == 2 && a.c() == 2 &&
           a.e[0] == 0 && a.e[1] == 0)
    hits = match_flop6(d);
  else if (a.n == 6 && a.r() == 3 && a.s() == 2 && a.t == 1 && a.c() == 2)
    hits = match_flip6(d);
  std::sort(hits.begin(), hits.end());
  hits.erase(std::unique(hits.begin(), hits.end()), hits.end());
  if (hits.size() > 1) {
    std::string msg = "match_table: multiple rows match " + d.name + ":";
    for (const std::string& h : hits) msg += " " + h;
    throw std::logic_error(msg);
  }
  return hits.empty() ? "" : hits[0];
}

VerificationReport verify(const GitDatum& d, const ClassifyOptions& opt) {
  VerificationReport rep;
  rep.name = d.name;
  rep.tau = tau(d.act);
  PatternCheck pc = check_pattern(d.act);
  rep.pattern_ok = pc.pass;
  rep.pattern_form = pc.form;
  if (!pc.pass) {
    rep.reason = "PATTERN";
    rep.detail = "weight pattern " + pc.form + " is not an admissible form";
    return rep;
  }
  rep.reduced = is_reduced(d);
  rep.condition_c = check_condition_C(d, opt.budget);
  if (rep.condition_c.status != GBStatus::Ok) {
    rep.verdict = Verdict::Inconclusive;
    rep.reason = "BUDGET(condition_C)";
    rep.detail = rep.condition_c.detail;
    return rep;
  }
  if (!rep.condition_c.pass) {
    rep.reason = rep.condition_c.reason;
    rep.detail = rep.condition_c.detail;
    return rep;
  }
  if (rep.tau < 0) {
    rep.reason = "TAU_NEGATIVE";
    rep.detail = "tau = " + std::to_string(rep.tau) +
                 " < 0: the plus side cannot have milder singularities";
    return rep;
  }
  for (const FixedPoint& p : fixed_points(d.act)) {
    PointReport pr;
    pr.label = p.label;
    pr.coord = p.coord;
    pr.weight = d.act.weight(p.coord);
    pr.minus_side = p.minus_side;
    pr.member = fixed_point_in_side(d, p);
    if (!pr.member) {
      rep.points.push_back(std::move(pr));
      continue;
    }
    ClassifyResult res = classify(chart_at(d, p), opt);
    if (res.status != GBStatus::Ok) {
      rep.points.push_back(std::move(pr));
      rep.verdict = Verdict::Inconclusive;
      rep.reason = "BUDGET(" + p.label + ")";
      rep.detail = "Groebner budget exhausted while classifying " + p.label;
      return rep;
    }
    if (!res.stable) {
      rep.points.push_back(std::move(pr));
      rep.verdict = Verdict::Inconclusive;
      rep.reason = "UNSTABLE(" + p.label + ")";
      rep.detail = p.label + ": classification differs between truncation depths";
      return rep;
    }
    pr.cls = res.cls;
    rep.points.push_back(pr);
    if (res.cls.kind == SingKind::NonIsolated) {
      rep.reason = "NONISOLATED(" + p.label + ")";
      rep.detail = p.label + ": the singular locus has positive dimension";
      return rep;
    }
    if (res.cls.kind == SingKind::NonTerminal) {
      rep.reason = "NONTERMINAL(" + p.label + ")";
      rep.detail = p.label + ": " + res.cls.reason;
      return rep;
    }
    if (res.cls.kind == SingKind::IndeterminateH1m2q1) {
      rep.verdict = Verdict::Inconclusive;
      rep.reason = "INDETERMINATE(" + p.label + ")";
      rep.detail = p.label +
                   ": index-2 germ with a single quadratic term is not decided "
                   "at this truncation";
      return rep;
    }
  }
  // Off-fixed-point check: the singular locus of every chart cover must have
  // dimension <= 0, so X^-/X^+ are singular at worst at the fixed points.
  for (const FixedPoint& p : fixed_points(d.act)) {
    LocusCheck lc;
    lc.label = p.label;
    LocusIdeal li = chart_locus_ideal(d, p);
    if (li.trivially_smooth) {
      lc.ok = true;
      rep.locus.push_back(std::move(lc));
      continue;
    }
    DimensionResult dr = krull_dimension(li.ideal, opt.budget);
    lc.status = dr.status;
    if (dr.status != GBStatus::Ok) {
      rep.locus.push_back(std::move(lc));
      rep.verdict = Verdict::Inconclusive;
      rep.reason = "BUDGET(locus " + p.label + ")";
      rep.detail =
          "Groebner budget exhausted on the singular locus of the chart at " +
          p.label;
      return rep;
    }
    lc.dim = dr.unit_ideal ? -1 : dr.dim;
    lc.ok = lc.dim <= 0;
    rep.locus.push_back(lc);
    if (!lc.ok) {
      rep.reason = "NONISOLATED(" + p.label + ")";
      rep.detail = "chart at " + p.label + ": singular locus has dimension " +
                   std::to_string(lc.dim);
      return rep;
    }
  }
  rep.verdict = rep.tau == 0 ? Verdict::Flop : Verdict::Flip;
  if (rep.verdict == Verdict::Flop)
    rep.curve_components = 1;
  else if (flip_component_shape(d.act))
    rep.curve_components = curve_components(d);
  rep.table_row = match_table(d);
  return rep;
}

}  // namespace flipcert
