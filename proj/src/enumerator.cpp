#include "flipcert/enumerator.hpp"

#include "json.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdint>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

namespace flipcert {

int codimension(const SearchBounds& b) { return b.n - 4; }

namespace {

using json = nlohmann::json;

constexpr int kMaxEquations = 4;   // n <= 8 and c = n - 4
constexpr int kMaxSubsetSize = 6;  // packing limit for supports
constexpr long long kSubsetListCap = 2'000'000;  // per-equation memory guard
constexpr int kInconclusiveSample = 200;

// ---------------------------------------------------------------------------
// weight-level enumeration

bool same_pattern(const SignPattern& p, const SignPattern& q) {
  return p.r == q.r && p.s == q.s && p.t == q.t && p.esign == q.esign;
}

// The five codimension-2 weight forms the classification rules out.  They are
// searched as controls: their emptiness is confirmed, never assumed.
const std::vector<SignPattern>& excluded_forms6() {
  static const std::vector<SignPattern> forms = {
      {2, 2, 2, {1, -1}}, {2, 3, 1, {0, -1}}, {2, 4, 0, {-1, -1}},
      {3, 3, 0, {1, -1}}, {4, 2, 0, {1, 1}},
  };
  return forms;
}

bool is_excluded_form(const CStarAction& act) {
  if (act.n != 6) return false;
  SignPattern p = sign_pattern(act);
  for (const SignPattern& q : excluded_forms6())
    if (same_pattern(p, q)) return true;
  return false;
}

long long tau_of(const CStarAction& act) {
  long long t = 0;
  for (long long w : act.weights()) t += w;
  return t;
}

// Nonincreasing tuples of the given length with entries in [lo, hi].
void descending_tuples(int len, long long lo, long long hi,
                       std::vector<long long>& cur,
                       const std::function<void()>& emit) {
  if ((int)cur.size() == len) {
    emit();
    return;
  }
  long long top = cur.empty() ? hi : std::min(hi, cur.back());
  for (long long v = top; v >= lo; --v) {
    cur.push_back(v);
    descending_tuples(len, lo, hi, cur, emit);
    cur.pop_back();
  }
}

// ---------------------------------------------------------------------------
// packed index subsets: size in byte 7, ascending indices in bytes 0..5

uint64_t pack_subset(const int* idx, int m) {
  uint64_t v = (uint64_t)m << 56;
  for (int i = 0; i < m; ++i) v |= (uint64_t)(uint8_t)idx[i] << (8 * i);
  return v;
}

int unpack_subset(uint64_t v, int* idx) {
  int m = (int)(v >> 56);
  for (int i = 0; i < m; ++i) idx[i] = (int)((v >> (8 * i)) & 0xFF);
  return m;
}

// ---------------------------------------------------------------------------
// per-equation data: the monomial pool and per-monomial filter facts

struct EqData {
  long long ek = 0;
  std::vector<Monomial> pool;
  std::unordered_map<uint64_t, int> index;  // packed monomial -> pool index
  // witness options (the linear-factor variable of a candidate monomial),
  // split by whether the factor competes for the distinctness resource
  std::vector<uint8_t> cmask_m, cmask_p;  // constrained option variables
  std::vector<char> free_m, free_p;       // has an unconstrained option
  std::vector<char> maxpow;  // pure power of a maximal-weight x or y coordinate
  std::vector<char> purez;   // monomial in the z-block only
};

EqData build_eqdata(const CStarAction& act, long long ek,
                    const std::vector<Monomial>& pool) {
  const int n = act.n, r = act.r(), s = act.s();
  EqData ed;
  ed.ek = ek;
  ed.pool = pool;
  ed.index.reserve(pool.size() * 2);
  for (int i = 0; i < (int)pool.size(); ++i) ed.index.emplace(pool[i].packed(), i);
  ed.cmask_m.assign(pool.size(), 0);
  ed.cmask_p.assign(pool.size(), 0);
  ed.free_m.assign(pool.size(), 0);
  ed.free_p.assign(pool.size(), 0);
  ed.maxpow.assign(pool.size(), 0);
  ed.purez.assign(pool.size(), 0);
  for (int i = 0; i < (int)pool.size(); ++i) {
    const Monomial& m = pool[i];
    if (m.is_pure_power()) {
      int v = m.sole_var();
      if ((v < r && act.a[v] == act.a[0]) ||
          (v >= r && v < r + s && act.b[v - r] == act.b[0]))
        ed.maxpow[i] = 1;
    }
    bool zonly = true;
    for (int v = 0; v < r + s; ++v) zonly = zonly && m.exp(v) == 0;
    ed.purez[i] = zonly && m.total_degree() > 0;
    for (int side = 0; side < 2; ++side) {
      bool plus = side == 1;
      int lo = plus ? r : 0, hi = plus ? r + s : r;
      int block_deg = 0, other_var = -1, other_deg = 0;
      for (int v = 0; v < n; ++v) {
        int e = m.exp(v);
        if (e == 0) continue;
        if (v >= lo && v < hi) block_deg += e;
        else {
          other_var = v;
          other_deg += e;
        }
      }
      auto add = [&](int omega) {
        long long w = act.weight(omega);
        bool con = plus ? (w >= 0) : (w <= 0);
        if (con) {
          if (plus) ed.cmask_p[i] |= (uint8_t)(1u << omega);
          else ed.cmask_m[i] |= (uint8_t)(1u << omega);
        } else {
          if (plus) ed.free_p[i] = 1;
          else ed.free_m[i] = 1;
        }
      };
      if (other_deg == 0 && block_deg >= 2) {
        for (int v = lo; v < hi; ++v)
          if (m.exp(v) > 0) add(v);
      } else if (other_deg == 1 && block_deg >= 1) {
        add(other_var);
      }
    }
  }
  return ed;
}

// Column-ordered subset lists with the per-subset aggregates the candidate
// walk needs.  With necessity filters on, subsets missing a witness-shaped
// monomial for either side (or a z-monomial in a weight-zero equation) are
// dropped here; pure-power offenders are kept and counted at the membership
// stage.
struct SubsetList {
  std::vector<uint64_t> packed;
  std::vector<uint8_t> cm, cp;  // union of constrained witness variables
  std::vector<char> fm, fp;     // any unconstrained witness option
  std::vector<char> bad;        // contains a maximal-weight pure power
  bool overflow = false;
};

SubsetList build_subsets(const EqData& ed, const SearchBounds& bounds) {
  SubsetList out;
  const int P = (int)ed.pool.size();
  const int T = std::min(bounds.max_terms, kMaxSubsetSize);
  int idx[kMaxSubsetSize];
  uint8_t cm[kMaxSubsetSize + 1] = {0}, cp[kMaxSubsetSize + 1] = {0};
  char fm[kMaxSubsetSize + 1] = {0}, fp[kMaxSubsetSize + 1] = {0};
  char bad[kMaxSubsetSize + 1] = {0}, hz[kMaxSubsetSize + 1] = {0};
  std::function<void(int, int)> rec = [&](int start, int depth) {
    if (out.overflow) return;
    for (int i = start; i < P; ++i) {
      idx[depth] = i;
      cm[depth + 1] = cm[depth] | ed.cmask_m[i];
      cp[depth + 1] = cp[depth] | ed.cmask_p[i];
      fm[depth + 1] = fm[depth] | ed.free_m[i];
      fp[depth + 1] = fp[depth] | ed.free_p[i];
      bad[depth + 1] = bad[depth] | ed.maxpow[i];
      hz[depth + 1] = hz[depth] | ed.purez[i];
      bool keep = true;
      if (bounds.necessity_filters) {
        bool wm = fm[depth + 1] || cm[depth + 1];
        bool wp = fp[depth + 1] || cp[depth + 1];
        keep = wm && wp && (ed.ek != 0 || hz[depth + 1]);
      }
      if (keep) {
        out.packed.push_back(pack_subset(idx, depth + 1));
        out.cm.push_back(cm[depth + 1]);
        out.cp.push_back(cp[depth + 1]);
        out.fm.push_back(fm[depth + 1]);
        out.fp.push_back(fp[depth + 1]);
        out.bad.push_back(bad[depth + 1]);
        if ((long long)out.packed.size() > kSubsetListCap) {
          out.overflow = true;
          return;
        }
      }
      if (depth + 1 < T) rec(i + 1, depth + 1);
    }
  };
  if (P > 0 && P <= 255) rec(0, 0);
  if (P > 255) out.overflow = true;
  return out;
}

// ---------------------------------------------------------------------------
// block-permutation symmetry: coordinates of equal weight within a block and
// equations of equal weight are interchangeable

struct GroupElem {
  std::array<int8_t, kMaxVars> cperm{};
  std::array<int8_t, kMaxEquations> eperm{};
};

std::vector<GroupElem> build_group(const CStarAction& act) {
  const int n = act.n, r = act.r(), s = act.s();
  const int c = (int)act.e.size();
  std::vector<std::vector<int>> cruns, eruns;
  auto collect = [](std::vector<std::vector<int>>& runs, int lo, int hi,
                    const std::function<long long(int)>& val) {
    int i = lo;
    while (i < hi) {
      int j = i + 1;
      while (j < hi && val(j) == val(i)) ++j;
      if (j - i > 1) {
        std::vector<int> run(j - i);
        for (int k = i; k < j; ++k) run[k - i] = k;
        runs.push_back(run);
      }
      i = j;
    }
  };
  collect(cruns, 0, r, [&](int i) { return act.a[i]; });
  collect(cruns, r, r + s, [&](int i) { return act.b[i - r]; });
  collect(cruns, r + s, n, [](int) { return 0; });
  collect(eruns, 0, c, [&](int i) { return act.e[i]; });

  GroupElem id;
  for (int i = 0; i < kMaxVars; ++i) id.cperm[i] = (int8_t)i;
  for (int i = 0; i < kMaxEquations; ++i) id.eperm[i] = (int8_t)i;
  std::vector<GroupElem> group = {id};
  auto expand = [&](const std::vector<int>& run, bool coords) {
    std::vector<int> order(run.size());
    for (size_t i = 0; i < run.size(); ++i) order[i] = (int)i;
    std::vector<GroupElem> next;
    do {
      for (GroupElem g : group) {
        for (size_t i = 0; i < run.size(); ++i) {
          if (coords) g.cperm[run[i]] = (int8_t)run[order[i]];
          else g.eperm[run[i]] = (int8_t)run[order[i]];
        }
        next.push_back(g);
      }
    } while (std::next_permutation(order.begin(), order.end()));
    group.swap(next);
  };
  for (const auto& run : cruns) expand(run, true);
  for (const auto& run : eruns) expand(run, false);
  return group;
}

// ---------------------------------------------------------------------------
// distinct-representative feasibility for the constrained witness variables

bool sdr_exists(const uint8_t* masks, int cnt) {
  std::function<bool(int, uint8_t)> rec = [&](int i, uint8_t used) -> bool {
    if (i == cnt) return true;
    uint8_t avail = (uint8_t)(masks[i] & ~used);
    while (avail) {
      uint8_t bit = (uint8_t)(avail & (~avail + 1));
      if (rec(i + 1, (uint8_t)(used | bit))) return true;
      avail = (uint8_t)(avail ^ bit);
    }
    return false;
  };
  return rec(0, 0);
}

// ---------------------------------------------------------------------------

struct ActionContext {
  const CStarAction* act = nullptr;
  const SearchBounds* bounds = nullptr;
  int c = 0;
  std::vector<EqData> eqdata;          // one per distinct equation weight
  std::vector<int> eqof;               // equation -> eqdata slot
  std::vector<SubsetList> lists;       // one per eqdata slot
  std::vector<GroupElem> group;
  // pidx[g][slot][i]: pool index of the g-image of pool[i]
  std::vector<std::vector<std::vector<int>>> pidx;
};

bool build_context(const CStarAction& act, const SearchBounds& bounds,
                   ActionContext& ctx, bool& overflow) {
  ctx.act = &act;
  ctx.bounds = &bounds;
  ctx.c = (int)act.e.size();
  for (int k = 0; k < ctx.c; ++k) {
    int slot = -1;
    for (int j = 0; j < (int)ctx.eqdata.size(); ++j)
      if (ctx.eqdata[j].ek == act.e[k]) slot = j;
    if (slot < 0) {
      ctx.eqdata.push_back(
          build_eqdata(act, act.e[k], monomial_pool(act, k, bounds)));
      slot = (int)ctx.eqdata.size() - 1;
    }
    ctx.eqof.push_back(slot);
  }
  for (const EqData& ed : ctx.eqdata) {
    ctx.lists.push_back(build_subsets(ed, bounds));
    if (ctx.lists.back().overflow) overflow = true;
  }
  if (overflow) return false;
  for (int k = 0; k < ctx.c; ++k)
    if (ctx.lists[ctx.eqof[k]].packed.empty()) return false;
  ctx.group = build_group(act);
  ctx.pidx.resize(ctx.group.size());
  for (size_t g = 0; g < ctx.group.size(); ++g) {
    ctx.pidx[g].resize(ctx.eqdata.size());
    if (g == 0) continue;  // identity
    const GroupElem& el = ctx.group[g];
    for (size_t slot = 0; slot < ctx.eqdata.size(); ++slot) {
      const EqData& ed = ctx.eqdata[slot];
      std::vector<int>& pm = ctx.pidx[g][slot];
      pm.resize(ed.pool.size());
      for (int i = 0; i < (int)ed.pool.size(); ++i) {
        std::vector<int> exps = ed.pool[i].exponents();
        std::vector<int> img(act.n, 0);
        for (int v = 0; v < act.n; ++v) img[el.cperm[v]] = exps[v];
        pm[i] = ed.index.at(Monomial::from_exponents(img).packed());
      }
    }
  }
  return true;
}

uint64_t map_subset(uint64_t sub, const std::vector<int>& pm) {
  int idx[kMaxSubsetSize], mapped[kMaxSubsetSize];
  int m = unpack_subset(sub, idx);
  for (int i = 0; i < m; ++i) mapped[i] = pm[idx[i]];
  for (int i = 1; i < m; ++i) {  // insertion sort
    int v = mapped[i], j = i - 1;
    for (; j >= 0 && mapped[j] > v; --j) mapped[j + 1] = mapped[j];
    mapped[j + 1] = v;
  }
  return pack_subset(mapped, m);
}

// The kept representative is the minimum of its orbit under the symmetry
// group; every pruning filter is invariant under the group, so selecting the
// minimum loses no orbit.
bool leaf_canonical(const ActionContext& ctx,
                    const std::array<uint64_t, kMaxEquations>& cur) {
  for (size_t g = 1; g < ctx.group.size(); ++g) {
    const GroupElem& el = ctx.group[g];
    std::array<uint64_t, kMaxEquations> img{};
    for (int k = 0; k < ctx.c; ++k)
      img[el.eperm[k]] = map_subset(cur[k], ctx.pidx[g][ctx.eqof[k]]);
    for (int k = 0; k < ctx.c; ++k) {
      if (img[k] < cur[k]) return false;
      if (img[k] > cur[k]) break;
    }
  }
  return true;
}

}  // namespace

// ---------------------------------------------------------------------------
// public operations

bool weight_filters_pass(const CStarAction& act, const SearchBounds&) {
  if (!check_pattern(act).pass) return false;
  // A maximal weight above 1, or more than six coordinates, forces the top
  // weight to be strict: otherwise the top fixed point cannot be an isolated
  // terminal singularity.
  if ((int)act.a.size() >= 2 && act.a[0] == act.a[1]) {
    if (act.a[0] > 1 || act.n > 6) return false;
  }
  // The verifier rejects negative total weight outright, so those
  // orientations carry no survivors.
  if (tau_of(act) < 0) return false;
  return true;
}

std::vector<ActionItem> enumerate_weights(const SearchBounds& bounds,
                                          long long* weight_tuples) {
  if (bounds.n < 5 || bounds.n > kMaxVars)
    throw input_error("n", "ambient dimension must be between 5 and 8");
  if (bounds.max_weight < 1)
    throw input_error("max_weight", "must be at least 1");
  const int c = codimension(bounds);
  const long long E = bounds.max_weight * bounds.max_degree;
  long long tuples = 0;
  std::vector<ActionItem> out;
  for (int r = 2; r <= bounds.n - 2; ++r) {
    for (int s = 2; r + s <= bounds.n; ++s) {
      int t = bounds.n - r - s;
      std::vector<long long> av, bv, ev;
      descending_tuples(r, 1, bounds.max_weight, av, [&]() {
        descending_tuples(s, 1, bounds.max_weight, bv, [&]() {
          descending_tuples(c, -E, E, ev, [&]() {
            ++tuples;
            std::vector<long long> sw;
            sw.insert(sw.end(), av.begin(), av.end());
            for (long long b : bv) sw.push_back(-b);
            sw.insert(sw.end(), t, 0);
            CStarAction act = make_action(sw, ev);
            if (!check_pattern(act).pass) return;
            if (bounds.necessity_filters && !weight_filters_pass(act, bounds))
              return;
            if (!bounds.only_forms.empty()) {
              SignPattern p = sign_pattern(act);
              bool hit = false;
              for (const SignPattern& q : bounds.only_forms)
                hit = hit || same_pattern(p, q);
              if (!hit) return;
            }
            bool control = is_excluded_form(act);
            if (control && bounds.forms == FormSelection::AllowedOnly) return;
            if (!control && bounds.forms == FormSelection::ExcludedOnly) return;
            out.push_back({act, control});
          });
        });
      });
    }
  }
  if (weight_tuples) *weight_tuples = tuples;
  return out;
}

bool support_filters_pass(const GitDatum& d) {
  const int r = d.act.r(), s = d.act.s();
  for (const Polynomial& fk : d.f)
    for (const Term& t : fk.terms()) {
      if (!t.mono.is_pure_power()) continue;
      int v = t.mono.sole_var();
      // a pure power of a maximal-weight coordinate keeps the corresponding
      // fixed point off its side
      if (v < r && d.act.a[v] == d.act.a[0]) return false;
      if (v >= r && v < r + s && d.act.b[v - r] == d.act.b[0]) return false;
    }
  for (size_t k = 0; k < d.f.size(); ++k) {
    if (d.act.e[k] != 0) continue;
    // a weight-zero equation must survive restriction to the z-block
    bool purez = false;
    for (const Term& t : d.f[k].terms()) {
      bool zonly = true;
      for (int v = 0; v < r + s; ++v) zonly = zonly && t.mono.exp(v) == 0;
      purez = purez || zonly;
    }
    if (!purez) return false;
  }
  return forced_monomial_witness(d, false).has_value() &&
         forced_monomial_witness(d, true).has_value();
}

std::vector<Monomial> monomial_pool(const CStarAction& act, int k,
                                    const SearchBounds& bounds) {
  std::vector<long long> w = act.weights();
  long long target = act.e.at(k);
  std::vector<Monomial> out;
  std::vector<int> exps(act.n, 0);
  std::function<void(int, int, long long)> rec = [&](int v, int deg,
                                                     long long wt) {
    if (v == act.n) {
      if (deg >= 2 && wt == target) out.push_back(Monomial::from_exponents(exps));
      return;
    }
    for (int d = 0; deg + d <= bounds.max_degree; ++d) {
      exps[v] = d;
      rec(v + 1, deg + d, wt + d * w[v]);
    }
    exps[v] = 0;
  };
  rec(0, 0, 0);
  std::sort(out.begin(), out.end());
  return out;
}

std::string action_key(const CStarAction& act) {
  std::ostringstream os;
  os << "w:";
  std::vector<long long> w = act.weights();
  for (size_t i = 0; i < w.size(); ++i) os << (i ? "," : "") << w[i];
  os << "|e:";
  for (size_t i = 0; i < act.e.size(); ++i) os << (i ? "," : "") << act.e[i];
  return os.str();
}

SupportCounts enumerate_supports(const CStarAction& act,
                                 const SearchBounds& bounds,
                                 const std::function<void(GitDatum&&)>& sink) {
  if ((int)act.e.size() > kMaxEquations)
    throw input_error("equations", "at most four equations are supported");
  if (bounds.max_terms < 1 || bounds.max_terms > kMaxSubsetSize)
    throw input_error("max_terms", "must be between 1 and 6");
  if (bounds.max_degree < 2)
    throw input_error("max_degree", "must be at least 2");

  SupportCounts sc;
  ActionContext ctx;
  bool overflow = false;
  if (!build_context(act, bounds, ctx, overflow)) {
    sc.truncated = overflow;
    return sc;
  }
  const int c = ctx.c;
  const std::string key = action_key(act);
  const bool necessity = bounds.necessity_filters;

  std::array<uint64_t, kMaxEquations> cur{};
  std::array<size_t, kMaxEquations> pick{};
  uint8_t pre_m[kMaxEquations + 1][kMaxEquations];
  uint8_t pre_p[kMaxEquations + 1][kMaxEquations];
  int npre_m[kMaxEquations + 1] = {0}, npre_p[kMaxEquations + 1] = {0};

  std::function<bool(int)> walk = [&](int k) -> bool {
    const SubsetList& L = ctx.lists[ctx.eqof[k]];
    for (size_t j = 0; j < L.packed.size(); ++j) {
      cur[k] = L.packed[j];
      pick[k] = j;
      // track the constrained witness masks of equations with no free option
      npre_m[k + 1] = npre_m[k];
      npre_p[k + 1] = npre_p[k];
      for (int i = 0; i < npre_m[k]; ++i) pre_m[k + 1][i] = pre_m[k][i];
      for (int i = 0; i < npre_p[k]; ++i) pre_p[k + 1][i] = pre_p[k][i];
      if (!L.fm[j]) pre_m[k + 1][npre_m[k + 1]++] = L.cm[j];
      if (!L.fp[j]) pre_p[k + 1][npre_p[k + 1]++] = L.cp[j];
      if (k + 1 < c) {
        if (necessity && (!sdr_exists(pre_m[k + 1], npre_m[k + 1]) ||
                          !sdr_exists(pre_p[k + 1], npre_p[k + 1])))
          continue;
        if (!walk(k + 1)) return false;
        continue;
      }
      ++sc.candidates;
      if (sc.candidates > bounds.max_candidates_per_action) {
        sc.truncated = true;
        return false;
      }
      if (necessity) {
        bool bad = false;
        for (int q = 0; q < c; ++q) bad = bad || ctx.lists[ctx.eqof[q]].bad[pick[q]];
        if (bad) continue;
      }
      ++sc.membership;
      if (!leaf_canonical(ctx, cur)) continue;
      ++sc.canonical;
      if (necessity && (!sdr_exists(pre_m[c], npre_m[c]) ||
                        !sdr_exists(pre_p[c], npre_p[c])))
        continue;
      ++sc.witnessed;

      std::vector<Polynomial> fs(c);
      int total_terms = 0;
      for (int q = 0; q < c; ++q) {
        const EqData& ed = ctx.eqdata[ctx.eqof[q]];
        int idx[kMaxSubsetSize];
        int m = unpack_subset(cur[q], idx);
        total_terms += m;
        std::vector<Term> terms;
        for (int i = 0; i < m; ++i) terms.push_back({ed.pool[idx[i]], Rational(1)});
        fs[q] = Polynomial::from_terms(act.n, std::move(terms));
      }
      std::string nm = key + "#" + std::to_string(sc.witnessed);
      sink(GitDatum{act, fs, nm});

      int free = total_terms - c;
      if (bounds.sweep_signs && free >= 1 && free <= 20) {
        for (long long bits = 1; bits < (1LL << free); ++bits) {
          long long rem = bits;
          std::vector<Polynomial> gs(c);
          for (int q = 0; q < c; ++q) {
            const EqData& ed = ctx.eqdata[ctx.eqof[q]];
            int idx[kMaxSubsetSize];
            int m = unpack_subset(cur[q], idx);
            std::vector<Term> terms;
            for (int i = 0; i < m; ++i) {
              Rational cf(1);
              if (i > 0) {  // the leading monomial stays +1
                if (rem & 1) cf = Rational(-1);
                rem >>= 1;
              }
              terms.push_back({ed.pool[idx[i]], cf});
            }
            gs[q] = Polynomial::from_terms(act.n, std::move(terms));
          }
          sink(GitDatum{act, gs, nm + "#s" + std::to_string(bits)});
        }
      }
    }
    return true;
  };
  walk(0);
  if (!necessity) {
    // prunes disabled: the stage counts repeat the surviving totals
    sc.membership = sc.candidates;
    sc.witnessed = sc.canonical;
  }
  return sc;
}

// ---------------------------------------------------------------------------
// survey

namespace {

struct ActionOutcome {
  SupportCounts counts;
  std::vector<Survivor> survivors;
  std::vector<Survivor> inconclusive;
  long long inconclusive_total = 0;
  long long verify_calls = 0;
  std::vector<std::string> notes;
  bool from_resume = false;
};

json bounds_json(const SearchBounds& b) {
  json forms = json::array();
  for (const SignPattern& p : b.only_forms) forms.push_back(pattern_string(p));
  return json{{"n", b.n},
              {"max_weight", b.max_weight},
              {"max_degree", b.max_degree},
              {"max_terms", b.max_terms},
              {"forms", (int)b.forms},
              {"only_forms", forms},
              {"necessity_filters", b.necessity_filters},
              {"sweep_signs", b.sweep_signs},
              {"max_candidates_per_action", b.max_candidates_per_action},
              {"max_pairs", b.budget.max_pairs},
              {"max_standard_monomials", b.budget.max_standard_monomials}};
}

json outcome_json(const std::string& key, const CStarAction& act,
                  const ActionOutcome& oc) {
  std::vector<std::string> names = coordinate_names(act);
  auto dump = [&](const std::vector<Survivor>& list) {
    json arr = json::array();
    for (const Survivor& sv : list) {
      json fs = json::array();
      for (const Polynomial& f : sv.datum.f) fs.push_back(f.str(names));
      arr.push_back(json{{"name", sv.datum.name}, {"fs", fs}});
    }
    return arr;
  };
  return json{{"key", key},
              {"candidates", oc.counts.candidates},
              {"membership", oc.counts.membership},
              {"canonical", oc.counts.canonical},
              {"witnessed", oc.counts.witnessed},
              {"truncated", oc.counts.truncated},
              {"verify_calls", oc.verify_calls},
              {"inconclusive_total", oc.inconclusive_total},
              {"survivors", dump(oc.survivors)},
              {"inconclusive", dump(oc.inconclusive)},
              {"notes", oc.notes}};
}

ActionOutcome run_action(const ActionItem& item, const SearchBounds& bounds,
                         const ClassifyOptions& copt) {
  ActionOutcome oc;
  oc.counts = enumerate_supports(item.act, bounds, [&](GitDatum&& d) {
    ++oc.verify_calls;
    VerificationReport rep = verify(d, copt);
    if (rep.verdict == Verdict::Flip || rep.verdict == Verdict::Flop) {
      oc.survivors.push_back({std::move(d), std::move(rep), item.control});
    } else if (rep.verdict == Verdict::Inconclusive) {
      ++oc.inconclusive_total;
      if ((int)oc.inconclusive.size() < kInconclusiveSample)
        oc.inconclusive.push_back({std::move(d), std::move(rep), item.control});
    }
  });
  if (oc.counts.truncated)
    oc.notes.push_back(action_key(item.act) +
                       ": support enumeration stopped at the candidate cap");
  return oc;
}

ActionOutcome replay_action(const ActionItem& item, const json& line,
                            const ClassifyOptions& copt) {
  ActionOutcome oc;
  oc.from_resume = true;
  oc.counts.candidates = line.value("candidates", 0LL);
  oc.counts.membership = line.value("membership", 0LL);
  oc.counts.canonical = line.value("canonical", 0LL);
  oc.counts.witnessed = line.value("witnessed", 0LL);
  oc.counts.truncated = line.value("truncated", false);
  oc.verify_calls = line.value("verify_calls", 0LL);
  oc.inconclusive_total = line.value("inconclusive_total", 0LL);
  if (line.contains("notes"))
    for (const auto& nt : line["notes"]) oc.notes.push_back(nt.get<std::string>());
  std::vector<long long> sw = item.act.weights();
  auto load = [&](const char* field, std::vector<Survivor>& into) {
    if (!line.contains(field)) return;
    for (const auto& entry : line[field]) {
      std::vector<std::string> exprs;
      for (const auto& f : entry["fs"]) exprs.push_back(f.get<std::string>());
      GitDatum d = parse_datum(sw, item.act.e, exprs,
                               entry.value("name", std::string()));
      into.push_back({d, verify(d, copt), item.control});
    }
  };
  load("survivors", oc.survivors);
  load("inconclusive", oc.inconclusive);
  return oc;
}

}  // namespace

SurveyResult survey(const SearchBounds& bounds, const SurveyOptions& opts) {
  SurveyResult res;
  res.bounds = bounds;
  res.notes.push_back(
      "bounded search: exhaustive over supports with monomial degrees 2.." +
      std::to_string(bounds.max_degree) + ", at most " +
      std::to_string(bounds.max_terms) + " monomials per equation and weight" +
      " magnitudes up to " + std::to_string(bounds.max_weight) +
      "; evidence within these bounds, not a proof beyond them");
  if (bounds.sweep_signs)
    res.notes.push_back(
        "sign sweep enabled: survivor and verify counts include coefficient"
        " variants, so stage counts track supports only approximately");

  std::vector<ActionItem> items = enumerate_weights(bounds, &res.weight_tuples);
  res.actions = (long long)items.size();
  for (const ActionItem& it : items) res.control_actions += it.control ? 1 : 0;

  ClassifyOptions copt = opts.classify;
  copt.budget = bounds.budget;

  // resume file: one JSON line per finished action, keyed by the action;
  // a header line pins the bounds so stale shards are never reused
  std::map<std::string, json> done;
  bool fresh_file = true;
  if (!opts.resume_path.empty()) {
    std::ifstream in(opts.resume_path);
    std::string ln;
    if (in && std::getline(in, ln)) {
      json header = json::parse(ln, nullptr, false);
      if (!header.is_discarded() && header.contains("bounds") &&
          header["bounds"] == bounds_json(bounds)) {
        fresh_file = false;
        while (std::getline(in, ln)) {
          json line = json::parse(ln, nullptr, false);
          if (!line.is_discarded() && line.contains("key"))
            done[line["key"].get<std::string>()] = line;
        }
      } else {
        res.notes.push_back("resume file ignored: different bounds");
      }
    }
  }
  std::ofstream rf;
  std::mutex rf_mu;
  if (!opts.resume_path.empty()) {
    rf.open(opts.resume_path, fresh_file ? std::ios::trunc : std::ios::app);
    if (rf && fresh_file) {
      rf << json{{"bounds", bounds_json(bounds)}}.dump() << "\n";
      rf.flush();
    }
  }

  std::vector<ActionOutcome> outcomes(items.size());
  std::atomic<size_t> cursor{0};
  auto work = [&]() {
    for (;;) {
      size_t i = cursor.fetch_add(1);
      if (i >= items.size()) break;
      const std::string key = action_key(items[i].act);
      auto it = done.find(key);
      ActionOutcome oc;
      try {
        oc = it != done.end() ? replay_action(items[i], it->second, copt)
                              : run_action(items[i], bounds, copt);
      } catch (const std::exception& ex) {
        oc.notes.push_back(key + ": " + ex.what());
      }
      if (!oc.from_resume && rf.is_open()) {
        json line = outcome_json(key, items[i].act, oc);
        std::lock_guard<std::mutex> lk(rf_mu);
        rf << line.dump() << "\n";
        rf.flush();
      }
      outcomes[i] = std::move(oc);
    }
  };
  int jobs = std::max(1, opts.jobs);
  if (jobs == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < jobs; ++i) pool.emplace_back(work);
    for (std::thread& th : pool) th.join();
  }

  long long cand = 0, memb = 0, canon = 0, witn = 0, matched = 0;
  for (size_t i = 0; i < items.size(); ++i) {
    ActionOutcome& oc = outcomes[i];
    cand += oc.counts.candidates;
    memb += oc.counts.membership;
    canon += oc.counts.canonical;
    witn += oc.counts.witnessed;
    res.truncated = res.truncated || oc.counts.truncated;
    res.verify_calls += oc.verify_calls;
    res.inconclusive_total += oc.inconclusive_total;
    for (Survivor& sv : oc.inconclusive)
      if ((int)res.inconclusive.size() < kInconclusiveSample)
        res.inconclusive.push_back(std::move(sv));
    for (Survivor& sv : oc.survivors) {
      std::string note;
      if (sv.control) note = "excluded weight form produced a survivor";
      if (sv.report.table_row.empty()) {
        if (!note.empty()) note += "; ";
        note += "no classification row matches";
      } else {
        ++matched;
      }
      if (!note.empty()) res.anomalies.push_back({sv.datum, sv.report, note});
      res.survivors.push_back(std::move(sv));
    }
    for (std::string& nt : oc.notes)
      if ((int)res.notes.size() < 64) res.notes.push_back(std::move(nt));
  }
  res.stages = {{"candidates", cand}, {"membership", memb},
                {"canonical", canon}, {"witnessed", witn},
                {"survivors", (long long)res.survivors.size()},
                {"matched", matched}};
  return res;
}

}  // namespace flipcert
