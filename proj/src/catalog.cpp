#include "flipcert/verifier.hpp"

namespace flipcert {

namespace {

CatalogEntry mk(std::string name, std::vector<long long> w,
                std::vector<long long> e, std::vector<std::string> polys,
                Verdict v, std::string row, std::vector<std::string> classes,
                long long comps, std::string note = "") {
  CatalogEntry ce;
  ce.name = name;
  ce.datum = parse_datum(w, e, polys, name);
  ce.expected.verdict = v;
  ce.expected.table_row = std::move(row);
  ce.expected.point_classes = std::move(classes);
  ce.expected.curve_components = comps;
  ce.note = std::move(note);
  return ce;
}

std::vector<CatalogEntry> build() {
  std::vector<CatalogEntry> cat;
  const std::string enote =
      "classifier computes cDV(cD) at P1/P3; the cE label is not reproduced "
      "by the generic-section test";

  // hypersurface flops in C^5, f = x2 y2 + z^m + (x1 y1)^l
  for (int m : {2, 3})
    for (int l : {2, 3})
      cat.push_back(mk(
          "exflop5/m" + std::to_string(m) + "l" + std::to_string(l),
          {1, 1, -1, -1, 0}, {0},
          {"x2*y2 + z^" + std::to_string(m) + " + x1^" + std::to_string(l) +
           "*y1^" + std::to_string(l)},
          Verdict::Flop, "flop5.cA", {"cDV(cA)", "smooth", "cDV(cA)", "smooth"},
          1));
  cat.push_back(mk("flop5smooth", {1, 1, -1, -1, 0}, {0},
                   {"x1*y1 + x2*y2 + z^2 + z^3"}, Verdict::Flop,
                   "flop5.smooth", {"smooth", "smooth", "smooth", "smooth"},
                   1));

  // codimension-2 flops in C^6
  cat.push_back(mk("ex1flop6", {1, 1, -1, -1, 0, 0}, {0, 0},
                   {"x1*y1 + x2^2*y2^2 + z1^3", "x2*y2 + x1^2*y1^2 + z2^3"},
                   Verdict::Flop, "flop6.3",
                   {"cDV(cA)", "cDV(cA)", "cDV(cA)", "cDV(cA)"}, 1));
  auto flop6b = [&](std::string tag, std::string f2, std::string label,
                    std::string note) {
    cat.push_back(mk("ex2flop6/" + tag, {1, 1, -1, -1, 0, 0}, {0, 0},
                     {"x1*y2 - x2*y1 - z2^2", f2}, Verdict::Flop, "flop6.2",
                     {label, "smooth", label, "smooth"}, 1, note));
  };
  flop6b("cA", "x2*y2 + x1^3*y1^3 + z1^2 + z2^2", "cDV(cA)", "");
  flop6b("cD", "x2*y2 + x1^3*y1^3 + z1^2 + z2^3", "cDV(cD)", "");
  flop6b("cE6", "x2*y2 + x1^4*y1^4 + z1^2 + z2^3", "cDV(cE6)", enote);
  flop6b("cE7", "x2*y2 + x1^3*y1^3*z2 + z1^2 + z2^3", "cDV(cE7)", enote);
  flop6b("cE8", "x2*y2 + x1^5*y1^5 + z1^2 + z2^3", "cDV(cE8)", enote);

  // flips with weights (a,1,1,-1,-1,0), both xy extras present
  auto flip1 = [&](long long a, int m, std::string h) {
    cat.push_back(mk(
        "ex1flip6/a" + std::to_string(a) + "m" + std::to_string(m),
        {a, 1, 1, -1, -1, 0}, {a - 1, 0},
        {"x1*y1 + x1*y2 + " + h, "x2*y2 + z^" + std::to_string(m) + " + x3*y1"},
        Verdict::Flip, "flip6.1",
        {"cA/" + std::to_string(a), "smooth", "smooth", "smooth", "smooth"},
        a - 1));
  };
  flip1(3, 2, "2*x2*x3");
  flip1(4, 3, "x2^2*x3 + x2*x3^2");
  flip1(5, 2, "x2^3*x3 + x2*x3^3");

  // flips with weights (b+2,1,1,-b,-1,0), extra only in the first equation
  auto flip2 = [&](long long b) {
    std::string bs = std::to_string(b);
    std::string yext = b == 1 ? "x1*y2" : "x1*y2^" + bs;
    std::string y1ext = b == 1 ? "x3*y1" : "x3^" + bs + "*y1";
    cat.push_back(mk(
        "ex2flip6/b" + bs + "m2", {b + 2, 1, 1, -b, -1, 0}, {2, 0},
        {"x1*y1 + x2*x3 + " + yext, "x2*y2 + z^2 + " + y1ext}, Verdict::Flip,
        b == 1 ? "flip6.1" : "flip6.2",
        {"cA/" + std::to_string(b + 2), "smooth", "smooth",
         b == 1 ? "smooth" : "cA/" + bs, "smooth"},
        2));
  };
  flip2(1);
  flip2(2);
  flip2(3);

  // flips with weights (2a+1,a,1,-1,-a,0), extra only in the second equation.
  // The x-block part must avoid the ideal (x2): dropping the x3^{2a} term
  // leaves x2*(y2 - x2*x3 - x3^{a+1}) + z^2 on the x1-chart, which is singular
  // along a curve.  With the pure power the chart singularity is an isolated
  // cA/(2a+1), at the price of x3's fixed point leaving both quotients.
  auto flip3 = [&](long long a) {
    std::string as = std::to_string(a);
    std::string xpart = a == 1 ? "x2*x3 + x3^2"
                               : "x2*x3^" + as + " + x3^" + std::to_string(2 * a);
    std::vector<std::string> cls;
    if (a == 1)
      cls = {"cA/3", "non-member", "non-member", "smooth", "cDV(cA)"};
    else
      cls = {"cA/" + std::to_string(2 * a + 1), "non-member", "non-member",
             "cA/" + as, "smooth"};
    cat.push_back(mk("ex3flip6/a" + as + "m2", {2 * a + 1, a, 1, -1, -a, 0},
                     {2 * a, 0},
                     {"x1*y1 + x2^2 + " + xpart, "x2*y2 + z^2 + x3*y1"},
                     Verdict::Flip, "flip6.3", std::move(cls), 2,
                     "x-part completed with the pure x3 power so that its zero "
                     "set stays reduced off the x2-axis; without it the "
                     "x1-chart is singular along a curve"));
  };
  flip3(1);
  flip3(2);
  flip3(3);

  // flips with weights (b+6,3,2,-b,-3,0); b=1 keeps a bare xy extra, larger b
  // does not
  auto flip4 = [&](long long b) {
    std::string bs = std::to_string(b);
    std::string tail = b == 1 ? "x3*y1^2" : "x3^" + bs + "*y1^2";
    std::vector<std::string> cls;
    if (b == 1)
      cls = {"cA/7", "non-member", "non-member", "cA/3", "smooth"};
    else
      cls = {"cA/" + std::to_string(b + 6), "non-member", "non-member",
             "cA/" + bs, "cA/3"};
    cat.push_back(mk("ex4flip6/b" + bs + "m2", {b + 6, 3, 2, -b, -3, 0},
                     {6, 0}, {"x1*y1 - x2^2 + x3^3", "x2*y2 + z^2 + " + tail},
                     Verdict::Flip, b == 1 ? "flip6.3" : "flip6.4",
                     std::move(cls), 1));
  };
  flip4(1);
  flip4(5);
  flip4(7);

  return cat;
}

}  // namespace

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = build();
  return entries;
}

std::vector<const CatalogEntry*> catalog_select(const std::string& substring) {
  std::vector<const CatalogEntry*> out;
  for (const CatalogEntry& e : catalog())
    if (e.name.find(substring) != std::string::npos) out.push_back(&e);
  return out;
}

}  // namespace flipcert
