#include "flipcert/expr.hpp"

#include <cctype>
#include <stdexcept>

namespace flipcert {

namespace {

struct Cursor {
  const std::string& s;
  size_t i = 0;
  void skip_ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool done() {
    skip_ws();
    return i >= s.size();
  }
  char peek() {
    skip_ws();
    return i < s.size() ? s[i] : '\0';
  }
  char take() {
    skip_ws();
    return s[i++];
  }
};

std::string take_integer(Cursor& c) {
  c.skip_ws();
  std::string out;
  while (c.i < c.s.size() && std::isdigit(static_cast<unsigned char>(c.s[c.i])))
    out.push_back(c.s[c.i++]);
  if (out.empty()) throw std::invalid_argument("polynomial expression: expected integer at '" +
                                               c.s.substr(c.i) + "'");
  return out;
}

std::string take_name(Cursor& c) {
  c.skip_ws();
  std::string out;
  while (c.i < c.s.size() &&
         (std::isalnum(static_cast<unsigned char>(c.s[c.i])) || c.s[c.i] == '_'))
    out.push_back(c.s[c.i++]);
  return out;
}

}  // namespace

Polynomial parse_polynomial(const std::string& expr, const std::vector<std::string>& names) {
  int nvars = static_cast<int>(names.size());
  auto var_index = [&](const std::string& name) {
    for (int i = 0; i < nvars; ++i)
      if (names[static_cast<size_t>(i)] == name) return i;
    throw std::invalid_argument("polynomial expression: unknown variable '" + name + "'");
  };
  Cursor c{expr};
  Polynomial acc(nvars);
  bool first = true;
  while (!c.done()) {
    int sign = 1;
    char p = c.peek();
    if (p == '+' || p == '-') {
      c.take();
      sign = p == '-' ? -1 : 1;
    } else if (!first) {
      throw std::invalid_argument("polynomial expression: expected '+' or '-' at '" +
                                  expr.substr(c.i) + "'");
    }
    first = false;
    Rational coef = rat(sign);
    Monomial mono = Monomial::one(nvars);
    bool any_factor = false;
    bool expect_factor = true;
    while (expect_factor) {
      c.skip_ws();
      if (c.i < c.s.size() && std::isdigit(static_cast<unsigned char>(c.s[c.i]))) {
        std::string num = take_integer(c);
        std::string den = "1";
        if (c.peek() == '/') {
          c.take();
          den = take_integer(c);
        }
        coef *= rat_parse(num + "/" + den);
        any_factor = true;
      } else {
        std::string name = take_name(c);
        if (name.empty())
          throw std::invalid_argument("polynomial expression: expected factor at '" +
                                      expr.substr(c.i) + "'");
        int v = var_index(name);
        int power = 1;
        if (c.peek() == '^') {
          c.take();
          power = std::stoi(take_integer(c));
        }
        mono.set_exp(v, mono.exp(v) + power);
        any_factor = true;
      }
      if (c.peek() == '*') {
        c.take();
        expect_factor = true;
      } else {
        expect_factor = false;
      }
    }
    if (!any_factor) throw std::invalid_argument("polynomial expression: empty term");
    acc = acc + Polynomial::term(mono, coef);
  }
  return acc;
}

}  // namespace flipcert
