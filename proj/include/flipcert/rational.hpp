#pragma once
// exact rational arithmetic. GMP's mpq_class does NOT canonicalize values
// built from raw numerator/denominator parts, so every such construction
// must go through rat()/rat_parse below.
#include <gmpxx.h>
#include <stdexcept>
#include <string>

namespace flipcert {

using Rational = mpq_class;
using Integer = mpz_class;

inline Rational rat(long num, long den = 1) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline Rational rat(const Integer& num, const Integer& den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

// accepts "n", "-n", "n/d"
inline Rational rat_parse(const std::string& s) {
  Rational q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal: " + s);
  if (q.get_den() == 0) throw std::invalid_argument("rational with zero denominator: " + s);
  q.canonicalize();
  return q;
}

inline std::string rat_str(const Rational& q) { return q.get_str(); }

}  // namespace flipcert
