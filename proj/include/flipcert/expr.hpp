#pragma once
// tiny expression reader for polynomial literals like
//   "x1*y1 - 2*z1^2 + 1/3*x2^2*y2"
// over a caller-supplied variable name list. Sums of signed terms only;
// no parentheses.
#include <string>
#include <vector>

#include "flipcert/poly.hpp"

namespace flipcert {

Polynomial parse_polynomial(const std::string& expr, const std::vector<std::string>& names);

}  // namespace flipcert
