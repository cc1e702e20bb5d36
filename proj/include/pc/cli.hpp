#pragma once

#include "pc/integer.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace pc::cli {

// "1,0,-1,0" -> integers in the given order.
std::vector<Integer> parse_integer_list(const std::string& text);

// Univariate polynomial such as "t^3/3 - 2t + 1/2" in `var`; ascending
// rational coefficients.
std::vector<Rational> parse_polynomial(const std::string& text, char var);

struct ParsedCurve {
  int genus = 0;
  std::vector<Integer> q;  // ascending
  std::vector<Integer> r;  // ascending
};

// "y2+y=x7+x+1", "y^2 + x*y = x^5 + 1", "y2=x5+1".
ParsedCurve parse_curve(const std::string& text);

// Entry point; returns the process exit code (0 ok, 1 usage or
// precondition error, 2 certification failure).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pc::cli
