#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qfunc/series.hpp"

namespace qfunc {

/// Canonical JSON: {"q", "vars", "exact_to", "terms": [{"exp", "coef"}]},
/// terms in lexicographic exponent order. One line, newline-terminated.
std::string to_json(const MultiSeries& f);

/// Parses the canonical JSON form. The context is built from the file's q
/// and the given max_order.
MultiSeries from_json(std::string_view text, int max_order);

/// Human-readable expansion, e.g. "a^2 + 3/2*a*b + b^2". Terms are ordered
/// by total degree, then lexicographically with the first variable
/// dominant. The zero series renders as "0".
std::string render(const MultiSeries& f);
std::string render_monomial(const std::vector<std::string>& vars, const ExponentVector& e);

/// Inline polynomial syntax: a sum of terms "coef*var^k*...", coefficients
/// rational, exponents nonnegative integers.
struct ParsedPolynomial {
  std::vector<std::string> vars;  // sorted, as they appear in the text
  std::vector<std::pair<std::vector<std::pair<std::string, int>>, Rational>> terms;
};
ParsedPolynomial parse_polynomial(std::string_view text);

/// Builds a series from inline syntax. `declared` fixes the variable order
/// when given (it must contain every variable in the text); otherwise
/// `extra` is merged with the text's variables and sorted.
MultiSeries series_from_polynomial(std::string_view text, ContextPtr ctx, int exact_to,
                                   const std::vector<std::string>& declared = {},
                                   const std::vector<std::string>& extra = {});

}  // namespace qfunc
