#pragma once

// Test helpers and independent oracles. Nothing here calls into qops or the
// equation solvers; oracles are built from series primitives and direct
// scalar arithmetic only.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "qfunc/rational.hpp"
#include "qfunc/series.hpp"
#include "qfunc/series_io.hpp"

namespace qfunc::testing {

inline MultiSeries poly(const ContextPtr& ctx, const std::string& text,
                        std::vector<std::string> vars, int exact_to) {
  return series_from_polynomial(text, ctx, exact_to, vars);
}

inline bool is_canonical(const MultiSeries& f) {
  if (f.exact_to() < 0 || f.exact_to() > f.context().max_order()) return false;
  for (const auto& [e, c] : f.terms()) {
    if (c.is_zero() || e.size() != f.nvars() || total_degree(e) > f.exact_to()) return false;
    for (int k : e) {
      if (k < 0) return false;
    }
  }
  return true;
}

/// (q;q)_n by the literal product, no caching.
inline Rational naive_q_factorial(const Rational& q, int n) {
  Rational out(1);
  for (int k = 1; k <= n; ++k) out *= Rational(1) - q.pow(k);
  return out;
}

/// Jackson derivative from its definition (f(x) - f(qx)) / x.
inline MultiSeries definitional_dq(const MultiSeries& f, const std::string& var) {
  return divide_by_var(sub(f, dilate(f, var, 1)), var);
}

/// theta from its definition (f(x/q) - f(x)) / (x/q), written as
/// q * (f(x/q) - f(x)) / x.
inline MultiSeries definitional_theta(const MultiSeries& f, const std::string& var) {
  return scale(divide_by_var(sub(dilate(f, var, -1), f), var), f.context().q());
}

/// Brute-force operator sum sum_{n} w_n b^n Op^n{f} with Op applied by
/// definition and the weights given as scalars per n (already divided by
/// (q;q)_n).
template <typename Weight>
MultiSeries brute_exp_operator(const MultiSeries& f, const std::string& src,
                               const std::string& b, bool use_theta, Weight&& weight) {
  auto vars = f.vars();
  vars.push_back(b);
  MultiSeries out(f.context_ptr(), vars, f.exact_to());
  MultiSeries power = f;
  for (int n = 0; n <= f.exact_to(); ++n) {
    if (n > 0) power = use_theta ? definitional_theta(power, src) : definitional_dq(power, src);
    MultiSeries term = mul_by_var(extend_vars(power, vars), b, n);
    out = add(out, scale(term, weight(n)));
  }
  return out;
}

/// Rational values of q used by property tests; includes |q| > 1 and
/// negative q since every identity here is formal.
inline std::vector<Rational> property_qs() {
  return {Rational(1, 2), Rational(2, 3), Rational(3, 5), Rational(9, 10), Rational(-2, 7),
          Rational(3)};
}

}  // namespace qfunc::testing
