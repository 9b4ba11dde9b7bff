#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qfunc/qcontext.hpp"
#include "qfunc/rational.hpp"

namespace qfunc {

/// One exponent per declared variable. Ordered lexicographically.
using ExponentVector = std::vector<int>;

int total_degree(const ExponentVector& e);

/// Sparse truncated multivariate power series over the rationals.
///
/// Every coefficient of total degree <= exact_to() is exact; nothing above
/// that bound is stored. Zero coefficients are never stored, so two series
/// compare equal exactly when their contexts, variables, bounds and term
/// maps agree.
class MultiSeries {
 public:
  using TermMap = std::map<ExponentVector, Rational>;

  MultiSeries(ContextPtr ctx, std::vector<std::string> vars, int exact_to);

  const ContextPtr& context_ptr() const { return ctx_; }
  const QContext& context() const { return *ctx_; }
  const std::vector<std::string>& vars() const { return vars_; }
  int exact_to() const { return exact_to_; }
  const TermMap& terms() const { return terms_; }

  std::size_t nvars() const { return vars_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool has_var(const std::string& name) const;
  /// Position of `name` in vars(); throws UnknownVariable.
  std::size_t index_of(const std::string& name) const;
  /// Largest total degree among stored terms, or -1 for the zero series.
  int max_degree() const;

  /// Adds c to the coefficient of e; drops the term if the sum is zero and
  /// ignores e above exact_to.
  void accumulate(const ExponentVector& e, const Rational& c);

  friend bool operator==(const MultiSeries& lhs, const MultiSeries& rhs);

 private:
  ContextPtr ctx_;
  std::vector<std::string> vars_;
  int exact_to_;
  TermMap terms_;
};

MultiSeries make_series(ContextPtr ctx, std::vector<std::string> vars, int exact_to,
                        const std::vector<std::pair<ExponentVector, Rational>>& terms);

/// Constant series c over `vars`.
MultiSeries constant_series(ContextPtr ctx, std::vector<std::string> vars, int exact_to,
                            const Rational& c);

/// The monomial coef * vars^e.
MultiSeries monomial_series(ContextPtr ctx, std::vector<std::string> vars, int exact_to,
                            const ExponentVector& e, const Rational& coef = Rational(1));

MultiSeries add(const MultiSeries& f, const MultiSeries& g);
MultiSeries sub(const MultiSeries& f, const MultiSeries& g);
MultiSeries mul(const MultiSeries& f, const MultiSeries& g);
MultiSeries scale(const MultiSeries& f, const Rational& r);
MultiSeries negate(const MultiSeries& f);

/// Re-declares f over new_vars, which must contain every variable of f.
/// The order of new_vars is free, so this also permutes variables.
MultiSeries extend_vars(const MultiSeries& f, const std::vector<std::string>& new_vars);

/// Substitutes var -> q^m * var.
MultiSeries dilate(const MultiSeries& f, const std::string& var, int m);

MultiSeries mul_by_monomial(const MultiSeries& f, const ExponentVector& e);
/// Multiplies by var^power.
MultiSeries mul_by_var(const MultiSeries& f, const std::string& var, int power = 1);

/// Exact division by var; every term must contain var. Costs one degree of
/// exactness.
MultiSeries divide_by_var(const MultiSeries& f, const std::string& var);

/// Keeps only the terms free of var.
MultiSeries set_var_zero(const MultiSeries& f, const std::string& var);

/// Lowers exact_to to `bound` and drops the terms above it.
MultiSeries truncate(const MultiSeries& f, int bound);

/// Coefficient of e; zero when absent. Throws OutsideExactRegion if e lies
/// above exact_to.
Rational coefficient(const MultiSeries& f, const ExponentVector& e);

/// Unit exponent vector for `var` within f's variables.
ExponentVector unit_exponent(const MultiSeries& f, const std::string& var, int power = 1);

/// Deterministic pseudo-random series: every monomial of total degree
/// <= exact_to receives an integer coefficient in [-coef_bound, coef_bound].
MultiSeries random_series(ContextPtr ctx, std::uint64_t seed, std::vector<std::string> vars,
                          int exact_to, int coef_bound);

}  // namespace qfunc
