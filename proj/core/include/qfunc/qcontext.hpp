#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "qfunc/rational.hpp"

namespace qfunc {

/// Fixed value of q, the global truncation order and the table of
/// (q;q)_n for 0 <= n <= max_order. Immutable once built.
class QContext {
 public:
  /// Rejects q in {0, 1, -1}. |q| >= 1 is accepted but flagged through
  /// outside_unit_disk().
  QContext(Rational q, int max_order);

  const Rational& q() const { return q_; }
  int max_order() const { return max_order_; }
  bool outside_unit_disk() const { return outside_unit_disk_; }

  /// (q;q)_n, 0 <= n <= max_order.
  const Rational& q_factorial(int n) const;
  /// q^e for any integer e.
  Rational q_pow(std::int64_t e) const;

  friend bool operator==(const QContext& lhs, const QContext& rhs) {
    return lhs.max_order_ == rhs.max_order_ && lhs.q_ == rhs.q_;
  }

 private:
  Rational q_;
  int max_order_;
  bool outside_unit_disk_;
  std::vector<Rational> q_factorials_;
};

using ContextPtr = std::shared_ptr<const QContext>;

ContextPtr make_context(const Rational& q, int max_order);

const Rational& q_factorial(const QContext& ctx, int n);

/// (x;q)_n = prod_{k<n} (1 - x q^k); the empty product is 1.
Rational q_pochhammer_scalar(const QContext& ctx, const Rational& x, int n);

/// Gaussian binomial [n choose k]_q = (q;q)_n / ((q;q)_k (q;q)_{n-k}).
Rational gauss_binomial(const QContext& ctx, int n, int k);

}  // namespace qfunc
