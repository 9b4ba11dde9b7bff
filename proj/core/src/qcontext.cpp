#include "qfunc/qcontext.hpp"

#include <string>

#include "qfunc/error.hpp"

namespace qfunc {

QContext::QContext(Rational q, int max_order)
    : q_(std::move(q)), max_order_(max_order), outside_unit_disk_(false) {
  if (q_.is_zero() || q_ == Rational(1) || q_ == Rational(-1)) {
    throw Error(ErrorCode::DegenerateQ, "degenerate q: " + q_.to_string());
  }
  if (max_order_ < 0) {
    throw Error(ErrorCode::OutOfRange, "max_order must be nonnegative");
  }
  outside_unit_disk_ = q_.abs() >= Rational(1);

  q_factorials_.reserve(static_cast<std::size_t>(max_order_) + 1);
  q_factorials_.emplace_back(1);
  Rational qn(1);
  for (int n = 1; n <= max_order_; ++n) {
    qn *= q_;
    q_factorials_.push_back(q_factorials_.back() * (Rational(1) - qn));
  }
}

const Rational& QContext::q_factorial(int n) const {
  if (n < 0 || n > max_order_) {
    throw Error(ErrorCode::OutOfRange, "(q;q)_n requested for n=" + std::to_string(n) +
                                           " outside [0, " + std::to_string(max_order_) + "]");
  }
  return q_factorials_[static_cast<std::size_t>(n)];
}

Rational QContext::q_pow(std::int64_t e) const { return q_.pow(e); }

ContextPtr make_context(const Rational& q, int max_order) {
  return std::make_shared<const QContext>(q, max_order);
}

const Rational& q_factorial(const QContext& ctx, int n) { return ctx.q_factorial(n); }

Rational q_pochhammer_scalar(const QContext& ctx, const Rational& x, int n) {
  if (n < 0) throw Error(ErrorCode::OutOfRange, "negative Pochhammer length");
  Rational result(1);
  Rational qk(1);
  for (int k = 0; k < n; ++k) {
    result *= Rational(1) - x * qk;
    qk *= ctx.q();
  }
  return result;
}

Rational gauss_binomial(const QContext& ctx, int n, int k) {
  if (k < 0 || n < k || n > ctx.max_order()) {
    throw Error(ErrorCode::OutOfRange, "gauss_binomial(" + std::to_string(n) + ", " +
                                           std::to_string(k) + ") out of range");
  }
  return ctx.q_factorial(n) / (ctx.q_factorial(k) * ctx.q_factorial(n - k));
}

}  // namespace qfunc
