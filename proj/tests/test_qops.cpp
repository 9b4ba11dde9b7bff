#include <doctest.h>

#include "qfunc/error.hpp"
#include "qfunc/qops.hpp"
#include "support.hpp"

using namespace qfunc;
using qfunc::testing::is_canonical;
using qfunc::testing::poly;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected qfunc::Error");
  return ErrorCode::Parse;
}

const ContextPtr kHalf = make_context(Rational(1, 2), 12);
const std::vector<std::string> kA{"a"};
const std::vector<std::string> kAB{"a", "b"};
const std::vector<std::string> kAC{"a", "c"};

// Scalar weight for the brute-force oracle, already divided by (q;q)_n.
Rational oracle_weight(const QContext& ctx, OperatorId op, int n) {
  Rational w = testing::naive_q_factorial(ctx.q(), n).reciprocal();
  if (op == OperatorId::E_btheta || op == OperatorId::E_bDq) {
    w *= ctx.q().pow(static_cast<std::int64_t>(n) * (n - 1) / 2);
  }
  if (op == OperatorId::T_btheta_minus && n % 2 == 1) w = -w;
  return w;
}

bool oracle_uses_theta(OperatorId op) {
  return op == OperatorId::E_btheta || op == OperatorId::T_btheta_plus ||
         op == OperatorId::T_btheta_minus;
}

}  // namespace

TEST_CASE("operator ids round-trip through their names") {
  for (OperatorId op : kAllOperators) CHECK(parse_operator(to_string(op)) == op);
  CHECK_FALSE(parse_operator("T_bDQ").has_value());
}

TEST_CASE("dq") {
  CHECK(dq(poly(kHalf, "a^2", kA, 4), "a") == poly(kHalf, "3/4*a", kA, 3));
  CHECK(dq(poly(kHalf, "7", kA, 4), "a").is_zero());
  CHECK(dq(poly(kHalf, "c", {"c"}, 4), "c") == poly(kHalf, "1/2", {"c"}, 3));
  CHECK(dq(poly(kHalf, "a", kA, 4), "a").exact_to() == 3);
  CHECK(code_of([] { dq(poly(kHalf, "1", kA, 0), "a"); }) == ErrorCode::ExactnessExhausted);
  CHECK(code_of([] { dq(poly(kHalf, "a", kA, 2), "z"); }) == ErrorCode::UnknownVariable);
}

TEST_CASE("eta_inv") {
  CHECK(eta_inv(poly(kHalf, "a", kA, 4), "a") == poly(kHalf, "2*a", kA, 4));
  CHECK(eta_inv(poly(kHalf, "5", kA, 4), "a") == poly(kHalf, "5", kA, 4));
  const auto f = random_series(kHalf, 4, kAB, 5, 9);
  CHECK(eta_inv(dilate(f, "a", 1), "a") == f);
}

TEST_CASE("theta") {
  CHECK(theta(poly(kHalf, "a", kA, 4), "a") == poly(kHalf, "1/2", kA, 3));  // 1 - q
  CHECK(theta(poly(kHalf, "3", kA, 4), "a").is_zero());
  CHECK(theta(poly(kHalf, "a^2", kA, 4), "a") == poly(kHalf, "3/2*a", kA, 3));
  CHECK(code_of([] { theta(poly(kHalf, "1", kA, 0), "a"); }) == ErrorCode::ExactnessExhausted);
}

TEST_CASE("pochhammer_series") {
  const auto a = poly(kHalf, "a", kA, 12);
  CHECK(pochhammer_series(*kHalf, a, 0) == poly(kHalf, "1", kA, 12));
  CHECK(pochhammer_series(*kHalf, a, 1) == poly(kHalf, "1 - a", kA, 12));
  // (1 - a)(1 - qa) = 1 - (1 + q) a + q a^2
  CHECK(pochhammer_series(*kHalf, a, 2) == poly(kHalf, "1 - 3/2*a + 1/2*a^2", kA, 12));
  // Evaluating at a scalar agrees with the scalar Pochhammer symbol.
  for (int n = 0; n <= 6; ++n) {
    const auto p = pochhammer_series(*kHalf, a, n);
    Rational at_three(0);
    for (const auto& [e, c] : p.terms()) at_three += c * Rational(3).pow(e[0]);
    CHECK(at_three == q_pochhammer_scalar(*kHalf, Rational(3), n));
  }
  CHECK(code_of([&] { pochhammer_series(*kHalf, poly(kHalf, "a^2", kA, 12), 7); }) ==
        ErrorCode::DegreeOverflow);
}

TEST_CASE("exponential operator examples") {
  const auto a2 = poly(kHalf, "a^2", kA, 6);
  CHECK(apply_exp_operator(OperatorId::T_bDq, a2, "a", "b") ==
        poly(kHalf, "a^2 + 3/2*a*b + b^2", kAB, 6));
  CHECK(apply_exp_operator(OperatorId::E_bDq, a2, "a", "b") ==
        poly(kHalf, "a^2 + 3/2*a*b + 1/2*b^2", kAB, 6));
  CHECK(apply_exp_operator(OperatorId::E_btheta, poly(kHalf, "a", kA, 6), "a", "b") ==
        poly(kHalf, "a + b", kAB, 6));
  CHECK(apply_exp_operator(OperatorId::T_btheta_minus, poly(kHalf, "a", kA, 6), "a", "b") ==
        poly(kHalf, "a - b", kAB, 6));

  const auto c_only = poly(kHalf, "3 + c^2", kAC, 5);
  for (OperatorId op : {OperatorId::T_bDq, OperatorId::E_btheta, OperatorId::E_bDq,
                        OperatorId::T_btheta_plus, OperatorId::T_btheta_minus}) {
    CAPTURE(to_string(op));
    CHECK(apply_exp_operator(op, c_only, "a", "b") == extend_vars(c_only, {"a", "c", "b"}));
  }

  CHECK(code_of([] { apply_exp_operator(OperatorId::T_bDq, poly(kHalf, "a", kAB, 2), "a", "b"); }) ==
        ErrorCode::VariableCollision);
  CHECK(code_of([] { apply_exp_operator(OperatorId::Cauchy_Dq, poly(kHalf, "a", kA, 2), "a", "b"); }) ==
        ErrorCode::OutOfRange);
}

TEST_CASE("cauchy operator examples") {
  const auto c = poly(kHalf, "c", kAC, 6);
  const std::vector<std::string> acb{"a", "c", "b"};
  CHECK(apply_cauchy_dq(c, "a", "b", "c") == poly(kHalf, "c + b - a*b", acb, 6));
  CHECK(apply_cauchy_theta(c, "a", "b", "c") == poly(kHalf, "c + b + a*b", acb, 6));
  CHECK(apply_cauchy_dq(poly(kHalf, "4", kAC, 6), "a", "b", "c") == poly(kHalf, "4", acb, 6));
  CHECK(apply_cauchy_theta(poly(kHalf, "4", kAC, 6), "a", "b", "c") == poly(kHalf, "4", acb, 6));
  CHECK(code_of([&] { apply_cauchy_dq(c, "a", "c", "c"); }) == ErrorCode::VariableCollision);
  CHECK(code_of([&] { apply_cauchy_dq(c, "a", "b", "a"); }) == ErrorCode::VariableCollision);
  CHECK(code_of([&] { apply_cauchy_theta(poly(kHalf, "c", {"c"}, 3), "a", "b", "c"); }) ==
        ErrorCode::UnknownVariable);
}

TEST_CASE("monomial laws match the definitions") {
  for (const Rational& q : testing::property_qs()) {
    CAPTURE(q);
    const auto ctx = make_context(q, 12);
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
      const auto f = random_series(ctx, seed, {"a", "c"}, 7, 9);
      for (const char* v : {"a", "c"}) {
        CHECK(dq(f, v) == testing::definitional_dq(f, v));
        CHECK(theta(f, v) == testing::definitional_theta(f, v));
        CHECK(theta(f, v) == eta_inv(dq(f, v), v));
      }
    }
  }
}

TEST_CASE("q-Leibniz rule") {
  for (const Rational& q : testing::property_qs()) {
    const auto ctx = make_context(q, 12);
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
      const auto f = random_series(ctx, 2 * seed, kAB, 6, 9);
      const auto g = random_series(ctx, 2 * seed + 1, kAB, 6, 9);
      const auto lhs = dq(mul(f, g), "a");
      const auto rhs = add(mul(g, dq(f, "a")), mul(dilate(f, "a", 1), dq(g, "a")));
      CHECK(lhs == truncate(rhs, lhs.exact_to()));
    }
  }
}

TEST_CASE("exponential operators agree with the brute-force sum") {
  for (const Rational& q : testing::property_qs()) {
    const auto ctx = make_context(q, 12);
    for (OperatorId op : {OperatorId::T_bDq, OperatorId::E_btheta, OperatorId::E_bDq,
                          OperatorId::T_btheta_plus, OperatorId::T_btheta_minus}) {
      for (std::uint64_t seed = 0; seed < 8; ++seed) {
        const auto f = random_series(ctx, seed, kAC, 6, 9);
        const auto expected = testing::brute_exp_operator(
            f, "a", "b", oracle_uses_theta(op), [&](int n) { return oracle_weight(*ctx, op, n); });
        CHECK(apply_exp_operator(op, f, "a", "b") == expected);
      }
    }
  }
}

TEST_CASE("linearity of every operator application") {
  const auto ctx = make_context(Rational(2, 3), 12);
  const Rational alpha(-3, 4), beta(5);
  for (OperatorId op : kAllOperators) {
    CAPTURE(to_string(op));
    OperatorRoles roles;
    roles.src = is_cauchy(op) ? "c" : "a";
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const auto f = random_series(ctx, 2 * seed, kAC, 6, 9);
      const auto g = random_series(ctx, 2 * seed + 1, kAC, 6, 9);
      const auto lhs = apply_operator(op, add(scale(f, alpha), scale(g, beta)), roles);
      const auto rhs = add(scale(apply_operator(op, f, roles), alpha),
                           scale(apply_operator(op, g, roles), beta));
      CHECK(lhs == rhs);
      CHECK(is_canonical(lhs));
    }
  }
}

TEST_CASE("operator output is exact up to the input bound") {
  // Recompute from a longer expansion of the same boundary at a larger
  // max_order: coefficients up to the short bound must coincide.
  for (const Rational& q : {Rational(1, 2), Rational(9, 10)}) {
    const auto small = make_context(q, 8);
    const auto large = make_context(q, 14);
    for (OperatorId op : kAllOperators) {
      CAPTURE(to_string(op));
      OperatorRoles roles;
      roles.src = is_cauchy(op) ? "c" : "a";
      for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto f_long = random_series(large, seed, kAC, 12, 9);
        MultiSeries f_short(small, kAC, 5);
        for (const auto& [e, c] : f_long.terms()) f_short.accumulate(e, c);

        const auto short_out = apply_operator(op, f_short, roles);
        const auto long_out = apply_operator(op, f_long, roles);
        CHECK(short_out.exact_to() == 5);
        MultiSeries long_cut(small, long_out.vars(), 5);
        for (const auto& [e, c] : long_out.terms()) long_cut.accumulate(e, c);
        CHECK(short_out == long_cut);
      }
    }
  }
}

TEST_CASE("identity at b = 0") {
  const auto ctx = make_context(Rational(3, 5), 12);
  for (OperatorId op : kAllOperators) {
    OperatorRoles roles;
    roles.src = is_cauchy(op) ? "c" : "a";
    const auto f = random_series(ctx, 11, kAC, 6, 9);
    const auto out = apply_operator(op, f, roles);
    CHECK(set_var_zero(out, "b") == extend_vars(f, out.vars()));
  }
}

TEST_CASE("a = 0 degeneration of the Cauchy operators") {
  for (const Rational& q : testing::property_qs()) {
    const auto ctx = make_context(q, 12);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      // Boundary free of a: the only a-dependence of the output is the weight.
      const auto f = extend_vars(random_series(ctx, seed, {"c"}, 6, 9), kAC);
      const auto plain_dq = apply_exp_operator(OperatorId::T_bDq, f, "c", "b");
      const auto plain_theta = apply_exp_operator(OperatorId::E_btheta, f, "c", "b");
      CHECK(set_var_zero(apply_cauchy_dq(f, "a", "b", "c"), "a") == plain_dq);
      CHECK(set_var_zero(apply_cauchy_theta(f, "a", "b", "c"), "a") == plain_theta);
    }
  }
}
