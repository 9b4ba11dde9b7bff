#include "qfunc/equations.hpp"

#include <algorithm>
#include <array>
#include <functional>

#include "qfunc/error.hpp"

namespace qfunc {

namespace {

constexpr std::array<std::pair<EquationId, std::string_view>, 6> kEquationNames{{
    {EquationId::THM_1_1, "thm1_1"},
    {EquationId::THM_1_2, "thm1_2"},
    {EquationId::EQ_1, "eq1"},
    {EquationId::EQ_2, "eq2"},
    {EquationId::THM_2_3, "thm2_3"},
    {EquationId::THM_2_4, "thm2_4"},
}};

void require_roles(EquationId eq, const MultiSeries& f, const std::vector<std::string>& roles) {
  for (const auto& v : roles) {
    if (!f.has_var(v)) {
      throw Error(ErrorCode::UnknownVariable, "equation " + std::string(to_string(eq)) +
                                                  " needs role variable '" + v +
                                                  "', which the series does not declare");
    }
  }
}

// f * x^e, first dropping the part of f that cannot affect coefficients at
// or below min(f.exact_to + deg e, max_order). Never overflows.
MultiSeries shifted(const MultiSeries& f, const ExponentVector& e) {
  const int d = total_degree(e);
  return mul_by_monomial(truncate(f, std::min(f.exact_to(), f.context().max_order() - d)), e);
}

// Role variables followed by any additional variables of `f`.
std::vector<std::string> solution_vars(EquationId eq, const MultiSeries& f, const Roles& roles) {
  auto vars = role_vars(eq, roles);
  for (const auto& v : f.vars()) {
    if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
  }
  return vars;
}

// Validates the boundary data and returns it declared without the boundary
// variable.
MultiSeries boundary_slice(EquationId eq, const MultiSeries& boundary, const Roles& roles) {
  require_roles(eq, boundary, boundary_vars(eq, roles));
  if (!boundary.has_var(roles.b)) return boundary;
  const std::size_t bi = boundary.index_of(roles.b);
  std::vector<std::string> vars;
  for (const auto& v : boundary.vars()) {
    if (v != roles.b) vars.push_back(v);
  }
  MultiSeries out(boundary.context_ptr(), vars, boundary.exact_to());
  for (const auto& [e, c] : boundary.terms()) {
    if (e[bi] != 0) {
      throw Error(ErrorCode::InvalidBoundary,
                  "boundary data mentions the boundary variable '" + roles.b + "'");
    }
    ExponentVector reduced = e;
    reduced.erase(reduced.begin() + static_cast<std::ptrdiff_t>(bi));
    out.accumulate(reduced, c);
  }
  return out;
}

// (g(x) - g(qx)) / x straight from the definition.
MultiSeries difference_quotient(const MultiSeries& g, const std::string& var) {
  return divide_by_var(sub(g, dilate(g, var, 1)), var);
}

// (g(x/q) - g(x)) / (x/q): the difference quotient followed by x -> x/q.
MultiSeries theta_quotient(const MultiSeries& g, const std::string& var) {
  return dilate(difference_quotient(g, var), var, -1);
}

MultiSeries const_like(const MultiSeries& g, const Rational& c) {
  return constant_series(g.context_ptr(), g.vars(), g.context().max_order(), c);
}

// alpha + beta * var, exact through max_order.
MultiSeries linear_in(const MultiSeries& g, const std::string& var, const Rational& alpha,
                      const Rational& beta) {
  ExponentVector e(g.nvars(), 0);
  e[g.index_of(var)] = 1;
  return add(const_like(g, alpha), monomial_series(g.context_ptr(), g.vars(),
                                                   g.context().max_order(), e, beta));
}

}  // namespace

std::string_view to_string(EquationId eq) {
  for (const auto& [id, name] : kEquationNames) {
    if (id == eq) return name;
  }
  return "?";
}

std::optional<EquationId> parse_equation(std::string_view name) {
  for (const auto& [id, n] : kEquationNames) {
    if (n == name) return id;
  }
  return std::nullopt;
}

bool is_three_variable(EquationId eq) { return eq == EquationId::EQ_1 || eq == EquationId::EQ_2; }

std::vector<std::string> role_vars(EquationId eq, const Roles& roles) {
  if (is_three_variable(eq)) return {roles.a, roles.b, roles.c};
  return {roles.a, roles.b};
}

std::vector<std::string> boundary_vars(EquationId eq, const Roles& roles) {
  if (is_three_variable(eq)) return {roles.a, roles.c};
  return {roles.a};
}

OperatorId dispatch_operator(EquationId eq) {
  switch (eq) {
    case EquationId::THM_1_1: return OperatorId::T_bDq;
    case EquationId::THM_1_2: return OperatorId::E_btheta;
    case EquationId::EQ_1: return OperatorId::Cauchy_Dq;
    case EquationId::EQ_2: return OperatorId::Cauchy_theta;
    case EquationId::THM_2_3: return OperatorId::E_bDq;
    case EquationId::THM_2_4: return OperatorId::T_btheta_plus;
  }
  return OperatorId::T_bDq;
}

OperatorId printed_operator(EquationId eq) {
  return eq == EquationId::THM_2_4 ? OperatorId::T_btheta_minus : dispatch_operator(eq);
}

MultiSeries residual(EquationId eq, const MultiSeries& f, const Roles& roles) {
  require_roles(eq, f, role_vars(eq, roles));

  // Dilation by q in each listed variable.
  const auto at = [&](std::initializer_list<const std::string*> vars) {
    MultiSeries g = f;
    for (const auto* v : vars) g = dilate(g, *v, 1);
    return g;
  };
  const auto x = [&](std::initializer_list<const std::string*> vars) {
    ExponentVector e(f.nvars(), 0);
    for (const auto* v : vars) ++e[f.index_of(*v)];
    return e;
  };
  const std::string* a = &roles.a;
  const std::string* b = &roles.b;
  const std::string* c = &roles.c;

  // Signed sum of monomial multiples of dilates of f.
  struct Term {
    int sign;
    ExponentVector monomial;
    MultiSeries series;
  };
  std::vector<Term> terms;
  switch (eq) {
    case EquationId::THM_1_1:
      // b f(aq,b) - a f(a,bq) - (b - a) f(a,b)
      terms = {{+1, x({b}), at({a})}, {-1, x({a}), at({b})}, {-1, x({b}), f}, {+1, x({a}), f}};
      break;
    case EquationId::THM_1_2:
      // a f(aq,b) - b f(a,bq) - (a - b) f(aq,bq)
      terms = {{+1, x({a}), at({a})},
               {-1, x({b}), at({b})},
               {-1, x({a}), at({a, b})},
               {+1, x({b}), at({a, b})}};
      break;
    case EquationId::EQ_1:
      // c(f - f(bq)) - b(f - f(cq) - a f(bq) + a f(bq,cq))
      terms = {{+1, x({c}), f},
               {-1, x({c}), at({b})},
               {-1, x({b}), f},
               {+1, x({b}), at({c})},
               {+1, x({a, b}), at({b})},
               {-1, x({a, b}), at({b, c})}};
      break;
    case EquationId::EQ_2:
      // c(f(bq,cq) - f(cq)) - b(f(bq,cq) - f(bq) - a f + a f(cq))
      terms = {{+1, x({c}), at({b, c})},
               {-1, x({c}), at({c})},
               {-1, x({b}), at({b, c})},
               {+1, x({b}), at({b})},
               {+1, x({a, b}), f},
               {-1, x({a, b}), at({c})}};
      break;
    case EquationId::THM_2_3:
      // a f + b f(aq,bq) - (a + b) f(a,bq)
      terms = {{+1, x({a}), f},
               {+1, x({b}), at({a, b})},
               {-1, x({a}), at({b})},
               {-1, x({b}), at({b})}};
      break;
    case EquationId::THM_2_4:
      // a f(aq,bq) + b f - (a + b) f(aq,b)
      terms = {{+1, x({a}), at({a, b})},
               {+1, x({b}), f},
               {-1, x({a}), at({a})},
               {-1, x({b}), at({a})}};
      break;
  }

  std::optional<MultiSeries> total;
  for (const auto& t : terms) {
    MultiSeries piece = shifted(t.series, t.monomial);
    if (t.sign < 0) piece = negate(piece);
    total = total ? add(*total, piece) : piece;
  }
  return *total;
}

MultiSeries solve_operator(EquationId eq, const MultiSeries& boundary, const Roles& roles,
                           std::optional<OperatorId> variant) {
  const MultiSeries g = boundary_slice(eq, boundary, roles);
  OperatorId op = dispatch_operator(eq);
  if (eq == EquationId::THM_2_4 && variant) {
    if (*variant != OperatorId::T_btheta_plus && *variant != OperatorId::T_btheta_minus) {
      throw Error(ErrorCode::OutOfRange, "thm2_4 accepts only the T_btheta_plus/minus variants");
    }
    op = *variant;
  }
  MultiSeries solution = [&] {
    switch (op) {
      case OperatorId::Cauchy_Dq: return apply_cauchy_dq(g, roles.a, roles.b, roles.c);
      case OperatorId::Cauchy_theta: return apply_cauchy_theta(g, roles.a, roles.b, roles.c);
      default: return apply_exp_operator(op, g, roles.a, roles.b);
    }
  }();
  return extend_vars(solution, solution_vars(eq, g, roles));
}

MultiSeries recurrence_step(EquationId eq, const MultiSeries& previous, int n, const Roles& roles) {
  const QContext& ctx = previous.context();
  const Rational inv = (Rational(1) - ctx.q_pow(n)).reciprocal();
  const Rational qn1 = ctx.q_pow(n - 1);
  switch (eq) {
    case EquationId::THM_1_1:
      // A_n = D_q{A_{n-1}} / (1 - q^n)
      return scale(difference_quotient(previous, roles.a), inv);
    case EquationId::THM_1_2:
      // A_n = q^(n-1) theta{A_{n-1}} / (1 - q^n)
      return scale(theta_quotient(previous, roles.a), qn1 * inv);
    case EquationId::EQ_1:
      // A_n = (1 - a q^(n-1)) D_q,c{A_{n-1}} / (1 - q^n)
      return scale(mul(linear_in(previous, roles.a, Rational(1), -qn1),
                       difference_quotient(previous, roles.c)),
                   inv);
    case EquationId::EQ_2:
      // A_n = (q^(n-1) + a) theta_c{A_{n-1}} / (1 - q^n)
      return scale(mul(linear_in(previous, roles.a, qn1, Rational(1)),
                       theta_quotient(previous, roles.c)),
                   inv);
    case EquationId::THM_2_3:
      // A_n = q^(n-1) D_q{A_{n-1}} / (1 - q^n)
      return scale(difference_quotient(previous, roles.a), qn1 * inv);
    case EquationId::THM_2_4:
      // A_n = theta{A_{n-1}} / (1 - q^n)
      return scale(theta_quotient(previous, roles.a), inv);
  }
  throw Error(ErrorCode::OutOfRange, "unknown equation");
}

MultiSeries solve_recurrence(EquationId eq, const MultiSeries& boundary, const Roles& roles) {
  MultiSeries slice = boundary_slice(eq, boundary, roles);
  const auto vars = solution_vars(eq, slice, roles);
  MultiSeries out = extend_vars(slice, vars);
  for (int n = 1; n <= boundary.exact_to(); ++n) {
    slice = recurrence_step(eq, slice, n, roles);
    if (slice.is_zero()) break;
    out = add(out, mul_by_var(extend_vars(slice, vars), roles.b, n));
  }
  return out;
}

std::optional<Witness> first_nonzero(const MultiSeries& f) {
  if (f.is_zero()) return std::nullopt;
  const auto& [e, c] = *f.terms().begin();
  return Witness{e, c};
}

VerificationReport verify(EquationId eq, const MultiSeries& boundary, const Roles& roles,
                          std::optional<OperatorId> variant) {
  VerificationReport report;
  report.equation = eq;
  report.variant = dispatch_operator(eq);
  if (eq == EquationId::THM_2_4 && variant) report.variant = *variant;

  const MultiSeries by_operator = solve_operator(eq, boundary, roles, variant);
  const MultiSeries by_recurrence = solve_recurrence(eq, boundary, roles);
  const MultiSeries r_operator = residual(eq, by_operator, roles);
  const MultiSeries r_recurrence = residual(eq, by_recurrence, roles);
  const MultiSeries difference = sub(by_operator, by_recurrence);

  report.checked_degree = difference.exact_to();
  report.residual_is_zero = r_operator.is_zero() && r_recurrence.is_zero();
  report.solvers_agree = difference.is_zero();
  for (const auto* s : {&r_operator, &r_recurrence, &difference}) {
    if (auto w = first_nonzero(*s)) {
      report.failure_witness = std::move(w);
      break;
    }
  }
  return report;
}

SignAdjudication adjudicate_thm2_4(const MultiSeries& boundary, const Roles& roles) {
  const MultiSeries truth = solve_recurrence(EquationId::THM_2_4, boundary, roles);
  SignAdjudication out;
  out.plus_matches =
      solve_operator(EquationId::THM_2_4, boundary, roles, OperatorId::T_btheta_plus) == truth;
  out.minus_matches =
      solve_operator(EquationId::THM_2_4, boundary, roles, OperatorId::T_btheta_minus) == truth;
  return out;
}

std::string_view to_string(DegenerationKind kind) {
  return kind == DegenerationKind::CauchyDqToT ? "cauchy_dq_to_T" : "cauchy_theta_to_E";
}

VerificationReport degeneration_check(const QContext& ctx, DegenerationKind kind, int max_n) {
  if (max_n < 0 || max_n > ctx.max_order()) {
    throw Error(ErrorCode::OutOfRange, "max_n outside [0, max_order]");
  }
  const bool dq_kind = kind == DegenerationKind::CauchyDqToT;
  VerificationReport report;
  report.equation = dq_kind ? EquationId::THM_1_1 : EquationId::THM_1_2;
  report.variant = dq_kind ? OperatorId::T_bDq : OperatorId::E_btheta;
  report.checked_degree = max_n;

  // Cauchy weights as polynomials in a, then evaluated at a = 0.
  const auto shared = std::make_shared<const QContext>(ctx);
  const std::vector<std::string> vars{"a"};
  const MultiSeries a = monomial_series(shared, vars, ctx.max_order(), {1});
  const MultiSeries one = constant_series(shared, vars, ctx.max_order(), Rational(1));
  MultiSeries theta_product = one;

  bool all_equal = true;
  for (int n = 0; n <= max_n; ++n) {
    if (!dq_kind && n > 0) theta_product = mul(theta_product, add(a, scale(one, ctx.q_pow(n - 1))));
    const MultiSeries weight = dq_kind ? pochhammer_series(ctx, a, n) : theta_product;
    const Rational cauchy = coefficient(set_var_zero(weight, "a"), {0}) / ctx.q_factorial(n);
    const Rational exponential =
        (dq_kind ? Rational(1) : ctx.q_pow(static_cast<std::int64_t>(n) * (n - 1) / 2)) /
        ctx.q_factorial(n);
    if (cauchy != exponential && all_equal) {
      all_equal = false;
      report.failure_witness = Witness{{n}, cauchy - exponential};
    }
  }
  report.residual_is_zero = all_equal;
  report.solvers_agree = all_equal;
  return report;
}

}  // namespace qfunc
