#include "qfunc/qops.hpp"

#include <array>
#include <utility>

#include "qfunc/error.hpp"

namespace qfunc {

namespace {

constexpr std::array<std::pair<OperatorId, std::string_view>, 7> kOperatorNames{{
    {OperatorId::T_bDq, "T_bDq"},
    {OperatorId::E_btheta, "E_btheta"},
    {OperatorId::E_bDq, "E_bDq"},
    {OperatorId::T_btheta_plus, "T_btheta_plus"},
    {OperatorId::T_btheta_minus, "T_btheta_minus"},
    {OperatorId::Cauchy_Dq, "Cauchy_Dq"},
    {OperatorId::Cauchy_theta, "Cauchy_theta"},
}};

// Shared shape of dq and theta: x^k -> multiplier(k) x^(k-1).
template <typename Multiplier>
MultiSeries lower_degree(const MultiSeries& f, const std::string& var, Multiplier&& multiplier) {
  const std::size_t idx = f.index_of(var);
  if (f.exact_to() == 0) {
    throw Error(ErrorCode::ExactnessExhausted,
                "q-difference operator applied to a series exact only to degree 0");
  }
  MultiSeries out(f.context_ptr(), f.vars(), f.exact_to() - 1);
  for (const auto& [e, c] : f.terms()) {
    if (e[idx] == 0) continue;
    ExponentVector lowered = e;
    --lowered[idx];
    out.accumulate(lowered, c * multiplier(e[idx]));
  }
  return out;
}

void require_var(const MultiSeries& f, const std::string& var, const char* role) {
  if (!f.has_var(var)) {
    throw Error(ErrorCode::UnknownVariable,
                std::string(role) + " variable '" + var + "' is not declared by the series");
  }
}

void require_fresh(const MultiSeries& f, const std::string& var) {
  if (f.has_var(var)) {
    throw Error(ErrorCode::VariableCollision,
                "new variable '" + var + "' is already declared by the series");
  }
}

std::vector<std::string> with_appended(std::vector<std::string> vars, const std::string& extra) {
  vars.push_back(extra);
  return vars;
}

bool uses_theta(OperatorId op) {
  return op == OperatorId::E_btheta || op == OperatorId::T_btheta_plus ||
         op == OperatorId::T_btheta_minus || op == OperatorId::Cauchy_theta;
}

// n-th weight of an exponential operator, without the 1/(q;q)_n factor.
Rational exp_weight(const QContext& ctx, OperatorId op, int n) {
  switch (op) {
    case OperatorId::T_bDq:
    case OperatorId::T_btheta_plus:
      return Rational(1);
    case OperatorId::T_btheta_minus:
      return Rational(n % 2 == 0 ? 1 : -1);
    case OperatorId::E_btheta:
    case OperatorId::E_bDq:
      return ctx.q_pow(static_cast<std::int64_t>(n) * (n - 1) / 2);
    default:
      break;
  }
  throw Error(ErrorCode::OutOfRange,
              "operator " + std::string(to_string(op)) + " is not an exponential operator");
}

// sum_{n=0}^{exact_to} weight(n) / (q;q)_n * b^n * Op^n{f}, where weight(n)
// is a series over f.vars + [b].
template <typename Weight>
MultiSeries operator_sum(const MultiSeries& f, const std::string& op_var, const std::string& b_var,
                         bool theta_kind, Weight&& weight) {
  const QContext& ctx = f.context();
  const auto out_vars = with_appended(f.vars(), b_var);
  MultiSeries out(f.context_ptr(), out_vars, f.exact_to());

  MultiSeries power = f;  // Op^n{f}
  for (int n = 0; n <= f.exact_to(); ++n) {
    if (n > 0) power = theta_kind ? theta(power, op_var) : dq(power, op_var);
    if (power.is_zero()) break;
    MultiSeries term = mul_by_var(extend_vars(power, out_vars), b_var, n);
    term = mul(weight(n, out_vars), term);
    term = scale(term, ctx.q_factorial(n).reciprocal());
    out = add(out, term);
  }
  return out;
}

}  // namespace

std::string_view to_string(OperatorId op) {
  for (const auto& [id, name] : kOperatorNames) {
    if (id == op) return name;
  }
  return "?";
}

std::optional<OperatorId> parse_operator(std::string_view name) {
  for (const auto& [id, n] : kOperatorNames) {
    if (n == name) return id;
  }
  return std::nullopt;
}

bool is_cauchy(OperatorId op) {
  return op == OperatorId::Cauchy_Dq || op == OperatorId::Cauchy_theta;
}

MultiSeries dq(const MultiSeries& f, const std::string& var) {
  const QContext& ctx = f.context();
  return lower_degree(f, var, [&](int k) { return Rational(1) - ctx.q_pow(k); });
}

MultiSeries eta_inv(const MultiSeries& f, const std::string& var) { return dilate(f, var, -1); }

MultiSeries theta(const MultiSeries& f, const std::string& var) {
  const QContext& ctx = f.context();
  return lower_degree(f, var, [&](int k) { return ctx.q_pow(1 - k) - ctx.q(); });
}

MultiSeries pochhammer_series(const QContext& ctx, const MultiSeries& g, int n) {
  if (n < 0) throw Error(ErrorCode::OutOfRange, "negative Pochhammer length");
  if (!(g.context() == ctx)) {
    throw Error(ErrorCode::ContextMismatch, "Pochhammer argument built over another context");
  }
  if (!g.is_zero() && static_cast<long>(n) * g.max_degree() > ctx.max_order()) {
    throw Error(ErrorCode::DegreeOverflow,
                "degree overflow: (g;q)_" + std::to_string(n) + " exceeds max_order");
  }
  const MultiSeries one = constant_series(g.context_ptr(), g.vars(), g.exact_to(), Rational(1));
  MultiSeries result = one;
  for (int k = 0; k < n; ++k) {
    result = mul(result, sub(one, scale(g, ctx.q_pow(k))));
  }
  return result;
}

MultiSeries apply_exp_operator(OperatorId op, const MultiSeries& f, const std::string& src_var,
                               const std::string& b_var) {
  if (is_cauchy(op)) {
    throw Error(ErrorCode::OutOfRange,
                "apply_exp_operator does not handle " + std::string(to_string(op)));
  }
  require_var(f, src_var, "source");
  require_fresh(f, b_var);
  const QContext& ctx = f.context();
  return operator_sum(f, src_var, b_var, uses_theta(op),
                      [&](int n, const std::vector<std::string>& vars) {
                        return constant_series(f.context_ptr(), vars, ctx.max_order(),
                                               exp_weight(ctx, op, n));
                      });
}

namespace {

// The monomial a_var over f.vars + [b_var], exact through max_order.
MultiSeries role_monomial(const MultiSeries& f, const std::string& a_var,
                          const std::string& b_var) {
  const auto vars = with_appended(f.vars(), b_var);
  ExponentVector e(vars.size(), 0);
  e[f.index_of(a_var)] = 1;
  return monomial_series(f.context_ptr(), vars, f.context().max_order(), e);
}

void check_cauchy_roles(const MultiSeries& f, const std::string& a_var, const std::string& b_var,
                        const std::string& c_var) {
  require_var(f, a_var, "a");
  require_var(f, c_var, "c");
  require_fresh(f, b_var);
  if (a_var == c_var) {
    throw Error(ErrorCode::VariableCollision, "a and c roles must be distinct variables");
  }
}

}  // namespace

MultiSeries apply_cauchy_dq(const MultiSeries& f, const std::string& a_var,
                            const std::string& b_var, const std::string& c_var) {
  check_cauchy_roles(f, a_var, b_var, c_var);
  const QContext& ctx = f.context();
  const MultiSeries a = role_monomial(f, a_var, b_var);
  return operator_sum(f, c_var, b_var, false, [&](int n, const std::vector<std::string>&) {
    return pochhammer_series(ctx, a, n);
  });
}

MultiSeries apply_cauchy_theta(const MultiSeries& f, const std::string& a_var,
                               const std::string& b_var, const std::string& c_var) {
  check_cauchy_roles(f, a_var, b_var, c_var);
  const QContext& ctx = f.context();
  const MultiSeries a = role_monomial(f, a_var, b_var);
  // prod_{k<n} (a + q^k); operator_sum asks for n = 0, 1, 2, ... in order.
  MultiSeries product = constant_series(a.context_ptr(), a.vars(), a.exact_to(), Rational(1));
  return operator_sum(f, c_var, b_var, true, [&](int n, const std::vector<std::string>&) {
    if (n > 0) {
      const auto shift = constant_series(a.context_ptr(), a.vars(), a.exact_to(), ctx.q_pow(n - 1));
      product = mul(product, add(a, shift));
    }
    return product;
  });
}

MultiSeries apply_operator(OperatorId op, const MultiSeries& f, const OperatorRoles& roles) {
  switch (op) {
    case OperatorId::Cauchy_Dq:
      return apply_cauchy_dq(f, roles.a, roles.b, roles.src);
    case OperatorId::Cauchy_theta:
      return apply_cauchy_theta(f, roles.a, roles.b, roles.src);
    default:
      return apply_exp_operator(op, f, roles.src, roles.b);
  }
}

}  // namespace qfunc
