#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "qfunc/series.hpp"

namespace qfunc {

enum class OperatorId {
  T_bDq,
  E_btheta,
  E_bDq,
  T_btheta_plus,
  T_btheta_minus,
  Cauchy_Dq,
  Cauchy_theta,
};

inline constexpr OperatorId kAllOperators[] = {
    OperatorId::T_bDq,         OperatorId::E_btheta,       OperatorId::E_bDq,
    OperatorId::T_btheta_plus, OperatorId::T_btheta_minus, OperatorId::Cauchy_Dq,
    OperatorId::Cauchy_theta,
};

std::string_view to_string(OperatorId op);
std::optional<OperatorId> parse_operator(std::string_view name);
bool is_cauchy(OperatorId op);

/// Jackson q-derivative (f(x) - f(qx)) / x with respect to var.
/// x^k -> (1 - q^k) x^(k-1).
MultiSeries dq(const MultiSeries& f, const std::string& var);

/// x -> x / q.
MultiSeries eta_inv(const MultiSeries& f, const std::string& var);

/// theta = eta^{-1} after D_q: (f(x/q) - f(x)) / (x/q).
/// x^k -> (q^(1-k) - q) x^(k-1).
MultiSeries theta(const MultiSeries& f, const std::string& var);

/// prod_{k<n} (1 - g q^k); the empty product is the constant 1 at g's
/// exactness.
MultiSeries pochhammer_series(const QContext& ctx, const MultiSeries& g, int n);

/// Term-by-term action sum_n w_n b^n Op^n{f} with respect to src_var, where
/// Op is D_q or theta and w_n is the operator's weight. b_var is appended
/// to f's variables. Applies to the five exponential operators.
MultiSeries apply_exp_operator(OperatorId op, const MultiSeries& f, const std::string& src_var,
                               const std::string& b_var);

/// First Cauchy operator T(a, b; D_q) acting on c_var:
/// sum_n (a;q)_n / (q;q)_n b^n D_q^n{f}.
MultiSeries apply_cauchy_dq(const MultiSeries& f, const std::string& a_var,
                            const std::string& b_var, const std::string& c_var);

/// Second Cauchy operator T(-1/a, ab; theta) acting on c_var, in the
/// polynomial form sum_n prod_{k<n}(a + q^k) / (q;q)_n b^n theta^n{f}.
MultiSeries apply_cauchy_theta(const MultiSeries& f, const std::string& a_var,
                               const std::string& b_var, const std::string& c_var);

/// Roles for a generic operator application. For the exponential operators
/// only src and b are used; the Cauchy operators act on c = src.
struct OperatorRoles {
  std::string src = "a";
  std::string b = "b";
  std::string a = "a";
};

MultiSeries apply_operator(OperatorId op, const MultiSeries& f, const OperatorRoles& roles);

}  // namespace qfunc
