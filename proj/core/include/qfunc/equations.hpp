#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qfunc/qops.hpp"
#include "qfunc/series.hpp"

namespace qfunc {

/// The six q-functional equations. Two-variable equations use roles (a, b),
/// three-variable ones (a, b, c); b is always the boundary variable.
enum class EquationId { THM_1_1, THM_1_2, EQ_1, EQ_2, THM_2_3, THM_2_4 };

inline constexpr EquationId kAllEquations[] = {
    EquationId::THM_1_1, EquationId::THM_1_2, EquationId::EQ_1,
    EquationId::EQ_2,    EquationId::THM_2_3, EquationId::THM_2_4,
};

std::string_view to_string(EquationId eq);
std::optional<EquationId> parse_equation(std::string_view name);

/// Variable names bound to the roles a, b, c.
struct Roles {
  std::string a = "a";
  std::string b = "b";
  std::string c = "c";
};

bool is_three_variable(EquationId eq);
/// Role variables in canonical order: (a, b) or (a, b, c).
std::vector<std::string> role_vars(EquationId eq, const Roles& roles = {});
/// Role variables without the boundary variable b.
std::vector<std::string> boundary_vars(EquationId eq, const Roles& roles = {});

/// Operator solve_operator dispatches to by default. For THM_2_4 this is
/// T_btheta_plus, the variant the slice recurrence selects.
OperatorId dispatch_operator(EquationId eq);
/// Operator named in the published solution formula. Differs from
/// dispatch_operator only for THM_2_4 (T_btheta_minus).
OperatorId printed_operator(EquationId eq);

/// LHS - RHS of the equation evaluated on f. Exact to
/// min(f.exact_to + 1, max_order).
MultiSeries residual(EquationId eq, const MultiSeries& f, const Roles& roles = {});

/// Solution by the operator formula. `variant` overrides the operator for
/// THM_2_4 (T_btheta_plus or T_btheta_minus); it is ignored elsewhere.
MultiSeries solve_operator(EquationId eq, const MultiSeries& boundary, const Roles& roles = {},
                           std::optional<OperatorId> variant = std::nullopt);

/// One step of the slice recurrence: A_n from A_{n-1}, over the
/// non-boundary roles.
MultiSeries recurrence_step(EquationId eq, const MultiSeries& previous, int n,
                            const Roles& roles = {});

/// Solution by the b^n slice recurrence, A_0 = boundary.
MultiSeries solve_recurrence(EquationId eq, const MultiSeries& boundary, const Roles& roles = {});

struct Witness {
  ExponentVector monomial;
  Rational value;
  friend bool operator==(const Witness&, const Witness&) = default;
};

struct VerificationReport {
  EquationId equation = EquationId::THM_1_1;
  OperatorId variant = OperatorId::T_bDq;
  bool residual_is_zero = false;
  bool solvers_agree = false;
  int checked_degree = 0;
  std::optional<Witness> failure_witness;

  bool passed() const { return residual_is_zero && solvers_agree; }
};

/// First nonzero term in lexicographic order, or nullopt.
std::optional<Witness> first_nonzero(const MultiSeries& f);

/// Solves with both methods, checks the residuals of both solutions and
/// their agreement. Failures are reported, never thrown. The witness is the
/// first nonzero monomial of the operator solution's residual, else of the
/// recurrence solution's residual, else of their difference.
VerificationReport verify(EquationId eq, const MultiSeries& boundary, const Roles& roles = {},
                          std::optional<OperatorId> variant = std::nullopt);

/// Which T(±b theta) variant reproduces the recurrence solution of THM_2_4
/// on the given boundary.
struct SignAdjudication {
  bool plus_matches = false;
  bool minus_matches = false;
};
SignAdjudication adjudicate_thm2_4(const MultiSeries& boundary, const Roles& roles = {});

enum class DegenerationKind { CauchyDqToT, CauchyThetaToE };

std::string_view to_string(DegenerationKind kind);

/// Compares, for n = 0..max_n, the n-th Cauchy operator weight evaluated at
/// a = 0 against the n-th weight of the matching exponential operator.
VerificationReport degeneration_check(const QContext& ctx, DegenerationKind kind, int max_n);

}  // namespace qfunc
