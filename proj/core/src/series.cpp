#include "qfunc/series.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "qfunc/error.hpp"

namespace qfunc {

namespace {

void check_distinct(const std::vector<std::string>& vars) {
  std::set<std::string> seen;
  for (const auto& v : vars) {
    if (!seen.insert(v).second) {
      throw Error(ErrorCode::DuplicateVariable, "duplicate variable name '" + v + "'");
    }
  }
}

void check_compatible(const MultiSeries& f, const MultiSeries& g) {
  if (f.context_ptr() != g.context_ptr() && !(f.context() == g.context())) {
    throw Error(ErrorCode::ContextMismatch, "series built over different q-contexts");
  }
  if (f.vars() != g.vars()) {
    throw Error(ErrorCode::DimensionMismatch, "series declare different variables");
  }
}

MultiSeries empty_like(const MultiSeries& f, int exact_to) {
  return MultiSeries(f.context_ptr(), f.vars(), exact_to);
}

// Visits every exponent vector of length n and total degree <= bound, in
// lexicographic order.
template <typename Fn>
void for_each_monomial(std::size_t n, int bound, Fn&& fn) {
  ExponentVector e(n, 0);
  auto rec = [&](auto&& self, std::size_t pos, int budget) -> void {
    if (pos == n) {
      fn(static_cast<const ExponentVector&>(e));
      return;
    }
    for (int k = 0; k <= budget; ++k) {
      e[pos] = k;
      self(self, pos + 1, budget - k);
    }
    e[pos] = 0;
  };
  rec(rec, 0, bound);
}

}  // namespace

int total_degree(const ExponentVector& e) { return std::accumulate(e.begin(), e.end(), 0); }

MultiSeries::MultiSeries(ContextPtr ctx, std::vector<std::string> vars, int exact_to)
    : ctx_(std::move(ctx)), vars_(std::move(vars)), exact_to_(exact_to) {
  if (!ctx_) throw Error(ErrorCode::ContextMismatch, "series requires a q-context");
  check_distinct(vars_);
  if (exact_to_ < 0 || exact_to_ > ctx_->max_order()) {
    throw Error(ErrorCode::DegreeOverflow,
                "exact_to " + std::to_string(exact_to_) + " outside [0, max_order=" +
                    std::to_string(ctx_->max_order()) + "]");
  }
}

bool MultiSeries::has_var(const std::string& name) const {
  return std::find(vars_.begin(), vars_.end(), name) != vars_.end();
}

std::size_t MultiSeries::index_of(const std::string& name) const {
  const auto it = std::find(vars_.begin(), vars_.end(), name);
  if (it == vars_.end()) throw Error(ErrorCode::UnknownVariable, "unknown variable '" + name + "'");
  return static_cast<std::size_t>(it - vars_.begin());
}

int MultiSeries::max_degree() const {
  int best = -1;
  for (const auto& [e, c] : terms_) best = std::max(best, total_degree(e));
  return best;
}

void MultiSeries::accumulate(const ExponentVector& e, const Rational& c) {
  if (c.is_zero() || total_degree(e) > exact_to_) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

bool operator==(const MultiSeries& lhs, const MultiSeries& rhs) {
  return lhs.exact_to_ == rhs.exact_to_ && lhs.vars_ == rhs.vars_ &&
         (lhs.ctx_ == rhs.ctx_ || *lhs.ctx_ == *rhs.ctx_) && lhs.terms_ == rhs.terms_;
}

MultiSeries make_series(ContextPtr ctx, std::vector<std::string> vars, int exact_to,
                        const std::vector<std::pair<ExponentVector, Rational>>& terms) {
  MultiSeries out(std::move(ctx), std::move(vars), exact_to);
  for (const auto& [e, c] : terms) {
    if (e.size() != out.nvars()) {
      throw Error(ErrorCode::DimensionMismatch,
                  "exponent vector of length " + std::to_string(e.size()) + " for " +
                      std::to_string(out.nvars()) + " variables");
    }
    if (std::any_of(e.begin(), e.end(), [](int k) { return k < 0; })) {
      throw Error(ErrorCode::DimensionMismatch, "negative exponent");
    }
    if (total_degree(e) > exact_to) {
      throw Error(ErrorCode::DegreeOverflow, "degree overflow: term of degree " +
                                                 std::to_string(total_degree(e)) +
                                                 " exceeds exact_to " + std::to_string(exact_to));
    }
    out.accumulate(e, c);
  }
  return out;
}

MultiSeries constant_series(ContextPtr ctx, std::vector<std::string> vars, int exact_to,
                            const Rational& c) {
  MultiSeries out(std::move(ctx), std::move(vars), exact_to);
  out.accumulate(ExponentVector(out.nvars(), 0), c);
  return out;
}

MultiSeries monomial_series(ContextPtr ctx, std::vector<std::string> vars, int exact_to,
                            const ExponentVector& e, const Rational& coef) {
  return make_series(std::move(ctx), std::move(vars), exact_to, {{e, coef}});
}

MultiSeries add(const MultiSeries& f, const MultiSeries& g) {
  check_compatible(f, g);
  MultiSeries out = empty_like(f, std::min(f.exact_to(), g.exact_to()));
  for (const auto& [e, c] : f.terms()) out.accumulate(e, c);
  for (const auto& [e, c] : g.terms()) out.accumulate(e, c);
  return out;
}

MultiSeries sub(const MultiSeries& f, const MultiSeries& g) {
  check_compatible(f, g);
  MultiSeries out = empty_like(f, std::min(f.exact_to(), g.exact_to()));
  for (const auto& [e, c] : f.terms()) out.accumulate(e, c);
  for (const auto& [e, c] : g.terms()) out.accumulate(e, -c);
  return out;
}

MultiSeries mul(const MultiSeries& f, const MultiSeries& g) {
  check_compatible(f, g);
  const int bound = std::min(f.exact_to(), g.exact_to());
  MultiSeries out = empty_like(f, bound);
  ExponentVector e(f.nvars());
  for (const auto& [ef, cf] : f.terms()) {
    const int df = total_degree(ef);
    if (df > bound) continue;
    for (const auto& [eg, cg] : g.terms()) {
      if (df + total_degree(eg) > bound) continue;
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ef[i] + eg[i];
      out.accumulate(e, cf * cg);
    }
  }
  return out;
}

MultiSeries scale(const MultiSeries& f, const Rational& r) {
  MultiSeries out = empty_like(f, f.exact_to());
  if (r.is_zero()) return out;
  for (const auto& [e, c] : f.terms()) out.accumulate(e, c * r);
  return out;
}

MultiSeries negate(const MultiSeries& f) { return scale(f, Rational(-1)); }

MultiSeries extend_vars(const MultiSeries& f, const std::vector<std::string>& new_vars) {
  MultiSeries out(f.context_ptr(), new_vars, f.exact_to());
  std::vector<std::size_t> target(f.nvars());
  for (std::size_t i = 0; i < f.nvars(); ++i) {
    const auto it = std::find(new_vars.begin(), new_vars.end(), f.vars()[i]);
    if (it == new_vars.end()) {
      throw Error(ErrorCode::UnknownVariable,
                  "extend_vars: new variable list is missing '" + f.vars()[i] + "'");
    }
    target[i] = static_cast<std::size_t>(it - new_vars.begin());
  }
  ExponentVector e(new_vars.size());
  for (const auto& [ef, c] : f.terms()) {
    std::fill(e.begin(), e.end(), 0);
    for (std::size_t i = 0; i < ef.size(); ++i) e[target[i]] = ef[i];
    out.accumulate(e, c);
  }
  return out;
}

MultiSeries dilate(const MultiSeries& f, const std::string& var, int m) {
  const std::size_t idx = f.index_of(var);
  if (m == 0) return f;
  const Rational step = f.context().q_pow(m);
  std::vector<Rational> powers{Rational(1)};
  MultiSeries out = empty_like(f, f.exact_to());
  for (const auto& [e, c] : f.terms()) {
    const auto k = static_cast<std::size_t>(e[idx]);
    while (powers.size() <= k) powers.push_back(powers.back() * step);
    out.accumulate(e, c * powers[k]);
  }
  return out;
}

MultiSeries mul_by_monomial(const MultiSeries& f, const ExponentVector& e) {
  if (e.size() != f.nvars()) {
    throw Error(ErrorCode::DimensionMismatch, "monomial has wrong number of exponents");
  }
  const int shift = total_degree(e);
  const int max_order = f.context().max_order();
  if (f.max_degree() + shift > max_order) {
    throw Error(ErrorCode::DegreeOverflow,
                "degree overflow: product degree " + std::to_string(f.max_degree() + shift) +
                    " exceeds max_order " + std::to_string(max_order));
  }
  MultiSeries out = empty_like(f, std::min(f.exact_to() + shift, max_order));
  ExponentVector shifted(e.size());
  for (const auto& [ef, c] : f.terms()) {
    for (std::size_t i = 0; i < e.size(); ++i) shifted[i] = ef[i] + e[i];
    out.accumulate(shifted, c);
  }
  return out;
}

MultiSeries mul_by_var(const MultiSeries& f, const std::string& var, int power) {
  return mul_by_monomial(f, unit_exponent(f, var, power));
}

MultiSeries divide_by_var(const MultiSeries& f, const std::string& var) {
  const std::size_t idx = f.index_of(var);
  if (f.exact_to() == 0) {
    throw Error(ErrorCode::ExactnessExhausted, "cannot divide a series exact only to degree 0");
  }
  MultiSeries out = empty_like(f, f.exact_to() - 1);
  for (const auto& [e, c] : f.terms()) {
    if (e[idx] == 0) {
      throw Error(ErrorCode::NotDivisible, "not divisible: a term is free of '" + var + "'");
    }
    ExponentVector lowered = e;
    --lowered[idx];
    out.accumulate(lowered, c);
  }
  return out;
}

MultiSeries set_var_zero(const MultiSeries& f, const std::string& var) {
  const std::size_t idx = f.index_of(var);
  MultiSeries out = empty_like(f, f.exact_to());
  for (const auto& [e, c] : f.terms()) {
    if (e[idx] == 0) out.accumulate(e, c);
  }
  return out;
}

MultiSeries truncate(const MultiSeries& f, int bound) {
  if (bound >= f.exact_to()) return f;
  MultiSeries out = empty_like(f, std::max(bound, 0));
  for (const auto& [e, c] : f.terms()) out.accumulate(e, c);
  return out;
}

Rational coefficient(const MultiSeries& f, const ExponentVector& e) {
  if (e.size() != f.nvars()) {
    throw Error(ErrorCode::DimensionMismatch, "exponent vector has wrong length");
  }
  if (total_degree(e) > f.exact_to()) {
    throw Error(ErrorCode::OutsideExactRegion,
                "outside exact region: degree " + std::to_string(total_degree(e)) +
                    " > exact_to " + std::to_string(f.exact_to()));
  }
  const auto it = f.terms().find(e);
  return it == f.terms().end() ? Rational(0) : it->second;
}

ExponentVector unit_exponent(const MultiSeries& f, const std::string& var, int power) {
  ExponentVector e(f.nvars(), 0);
  e[f.index_of(var)] = power;
  return e;
}

MultiSeries random_series(ContextPtr ctx, std::uint64_t seed, std::vector<std::string> vars,
                          int exact_to, int coef_bound) {
  if (coef_bound < 0) throw Error(ErrorCode::OutOfRange, "coef_bound must be nonnegative");
  MultiSeries out(std::move(ctx), std::move(vars), exact_to);
  if (coef_bound == 0) return out;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> dist(-coef_bound, coef_bound);
  for_each_monomial(out.nvars(), exact_to,
                    [&](const ExponentVector& e) { out.accumulate(e, Rational(dist(rng))); });
  return out;
}

}  // namespace qfunc
