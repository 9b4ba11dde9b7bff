#include "qfunc/series_io.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include <json.hpp>

#include "qfunc/error.hpp"

namespace qfunc {

namespace {

using ordered_json = nlohmann::ordered_json;

Error parse_error(const std::string& what) { return Error(ErrorCode::Parse, what); }

const nlohmann::json& field(const nlohmann::json& obj, const char* name) {
  const auto it = obj.find(name);
  if (it == obj.end()) throw parse_error(std::string("missing field \"") + name + "\"");
  return *it;
}

Rational rational_field(const nlohmann::json& value, const std::string& where) {
  if (value.is_string()) {
    try {
      return Rational::parse(value.get<std::string>());
    } catch (const Error& e) {
      throw parse_error("field \"" + where + "\": " + e.what());
    }
  }
  if (value.is_number_integer()) return Rational(value.get<long>());
  throw parse_error("field \"" + where + "\" must be a rational string");
}

// Graded order: lower total degree first, then lexicographically larger
// exponent vectors first.
bool render_before(const ExponentVector& x, const ExponentVector& y) {
  const int dx = total_degree(x);
  const int dy = total_degree(y);
  if (dx != dy) return dx < dy;
  return y < x;
}

class PolynomialLexer {
 public:
  explicit PolynomialLexer(std::string_view text) : text_(text) {}

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool done() {
    skip_ws();
    return pos_ >= text_.size();
  }
  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  bool consume(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  std::string digits() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number");
    return std::string(text_.substr(start, pos_ - start));
  }
  std::string identifier() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    return std::string(text_.substr(start, pos_ - start));
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw parse_error(what + " at offset " + std::to_string(pos_) + " in \"" +
                      std::string(text_) + "\"");
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string to_json(const MultiSeries& f) {
  ordered_json out;
  out["q"] = f.context().q().to_string();
  out["vars"] = f.vars();
  out["exact_to"] = f.exact_to();
  ordered_json terms = ordered_json::array();
  for (const auto& [e, c] : f.terms()) {
    ordered_json term;
    term["exp"] = e;
    term["coef"] = c.to_string();
    terms.push_back(std::move(term));
  }
  out["terms"] = std::move(terms);
  return out.dump() + "\n";
}

MultiSeries from_json(std::string_view text, int max_order) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw parse_error(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw parse_error("series file must be a JSON object");

  const Rational q = rational_field(field(doc, "q"), "q");

  const auto& vars_json = field(doc, "vars");
  if (!vars_json.is_array()) throw parse_error("field \"vars\" must be an array of strings");
  std::vector<std::string> vars;
  for (const auto& v : vars_json) {
    if (!v.is_string()) throw parse_error("field \"vars\" must be an array of strings");
    vars.push_back(v.get<std::string>());
  }

  const auto& exact_json = field(doc, "exact_to");
  if (!exact_json.is_number_integer() || exact_json.get<long>() < 0) {
    throw parse_error("field \"exact_to\" must be a nonnegative integer");
  }
  const int exact_to = exact_json.get<int>();
  if (exact_to > max_order) {
    throw Error(ErrorCode::DegreeOverflow, "field \"exact_to\" (" + std::to_string(exact_to) +
                                               ") exceeds max_order " +
                                               std::to_string(max_order));
  }

  const auto& terms_json = field(doc, "terms");
  if (!terms_json.is_array()) throw parse_error("field \"terms\" must be an array");
  std::vector<std::pair<ExponentVector, Rational>> terms;
  for (std::size_t i = 0; i < terms_json.size(); ++i) {
    const auto& t = terms_json[i];
    const std::string where = "terms[" + std::to_string(i) + "]";
    if (!t.is_object()) throw parse_error("field \"" + where + "\" must be an object");
    const auto& exp_json = field(t, "exp");
    if (!exp_json.is_array()) throw parse_error("field \"" + where + ".exp\" must be an array");
    ExponentVector e;
    for (const auto& k : exp_json) {
      if (!k.is_number_integer() || k.get<long>() < 0) {
        throw parse_error("field \"" + where + ".exp\" must hold nonnegative integers");
      }
      e.push_back(k.get<int>());
    }
    terms.emplace_back(std::move(e), rational_field(field(t, "coef"), where + ".coef"));
  }

  return make_series(make_context(q, max_order), std::move(vars), exact_to, terms);
}

std::string render_monomial(const std::vector<std::string>& vars, const ExponentVector& e) {
  std::string out;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!out.empty()) out += '*';
    out += vars[i];
    if (e[i] > 1) out += '^' + std::to_string(e[i]);
  }
  return out;
}

std::string render(const MultiSeries& f) {
  if (f.is_zero()) return "0";
  std::vector<const MultiSeries::TermMap::value_type*> order;
  for (const auto& term : f.terms()) order.push_back(&term);
  std::sort(order.begin(), order.end(),
            [](const auto* x, const auto* y) { return render_before(x->first, y->first); });

  std::ostringstream os;
  bool first = true;
  for (const auto* term : order) {
    const Rational& c = term->second;
    const std::string mono = render_monomial(f.vars(), term->first);
    if (first) {
      if (c.sign() < 0) os << '-';
    } else {
      os << (c.sign() < 0 ? " - " : " + ");
    }
    const Rational magnitude = c.abs();
    if (mono.empty()) {
      os << magnitude;
    } else if (magnitude.is_one()) {
      os << mono;
    } else {
      os << magnitude << '*' << mono;
    }
    first = false;
  }
  return os.str();
}

ParsedPolynomial parse_polynomial(std::string_view text) {
  PolynomialLexer lex(text);
  ParsedPolynomial out;
  std::set<std::string> seen;
  if (lex.done()) lex.fail("empty polynomial");

  bool first = true;
  while (!lex.done()) {
    bool negative = false;
    if (lex.consume('+')) {
    } else if (lex.consume('-')) {
      negative = true;
    } else if (!first) {
      lex.fail("expected '+' or '-'");
    }

    Rational coef(negative ? -1 : 1);
    std::vector<std::pair<std::string, int>> powers;
    do {
      const char c = lex.peek();
      if (std::isdigit(static_cast<unsigned char>(c))) {
        std::string number = lex.digits();
        if (lex.consume('/')) number += "/" + lex.digits();
        coef *= Rational::parse(number);
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::string name = lex.identifier();
        int power = 1;
        if (lex.consume('^')) {
          const std::string d = lex.digits();
          if (d.size() > 6) lex.fail("exponent too large");
          power = std::stoi(d);
        }
        seen.insert(name);
        powers.emplace_back(std::move(name), power);
      } else {
        lex.fail("expected a coefficient or a variable");
      }
    } while (lex.consume('*'));

    out.terms.emplace_back(std::move(powers), std::move(coef));
    first = false;
  }
  out.vars.assign(seen.begin(), seen.end());
  return out;
}

MultiSeries series_from_polynomial(std::string_view text, ContextPtr ctx, int exact_to,
                                   const std::vector<std::string>& declared,
                                   const std::vector<std::string>& extra) {
  const ParsedPolynomial poly = parse_polynomial(text);
  std::vector<std::string> vars;
  if (!declared.empty()) {
    vars = declared;
    for (const auto& v : poly.vars) {
      if (std::find(vars.begin(), vars.end(), v) == vars.end()) {
        throw Error(ErrorCode::UnknownVariable,
                    "variable '" + v + "' is used but not in the declared variable list");
      }
    }
  } else {
    std::set<std::string> all(poly.vars.begin(), poly.vars.end());
    all.insert(extra.begin(), extra.end());
    vars.assign(all.begin(), all.end());
  }

  std::vector<std::pair<ExponentVector, Rational>> terms;
  for (const auto& [powers, coef] : poly.terms) {
    ExponentVector e(vars.size(), 0);
    for (const auto& [name, k] : powers) {
      e[static_cast<std::size_t>(std::find(vars.begin(), vars.end(), name) - vars.begin())] += k;
    }
    terms.emplace_back(std::move(e), coef);
  }
  return make_series(std::move(ctx), std::move(vars), exact_to, terms);
}

}  // namespace qfunc
