#include <doctest.h>

#include "qfunc/error.hpp"
#include "qfunc/series_io.hpp"
#include "support.hpp"

using namespace qfunc;
using qfunc::testing::poly;

namespace {

const ContextPtr kHalf = make_context(Rational(1, 2), 16);

std::string parse_failure(std::string_view text) {
  try {
    from_json(text, 16);
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("canonical JSON layout") {
  const auto f = poly(kHalf, "b^2 - 3/2*a*b + 2", {"a", "b"}, 3);
  CHECK(to_json(f) ==
        R"({"q":"1/2","vars":["a","b"],"exact_to":3,"terms":[)"
        R"({"exp":[0,0],"coef":"2"},{"exp":[0,2],"coef":"1"},{"exp":[1,1],"coef":"-3/2"}]})"
        "\n");
  CHECK(to_json(poly(kHalf, "0", {"a"}, 0)) ==
        "{\"q\":\"1/2\",\"vars\":[\"a\"],\"exact_to\":0,\"terms\":[]}\n");
}

TEST_CASE("JSON round trip is bit-exact") {
  for (const Rational& q : testing::property_qs()) {
    const auto ctx = make_context(q, 16);
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
      auto f = random_series(ctx, seed, {"a", "b", "c"}, 6, 9);
      f = scale(dilate(f, "b", -1), Rational(7, 3));
      const std::string text = to_json(f);
      const MultiSeries back = from_json(text, 16);
      CHECK(back == f);
      CHECK(to_json(back) == text);
    }
  }
}

TEST_CASE("JSON input is validated field by field") {
  CHECK(parse_failure("{").find("malformed JSON") != std::string::npos);
  CHECK(parse_failure("[]").find("object") != std::string::npos);
  CHECK(parse_failure(R"({"vars":[],"exact_to":0,"terms":[]})").find("\"q\"") !=
        std::string::npos);
  CHECK(parse_failure(R"({"q":"1","vars":[],"exact_to":0,"terms":[]})").find("degenerate") !=
        std::string::npos);
  CHECK(parse_failure(R"({"q":"1/2","vars":"a","exact_to":0,"terms":[]})").find("\"vars\"") !=
        std::string::npos);
  CHECK(parse_failure(R"({"q":"1/2","vars":["a"],"exact_to":-1,"terms":[]})")
            .find("\"exact_to\"") != std::string::npos);
  CHECK(parse_failure(R"({"q":"1/2","vars":["a"],"exact_to":2,"terms":[{"exp":[1],"coef":"x"}]})")
            .find("terms[0].coef") != std::string::npos);
  CHECK(parse_failure(R"({"q":"1/2","vars":["a"],"exact_to":2,"terms":[{"exp":[-1],"coef":"1"}]})")
            .find("terms[0].exp") != std::string::npos);
  CHECK(parse_failure(R"({"q":"1/2","vars":["a"],"exact_to":1,"terms":[{"exp":[2],"coef":"1"}]})")
            .find("degree overflow") != std::string::npos);
  CHECK(parse_failure(R"({"q":"1/2","vars":["a"],"exact_to":20,"terms":[]})")
            .find("max_order") != std::string::npos);
  // Non-canonical but valid input is canonicalised.
  const auto f = from_json(
      R"({"q":"2/4","vars":["a"],"exact_to":2,"terms":[{"exp":[1],"coef":"2/4"},{"exp":[0],"coef":0},{"exp":[1],"coef":"1/2"}]})",
      16);
  CHECK(f == poly(kHalf, "a", {"a"}, 2));
}

TEST_CASE("render") {
  CHECK(render(poly(kHalf, "a^2 + 3/2*a*b + b^2", {"a", "b"}, 4)) == "a^2 + 3/2*a*b + b^2");
  CHECK(render(poly(kHalf, "1", {"a", "b"}, 4)) == "1");
  CHECK(render(poly(kHalf, "0", {"a"}, 4)) == "0");
  CHECK(render(poly(kHalf, "c + b - a*b", {"a", "c", "b"}, 4)) == "c + b - a*b");
  CHECK(render(poly(kHalf, "-a - 2/3*b^3 + 5", {"a", "b"}, 4)) == "5 - a - 2/3*b^3");
  CHECK(render(poly(kHalf, "-7*a", {"a"}, 4)) == "-7*a");
  CHECK(render_monomial({"a", "b", "c"}, {2, 0, 1}) == "a^2*c");
}

TEST_CASE("inline polynomial syntax") {
  const auto p = parse_polynomial("3/2*a*b^2 - c + 4");
  CHECK(p.vars == std::vector<std::string>{"a", "b", "c"});
  REQUIRE(p.terms.size() == 3);
  CHECK(p.terms[0].second == Rational(3, 2));
  CHECK(p.terms[1].second == Rational(-1));

  CHECK(series_from_polynomial("a*a*2*a", kHalf, 4) == poly(kHalf, "2*a^3", {"a"}, 4));
  CHECK(series_from_polynomial("x_1 + y", kHalf, 4).vars() == std::vector<std::string>{"x_1", "y"});
  CHECK(series_from_polynomial("c", kHalf, 4, {}, {"a", "c"}).vars() ==
        std::vector<std::string>{"a", "c"});
  CHECK(series_from_polynomial("b", kHalf, 4, {"b", "a"}).vars() ==
        std::vector<std::string>{"b", "a"});

  for (const char* bad : {"", "a +", "a b", "2^3", "a^", "*a", "a + + b", "a/2", "a^-1"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_polynomial(bad), Error);
  }
  CHECK_THROWS_AS(series_from_polynomial("a^5", kHalf, 4), Error);
  CHECK_THROWS_AS(series_from_polynomial("a*z", kHalf, 4, {"a"}), Error);
}

TEST_CASE("render parses back") {
  const auto ctx = make_context(Rational(3, 5), 16);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto f = scale(random_series(ctx, seed, {"a", "b"}, 5, 9), Rational(1, 6));
    CHECK(series_from_polynomial(render(f), ctx, 5, f.vars()) == f);
  }
}
