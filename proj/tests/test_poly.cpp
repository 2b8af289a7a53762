#include <doctest.h>

#include "chowz/poly.hpp"
#include "chowz/serialize.hpp"

using namespace chowz;

namespace {

RingPtr lambda_ring() { return make_ring({{"lambda1", 1}, {"lambda2", 2}, {"delta1", 1}}); }

}  // namespace

TEST_CASE("parse and print round trip") {
    auto R = lambda_ring();
    auto p = parse_polynomial("24*lambda1^2 - 48*lambda2", R);
    CHECK(p.size() == 2);
    CHECK(parse_polynomial(p.to_string(), R) == p);
    CHECK(parse_polynomial("-(lambda1 + delta1)^2", R).to_string() ==
          parse_polynomial("-lambda1^2 - 2*lambda1*delta1 - delta1^2", R).to_string());
    CHECK(parse_polynomial("0", R).is_zero());
}

TEST_CASE("parse errors carry a column") {
    auto R = lambda_ring();
    try {
        parse_polynomial("lambda1 + mu", R);
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.column() == 11);
    }
    CHECK_THROWS_AS(parse_polynomial("lambda1 +", R), ParseError);
    CHECK_THROWS_AS(parse_polynomial("(lambda1", R), ParseError);
    CHECK_THROWS_AS(parse_polynomial("", R), ParseError);
}

TEST_CASE("arithmetic") {
    auto R = lambda_ring();
    auto d = Polynomial::variable(R, "delta1");
    auto l = Polynomial::variable(R, "lambda1");
    CHECK((d + l) * d == parse_polynomial("delta1^2 + delta1*lambda1", R));

    auto B = make_ring({{"beta1", 1}, {"beta2", 2}, {"gamma", 1}});
    auto g = Polynomial::variable(B, "gamma");
    CHECK(g * 2 + g * 2 == parse_polynomial("4*gamma", B));
    CHECK((l - l).is_zero());
    CHECK((l + d).pow(3) == (l + d) * (l + d) * (l + d));
    CHECK_THROWS_AS(l + g, std::invalid_argument);
}

TEST_CASE("substitution") {
    auto R = make_ring({{"alpha1", 1}, {"t1", 1}, {"t2", 1}, {"x1", 1}, {"x2", 1}, {"x3", 1}});
    auto p = parse_polynomial("x2 + x3 - alpha1", R);
    auto q = substitute(p, {{"x3", parse_polynomial("-alpha1 - 2*t2", R)}});
    CHECK(q == parse_polynomial("x2 - 2*alpha1 - 2*t2", R));

    auto sq = parse_polynomial("x2^2", R);
    CHECK(substitute(sq, {{"x2", parse_polynomial("x1 - 2*t1", R)}}) ==
          parse_polynomial("x1^2 - 4*t1*x1 + 4*t1^2", R));

    auto S = make_ring({{"alpha1", 1}, {"t2", 1}});
    CHECK_THROWS_AS(substitute(parse_polynomial("x1", R), {}, S), std::invalid_argument);
}

TEST_CASE("graded component") {
    auto R = lambda_ring();
    auto p = parse_polynomial("lambda1*delta1 + lambda2^2", R);
    CHECK(graded_component(p, 2) == parse_polynomial("lambda1*delta1", R));
    CHECK(graded_component(p, -1).is_zero());
    CHECK(graded_component(p, 4) == parse_polynomial("lambda2^2", R));
    CHECK_FALSE(p.is_homogeneous());
}

TEST_CASE("ring_make validation") {
    auto BG = ring_make("BG", {{"beta1", 1}, {"beta2", 2}, {"gamma", 1}}, {"2*gamma", "gamma^2 + beta1*gamma"});
    CHECK(BG->relations().size() == 2);
    auto T = ring_make("T", {{"t1", 1}, {"t2", 1}}, {});
    CHECK(T->relations().empty());
    CHECK_THROWS_AS(ring_make("bad", {{"lambda1", 1}, {"lambda2", 2}}, {"lambda1^3 + lambda2"}),
                    std::invalid_argument);
    CHECK_THROWS_AS(ring_make("dup", {{"a", 1}, {"a", 2}}, {}), std::invalid_argument);
    CHECK_THROWS_AS(ring_make("deg0", {{"a", 0}}, {}), std::invalid_argument);
}

TEST_CASE("monomial order is graded and multiplicative") {
    auto R = lambda_ring();
    Exponents a{2, 0, 0}, b{0, 1, 0}, c{1, 0, 1}, m{0, 1, 1};
    // lambda1^2 and lambda2 both have weight 2; revlex breaks the tie
    CHECK(R->compare(a, b) != 0);
    CHECK(R->compare(a, c) == -R->compare(c, a));
    CHECK(R->compare(product(a, m), product(b, m)) == R->compare(a, b));
    CHECK(R->compare({0, 0, 3}, {0, 1, 0}) > 0);
}

TEST_CASE("serialization round trip is byte exact") {
    auto M = ring_make("M2bar", {{"lambda1", 1}, {"lambda2", 2}, {"delta1", 1}},
                       {"24*lambda1^2 - 48*lambda2", "20*lambda1*lambda2 - 4*delta1*lambda2",
                        "delta1^3 + delta1^2*lambda1", "2*delta1^2 + 2*delta1*lambda1"});
    std::string s = dump(to_json(*M));
    auto back = presented_ring_from_json(json::parse(s));
    CHECK(*back == *M);
    CHECK(dump(to_json(*back)) == s);

    json bad = json::parse(s);
    bad["relations"][0] = "lambda1^3 + lambda2";
    CHECK_THROWS(presented_ring_from_json(bad));
    bad = json::parse(s);
    bad["schema"] = "chowz.ideal/1";
    CHECK_THROWS_AS(presented_ring_from_json(bad), ParseError);
}
