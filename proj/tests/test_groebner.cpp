#include <doctest.h>

#include "chowz/groebner.hpp"

#include <random>

using namespace chowz;

namespace {

PresentedRingPtr m2bar(Domain d = Domain::ZZ) {
    return ring_make("M2bar", {{"lambda1", 1}, {"lambda2", 2}, {"delta1", 1}},
                     {"24*lambda1^2 - 48*lambda2", "20*lambda1*lambda2 - 4*delta1*lambda2",
                      "delta1^3 + delta1^2*lambda1", "2*delta1^2 + 2*delta1*lambda1"},
                     d);
}

PresentedRingPtr bg() {
    return ring_make("BG", {{"beta1", 1}, {"beta2", 2}, {"gamma", 1}}, {"2*gamma", "gamma^2 + beta1*gamma"});
}

}  // namespace

TEST_CASE("empty ideal has empty basis") {
    auto R = ring_make("Zx", {{"x", 1}}, {});
    auto gb = strong_gb(Ideal(R, {}));
    CHECK(gb.basis().empty());
    CHECK_FALSE(gb.contains(R->parse("x")));
}

TEST_CASE("Bezout combination enters the basis") {
    auto R = ring_make("Zx", {{"x", 1}}, {});
    auto gb = strong_gb(Ideal(R, {R->parse("2*x"), R->parse("3*x")}));
    REQUIRE(gb.basis().size() == 1);
    CHECK(gb.basis()[0] == R->parse("x"));
}

TEST_CASE("normal forms in the norm-target ring") {
    auto B = bg();
    auto gb = strong_gb(Ideal(B, {}));
    CHECK(gb.reduce(B->parse("3*gamma")) == B->parse("gamma"));
    CHECK(gb.reduce(B->parse("-gamma")) == B->parse("gamma"));
    CHECK(gb.contains(B->parse("gamma^2 + beta1*gamma")));
    CHECK(gb.contains(B->parse("2*gamma")));
    CHECK_FALSE(gb.contains(B->parse("gamma")));
    CHECK_FALSE(gb.certificate_failure());
}

TEST_CASE("membership in the boundary ring of genus two") {
    auto M = m2bar();
    auto gb = strong_gb(Ideal(M, {}));
    CHECK_FALSE(gb.certificate_failure());
    CHECK(gb.contains(M->parse("48*lambda2^2*delta1")));
    CHECK_FALSE(gb.contains(M->parse("24*lambda2^2*delta1")));
    auto gq = strong_gb(Ideal(rationalize(M), {}));
    CHECK_FALSE(gq.contains(M->parse("lambda2*delta1")));
    CHECK_FALSE(gq.certificate_failure());
}

TEST_CASE("rationalize") {
    auto B = bg();
    CHECK(ideal_contains(rationalize(Ideal(B, {})), B->parse("gamma")));
    auto R = ring_make("L", {{"lambda1", 1}, {"lambda2", 2}}, {}, Domain::QQ);
    CHECK(ideal_equal(Ideal(R, {R->parse("24*lambda1^2 - 48*lambda2")}), Ideal(R, {R->parse("lambda1^2 - 2*lambda2")})));
}

TEST_CASE("ideal equality for the open genus two locus") {
    auto R = ring_make("L", {{"lambda1", 1}, {"lambda2", 2}}, {});
    Ideal a(R, {R->parse("24*lambda1^2 - 48*lambda2"), R->parse("20*lambda1*lambda2"), R->parse("10*lambda1"),
                R->parse("2*lambda1^2 - 24*lambda2")});
    Ideal b(R, {R->parse("10*lambda1"), R->parse("2*lambda1^2 - 24*lambda2")});
    CHECK(ideal_equal(a, b));
    CHECK(ideal_equal(Ideal(R, {}), Ideal(R, {})));
    CHECK_FALSE(ideal_equal(b, Ideal(R, {R->parse("10*lambda1")})));
}

TEST_CASE("kernel of a restriction") {
    auto M = m2bar();
    auto D = ring_make("Delta1", {{"lambda1", 1}, {"lambda2", 2}, {"delta1", 1}},
                       {"2*(delta1 + lambda1)", "delta1*(delta1 + lambda1)", "24*lambda1^2 - 48*lambda2",
                        "24*lambda1*lambda2"});
    RingMap f(M, D, {});
    Ideal k = ring_map_kernel(f);
    CHECK(ideal_equal(k, Ideal(M, {M->parse("2*(delta1 + lambda1)"), M->parse("delta1*(delta1 + lambda1)")})));
    RingMap id(M, M, {});
    CHECK(ideal_equal(ring_map_kernel(id), Ideal(M, {})));
}

TEST_CASE("ring maps are validated") {
    auto M = m2bar();
    auto L = ring_make("L", {{"lambda1", 1}, {"lambda2", 2}, {"delta1", 1}}, {});
    CHECK_THROWS_AS(RingMap(M, L, {}), std::invalid_argument);
    CHECK_THROWS_AS(ring_map(L, L, {{"lambda2", "lambda1"}}), std::invalid_argument);
}

TEST_CASE("intersection of monomial ideals") {
    auto R = ring_make("Zxy", {{"x", 1}, {"y", 1}}, {});
    Ideal a(R, {R->parse("2*x")}), b(R, {R->parse("3*y")});
    CHECK(ideal_equal(ideal_intersect(a, b), Ideal(R, {R->parse("6*x*y")})));
    Ideal c(R, {R->parse("4*x"), R->parse("y^2")}), d(R, {R->parse("6*x")});
    CHECK(ideal_equal(ideal_intersect(c, d), Ideal(R, {R->parse("12*x"), R->parse("6*x*y^2")})));
}

TEST_CASE("bases are deterministic and certified") {
    auto M = m2bar();
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> coef(-30, 30);
    const char* mons[] = {"lambda1^3", "lambda1*lambda2", "delta1^3", "delta1*lambda2", "lambda1^2*delta1",
                          "lambda1*delta1^2"};
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<Polynomial> gens;
        for (int g = 0; g < 2; ++g) {
            Polynomial p = M->zero();
            for (auto m : mons) p += M->parse(m) * Integer(coef(rng));
            gens.push_back(p);
        }
        auto gb1 = compute_gb(M->ambient(), Ideal(M, gens).all_generators(), Domain::ZZ);
        std::reverse(gens.begin(), gens.end());
        auto gb2 = compute_gb(M->ambient(), Ideal(M, gens).all_generators(), Domain::ZZ);
        CHECK(gb1.basis() == gb2.basis());
        CHECK_FALSE(gb1.certificate_failure());
        for (const auto& g : gens) CHECK(gb1.contains(g));
    }
}
