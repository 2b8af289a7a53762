#include <doctest.h>

#include "chowz/registry.hpp"
#include "chowz/zlinalg.hpp"

#include <random>

using namespace chowz;

namespace {

const RingRegistry& reg() { return RingRegistry::builtin(); }

// random homogeneous element of degree d
Polynomial random_element(std::mt19937& rng, const PresentedRingPtr& R, int d, int range = 40) {
    std::uniform_int_distribution<int> coef(-range, range);
    Polynomial p = R->zero();
    for (const auto& e : monomials_of_degree(*R->ambient(), d))
        p += Polynomial::monomial(R->ambient(), e, Integer(coef(rng)));
    return p;
}

struct Case {
    const char* ring;
    Moduli w;
    std::vector<const char*> kernels;  // intersection of these kernels
};

const std::vector<Case>& cases() {
    static const std::vector<Case> c = {
        {"M2bar", {}, {"M2bar_to_Delta1", "M2bar_to_B_biell-D000", "M2bar_to_M2bar-D1"}},
        {"M2bar", {}, {"M2bar_to_Delta1"}},
        {"M2bar-D000-D001", {{"w32", 0}}, {"M2bar-D000-D001_to_Delta1-D001", "M2bar-D000-D001_to_B_biell-D00"}},
        {"M2bar-D000-D001", {{"w32", 1}},
         {"M2bar-D000-D001_to_Delta1-D001", "M2bar-D000-D001_to_B_biell-D00", "M2bar-D000-D001_to_M2bar-D1"}},
        {"M2bar-D00-D01", {}, {"M2bar-D00-D01_to_Delta1-D01"}},
    };
    return c;
}

Ideal kernel_intersection(const Case& c) {
    auto R = reg().ring(c.ring, c.w);
    std::optional<Ideal> I;
    for (const auto* k : c.kernels) {
        Ideal K(R, reduced_generators(ring_map_kernel(reg().map(k, c.w))));
        I = I ? ideal_intersect(*I, K) : K;
    }
    return *I;
}

}  // namespace

TEST_CASE("strong bases of random ideals in the boundary rings are certified") {
    std::mt19937 rng(31337);
    std::uniform_int_distribution<int> dg(1, 3);
    for (const auto& c : cases()) {
        auto R = reg().ring(c.ring, c.w);
        for (int trial = 0; trial < 6; ++trial) {
            std::vector<Polynomial> gens = {random_element(rng, R, dg(rng)), random_element(rng, R, dg(rng))};
            auto G = compute_gb(R->ambient(), Ideal(R, gens).all_generators(), Domain::ZZ);
            INFO(R->name() << " trial " << trial);
            CHECK_FALSE(G.certificate_failure());
            for (const auto& g : gens) CHECK(G.contains(g));
        }
    }
}

TEST_CASE("graded pieces agree with normal forms on random elements") {
    std::mt19937 rng(2718);
    for (const auto& c : cases()) {
        Ideal I = kernel_intersection(c);
        auto R = I.ring();
        for (int d = 1; d <= 6; ++d) {
            GradedPiece piece = graded_piece(I, d);
            for (int trial = 0; trial < 8; ++trial) {
                // half the samples are built from the ideal so both answers occur
                Polynomial p = R->zero();
                if (trial % 2 == 0) {
                    p = random_element(rng, R, d, 3);
                } else {
                    for (const auto& g : I.gens()) {
                        int gd = *g.homogeneous_degree();
                        if (gd <= d) p += g * random_element(rng, R, d - gd, 3);
                    }
                    if (trial % 4 == 3) p += random_element(rng, R, d, 1);
                }
                INFO(R->name() << " degree " << d << ": " << p.to_string());
                CHECK(piece_contains(piece, p) == normal_form(p, I).is_zero());
            }
        }
    }
}

TEST_CASE("boundary pushforward does not depend on the lift") {
    std::mt19937 rng(99);
    for (const auto& name : reg().delta1_push_names())
        for (const auto& w : moduli_grid({"w32", "w21"})) {
            auto P = reg().delta1_push(name, w);
            auto M = P.restriction().source();
            auto D = P.restriction().target();
            auto K = reduced_generators(ring_map_kernel(P.restriction()));
            Polynomial delta1 = M->var("delta1");
            for (int d = 0; d <= 3; ++d) {
                Polynomial x = random_element(rng, D, d, 20);
                Polynomial other = P.lift(x);
                for (const auto& k : K) {
                    int kd = *k.homogeneous_degree();
                    if (kd <= d) other += k * random_element(rng, M, d - kd, 20);
                }
                INFO(name << moduli_suffix(w) << " degree " << d);
                CHECK(element_equal(D, P.restriction().apply(other), x));
                CHECK(element_equal(M, other * delta1, P.push(x)));
            }
        }
}
