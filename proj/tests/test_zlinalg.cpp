#include <doctest.h>

#include "chowz/zlinalg.hpp"

#include <functional>
#include <numeric>
#include <random>
#include <set>

using namespace chowz;

namespace {

// Oracle: d1*...*di is the gcd of the i x i minors.
std::vector<Integer> determinantal_invariants(const IntMatrix& M) {
    std::size_t m = M.rows(), n = M.cols();
    std::vector<Integer> gcds;
    for (std::size_t k = 1; k <= std::min(m, n); ++k) {
        Integer g = 0;
        std::vector<bool> rs(m, false), cs(n, false);
        std::fill(rs.begin(), rs.begin() + k, true);
        do {
            std::fill(cs.begin(), cs.end(), false);
            std::fill(cs.begin(), cs.begin() + k, true);
            do {
                IntMatrix sub(k, k);
                std::size_t a = 0;
                for (std::size_t i = 0; i < m; ++i) {
                    if (!rs[i]) continue;
                    std::size_t b = 0;
                    for (std::size_t j = 0; j < n; ++j)
                        if (cs[j]) sub(a, b++) = M(i, j);
                    ++a;
                }
                g = gcd(g, determinant(sub));
            } while (std::prev_permutation(cs.begin(), cs.end()));
        } while (std::prev_permutation(rs.begin(), rs.end()));
        if (g == 0) break;
        gcds.push_back(g);
    }
    std::vector<Integer> inv;
    Integer prev = 1;
    for (const auto& g : gcds) {
        inv.push_back(g / prev);
        prev = g;
    }
    return inv;
}

IntMatrix random_matrix(std::mt19937& rng, std::size_t m, std::size_t n, int bound) {
    std::uniform_int_distribution<int> dist(-bound, bound);
    IntMatrix M(m, n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) M(i, j) = dist(rng);
    return M;
}

}  // namespace

TEST_CASE("hermite normal form examples") {
    IntMatrix I = IntMatrix::identity(3);
    CHECK(hermite_nf(I).H == I);
    auto h = hermite_nf(IntMatrix{{2, 0}, {3, 0}});
    CHECK(h.H(0, 0) == 1);
    CHECK(h.H(0, 1) == 0);
    CHECK(h.rank == 1);
    IntMatrix Z(2, 3);
    CHECK(hermite_nf(Z).H == Z);
}

TEST_CASE("hermite normal form properties") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        IntMatrix M = random_matrix(rng, 1 + trial % 5, 1 + (trial / 5) % 5, 9);
        auto h = hermite_nf(M);
        CHECK(h.U * M == h.H);
        CHECK(abs(determinant(h.U)) == 1);
        for (std::size_t i = 0; i < h.rank; ++i) {
            std::size_t c = h.pivots[i];
            CHECK(h.H(i, c) > 0);
            for (std::size_t j = 0; j < c; ++j) CHECK(h.H(i, j) == 0);
            for (std::size_t k = 0; k < i; ++k) {
                CHECK(h.H(k, c) >= 0);
                CHECK(h.H(k, c) < h.H(i, c));
            }
        }
        for (std::size_t i = h.rank; i < M.rows(); ++i)
            for (std::size_t j = 0; j < M.cols(); ++j) CHECK(h.H(i, j) == 0);
    }
}

TEST_CASE("smith normal form examples") {
    CHECK(smith_nf(IntMatrix{{2, 0}, {0, 6}}).invariants == std::vector<Integer>{2, 6});
    CHECK(smith_nf(IntMatrix{{2, 4}, {6, 8}}).invariants == std::vector<Integer>{2, 4});
    CHECK(smith_nf(IntMatrix(3, 2)).invariants.empty());
    CHECK(smith_nf(IntMatrix{{2, 0}, {0, 3}}).invariants == std::vector<Integer>{1, 6});
}

TEST_CASE("smith normal form against determinantal divisors") {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        IntMatrix M = random_matrix(rng, 1 + trial % 4, 1 + (trial / 4) % 4, 6);
        auto s = smith_nf(M);
        CHECK(s.invariants == determinantal_invariants(M));
        CHECK(s.U * M * s.V == s.D);
        CHECK(abs(determinant(s.U)) == 1);
        CHECK(abs(determinant(s.V)) == 1);
        for (std::size_t i = 0; i + 1 < s.invariants.size(); ++i)
            CHECK(mpz_divisible_p(s.invariants[i + 1].get_mpz_t(), s.invariants[i].get_mpz_t()));
        for (std::size_t i = 0; i < M.rows(); ++i)
            for (std::size_t j = 0; j < M.cols(); ++j)
                if (i != j) CHECK(s.D(i, j) == 0);
    }
}

namespace {

// Brute force: enumerate the finite group (I + Rel)_d / Rel_d inside Z^n / Rel_d
// when Rel_d is a full-rank square lattice, with equality tested by exact
// rational solving.
struct FiniteQuotient {
    std::vector<std::vector<Rational>> inv;  // inverse of the relation matrix
    std::size_t n;

    explicit FiniteQuotient(const IntMatrix& rel) : n(rel.rows()) {
        std::vector<std::vector<Rational>> a(n, std::vector<Rational>(2 * n));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) a[i][j] = rel(i, j);
            a[i][n + i] = 1;
        }
        for (std::size_t c = 0; c < n; ++c) {
            std::size_t p = c;
            while (a[p][c] == 0) ++p;
            std::swap(a[p], a[c]);
            Rational f = 1 / a[c][c];
            for (auto& x : a[c]) x *= f;
            for (std::size_t i = 0; i < n; ++i)
                if (i != c && a[i][c] != 0) {
                    Rational g = a[i][c];
                    for (std::size_t j = 0; j < 2 * n; ++j) a[i][j] -= g * a[c][j];
                }
        }
        inv.assign(n, std::vector<Rational>(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) inv[i][j] = a[i][n + j];
    }

    // canonical key: fractional parts of the coordinates v * rel^{-1}
    std::vector<Rational> key(const std::vector<Integer>& v) const {
        std::vector<Rational> y(n);
        for (std::size_t j = 0; j < n; ++j) {
            Rational s = 0;
            for (std::size_t i = 0; i < n; ++i) s += Rational(v[i]) * inv[i][j];
            Integer fl;
            mpz_fdiv_q(fl.get_mpz_t(), s.get_num_mpz_t(), s.get_den_mpz_t());
            y[j] = s - Rational(fl);
        }
        return y;
    }
};

}  // namespace

TEST_CASE("graded piece against brute-force enumeration") {
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> small(-4, 4);
    auto R = make_ring({{"x", 1}, {"y", 1}});
    int done = 0;
    for (int trial = 0; trial < 200 && done < 40; ++trial) {
        std::vector<Polynomial> rels;
        const char* mons[] = {"x^2", "x*y", "y^2"};
        for (int r = 0; r < 3; ++r) {
            Polynomial p(R);
            for (auto m : mons) p += parse_polynomial(m, R) * Integer(small(rng));
            rels.push_back(p);
        }
        auto ring = ring_make("T", R, rels);
        GradedPiece zero = graded_piece(Ideal(ring, {}), 2);
        if (zero.relation_rows.rows() != 3 || hermite_nf(zero.relation_rows).rank != 3) continue;
        Integer det = abs(determinant(zero.relation_rows));
        if (det > 300) continue;
        ++done;
        Polynomial g = parse_polynomial("x", R) * Integer(small(rng)) + parse_polynomial("y", R) * Integer(small(rng));
        Ideal I(ring, {g});
        GradedPiece piece = graded_piece(I, 2);

        FiniteQuotient Q(zero.relation_rows);
        std::vector<std::vector<Integer>> gens;
        for (const char* m : {"x", "y"}) {
            Polynomial v = g * parse_polynomial(m, R);
            if (!v.is_zero()) gens.push_back(coordinates(v, piece.basis));
        }
        // closure under adding generators
        std::set<std::vector<Rational>> seen;
        std::vector<std::vector<Integer>> elems{std::vector<Integer>(3)};
        seen.insert(Q.key(elems[0]));
        for (std::size_t i = 0; i < elems.size(); ++i)
            for (const auto& gen : gens) {
                std::vector<Integer> w(3);
                for (int c = 0; c < 3; ++c) w[c] = elems[i][c] + gen[c];
                if (seen.insert(Q.key(w)).second) elems.push_back(w);
            }
        Integer order = 1;
        for (const auto& d : piece.invariants) {
            REQUIRE(d != 0);
            order *= d;
        }
        CHECK(Integer(elems.size()) == order);
        // number of elements killed by k is the product of gcd(k, d_i)
        for (unsigned long k = 1; k <= elems.size(); ++k) {
            std::size_t killed = 0;
            for (const auto& e : elems) {
                std::vector<Integer> w(3);
                for (int c = 0; c < 3; ++c) w[c] = e[c] * k;
                if (Q.key(w) == Q.key(std::vector<Integer>(3))) ++killed;
            }
            Integer expect = 1;
            for (const auto& d : piece.invariants) expect *= gcd(Integer(k), d);
            CHECK(Integer(killed) == expect);
        }
        for (const auto& gen : piece.generators) CHECK(piece_contains(piece, gen));
    }
    CHECK(done >= 20);
}

TEST_CASE("graded pieces of the zero ideal are trivial") {
    auto M = ring_make("M", {{"lambda1", 1}, {"lambda2", 2}, {"delta1", 1}},
                       {"24*lambda1^2 - 48*lambda2", "20*lambda1*lambda2 - 4*delta1*lambda2",
                        "delta1^3 + delta1^2*lambda1", "2*delta1^2 + 2*delta1*lambda1"});
    for (int d = 0; d <= 6; ++d) CHECK(graded_piece(Ideal(M, {}), d).trivial());
    auto p5 = graded_piece(Ideal(M, {M->parse("24*lambda2*delta1")}), 5);
    CHECK(p5.cyclic());
    CHECK(p5.invariants[0] == 2);
    CHECK(piece_generated_by(p5, M->parse("24*lambda2^2*delta1")));
    CHECK(graded_piece(Ideal(M, {M->parse("24*lambda2*delta1")}), 4).trivial());
    CHECK(graded_piece(Ideal(M, {M->parse("24*lambda2*delta1")}), 6).trivial());
}

TEST_CASE("coefficient matching") {
    auto R = ring_make("R", {{"x", 1}, {"y", 1}}, {"2*x*y"});
    auto t = LinearTemplate::parse("a*x^2 + b*x*y + c*y^2", R->ambient(), {"a", "b", "c"});
    auto m = match_coefficients(t, R->parse("3*x^2 + 5*x*y - y^2"), R, 2);
    CHECK(m.status == MatchStatus::Family);
    CHECK(m.values[0] == 3);
    CHECK(m.values[1] == 1);
    CHECK(m.values[2] == -1);
    CHECK(m.admits({3, 5, -1}));
    CHECK_FALSE(m.admits({3, 4, -1}));

    auto u = match_coefficients(LinearTemplate::parse("a*x^2", R->ambient(), {"a"}), R->parse("7*x^2"), R, 2);
    CHECK(u.status == MatchStatus::Unique);
    CHECK(u.values[0] == 7);

    auto none = match_coefficients(LinearTemplate::parse("a*x^2", R->ambient(), {"a"}), R->parse("y^2"), R, 2);
    CHECK(none.status == MatchStatus::None);
    CHECK(none.residue == R->parse("y^2"));

    auto Q = ring_make("Q", {{"x", 1}, {"y", 1}}, {"2*x*y"}, Domain::QQ);
    auto q = match_coefficients(LinearTemplate::parse("6*a*x*y + 4*x^2", Q->ambient(), {"a"}), Q->parse("4*x^2"), Q, 2);
    CHECK(q.status == MatchStatus::Family);
    auto q2 = match_coefficients(LinearTemplate::parse("6*a*x^2", Q->ambient(), {"a"}), Q->parse("4*x^2"), Q, 2);
    CHECK(q2.status == MatchStatus::Unique);
    CHECK(q2.values[0] == Rational(2, 3));
}
