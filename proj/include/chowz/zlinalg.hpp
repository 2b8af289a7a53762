#pragma once

#include "chowz/groebner.hpp"
#include "chowz/poly.hpp"

#include <string>
#include <vector>

namespace chowz {

class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
    IntMatrix(std::initializer_list<std::initializer_list<long>> rows);
    static IntMatrix identity(std::size_t n);
    static IntMatrix from_rows(const std::vector<std::vector<Integer>>& rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Integer& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Integer& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
    std::vector<Integer> row(std::size_t i) const;
    void append_row(const std::vector<Integer>& r);
    bool is_zero() const;

    void swap_rows(std::size_t i, std::size_t j);
    void swap_cols(std::size_t i, std::size_t j);
    void add_row(std::size_t dst, std::size_t src, const Integer& k);  // row dst += k * row src
    void add_col(std::size_t dst, std::size_t src, const Integer& k);
    void negate_row(std::size_t i);
    void negate_col(std::size_t j);

    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
    bool operator==(const IntMatrix& o) const = default;
    std::string to_string() const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Integer> a_;
};

Integer determinant(const IntMatrix& m);

// U * M = H, H in row Hermite form: pivots positive, entries above a pivot in [0, pivot).
struct HermiteResult {
    IntMatrix H, U;
    std::size_t rank = 0;
    std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};
HermiteResult hermite_nf(const IntMatrix& M);

// U * M * V = D diagonal with d1 | d2 | ...; invariants are the nonzero diagonal entries.
struct SmithResult {
    std::vector<Integer> invariants;
    IntMatrix D, U, V;
};
SmithResult smith_nf(const IntMatrix& M);

std::vector<Exponents> monomials_of_degree(const PolyRing& ring, int d);
std::vector<Integer> coordinates(const Polynomial& p, const std::vector<Exponents>& basis);
Polynomial from_coordinates(const RingPtr& ring, const std::vector<Exponents>& basis, const std::vector<Integer>& v);

// Degree-d part of an ideal I in R/Rel, as the abelian group (I + Rel)_d / Rel_d.
struct GradedPiece {
    int degree = 0;
    std::vector<Exponents> basis;       // ambient monomials of degree d
    std::vector<Integer> invariants;    // invariant factors > 1, then 0 for each free summand
    std::vector<Polynomial> generators; // one per invariant
    IntMatrix relation_rows;            // Rel_d spanned by these rows
    HermiteResult span;                 // Hermite form of (I + Rel)_d

    bool trivial() const { return invariants.empty(); }
    bool cyclic() const { return invariants.size() == 1; }
    std::string describe() const;
};

GradedPiece graded_piece(const Ideal& I, int d);
// Whether the degree-d element g lies in (I + Rel)_d.
bool piece_contains(const GradedPiece& piece, const Polynomial& g);
// Whether g together with Rel_d spans (I + Rel)_d.
bool piece_generated_by(const GradedPiece& piece, const Polynomial& g);

// template = constant + sum_k params[k] * coefficients[k]
struct LinearTemplate {
    Polynomial constant;
    std::vector<std::string> names;
    std::vector<Polynomial> coefficients;

    // Parameters are the given identifiers; the text must be linear in them.
    static LinearTemplate parse(std::string_view text, const RingPtr& ring, const std::vector<std::string>& params);
    Polynomial evaluate(const std::vector<Integer>& values) const;
};

enum class MatchStatus { Unique, Family, None };
std::string to_string(MatchStatus s);

struct MatchResult {
    MatchStatus status = MatchStatus::None;
    std::vector<std::string> names;
    // Canonical solution: over ZZ the representative reduced modulo the
    // ambiguity lattice into symmetric residues, over QQ a rational vector.
    std::vector<Rational> values;
    IntMatrix lattice;           // Hermite basis of the ambiguity lattice (ZZ)
    std::size_t free_dimension = 0;  // dimension of the ambiguity space (QQ)
    Polynomial residue;          // for None: the part of the difference that cannot be matched

    std::string describe() const;
    // ZZ: whether the given parameter values also solve the system.
    bool admits(const std::vector<Integer>& values) const;
};

// Solve template == target in degree d of the presented ring.
MatchResult match_coefficients(const LinearTemplate& tmpl, const Polynomial& target, const PresentedRingPtr& ring,
                               int d);

}  // namespace chowz
