#include "chowz/zlinalg.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

namespace chowz {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    for (const auto& r : rows) {
        if (r.size() != cols_) throw std::invalid_argument("ragged matrix");
        for (long v : r) a_.emplace_back(v);
    }
}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<Integer>>& rows, std::size_t cols) {
    IntMatrix m(0, cols);
    for (const auto& r : rows) m.append_row(r);
    return m;
}

std::vector<Integer> IntMatrix::row(std::size_t i) const {
    return std::vector<Integer>(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_);
}

void IntMatrix::append_row(const std::vector<Integer>& r) {
    if (r.size() != cols_) throw std::invalid_argument("row has wrong length");
    a_.insert(a_.end(), r.begin(), r.end());
    ++rows_;
}

bool IntMatrix::is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](const Integer& x) { return x == 0; });
}

void IntMatrix::swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(i, c), (*this)(j, c));
}

void IntMatrix::swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, i), (*this)(r, j));
}

void IntMatrix::add_row(std::size_t dst, std::size_t src, const Integer& k) {
    if (k == 0) return;
    for (std::size_t c = 0; c < cols_; ++c) (*this)(dst, c) += k * (*this)(src, c);
}

void IntMatrix::add_col(std::size_t dst, std::size_t src, const Integer& k) {
    if (k == 0) return;
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, dst) += k * (*this)(r, src);
}

void IntMatrix::negate_row(std::size_t i) {
    for (std::size_t c = 0; c < cols_; ++c) (*this)(i, c) = -(*this)(i, c);
}

void IntMatrix::negate_col(std::size_t j) {
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, j) = -(*this)(r, j);
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix shapes do not match");
    IntMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            if (a(i, k) == 0) continue;
            for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
        }
    return c;
}

std::string IntMatrix::to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < rows_; ++i) {
        s += i ? ", [" : "[";
        for (std::size_t j = 0; j < cols_; ++j) s += (j ? ", " : "") + (*this)(i, j).get_str();
        s += "]";
    }
    return s + "]";
}

Integer determinant(const IntMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
    std::size_t n = m.rows();
    if (n == 0) return 1;
    // Bareiss fraction-free elimination
    IntMatrix a = m;
    Integer sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && a(p, k) == 0) ++p;
            if (p == n) return 0;
            a.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                Integer v = a(i, j) * a(k, k) - a(i, k) * a(k, j);
                mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
                a(i, j) = v;
            }
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

HermiteResult hermite_nf(const IntMatrix& M) {
    HermiteResult r{M, IntMatrix::identity(M.rows()), 0, {}};
    IntMatrix& H = r.H;
    IntMatrix& U = r.U;
    std::size_t row = 0;
    Integer q;
    for (std::size_t c = 0; c < H.cols() && row < H.rows(); ++c) {
        for (;;) {
            std::size_t best = H.rows();
            for (std::size_t i = row; i < H.rows(); ++i)
                if (H(i, c) != 0 && (best == H.rows() || abs(H(i, c)) < abs(H(best, c)))) best = i;
            if (best == H.rows()) break;
            H.swap_rows(row, best);
            U.swap_rows(row, best);
            bool done = true;
            for (std::size_t i = row + 1; i < H.rows(); ++i) {
                if (H(i, c) == 0) continue;
                mpz_fdiv_q(q.get_mpz_t(), H(i, c).get_mpz_t(), H(row, c).get_mpz_t());
                H.add_row(i, row, -q);
                U.add_row(i, row, -q);
                if (H(i, c) != 0) done = false;
            }
            if (done) break;
        }
        if (H(row, c) == 0) continue;
        if (H(row, c) < 0) {
            H.negate_row(row);
            U.negate_row(row);
        }
        for (std::size_t i = 0; i < row; ++i) {
            mpz_fdiv_q(q.get_mpz_t(), H(i, c).get_mpz_t(), H(row, c).get_mpz_t());
            H.add_row(i, row, -q);
            U.add_row(i, row, -q);
        }
        r.pivots.push_back(c);
        ++row;
    }
    r.rank = row;
    return r;
}

SmithResult smith_nf(const IntMatrix& M) {
    SmithResult r{{}, M, IntMatrix::identity(M.rows()), IntMatrix::identity(M.cols())};
    IntMatrix& D = r.D;
    std::size_t m = D.rows(), n = D.cols();
    Integer q;
    for (std::size_t t = 0; t < std::min(m, n); ++t) {
        for (;;) {
            // smallest nonzero entry of the trailing block becomes the pivot
            std::size_t bi = m, bj = n;
            for (std::size_t i = t; i < m; ++i)
                for (std::size_t j = t; j < n; ++j)
                    if (D(i, j) != 0 && (bi == m || abs(D(i, j)) < abs(D(bi, bj)))) {
                        bi = i;
                        bj = j;
                    }
            if (bi == m) break;
            D.swap_rows(t, bi);
            r.U.swap_rows(t, bi);
            D.swap_cols(t, bj);
            r.V.swap_cols(t, bj);
            bool clean = true;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (D(i, t) == 0) continue;
                mpz_fdiv_q(q.get_mpz_t(), D(i, t).get_mpz_t(), D(t, t).get_mpz_t());
                D.add_row(i, t, -q);
                r.U.add_row(i, t, -q);
                if (D(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (D(t, j) == 0) continue;
                mpz_fdiv_q(q.get_mpz_t(), D(t, j).get_mpz_t(), D(t, t).get_mpz_t());
                D.add_col(j, t, -q);
                r.V.add_col(j, t, -q);
                if (D(t, j) != 0) clean = false;
            }
            if (!clean) continue;
            std::size_t bad = m;
            for (std::size_t i = t + 1; i < m && bad == m; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (!mpz_divisible_p(D(i, j).get_mpz_t(), D(t, t).get_mpz_t())) {
                        bad = i;
                        break;
                    }
            if (bad == m) break;
            D.add_row(t, bad, 1);
            r.U.add_row(t, bad, 1);
        }
        if (D(t, t) == 0) break;
        if (D(t, t) < 0) {
            D.negate_row(t);
            r.U.negate_row(t);
        }
        r.invariants.push_back(D(t, t));
    }
    return r;
}

std::vector<Exponents> monomials_of_degree(const PolyRing& ring, int d) {
    std::vector<Exponents> out;
    if (d < 0) return out;
    for (const auto& v : ring.vars())
        if (v.degree <= 0) throw std::invalid_argument("graded pieces need positive variable degrees");
    Exponents e(ring.nvars(), 0);
    std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
        if (i == ring.nvars()) {
            if (left == 0) out.push_back(e);
            return;
        }
        for (int k = 0; k * ring.var(i).degree <= left; ++k) {
            e[i] = k;
            rec(i + 1, left - k * ring.var(i).degree);
        }
        e[i] = 0;
    };
    rec(0, d);
    std::sort(out.begin(), out.end(), [&](const Exponents& a, const Exponents& b) { return ring.compare(a, b) > 0; });
    return out;
}

std::vector<Integer> coordinates(const Polynomial& p, const std::vector<Exponents>& basis) {
    std::vector<Integer> v(basis.size());
    for (const auto& t : p.terms()) {
        auto it = std::find(basis.begin(), basis.end(), t.exps);
        if (it == basis.end())
            throw std::invalid_argument("term " + monomial_string(*p.ring(), t.exps) + " is outside the graded piece");
        v[it - basis.begin()] = t.coeff;
    }
    return v;
}

Polynomial from_coordinates(const RingPtr& ring, const std::vector<Exponents>& basis, const std::vector<Integer>& v) {
    std::vector<Term> ts;
    for (std::size_t i = 0; i < basis.size(); ++i)
        if (v[i] != 0) ts.push_back({basis[i], v[i]});
    return Polynomial::from_terms(ring, std::move(ts));
}

namespace {

// Multiples f * m for every monomial m making the product of degree d.
void append_multiples(IntMatrix& rows, const Polynomial& f, int d, const std::vector<Exponents>& basis) {
    auto fd = f.homogeneous_degree();
    if (!fd || *fd > d) return;
    for (const auto& m : monomials_of_degree(*f.ring(), d - *fd))
        rows.append_row(coordinates(f.mul_term(1, m), basis));
}

// Coefficients y with y * H = v, using the first rank rows of an echelon H.
std::optional<std::vector<Integer>> solve_echelon(const HermiteResult& h, std::vector<Integer> v) {
    std::vector<Integer> y(h.rank);
    for (std::size_t i = 0; i < h.rank; ++i) {
        std::size_t c = h.pivots[i];
        if (!mpz_divisible_p(v[c].get_mpz_t(), h.H(i, c).get_mpz_t())) return std::nullopt;
        y[i] = v[c] / h.H(i, c);
        for (std::size_t j = c; j < v.size(); ++j) v[j] -= y[i] * h.H(i, j);
    }
    for (const auto& x : v)
        if (x != 0) return std::nullopt;
    return y;
}

IntMatrix nonzero_rows(const HermiteResult& h) {
    IntMatrix m(0, h.H.cols());
    for (std::size_t i = 0; i < h.rank; ++i) m.append_row(h.H.row(i));
    return m;
}

}  // namespace

GradedPiece graded_piece(const Ideal& I, int d) {
    GradedPiece piece;
    piece.degree = d;
    const RingPtr& R = I.ring()->ambient();
    piece.basis = monomials_of_degree(*R, d);
    std::size_t n = piece.basis.size();
    piece.relation_rows = IntMatrix(0, n);
    for (const auto& r : I.ring()->relations()) append_multiples(piece.relation_rows, r, d, piece.basis);
    IntMatrix all = piece.relation_rows;
    for (const auto& g : I.gens()) append_multiples(all, g, d, piece.basis);
    piece.span = hermite_nf(all);
    std::size_t k = piece.span.rank;
    if (k == 0) return piece;

    // relations in coordinates of the Hermite basis of the full span
    IntMatrix C(0, k);
    for (std::size_t i = 0; i < piece.relation_rows.rows(); ++i) {
        auto y = solve_echelon(piece.span, piece.relation_rows.row(i));
        if (!y) throw std::logic_error("relation row outside its own span");
        C.append_row(*y);
    }
    SmithResult s = smith_nf(C);
    // rows of V^{-1} form the adapted basis of Z^k
    IntMatrix Vinv = hermite_nf(s.V).U;
    IntMatrix B = nonzero_rows(piece.span);
    for (std::size_t j = 0; j < k; ++j) {
        Integer inv = j < s.invariants.size() ? s.invariants[j] : Integer(0);
        if (inv == 1) continue;
        std::vector<Integer> v(n);
        for (std::size_t t = 0; t < k; ++t)
            if (Vinv(j, t) != 0)
                for (std::size_t c = 0; c < n; ++c) v[c] += Vinv(j, t) * B(t, c);
        piece.invariants.push_back(inv);
        piece.generators.push_back(from_coordinates(R, piece.basis, v));
    }
    return piece;
}

bool piece_contains(const GradedPiece& piece, const Polynomial& g) {
    if (g.is_zero()) return true;
    return solve_echelon(piece.span, coordinates(g, piece.basis)).has_value();
}

bool piece_generated_by(const GradedPiece& piece, const Polynomial& g) {
    IntMatrix rows = piece.relation_rows;
    if (!g.is_zero()) rows.append_row(coordinates(g, piece.basis));
    HermiteResult h = hermite_nf(rows);
    return nonzero_rows(h) == nonzero_rows(piece.span);
}

std::string GradedPiece::describe() const {
    if (invariants.empty()) return "0";
    std::string s;
    for (std::size_t i = 0; i < invariants.size(); ++i) {
        if (i) s += " + ";
        s += invariants[i] == 0 ? "Z" : "Z/" + invariants[i].get_str();
    }
    return s;
}

LinearTemplate LinearTemplate::parse(std::string_view text, const RingPtr& ring, const std::vector<std::string>& params) {
    std::vector<VarSpec> vars = ring->vars();
    for (const auto& p : params) vars.push_back({p, 0});
    RingPtr ext = make_ring(vars);
    Polynomial p = parse_polynomial(text, ext);
    LinearTemplate t{Polynomial(ring), params, std::vector<Polynomial>(params.size(), Polynomial(ring))};
    std::vector<std::vector<Term>> parts(params.size() + 1);
    for (const auto& term : p.terms()) {
        int which = -1, total = 0;
        for (std::size_t k = 0; k < params.size(); ++k)
            if (int e = term.exps[ring->nvars() + k]) {
                total += e;
                which = static_cast<int>(k);
            }
        if (total > 1) throw std::invalid_argument("template is not linear in its parameters");
        parts[which + 1].push_back({Exponents(term.exps.begin(), term.exps.begin() + ring->nvars()), term.coeff});
    }
    t.constant = Polynomial::from_terms(ring, parts[0]);
    for (std::size_t k = 0; k < params.size(); ++k) t.coefficients[k] = Polynomial::from_terms(ring, parts[k + 1]);
    return t;
}

Polynomial LinearTemplate::evaluate(const std::vector<Integer>& values) const {
    if (values.size() != names.size()) throw std::invalid_argument("wrong number of parameter values");
    Polynomial p = constant;
    for (std::size_t k = 0; k < values.size(); ++k) p += coefficients[k] * values[k];
    return p;
}

std::string to_string(MatchStatus s) {
    switch (s) {
    case MatchStatus::Unique: return "unique";
    case MatchStatus::Family: return "family";
    default: return "none";
    }
}

std::string MatchResult::describe() const {
    std::string s = to_string(status);
    if (status == MatchStatus::None) return s + " (residue " + residue.to_string() + ")";
    s += ":";
    for (std::size_t i = 0; i < names.size(); ++i) s += " " + names[i] + "=" + values[i].get_str();
    if (status == MatchStatus::Family) {
        if (lattice.rows()) s += " modulo lattice " + lattice.to_string();
        else s += " with " + std::to_string(free_dimension) + " free rational directions";
    }
    return s;
}

bool MatchResult::admits(const std::vector<Integer>& v) const {
    if (status == MatchStatus::None || v.size() != values.size()) return false;
    std::vector<Integer> diff(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        Rational d = Rational(v[i]) - values[i];
        if (d.get_den() != 1) return false;
        diff[i] = d.get_num();
    }
    if (std::all_of(diff.begin(), diff.end(), [](const Integer& x) { return x == 0; })) return true;
    if (lattice.rows() == 0) return false;
    return solve_echelon(hermite_nf(lattice), diff).has_value();
}

namespace {

MatchResult match_zz(const std::vector<std::vector<Integer>>& params, const IntMatrix& rel, std::vector<Integer> target,
                     const RingPtr& R, const std::vector<Exponents>& basis) {
    MatchResult res;
    std::size_t K = params.size(), n = target.size();
    IntMatrix A(0, n);
    for (const auto& v : params) A.append_row(v);
    for (std::size_t i = 0; i < rel.rows(); ++i) A.append_row(rel.row(i));
    HermiteResult h = hermite_nf(A);
    std::vector<Integer> y(h.rank), r = target;
    for (std::size_t i = 0; i < h.rank; ++i) {
        std::size_t c = h.pivots[i];
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), r[c].get_mpz_t(), h.H(i, c).get_mpz_t());
        y[i] = q;
        for (std::size_t j = c; j < n; ++j) r[j] -= q * h.H(i, j);
    }
    if (!std::all_of(r.begin(), r.end(), [](const Integer& x) { return x == 0; })) {
        res.status = MatchStatus::None;
        res.residue = from_coordinates(R, basis, r);
        return res;
    }
    std::vector<Integer> a(K);
    for (std::size_t k = 0; k < K; ++k)
        for (std::size_t i = 0; i < h.rank; ++i) a[k] += y[i] * h.U(i, k);
    IntMatrix kern(0, K);
    for (std::size_t i = h.rank; i < A.rows(); ++i) {
        std::vector<Integer> row(K);
        for (std::size_t k = 0; k < K; ++k) row[k] = h.U(i, k);
        kern.append_row(row);
    }
    HermiteResult L = hermite_nf(kern);
    res.lattice = nonzero_rows(L);
    for (std::size_t i = 0; i < L.rank; ++i) {
        std::size_t p = L.pivots[i];
        const Integer& P = L.H(i, p);
        Integer rem;
        mpz_fdiv_r(rem.get_mpz_t(), a[p].get_mpz_t(), P.get_mpz_t());
        if (2 * rem > P) rem -= P;
        Integer q = (a[p] - rem) / P;
        for (std::size_t k = 0; k < K; ++k) a[k] -= q * L.H(i, k);
    }
    res.status = L.rank ? MatchStatus::Family : MatchStatus::Unique;
    for (auto& x : a) res.values.emplace_back(x);
    return res;
}

MatchResult match_qq(const std::vector<std::vector<Integer>>& params, const IntMatrix& rel,
                     const std::vector<Integer>& target, const RingPtr& R, const std::vector<Exponents>& basis) {
    MatchResult res;
    std::size_t K = params.size(), n = target.size(), N = K + rel.rows();
    // columns are unknowns; rows are monomials; last column the right-hand side
    std::vector<std::vector<Rational>> M(n, std::vector<Rational>(N + 1));
    for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t k = 0; k < K; ++k) M[c][k] = params[k][c];
        for (std::size_t i = 0; i < rel.rows(); ++i) M[c][K + i] = rel(i, c);
        M[c][N] = target[c];
    }
    std::vector<std::size_t> pivcol;
    std::size_t row = 0;
    for (std::size_t col = 0; col < N && row < n; ++col) {
        std::size_t p = row;
        while (p < n && M[p][col] == 0) ++p;
        if (p == n) continue;
        std::swap(M[p], M[row]);
        Rational inv = 1 / M[row][col];
        for (auto& x : M[row]) x *= inv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == row || M[i][col] == 0) continue;
            Rational f = M[i][col];
            for (std::size_t j = col; j <= N; ++j) M[i][j] -= f * M[row][j];
        }
        pivcol.push_back(col);
        ++row;
    }
    for (std::size_t i = row; i < n; ++i)
        if (M[i][N] != 0) {
            std::vector<Integer> r(n);
            // report the unmatched target coordinates as the residue
            for (std::size_t c = 0; c < n; ++c) r[c] = target[c];
            res.status = MatchStatus::None;
            res.residue = from_coordinates(R, basis, r);
            return res;
        }
    std::vector<Rational> x(N);
    std::vector<bool> is_pivot(N, false);
    for (std::size_t i = 0; i < row; ++i) {
        x[pivcol[i]] = M[i][N];
        is_pivot[pivcol[i]] = true;
    }
    // a free column moves a parameter when some pivot parameter depends on it, or it is a parameter itself
    std::size_t free_dim = 0;
    for (std::size_t f = 0; f < N; ++f) {
        if (is_pivot[f]) continue;
        bool moves = f < K;
        for (std::size_t i = 0; i < row && !moves; ++i)
            if (pivcol[i] < K && M[i][f] != 0) moves = true;
        if (moves) ++free_dim;
    }
    res.free_dimension = free_dim;
    res.status = free_dim ? MatchStatus::Family : MatchStatus::Unique;
    for (std::size_t k = 0; k < K; ++k) res.values.push_back(x[k]);
    return res;
}

}  // namespace

MatchResult match_coefficients(const LinearTemplate& tmpl, const Polynomial& target, const PresentedRingPtr& ring,
                               int d) {
    const RingPtr& R = ring->ambient();
    auto basis = monomials_of_degree(*R, d);
    std::vector<std::vector<Integer>> params;
    for (const auto& c : tmpl.coefficients) params.push_back(coordinates(graded_component(c, d), basis));
    if (graded_component(tmpl.constant, d) != tmpl.constant || graded_component(target, d) != target)
        throw std::invalid_argument("template or target is not homogeneous of degree " + std::to_string(d));
    for (const auto& c : tmpl.coefficients)
        if (graded_component(c, d) != c)
            throw std::invalid_argument("template coefficient is not homogeneous of degree " + std::to_string(d));
    std::vector<Integer> rhs = coordinates(target - tmpl.constant, basis);
    IntMatrix rel(0, basis.size());
    for (const auto& r : ring->relations()) append_multiples(rel, r, d, basis);
    MatchResult res = ring->domain() == Domain::ZZ ? match_zz(params, rel, rhs, R, basis)
                                                   : match_qq(params, rel, rhs, R, basis);
    res.names = tmpl.names;
    if (res.status == MatchStatus::None && res.residue.ring() == nullptr) res.residue = Polynomial(R);
    return res;
}

}  // namespace chowz
