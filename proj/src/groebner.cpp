#include "chowz/groebner.hpp"
#include "chowz/serialize.hpp"

#include <algorithm>
#include <set>
#include <tuple>

namespace chowz {
namespace {

const Integer& lc(const Polynomial& p) { return p.leading().coeff; }
const Exponents& lm(const Polynomial& p) { return p.leading().exps; }

Polynomial make_positive(Polynomial p) {
    if (!p.is_zero() && lc(p) < 0) p = -p;
    return p;
}

Polynomial make_primitive(Polynomial p) {
    if (p.is_zero()) return p;
    Integer c = p.content();
    if (c != 1) p = p.divexact(c);
    return make_positive(std::move(p));
}

// Euclidean reduction: at each monomial use the divisor with the smallest
// leading coefficient and keep a remainder in [0, lc).
Polynomial reduce_zz(Polynomial q, const std::vector<Polynomial>& basis) {
    std::vector<Term> rem;
    Integer quo, r;
    while (!q.is_zero()) {
        const Term& lt = q.leading();
        const Polynomial* best = nullptr;
        for (const auto& g : basis)
            if (divides(lm(g), lt.exps) && (!best || lc(g) < lc(*best))) best = &g;
        if (best) {
            mpz_fdiv_qr(quo.get_mpz_t(), r.get_mpz_t(), lt.coeff.get_mpz_t(), lc(*best).get_mpz_t());
            if (quo != 0) q.sub_mul(quo, quotient(lt.exps, lm(*best)), *best);
            if (r != 0) rem.push_back(q.pop_leading());
        } else {
            rem.push_back(q.pop_leading());
        }
    }
    return Polynomial::from_sorted_terms(q.ring(), std::move(rem));
}

// Pseudo-reduction over QQ using integer multiples; returns a primitive result.
Polynomial reduce_qq(Polynomial q, const std::vector<Polynomial>& basis) {
    std::vector<Term> rem;
    while (!q.is_zero()) {
        const Term& lt = q.leading();
        const Polynomial* g = nullptr;
        for (const auto& b : basis)
            if (divides(lm(b), lt.exps)) {
                g = &b;
                break;
            }
        if (!g) {
            rem.push_back(q.pop_leading());
            continue;
        }
        Integer h = gcd(lc(*g), lt.coeff);
        Integer scale = lc(*g) / h;
        Integer mult = lt.coeff / h;
        Exponents m = quotient(lt.exps, lm(*g));
        if (scale != 1) {
            q *= scale;
            for (auto& t : rem) t.coeff *= scale;
        }
        q.sub_mul(mult, m, *g);
    }
    return make_primitive(Polynomial::from_sorted_terms(q.ring(), std::move(rem)));
}

Polynomial reduce_by(const Polynomial& p, const std::vector<Polynomial>& basis, Domain d) {
    return d == Domain::ZZ ? reduce_zz(p, basis) : reduce_qq(p, basis);
}

Polynomial s_poly(const Polynomial& f, const Polynomial& g, Domain d) {
    Exponents m = lcm(lm(f), lm(g));
    (void)d;
    Integer l;
    mpz_lcm(l.get_mpz_t(), lc(f).get_mpz_t(), lc(g).get_mpz_t());
    Polynomial s = f.mul_term(l / lc(f), quotient(m, lm(f)));
    s.sub_mul(l / lc(g), quotient(m, lm(g)), g);
    return s;
}

// u*f*x^a + v*g*x^b with u*lc(f) + v*lc(g) = gcd; nullopt when one coefficient divides the other.
std::optional<Polynomial> g_poly(const Polynomial& f, const Polynomial& g) {
    if (mpz_divisible_p(lc(f).get_mpz_t(), lc(g).get_mpz_t()) ||
        mpz_divisible_p(lc(g).get_mpz_t(), lc(f).get_mpz_t()))
        return std::nullopt;
    Integer d, u, v;
    mpz_gcdext(d.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), lc(f).get_mpz_t(), lc(g).get_mpz_t());
    Exponents m = lcm(lm(f), lm(g));
    Polynomial r = f.mul_term(u, quotient(m, lm(f)));
    r.sub_mul(-v, quotient(m, lm(g)), g);
    return r;
}

std::size_t coeff_bits(const Polynomial& p) {
    std::size_t b = 0;
    for (const auto& t : p.terms()) b = std::max(b, mpz_sizeinbase(t.coeff.get_mpz_t(), 2));
    return b;
}

bool lt_less(const PolyRing& r, const Polynomial& a, const Polynomial& b) {
    int c = r.compare(lm(a), lm(b));
    if (c) return c < 0;
    return lc(a) < lc(b);
}

std::vector<Polynomial> finalize(std::vector<Polynomial> G, Domain d, const PolyRing& r) {
    std::sort(G.begin(), G.end(), [&](const Polynomial& a, const Polynomial& b) { return lt_less(r, a, b); });
    std::vector<Polynomial> kept;
    for (auto& g : G) {
        bool redundant = false;
        for (const auto& h : kept)
            if (divides(lm(h), lm(g)) &&
                (d == Domain::QQ || mpz_divisible_p(lc(g).get_mpz_t(), lc(h).get_mpz_t()))) {
                redundant = true;
                break;
            }
        if (!redundant) kept.push_back(std::move(g));
    }
    std::vector<Polynomial> out;
    for (std::size_t i = 0; i < kept.size(); ++i) {
        std::vector<Polynomial> others;
        for (std::size_t j = 0; j < kept.size(); ++j)
            if (j != i) others.push_back(kept[j]);
        Polynomial tail = kept[i];
        Term lead = tail.pop_leading();
        Polynomial head = Polynomial::monomial(tail.ring(), lead.exps, lead.coeff);
        if (d == Domain::ZZ) {
            out.push_back(head + reduce_zz(tail, others));
        } else {
            std::vector<Term> rem{lead};
            Polynomial q = tail;
            while (!q.is_zero()) {
                const Term& lt = q.leading();
                const Polynomial* g = nullptr;
                for (const auto& b : others)
                    if (divides(lm(b), lt.exps)) {
                        g = &b;
                        break;
                    }
                if (!g) {
                    rem.push_back(q.pop_leading());
                    continue;
                }
                Integer h = gcd(lc(*g), lt.coeff);
                Integer scale = lc(*g) / h;
                Integer mult = lt.coeff / h;
                Exponents m = quotient(lt.exps, lm(*g));
                if (scale != 1) {
                    q *= scale;
                    for (auto& t : rem) t.coeff *= scale;
                }
                q.sub_mul(mult, m, *g);
            }
            out.push_back(make_primitive(Polynomial::from_sorted_terms(tail.ring(), std::move(rem))));
        }
    }
    std::sort(out.begin(), out.end(), [&](const Polynomial& a, const Polynomial& b) { return lt_less(r, a, b); });
    return out;
}

}  // namespace

Ideal::Ideal(PresentedRingPtr ring, std::vector<Polynomial> gens) : ring_(std::move(ring)) {
    for (auto& g : gens) {
        if (!same_ring(g.ring(), ring_->ambient()))
            throw std::invalid_argument("generator lies outside the ring " + ring_->name());
        if (g.is_zero()) continue;
        if (!g.is_homogeneous()) throw std::invalid_argument("generator is not homogeneous: " + g.to_string());
        gens_.push_back(std::move(g));
    }
}

std::vector<Polynomial> Ideal::all_generators() const {
    std::vector<Polynomial> all = gens_;
    all.insert(all.end(), ring_->relations().begin(), ring_->relations().end());
    return all;
}

GroebnerBasis::GroebnerBasis(RingPtr ring, Domain domain, std::vector<Polynomial> basis, GbStats stats)
    : ring_(std::move(ring)), domain_(domain), basis_(std::move(basis)), stats_(stats) {}

Polynomial GroebnerBasis::reduce(const Polynomial& p) const {
    if (!same_ring(p.ring(), ring_)) throw std::invalid_argument("polynomial lies outside the basis ring");
    return reduce_by(p, basis_, domain_);
}

bool GroebnerBasis::is_unit_ideal() const {
    for (const auto& g : basis_)
        if (g.is_constant() && (domain_ == Domain::QQ || abs(lc(g)) == 1)) return true;
    return false;
}

std::optional<std::string> GroebnerBasis::certificate_failure() const {
    for (std::size_t i = 0; i < basis_.size(); ++i)
        for (std::size_t j = i + 1; j < basis_.size(); ++j) {
            Polynomial s = reduce(s_poly(basis_[i], basis_[j], domain_));
            if (!s.is_zero())
                return "S-polynomial of elements " + std::to_string(i) + "," + std::to_string(j) +
                       " reduces to " + s.to_string();
            if (domain_ == Domain::ZZ) {
                auto g = g_poly(basis_[i], basis_[j]);
                if (g && !reduce(*g).is_zero())
                    return "G-polynomial of elements " + std::to_string(i) + "," + std::to_string(j) +
                           " does not reduce to zero";
            }
        }
    return std::nullopt;
}

GroebnerBasis compute_gb(const RingPtr& ring, std::vector<Polynomial> gens, Domain domain, const GbOptions& opts) {
    GbStats stats;
    std::vector<Polynomial> G;
    // (degree of lcm, newer index, older index)
    std::set<std::tuple<int, std::size_t, std::size_t>> pairs;
    auto add = [&](const Polynomial& f) {
        Polynomial h = reduce_by(f, G, domain);
        if (h.is_zero()) {
            ++stats.reductions_to_zero;
            return;
        }
        h = domain == Domain::ZZ ? make_positive(std::move(h)) : make_primitive(std::move(h));
        stats.max_coeff_bits = std::max(stats.max_coeff_bits, coeff_bits(h));
        for (std::size_t i = 0; i < G.size(); ++i)
            pairs.insert({ring->degree(lcm(lm(G[i]), lm(h))), G.size(), i});
        G.push_back(std::move(h));
        stats.basis_peak = std::max(stats.basis_peak, G.size());
    };
    for (const auto& f : gens) {
        if (!same_ring(f.ring(), ring)) throw std::invalid_argument("generator lies outside the ring");
        add(f);
    }
    while (!pairs.empty()) {
        auto [deg, j, i] = *pairs.begin();
        pairs.erase(pairs.begin());
        ++stats.pairs;
        if (opts.progress && stats.pairs % 200 == 0)
            opts.progress("gb: " + std::to_string(stats.pairs) + " pairs done, " + std::to_string(pairs.size()) +
                          " pending, basis " + std::to_string(G.size()) + ", degree " + std::to_string(deg));
        Polynomial gi = G[i], gj = G[j];
        add(s_poly(gi, gj, domain));
        if (domain == Domain::ZZ)
            if (auto g = g_poly(gi, gj)) add(*g);
    }
    return GroebnerBasis(ring, domain, finalize(std::move(G), domain, *ring), stats);
}

Polynomial normal_form(const Polynomial& p, const GroebnerBasis& gb) { return gb.reduce(p); }

Polynomial normal_form(const Polynomial& p, const Ideal& I) { return strong_gb(I).reduce(p); }

bool ideal_contains(const Ideal& I, const Polynomial& p) { return strong_gb(I).contains(p); }

bool ideal_subset(const Ideal& a, const Ideal& b) {
    if (!same_ring(a.ring()->ambient(), b.ring()->ambient()))
        throw std::invalid_argument("ideals live in different rings");
    GroebnerBasis gb = strong_gb(b);
    for (const auto& g : a.all_generators())
        if (!gb.contains(g)) return false;
    return true;
}

bool ideal_equal(const Ideal& a, const Ideal& b) { return ideal_subset(a, b) && ideal_subset(b, a); }

bool element_equal(const PresentedRingPtr& r, const Polynomial& a, const Polynomial& b) {
    return ideal_contains(Ideal(r, {}), a - b);
}

std::vector<Polynomial> reduced_generators(const Ideal& I) {
    GroebnerBasis rel = strong_gb(Ideal(I.ring(), {}));
    std::vector<Polynomial> cand;
    for (const auto& g : I.gens()) {
        if (rel.contains(g)) continue;
        if (std::find(cand.begin(), cand.end(), g) != cand.end()) continue;
        cand.push_back(g);
    }
    std::stable_sort(cand.begin(), cand.end(),
                     [](const Polynomial& a, const Polynomial& b) { return a.max_degree() < b.max_degree(); });
    // drop whatever the earlier survivors already generate
    std::vector<Polynomial> out;
    for (const auto& g : cand)
        if (out.empty() || !ideal_contains(Ideal(I.ring(), out), g)) out.push_back(g);
    return out;
}

namespace {

// Copy of p in a ring whose variables are `prefix` extra variables followed by p's.
Polynomial shift_into(const Polynomial& p, const RingPtr& big, std::size_t offset) {
    std::vector<Term> ts;
    for (const auto& t : p.terms()) {
        Exponents e(big->nvars(), 0);
        std::copy(t.exps.begin(), t.exps.end(), e.begin() + offset);
        ts.push_back({std::move(e), t.coeff});
    }
    return Polynomial::from_terms(big, std::move(ts));
}

// Elements of the basis free of the first `drop` variables, moved back to `small`.
std::vector<Polynomial> eliminate(const GroebnerBasis& gb, std::size_t drop, const RingPtr& small) {
    std::vector<Polynomial> out;
    for (const auto& g : gb.basis()) {
        bool free = true;
        for (std::size_t v = 0; v < drop && free; ++v) free = !g.involves(v);
        if (!free) continue;
        std::vector<Term> ts;
        for (const auto& t : g.terms()) ts.push_back({Exponents(t.exps.begin() + drop, t.exps.end()), t.coeff});
        out.push_back(Polynomial::from_terms(small, std::move(ts)));
    }
    return out;
}

MonomialOrder prepend_block(std::size_t n, const PolyRing& r) {
    std::vector<std::size_t> sizes{n};
    if (r.order().block_sizes().empty()) sizes.push_back(r.nvars());
    else for (auto s : r.order().block_sizes()) sizes.push_back(s);
    return MonomialOrder::blocks(sizes);
}

Ideal prune(const PresentedRingPtr& r, std::vector<Polynomial> gens) {
    return Ideal(r, reduced_generators(Ideal(r, std::move(gens))));
}

}  // namespace

Ideal ideal_intersect(const Ideal& a, const Ideal& b) {
    if (!same_ring(a.ring()->ambient(), b.ring()->ambient()) || a.ring()->domain() != b.ring()->domain())
        throw std::invalid_argument("ideals live in different rings");
    const RingPtr& amb = a.ring()->ambient();
    std::vector<VarSpec> vars{{"_t", 0}};
    vars.insert(vars.end(), amb->vars().begin(), amb->vars().end());
    RingPtr big = make_ring(vars, prepend_block(1, *amb));
    Polynomial t = Polynomial::variable(big, "_t");
    Polynomial one_minus_t = Polynomial::constant(big, 1) - t;
    std::vector<Polynomial> gens;
    for (const auto& f : a.all_generators()) gens.push_back(t * shift_into(f, big, 1));
    for (const auto& g : b.all_generators()) gens.push_back(one_minus_t * shift_into(g, big, 1));
    GroebnerBasis gb = groebner_basis(big, std::move(gens), a.ring()->domain());
    return prune(a.ring(), eliminate(gb, 1, amb));
}

Ideal rationalize(const Ideal& I) { return Ideal(rationalize(I.ring()), I.gens()); }

Ideal ideal_in(const Ideal& I, const PresentedRingPtr& ring) {
    std::vector<Polynomial> gens;
    for (const auto& g : I.gens()) gens.push_back(change_ring(g, ring->ambient()));
    return Ideal(ring, std::move(gens));
}

RingMap::RingMap(PresentedRingPtr source, PresentedRingPtr target, Assignment images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
    const RingPtr& tgt = target_->ambient();
    for (const auto& [name, img] : images_) {
        if (!source_->ambient()->find(name))
            throw std::invalid_argument("map assigns unknown variable '" + name + "'");
        if (!same_ring(img.ring(), tgt)) throw std::invalid_argument("image of '" + name + "' is outside the target");
    }
    for (const auto& v : source_->ambient()->vars()) {
        auto it = images_.find(v.name);
        if (it == images_.end()) {
            auto idx = tgt->find(v.name);
            if (!idx) throw std::invalid_argument("no image for '" + v.name + "'");
            if (tgt->var(*idx).degree != v.degree)
                throw std::invalid_argument("identity image of '" + v.name + "' changes degree");
            continue;
        }
        const Polynomial& img = it->second;
        if (img.is_zero()) continue;
        auto d = img.homogeneous_degree();
        if (!d || *d != v.degree)
            throw std::invalid_argument("image of '" + v.name + "' is not homogeneous of degree " +
                                        std::to_string(v.degree));
    }
    GroebnerBasis rel = strong_gb(Ideal(target_, {}));
    for (const auto& r : source_->relations())
        if (!rel.contains(apply(r)))
            throw std::invalid_argument("relation " + r.to_string() + " does not map into the target relations");
}

Polynomial RingMap::apply(const Polynomial& p) const { return substitute(p, images_, target_->ambient()); }

Ideal RingMap::apply(const Ideal& I) const {
    std::vector<Polynomial> gens;
    for (const auto& g : I.gens()) gens.push_back(apply(g));
    return Ideal(target_, std::move(gens));
}

RingMap ring_map(PresentedRingPtr source, PresentedRingPtr target, const std::map<std::string, std::string>& images) {
    Assignment a;
    for (const auto& [k, v] : images) a.emplace(k, parse_polynomial(v, target->ambient()));
    return RingMap(std::move(source), std::move(target), std::move(a));
}

Ideal ring_map_preimage(const RingMap& f, const Ideal& J) {
    if (!same_ring(J.ring()->ambient(), f.target()->ambient()))
        throw std::invalid_argument("ideal is not in the target of the map");
    const RingPtr& src = f.source()->ambient();
    const RingPtr& tgt = f.target()->ambient();
    std::vector<VarSpec> vars;
    Assignment rename;
    for (const auto& v : tgt->vars()) vars.push_back({"_" + v.name, v.degree});
    std::size_t nt = vars.size();
    vars.insert(vars.end(), src->vars().begin(), src->vars().end());
    RingPtr big = make_ring(vars, MonomialOrder::blocks({nt, src->nvars()}));
    for (const auto& v : tgt->vars()) rename.emplace(v.name, Polynomial::variable(big, "_" + v.name));
    std::vector<Polynomial> gens;
    for (const auto& g : J.all_generators()) gens.push_back(substitute(g, rename, big));
    for (const auto& v : src->vars()) {
        Polynomial img = substitute(f.apply(Polynomial::variable(src, v.name)), rename, big);
        gens.push_back(Polynomial::variable(big, v.name) - img);
    }
    for (const auto& r : f.source()->relations()) gens.push_back(shift_into(r, big, nt));
    GroebnerBasis gb = groebner_basis(big, std::move(gens), f.source()->domain());
    return prune(f.source(), eliminate(gb, nt, src));
}

Ideal ring_map_kernel(const RingMap& f) { return ring_map_preimage(f, Ideal(f.target(), {})); }

}  // namespace chowz
