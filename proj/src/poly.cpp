#include "chowz/poly.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace chowz {

std::string to_string(Domain d) { return d == Domain::ZZ ? "ZZ" : "QQ"; }

Domain domain_from_string(std::string_view s) {
    if (s == "ZZ" || s == "Z") return Domain::ZZ;
    if (s == "QQ" || s == "Q") return Domain::QQ;
    throw ParseError("unknown coefficient domain '" + std::string(s) + "'", 1);
}

ParseError::ParseError(const std::string& msg, std::size_t column, std::size_t line)
    : std::runtime_error(msg), column_(column), line_(line) {}

MonomialOrder MonomialOrder::blocks(std::vector<std::size_t> sizes) {
    for (auto s : sizes)
        if (s == 0) throw std::invalid_argument("empty block in monomial order");
    MonomialOrder o;
    if (sizes.size() > 1) o.blocks_ = std::move(sizes);
    return o;
}

std::string MonomialOrder::describe() const {
    if (blocks_.empty()) return "wdegrevlex";
    std::string s = "block(";
    for (std::size_t i = 0; i < blocks_.size(); ++i) s += (i ? "," : "") + std::to_string(blocks_[i]);
    return s + ")";
}

PolyRing::PolyRing(std::vector<VarSpec> vars, MonomialOrder order)
    : vars_(std::move(vars)), order_(std::move(order)) {
    std::set<std::string> seen;
    for (const auto& v : vars_) {
        if (v.name.empty()) throw std::invalid_argument("empty variable name");
        if (!seen.insert(v.name).second)
            throw std::invalid_argument("duplicate variable name '" + v.name + "'");
        if (v.degree < 0) throw std::invalid_argument("negative degree for '" + v.name + "'");
        weights_.push_back(std::max(1, v.degree));
    }
    std::size_t start = 0;
    if (order_.block_sizes().empty()) {
        ranges_.push_back({0, vars_.size()});
    } else {
        for (auto s : order_.block_sizes()) {
            ranges_.push_back({start, start + s});
            start += s;
        }
        if (start != vars_.size())
            throw std::invalid_argument("block sizes do not cover the variables");
    }
}

std::optional<std::size_t> PolyRing::find(std::string_view name) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i].name == name) return i;
    return std::nullopt;
}

std::size_t PolyRing::index(std::string_view name) const {
    auto i = find(name);
    if (!i) throw std::invalid_argument("unknown variable '" + std::string(name) + "'");
    return *i;
}

int PolyRing::degree(const Exponents& e) const {
    int d = 0;
    for (std::size_t i = 0; i < e.size(); ++i) d += e[i] * vars_[i].degree;
    return d;
}

int PolyRing::compare(const Exponents& a, const Exponents& b) const {
    for (auto [lo, hi] : ranges_) {
        int wa = 0, wb = 0;
        for (std::size_t i = lo; i < hi; ++i) {
            wa += a[i] * weights_[i];
            wb += b[i] * weights_[i];
        }
        if (wa != wb) return wa < wb ? -1 : 1;
        for (std::size_t i = hi; i-- > lo;)
            if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
    }
    return 0;
}

RingPtr make_ring(std::vector<VarSpec> vars, MonomialOrder order) {
    return std::make_shared<const PolyRing>(std::move(vars), std::move(order));
}

bool same_ring(const RingPtr& a, const RingPtr& b) {
    return a == b || (a && b && *a == *b);
}

bool divides(const Exponents& a, const Exponents& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

Exponents lcm(const Exponents& a, const Exponents& b) {
    Exponents r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
    return r;
}

Exponents quotient(const Exponents& b, const Exponents& a) {
    Exponents r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = b[i] - a[i];
    return r;
}

Exponents product(const Exponents& a, const Exponents& b) {
    Exponents r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

Polynomial Polynomial::constant(RingPtr ring, const Integer& c) {
    Polynomial p(ring);
    if (c != 0) p.terms_.push_back({Exponents(ring->nvars(), 0), c});
    return p;
}

Polynomial Polynomial::variable(RingPtr ring, std::string_view name) {
    Exponents e(ring->nvars(), 0);
    e[ring->index(name)] = 1;
    return monomial(std::move(ring), std::move(e), 1);
}

Polynomial Polynomial::monomial(RingPtr ring, Exponents e, const Integer& c) {
    if (e.size() != ring->nvars()) throw std::invalid_argument("exponent vector has wrong length");
    Polynomial p(std::move(ring));
    if (c != 0) p.terms_.push_back({std::move(e), c});
    return p;
}

Polynomial Polynomial::from_terms(RingPtr ring, std::vector<Term> terms) {
    for (const auto& t : terms) {
        if (t.exps.size() != ring->nvars()) throw std::invalid_argument("exponent vector has wrong length");
        for (int x : t.exps)
            if (x < 0) throw std::invalid_argument("negative exponent");
    }
    Polynomial p(std::move(ring));
    p.terms_ = std::move(terms);
    p.normalize();
    return p;
}

Polynomial Polynomial::from_sorted_terms(RingPtr ring, std::vector<Term> terms) {
    Polynomial p(std::move(ring));
    p.terms_ = std::move(terms);
    return p;
}

Term Polynomial::pop_leading() {
    if (terms_.empty()) throw std::logic_error("leading term of zero polynomial");
    Term t = std::move(terms_.front());
    terms_.erase(terms_.begin());
    return t;
}

void Polynomial::normalize() {
    const PolyRing& r = *ring_;
    std::sort(terms_.begin(), terms_.end(),
              [&](const Term& a, const Term& b) { return r.compare(a.exps, b.exps) > 0; });
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
        if (!out.empty() && out.back().exps == t.exps) {
            out.back().coeff += t.coeff;
        } else {
            if (!out.empty() && out.back().coeff == 0) out.pop_back();
            out.push_back(std::move(t));
        }
    }
    if (!out.empty() && out.back().coeff == 0) out.pop_back();
    terms_ = std::move(out);
}

bool Polynomial::is_constant() const {
    if (terms_.empty()) return true;
    if (terms_.size() > 1) return false;
    for (int x : terms_[0].exps)
        if (x) return false;
    return true;
}

const Term& Polynomial::leading() const {
    if (terms_.empty()) throw std::logic_error("leading term of zero polynomial");
    return terms_.front();
}

bool Polynomial::is_homogeneous() const {
    for (const auto& t : terms_)
        if (ring_->degree(t.exps) != ring_->degree(terms_.front().exps)) return false;
    return true;
}

std::optional<int> Polynomial::homogeneous_degree() const {
    if (terms_.empty() || !is_homogeneous()) return std::nullopt;
    return ring_->degree(terms_.front().exps);
}

int Polynomial::max_degree() const {
    int d = 0;
    for (const auto& t : terms_) d = std::max(d, ring_->degree(t.exps));
    return d;
}

bool Polynomial::involves(std::size_t var) const {
    for (const auto& t : terms_)
        if (t.exps[var]) return true;
    return false;
}

Integer Polynomial::content() const {
    Integer g = 0;
    for (const auto& t : terms_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coeff.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

void Polynomial::check_ring(const Polynomial& o) const {
    if (!same_ring(ring_, o.ring_)) throw std::invalid_argument("operands belong to different rings");
}

Polynomial Polynomial::operator-() const {
    Polynomial r = *this;
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    sub_mul(-1, Exponents(ring_->nvars(), 0), o);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    sub_mul(1, Exponents(ring_->nvars(), 0), o);
    return *this;
}

void Polynomial::sub_mul(const Integer& c, const Exponents& m, const Polynomial& g) {
    check_ring(g);
    if (c == 0 || g.is_zero()) return;
    const PolyRing& r = *ring_;
    std::vector<Term> out;
    out.reserve(terms_.size() + g.terms_.size());
    std::size_t i = 0, j = 0;
    Exponents e;
    while (i < terms_.size() || j < g.terms_.size()) {
        if (j < g.terms_.size()) e = product(g.terms_[j].exps, m);
        int cmp = j >= g.terms_.size() ? 1 : i >= terms_.size() ? -1 : r.compare(terms_[i].exps, e);
        if (cmp > 0) {
            out.push_back(std::move(terms_[i++]));
        } else if (cmp < 0) {
            out.push_back({std::move(e), -c * g.terms_[j++].coeff});
        } else {
            Integer v = terms_[i].coeff - c * g.terms_[j].coeff;
            if (v != 0) out.push_back({std::move(terms_[i].exps), std::move(v)});
            ++i;
            ++j;
        }
    }
    terms_ = std::move(out);
}

Polynomial Polynomial::mul_term(const Integer& c, const Exponents& m) const {
    Polynomial r(ring_);
    if (c == 0) return r;
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({product(t.exps, m), t.coeff * c});
    return r;
}

Polynomial Polynomial::divexact(const Integer& c) const {
    Polynomial r = *this;
    for (auto& t : r.terms_) mpz_divexact(t.coeff.get_mpz_t(), t.coeff.get_mpz_t(), c.get_mpz_t());
    return r;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    a.check_ring(b);
    Polynomial r(a.ring_);
    if (a.is_zero() || b.is_zero()) return r;
    const Polynomial& small = a.size() <= b.size() ? a : b;
    const Polynomial& big = a.size() <= b.size() ? b : a;
    for (const auto& t : small.terms_) r.sub_mul(-t.coeff, t.exps, big);
    return r;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) {
    *this = *this * o;
    return *this;
}

Polynomial& Polynomial::operator*=(const Integer& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& t : terms_) t.coeff *= c;
    return *this;
}

Polynomial Polynomial::pow(unsigned n) const {
    Polynomial r = constant(ring_, 1), base = *this;
    while (n) {
        if (n & 1) r *= base;
        n >>= 1;
        if (n) base *= base;
    }
    return r;
}

bool Polynomial::operator==(const Polynomial& o) const {
    if (!same_ring(ring_, o.ring_)) return false;
    if (terms_.size() != o.terms_.size()) return false;
    for (std::size_t i = 0; i < terms_.size(); ++i)
        if (terms_[i].coeff != o.terms_[i].coeff || terms_[i].exps != o.terms_[i].exps) return false;
    return true;
}

std::string monomial_string(const PolyRing& ring, const Exponents& e) {
    std::string s;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (!e[i]) continue;
        if (!s.empty()) s += "*";
        s += ring.var(i).name;
        if (e[i] > 1) s += "^" + std::to_string(e[i]);
    }
    return s;
}

std::string Polynomial::to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& t : terms_) {
        std::string m = monomial_string(*ring_, t.exps);
        Integer a = abs(t.coeff);
        if (first) {
            if (t.coeff < 0) s += "-";
        } else {
            s += t.coeff < 0 ? " - " : " + ";
        }
        if (m.empty()) {
            s += a.get_str();
        } else {
            if (a != 1) s += a.get_str() + "*";
            s += m;
        }
        first = false;
    }
    return s;
}

Polynomial substitute(const Polynomial& p, const Assignment& a, const RingPtr& target) {
    const PolyRing& src = *p.ring();
    std::vector<Polynomial> images;
    images.reserve(src.nvars());
    for (std::size_t i = 0; i < src.nvars(); ++i) {
        const std::string& name = src.var(i).name;
        auto it = a.find(name);
        if (it != a.end()) {
            if (!same_ring(it->second.ring(), target))
                throw std::invalid_argument("image of '" + name + "' lies outside the target ring");
            images.push_back(it->second);
        } else if (target->find(name) || !p.involves(i)) {
            images.push_back(target->find(name) ? Polynomial::variable(target, name) : Polynomial(target));
        } else {
            throw std::invalid_argument("no image for variable '" + name + "'");
        }
    }
    std::vector<std::vector<Polynomial>> powers(src.nvars());
    auto power = [&](std::size_t i, int k) -> const Polynomial& {
        auto& v = powers[i];
        if (v.empty()) v.push_back(Polynomial::constant(target, 1));
        while (static_cast<int>(v.size()) <= k) v.push_back(v.back() * images[i]);
        return v[k];
    };
    Polynomial out(target);
    for (const auto& t : p.terms()) {
        Polynomial m = Polynomial::constant(target, t.coeff);
        for (std::size_t i = 0; i < src.nvars(); ++i)
            if (t.exps[i]) m *= power(i, t.exps[i]);
        out += m;
    }
    return out;
}

Polynomial substitute(const Polynomial& p, const Assignment& a) { return substitute(p, a, p.ring()); }

Polynomial change_ring(const Polynomial& p, const RingPtr& target) {
    if (same_ring(p.ring(), target)) return Polynomial::from_terms(target, p.terms());
    return substitute(p, {}, target);
}

Polynomial graded_component(const Polynomial& p, int d) {
    std::vector<Term> ts;
    for (const auto& t : p.terms())
        if (p.ring()->degree(t.exps) == d) ts.push_back(t);
    return Polynomial::from_terms(p.ring(), std::move(ts));
}

PresentedRing::PresentedRing(std::string name, RingPtr ambient, std::vector<Polynomial> relations,
                             Domain domain)
    : name_(std::move(name)), ambient_(std::move(ambient)), domain_(domain) {
    for (const auto& v : ambient_->vars())
        if (v.degree < 1)
            throw std::invalid_argument("variable '" + v.name + "' must have positive degree");
    for (auto& r : relations) {
        if (!same_ring(r.ring(), ambient_))
            throw std::invalid_argument("relation lies outside the ambient ring");
        if (r.is_zero()) continue;
        if (!r.is_homogeneous())
            throw std::invalid_argument("relation is not homogeneous: " + r.to_string());
        relations_.push_back(std::move(r));
    }
}

bool PresentedRing::operator==(const PresentedRing& o) const {
    return *ambient_ == *o.ambient_ && relations_ == o.relations_ && domain_ == o.domain_;
}

PresentedRingPtr ring_make(std::string name, std::vector<VarSpec> vars,
                           const std::vector<std::string>& relations, Domain domain, MonomialOrder order) {
    RingPtr amb = make_ring(std::move(vars), std::move(order));
    std::vector<Polynomial> rels;
    for (const auto& s : relations) rels.push_back(parse_polynomial(s, amb));
    return ring_make(std::move(name), amb, std::move(rels), domain);
}

PresentedRingPtr ring_make(std::string name, RingPtr ambient, std::vector<Polynomial> relations, Domain domain) {
    return std::make_shared<const PresentedRing>(std::move(name), std::move(ambient), std::move(relations), domain);
}

PresentedRingPtr rationalize(const PresentedRingPtr& r) {
    return ring_make(r->name() + "_QQ", r->ambient(), r->relations(), Domain::QQ);
}

}  // namespace chowz
