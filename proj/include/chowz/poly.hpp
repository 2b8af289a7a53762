#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace chowz {

using Integer = mpz_class;
using Rational = mpq_class;
using Exponents = std::vector<int>;

enum class Domain { ZZ, QQ };
std::string to_string(Domain d);
Domain domain_from_string(std::string_view s);

struct VarSpec {
    std::string name;
    int degree = 1;
    bool operator==(const VarSpec&) const = default;
};

// Input that cannot be parsed. column is 1-based; line is 0 when unknown.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, std::size_t column, std::size_t line = 0);
    std::size_t column() const { return column_; }
    std::size_t line() const { return line_; }

private:
    std::size_t column_;
    std::size_t line_;
};

// Weighted degrevlex inside each block; blocks compared left to right.
// An empty block list means one block spanning every variable.
class MonomialOrder {
public:
    MonomialOrder() = default;
    static MonomialOrder degrevlex() { return {}; }
    static MonomialOrder blocks(std::vector<std::size_t> sizes);

    const std::vector<std::size_t>& block_sizes() const { return blocks_; }
    std::string describe() const;
    bool operator==(const MonomialOrder&) const = default;

private:
    std::vector<std::size_t> blocks_;
};

class PolyRing {
public:
    explicit PolyRing(std::vector<VarSpec> vars, MonomialOrder order = {});

    std::size_t nvars() const { return vars_.size(); }
    const std::vector<VarSpec>& vars() const { return vars_; }
    const VarSpec& var(std::size_t i) const { return vars_.at(i); }
    std::optional<std::size_t> find(std::string_view name) const;
    std::size_t index(std::string_view name) const;
    const MonomialOrder& order() const { return order_; }

    int degree(const Exponents& e) const;
    // <0, 0, >0 as a is smaller, equal, larger than b.
    int compare(const Exponents& a, const Exponents& b) const;

    bool operator==(const PolyRing& o) const { return vars_ == o.vars_ && order_ == o.order_; }

private:
    std::vector<VarSpec> vars_;
    MonomialOrder order_;
    std::vector<int> weights_;
    std::vector<std::pair<std::size_t, std::size_t>> ranges_;
};

using RingPtr = std::shared_ptr<const PolyRing>;
RingPtr make_ring(std::vector<VarSpec> vars, MonomialOrder order = {});
bool same_ring(const RingPtr& a, const RingPtr& b);

struct Term {
    Exponents exps;
    Integer coeff;
};

bool divides(const Exponents& a, const Exponents& b);
Exponents lcm(const Exponents& a, const Exponents& b);
Exponents quotient(const Exponents& b, const Exponents& a);  // b / a, requires divides(a, b)
Exponents product(const Exponents& a, const Exponents& b);

class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(RingPtr ring) : ring_(std::move(ring)) {}

    static Polynomial constant(RingPtr ring, const Integer& c);
    static Polynomial variable(RingPtr ring, std::string_view name);
    static Polynomial monomial(RingPtr ring, Exponents e, const Integer& c = 1);
    static Polynomial from_terms(RingPtr ring, std::vector<Term> terms);
    // terms already strictly decreasing with nonzero coefficients
    static Polynomial from_sorted_terms(RingPtr ring, std::vector<Term> terms);

    const RingPtr& ring() const { return ring_; }
    const std::vector<Term>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    const Term& leading() const;
    Term pop_leading();

    bool is_homogeneous() const;
    // Degree of a nonzero homogeneous polynomial; nullopt otherwise.
    std::optional<int> homogeneous_degree() const;
    int max_degree() const;
    bool involves(std::size_t var) const;
    Integer content() const;

    Polynomial operator-() const;
    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    Polynomial& operator*=(const Polynomial& o);
    Polynomial& operator*=(const Integer& c);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(Polynomial a, const Integer& c) { return a *= c; }
    friend Polynomial operator*(const Integer& c, Polynomial a) { return a *= c; }
    Polynomial pow(unsigned n) const;

    // this - c * x^m * g, computed by a single merge.
    void sub_mul(const Integer& c, const Exponents& m, const Polynomial& g);
    Polynomial mul_term(const Integer& c, const Exponents& m) const;
    // exact division of every coefficient
    Polynomial divexact(const Integer& c) const;

    bool operator==(const Polynomial& o) const;
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

    std::string to_string() const;

private:
    void check_ring(const Polynomial& o) const;
    void normalize();

    RingPtr ring_;
    std::vector<Term> terms_;  // strictly decreasing in the ring order
};

std::string monomial_string(const PolyRing& ring, const Exponents& e);

using Assignment = std::map<std::string, Polynomial, std::less<>>;

// Variables missing from the assignment map to the variable of the same name in target.
Polynomial substitute(const Polynomial& p, const Assignment& a, const RingPtr& target);
Polynomial substitute(const Polynomial& p, const Assignment& a);
Polynomial change_ring(const Polynomial& p, const RingPtr& target);
Polynomial graded_component(const Polynomial& p, int d);

Polynomial parse_polynomial(std::string_view text, const RingPtr& ring);

class PresentedRing {
public:
    PresentedRing(std::string name, RingPtr ambient, std::vector<Polynomial> relations,
                  Domain domain = Domain::ZZ);

    const std::string& name() const { return name_; }
    const RingPtr& ambient() const { return ambient_; }
    const std::vector<Polynomial>& relations() const { return relations_; }
    Domain domain() const { return domain_; }
    Polynomial parse(std::string_view text) const { return parse_polynomial(text, ambient_); }
    Polynomial var(std::string_view name) const { return Polynomial::variable(ambient_, name); }
    Polynomial zero() const { return Polynomial(ambient_); }

    bool operator==(const PresentedRing& o) const;

private:
    std::string name_;
    RingPtr ambient_;
    std::vector<Polynomial> relations_;
    Domain domain_;
};

using PresentedRingPtr = std::shared_ptr<const PresentedRing>;

PresentedRingPtr ring_make(std::string name, std::vector<VarSpec> vars,
                           const std::vector<std::string>& relations, Domain domain = Domain::ZZ,
                           MonomialOrder order = {});
PresentedRingPtr ring_make(std::string name, RingPtr ambient, std::vector<Polynomial> relations,
                           Domain domain = Domain::ZZ);
// Same ambient and relations, coefficients in QQ.
PresentedRingPtr rationalize(const PresentedRingPtr& r);

struct RingElement {
    PresentedRingPtr ring;
    Polynomial repr;
};

}  // namespace chowz
