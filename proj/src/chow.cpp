#include "chowz/chow.hpp"

#include <stdexcept>

namespace chowz::chow {
namespace {

Integer binomial(long n, long k) {
    if (k < 0 || n < 0 || k > n) return 0;
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

Polynomial var(std::string_view name) { return Polynomial::variable(work_ring(), name); }
Polynomial cst(long c) { return Polynomial::constant(work_ring(), Integer(c)); }

void require_work(const Polynomial& p) {
    if (!same_ring(p.ring(), work_ring())) throw std::invalid_argument("expected an element of the work ring");
}

// P(k) = pi_*(t1^k)
const Polynomial& norm_power(int k) {
    static std::vector<Polynomial> cache;
    if (cache.empty()) {
        cache.push_back(cst(2));
        cache.push_back(var("beta1") + var("gamma"));
    }
    while (static_cast<int>(cache.size()) <= k) {
        std::size_t n = cache.size();
        cache.push_back(var("beta1") * cache[n - 1] - var("beta2") * cache[n - 2]);
    }
    return cache[k];
}

}  // namespace

RingPtr work_ring() {
    static const RingPtr ring = [] {
        std::vector<VarSpec> vars = {{"alpha1", 1}, {"alpha2", 2}, {"beta1", 1}, {"beta2", 2}, {"gamma", 1},
                                     {"t1", 1},     {"t2", 1}};
        for (int i = 1; i <= 4; ++i) vars.push_back({x_name(i), 1});
        for (int i = 1; i <= 2; ++i)
            for (int j = 0; j <= kMaxU; ++j) vars.push_back({u_name(i, j), j});
        return make_ring(std::move(vars));
    }();
    return ring;
}

Polynomial work(std::string_view text) { return parse_polynomial(text, work_ring()); }

std::string x_name(int i) { return "x" + std::to_string(i); }
std::string u_name(int i, int j) { return "u" + std::to_string(i) + "_" + std::to_string(j); }

Polynomial norm_push(const Polynomial& p) {
    require_work(p);
    const auto& R = *p.ring();
    std::size_t i1 = R.index("t1"), i2 = R.index("t2");
    Polynomial out(p.ring());
    for (const auto& t : p.terms()) {
        int a = t.exps[i1], b = t.exps[i2];
        Exponents rest = t.exps;
        rest[i1] = rest[i2] = 0;
        Exponents b2(R.nvars(), 0);
        b2[R.index("beta2")] = std::min(a, b);
        Exponents m = product(rest, b2);
        out += norm_power(std::abs(a - b)).mul_term(t.coeff, m);
    }
    return out;
}

std::vector<Polynomial> norm_push_ideal(const std::vector<Polynomial>& gens, std::string_view t) {
    std::vector<Polynomial> out;
    for (const auto& g : gens) {
        out.push_back(norm_push(g));
        out.push_back(norm_push(var(t) * g));
    }
    return out;
}

Polynomial norm_pullback(const Polynomial& p) {
    require_work(p);
    Assignment a;
    a.emplace("beta1", var("t1") + var("t2"));
    a.emplace("beta2", var("t1") * var("t2"));
    a.emplace("gamma", cst(0));
    return substitute(p, a);
}

Polynomial swap_t(const Polynomial& p) {
    require_work(p);
    Assignment a;
    a.emplace("t1", var("t2"));
    a.emplace("t2", var("t1"));
    return substitute(p, a);
}

Polynomial proj_bundle_relation(const std::vector<Polynomial>& chern, std::string_view zeta) {
    if (chern.empty()) throw std::invalid_argument("projective bundle of rank 0");
    const RingPtr& R = chern.front().ring();
    Polynomial z = Polynomial::variable(R, zeta);
    int r = static_cast<int>(chern.size());
    Polynomial out = z.pow(r);
    for (int k = 1; k <= r; ++k) out += chern[k - 1] * z.pow(r - k);
    return out;
}

std::vector<Polynomial> chern_sym(int n) {
    if (n < 1) throw std::invalid_argument("chern_sym needs n >= 1");
    // formal roots l1, l2 eliminated against alpha1 = l1 + l2, alpha2 = l1 l2
    RingPtr L = make_ring({{"l1", 1}, {"l2", 1}, {"alpha1", 1}, {"alpha2", 2}}, MonomialOrder::blocks({2, 2}));
    Polynomial l1 = Polynomial::variable(L, "l1"), l2 = Polynomial::variable(L, "l2");
    GroebnerBasis gb = compute_gb(L,
                                  {l1 + l2 - Polynomial::variable(L, "alpha1"),
                                   l1 * l2 - Polynomial::variable(L, "alpha2")},
                                  Domain::ZZ);
    // elementary symmetric functions of the roots -(i l1 + (n-i) l2)
    std::vector<Polynomial> e(n + 2, Polynomial(L));
    e[0] = Polynomial::constant(L, 1);
    for (int i = 0; i <= n; ++i) {
        Polynomial root = -(l1 * Integer(i) + l2 * Integer(n - i));
        for (int k = i + 1; k >= 1; --k) e[k] += e[k - 1] * root;
    }
    std::vector<Polynomial> out;
    for (int k = 1; k <= n + 1; ++k) {
        Polynomial rem = gb.reduce(e[k]);
        if (rem.involves(0) || rem.involves(1))
            throw std::logic_error("Chern class is not symmetric in the roots: " + rem.to_string());
        out.push_back(change_ring(rem, work_ring()));
    }
    return out;
}

int UPolyContext::weight(int i) const {
    if (i < 1 || i > static_cast<int>(weights_.size())) throw std::out_of_range("no factor " + std::to_string(i));
    return weights_[i - 1];
}

Polynomial UPolyContext::step(int i, int j) const {
    // u^(j+1) = (x - j alpha1) u^j + j (r + 1 - j) alpha2 u^(j-1)
    if (j == 0) return cst(1);
    if (j == 1) return var(x_name(i));
    int k = j - 1;
    Polynomial out = (var(x_name(i)) - var("alpha1") * Integer(k)) * u(i, k);
    if (k >= 1) out += var("alpha2") * u(i, k - 1) * Integer(k * (weight(i) + 1 - k));
    return out;
}

const Polynomial& UPolyContext::u(int i, int j) const {
    int r = weight(i);
    if (j < 0 || j > r) throw std::out_of_range("u_" + std::to_string(i) + "^" + std::to_string(j) +
                                                    " outside 0.." + std::to_string(r));
    auto key = std::make_pair(i, j);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    Polynomial v = step(i, j);
    return cache_.emplace(key, std::move(v)).first->second;
}

Polynomial UPolyContext::top(int i) const { return step(i, weight(i) + 1); }

Polynomial to_u_basis(const Polynomial& p, const UPolyContext& ctx, int i) {
    require_work(p);
    int r = ctx.weight(i);
    if (r > kMaxU) throw std::out_of_range("factor weight exceeds the u-symbols of the work ring");
    const auto& R = *p.ring();
    std::size_t xi = R.index(x_name(i));
    for (int j = 0; j <= kMaxU; ++j)
        if (p.involves(R.index(u_name(i, j))))
            throw std::invalid_argument("input already contains " + u_name(i, j));
    // X[k] = x_i^k written in u-symbols, by inverting the unitriangular system
    std::vector<Polynomial> X;
    for (int k = 0; k <= r; ++k) {
        Polynomial xk = var(u_name(i, k));
        const Polynomial& uk = ctx.u(i, k);
        for (const auto& t : uk.terms()) {
            int m = t.exps[xi];
            if (m == k) continue;
            Exponents rest = t.exps;
            rest[xi] = 0;
            xk -= X[m].mul_term(t.coeff, rest);
        }
        X.push_back(std::move(xk));
    }
    Polynomial out(p.ring());
    for (const auto& t : p.terms()) {
        int k = t.exps[xi];
        if (k > r)
            throw std::invalid_argument(x_name(i) + "^" + std::to_string(k) + " exceeds the rank of the factor");
        Exponents rest = t.exps;
        rest[xi] = 0;
        out += X[k].mul_term(t.coeff, rest);
    }
    return out;
}

Polynomial evaluate_u(const Polynomial& p, const UPolyContext& ctx, int i) {
    require_work(p);
    Assignment a;
    for (int j = 0; j <= kMaxU; ++j) {
        if (j <= ctx.weight(i)) {
            a.emplace(u_name(i, j), ctx.u(i, j));
        } else if (p.involves(p.ring()->index(u_name(i, j)))) {
            throw std::invalid_argument(u_name(i, j) + " exceeds the rank of the factor");
        }
    }
    return substitute(p, a);
}

Polynomial drop_u0(const Polynomial& p) {
    require_work(p);
    Assignment a;
    a.emplace(u_name(1, 0), cst(1));
    a.emplace(u_name(2, 0), cst(1));
    return substitute(p, a);
}

Polynomial shift_factors(const Polynomial& p, int from, int shift) {
    require_work(p);
    Assignment a;
    std::vector<int> used(5, 0);
    for (int k = 1; k <= 4; ++k) {
        int to = k >= from ? k + shift : k;
        if (!p.involves(p.ring()->index(x_name(k)))) continue;
        if (to < 1 || to > 4) throw std::out_of_range("cannot rename " + x_name(k));
        if (used[to]++) throw std::invalid_argument("renaming onto occupied factor " + x_name(to));
        a.emplace(x_name(k), var(x_name(to)));
    }
    for (int k = 1; k <= 4; ++k) a.emplace(x_name(k), var(x_name(k)));  // no-op when already present
    return substitute(p, a);
}

Polynomial PushforwardTable::apply(const Polynomial& p) const {
    require_work(p);
    const auto& R = *p.ring();
    for (const auto& f : forbidden)
        if (p.involves(R.index(f)))
            throw std::invalid_argument(name + ": input involves " + f + "; rewrite it in u-symbols first");
    std::vector<std::size_t> idx;
    for (const auto& v : table_vars) idx.push_back(R.index(v));
    Polynomial out(p.ring());
    for (const auto& t : p.terms()) {
        Exponents key, rest = t.exps;
        for (auto i : idx) {
            key.push_back(t.exps[i]);
            rest[i] = 0;
        }
        auto it = images.find(key);
        if (it == images.end())
            throw std::invalid_argument(name + ": term " + monomial_string(R, t.exps) +
                                        " is not in the span of the table basis");
        out += it->second.mul_term(t.coeff, rest);
    }
    return out;
}

std::optional<std::string> PushforwardTable::check_homogeneity() const {
    const auto& R = *work_ring();
    for (const auto& [key, img] : images) {
        int d = shift;
        for (std::size_t k = 0; k < key.size(); ++k) d += key[k] * R.var(R.index(table_vars[k])).degree;
        if (img.is_zero()) continue;
        auto hd = img.homogeneous_degree();
        if (!hd || *hd != d) return name + ": image " + img.to_string() + " is not of degree " + std::to_string(d);
    }
    return std::nullopt;
}

namespace {

// Terms missing every u_i symbol get the fundamental class u_i^0.
Polynomial with_units(const Polynomial& p, int i) {
    const auto& R = *p.ring();
    std::vector<std::size_t> idx;
    for (int j = 0; j <= kMaxU; ++j) idx.push_back(R.index(u_name(i, j)));
    std::vector<Term> ts;
    for (auto t : p.terms()) {
        bool any = false;
        for (auto k : idx) any = any || t.exps[k] > 0;
        if (!any) t.exps[idx[0]] = 1;
        ts.push_back(std::move(t));
    }
    return Polynomial::from_terms(p.ring(), std::move(ts));
}

Exponents table_key(std::size_t n, std::initializer_list<std::pair<std::size_t, int>> entries) {
    Exponents e(n, 0);
    for (auto [k, v] : entries) e[k] = v;
    return e;
}

}  // namespace

PushforwardTable mul_table(int a, int b) {
    if (a < 1 || b < 1 || a + b > kMaxU) throw std::out_of_range("multiplication map outside the supported range");
    PushforwardTable T;
    T.name = "mul(" + std::to_string(a) + "," + std::to_string(b) + ")";
    for (int i = 1; i <= 2; ++i)
        for (int j = 0; j <= kMaxU; ++j) T.table_vars.push_back(u_name(i, j));
    T.forbidden = {x_name(1), x_name(2)};
    std::size_t n = T.table_vars.size(), off = kMaxU + 1;
    for (int al = 0; al <= a; ++al)
        for (int be = 0; be <= b; ++be)
            T.images[table_key(n, {{static_cast<std::size_t>(al), 1}, {off + be, 1}})] =
                var(u_name(1, al + be)) * binomial(a - al + b - be, a - al);
    return T;
}

PushforwardTable sq_table() {
    PushforwardTable T;
    T.name = "sq";
    T.shift = 1;
    for (int j = 0; j <= kMaxU; ++j) T.table_vars.push_back(u_name(1, j));
    T.forbidden = {x_name(1)};
    for (int j = 0; j <= kMaxU; ++j) T.forbidden.push_back(u_name(2, j));
    std::size_t n = T.table_vars.size();
    T.images[table_key(n, {{0, 1}})] = var(u_name(1, 1)) * Integer(2) - var("alpha1") * var(u_name(1, 0)) * Integer(2);
    T.images[table_key(n, {{1, 1}})] = var(u_name(1, 2)) - var("alpha2") * var(u_name(1, 0)) * Integer(2);
    return T;
}

Polynomial mul_push(int a, int b, const Polynomial& expr) {
    require_work(expr);
    return mul_table(a, b).apply(with_units(with_units(expr, 1), 2));
}

Polynomial sq_push(const Polynomial& expr) {
    require_work(expr);
    static const PushforwardTable T = sq_table();
    return T.apply(with_units(expr, 1));
}

Polynomial diagonal_class(int i, int j) {
    if (i == j) throw std::invalid_argument("diagonal needs two distinct factors");
    return var(x_name(i)) + var(x_name(j)) - var("alpha1");
}

Assignment twist_substitutions(const Twist& t) {
    Assignment a;
    switch (t.kind) {
    case TwistKind::Phi:
        a.emplace(x_name(t.source), var(x_name(t.target)) - var("t" + std::to_string(t.torus)) * Integer(2));
        break;
    case TwistKind::ProjectivizationV3:
        a.emplace(x_name(1), var("alpha1"));
        break;
    case TwistKind::ProjectivizationV1W:
        a.emplace(x_name(2), -var("alpha1"));
        break;
    case TwistKind::Trivial:
        break;
    }
    return a;
}

Delta1Push::Delta1Push(RingMap restriction, Assignment lift)
    : restriction_(std::move(restriction)), lift_(std::move(lift)) {
    if (!restriction_.target()->ambient()->find("lambda1"))
        throw std::invalid_argument("restriction target is not a Delta1 stratum");
    if (!restriction_.source()->ambient()->find("delta1"))
        throw std::invalid_argument("push target has no delta1");
}

Polynomial Delta1Push::lift(const Polynomial& x) const {
    return substitute(x, lift_, restriction_.source()->ambient());
}

Polynomial Delta1Push::push(const Polynomial& x) const {
    return lift(x) * Polynomial::variable(restriction_.source()->ambient(), "delta1");
}

std::vector<Polynomial> Delta1Push::push(const std::vector<Polynomial>& xs) const {
    std::vector<Polynomial> out;
    for (const auto& x : xs) out.push_back(push(x));
    return out;
}

std::optional<std::string> Delta1Push::check() const {
    const auto& D = restriction_.target();
    const auto& M = restriction_.source();
    for (const auto& v : D->ambient()->vars()) {
        Polynomial x = Polynomial::variable(D->ambient(), v.name);
        if (!element_equal(D, restriction_.apply(lift(x)), x))
            return "lift of " + v.name + " does not restrict back to it";
    }
    Polynomial d1 = Polynomial::variable(M->ambient(), "delta1");
    Ideal zero(M, {});
    for (const auto& k : reduced_generators(ring_map_kernel(restriction_)))
        if (!ideal_contains(zero, k * d1))
            return "kernel element " + k.to_string() + " times delta1 is nonzero in " + M->name();
    for (const auto& r : D->relations())
        if (!ideal_contains(zero, lift(r) * d1))
            return "relation " + r.to_string() + " of " + D->name() + " does not push to zero";
    return std::nullopt;
}

}  // namespace chowz::chow
