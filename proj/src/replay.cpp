#include "chowz/replay.hpp"

#include "embedded.hpp"

#include <algorithm>
#include <sstream>

namespace chowz::replay {

using namespace chowz::chow;

std::string to_string(Verdict v) {
    switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::PassWithModuli: return "pass-with-moduli";
    default: return "fail";
    }
}

Verdict verdict_from_string(std::string_view s) {
    if (s == "pass") return Verdict::Pass;
    if (s == "pass-with-moduli") return Verdict::PassWithModuli;
    if (s == "fail") return Verdict::Fail;
    throw ParseError("unknown verdict '" + std::string(s) + "'", 0);
}

namespace {

using Arts = std::map<std::string, Artifact, std::less<>>;

struct Ctx {
    const RingRegistry& reg;
    Moduli w;
    Arts arts;

    PresentedRingPtr ring(std::string_view n) const { return reg.ring(n, w); }
    RingMap map(std::string_view n) const { return reg.map(n, w); }
    Polynomial constant(std::string_view n) const { return reg.constant(n, w); }
    void put(const std::string& name, PresentedRingPtr R, std::vector<Polynomial> ps) {
        if (R)
            for (auto& p : ps) p = change_ring(p, R->ambient());
        arts[name] = Artifact{std::move(R), std::move(ps), std::nullopt};
    }
    void put_work(const std::string& name, std::vector<Polynomial> ps) { put(name, nullptr, std::move(ps)); }
    void put_match(const std::string& name, PresentedRingPtr R, MatchResult m) {
        arts[name] = Artifact{std::move(R), {}, std::move(m)};
    }
};

Polynomial W(std::string_view text) { return work(text); }

std::vector<Polynomial> on_ring(const std::vector<Polynomial>& ps, const PresentedRingPtr& R) {
    std::vector<Polynomial> out;
    for (const auto& p : ps) out.push_back(change_ring(p, R->ambient()));
    return out;
}

Assignment merged(std::initializer_list<Assignment> parts) {
    Assignment a;
    for (const auto& p : parts)
        for (const auto& [k, v] : p) a.insert_or_assign(k, v);
    return a;
}

// Twist, evaluate the u1 symbols on PV3, then pull back from the projectivizations.
Polynomial pv3_pullback(const Polynomial& p, const Twist& twist) {
    Polynomial q = substitute(p, twist_substitutions(twist));
    q = evaluate_u(q, UPolyContext({3}), 1);
    q = substitute(q, twist_substitutions({TwistKind::ProjectivizationV3}));
    return substitute(q, twist_substitutions({TwistKind::ProjectivizationV1W}));
}

Integer integral(const Rational& q) {
    if (q.get_den() != 1) throw std::logic_error("non-integral coefficient " + q.get_str());
    return q.get_num();
}

std::vector<Integer> integral(const std::vector<Rational>& qs) {
    std::vector<Integer> out;
    for (const auto& q : qs) out.push_back(integral(q));
    return out;
}

void put_lambda(Ctx& c, const std::vector<Polynomial>& alphas) {
    std::vector<Polynomial> l;
    for (const auto& a : alphas) l.push_back(c.reg.alpha_to_lambda(a));
    auto B = c.ring("B_biell");
    c.put("lambda_all", B, l);
    c.put("lambda_first", B, {l.front()});
    c.put("lambda_tail", B, std::vector<Polynomial>(l.begin() + 1, l.end()));
}

Polynomial gamma_to_delta(const Ctx& c, const Polynomial& p) { return c.map("gamma_to_delta").apply(p); }

// [(D\0)^2] in the gamma form of Delta1 and in the delta form
Polynomial euler_class(const Ctx& c) { return c.map("BG_to_Delta1").apply(c.constant("c2_W12")); }

// norm of (12 t1) in the delta form of Delta1
std::vector<Polynomial> norm_of_12t1(const Ctx& c) {
    RingMap f = c.map("BG_to_Delta1");
    std::vector<Polynomial> out;
    for (const auto& g : norm_push_ideal({W("12*t1")}, "t2"))
        out.push_back(gamma_to_delta(c, f.apply(change_ring(g, f.source()->ambient()))));
    return out;
}

void s3_2(Ctx& c) {
    c.put_work("euler_torus", {W("12*t1") * W("12*t2")});
    c.put_work("c2_pullback", {norm_pullback(change_ring(c.constant("c2_W12"), work_ring()))});
    Polynomial e = euler_class(c);
    c.put("euler", c.ring("Delta1_basis_gamma"), {e});
    c.put("euler_delta", c.ring("Delta1"), {gamma_to_delta(c, e)});
}

void s3_3(Ctx& c) {
    c.put_work("norm", norm_push_ideal({W("12*t1")}, "t2"));
    c.put("image_delta", c.ring("Delta1"), norm_of_12t1(c));
}

void s3_4a(Ctx& c) {
    auto P = c.reg.delta1_push("M2bar_to_Delta1", c.w);
    const auto& D = P.restriction().target();
    c.put("push", P.restriction().source(), {P.push(change_ring(gamma_to_delta(c, euler_class(c)), D->ambient()))});
}

void s3_4b(Ctx& c) {
    auto P = c.reg.delta1_push("M2bar-D001_to_Delta1-D001", c.w);
    c.put("push", P.restriction().source(), P.push(on_ring(norm_of_12t1(c), P.restriction().target())));
}

void s4_4(Ctx& c) {
    UPolyContext pv1({1}), pv21({2, 1});
    Polynomial d = diagonal_class(2, 3);
    c.put_work("diagonal", {d});
    std::vector<Polynomial> sq, pre, mul, pulled;
    for (const auto& g : {d, W("x1") * d}) sq.push_back(sq_push(to_u_basis(g, pv1, 1)));
    for (const auto& s : sq) {
        pre.push_back(to_u_basis(s, pv21, 2));
        mul.push_back(shift_factors(mul_push(2, 1, pre.back()), 3, -1));
        pulled.push_back(pv3_pullback(mul.back(), {TwistKind::Phi, 2, 2, 1}));
    }
    std::vector<Polynomial> values;
    for (int j = 0; j <= 3; ++j) values.push_back(pv3_pullback(W(u_name(1, j)), {}));
    c.put_work("squared", sq);
    c.put_work("pre_mul", pre);
    c.put_work("multiplied", mul);
    c.put_work("pv3_values", values);
    c.put_work("pulled", pulled);
    auto norm = norm_push_ideal(pulled, "t2");
    c.put_work("norm", norm);
    put_lambda(c, norm);
}

void s4_5(Ctx& c) {
    std::vector<Polynomial> mul, rel;
    for (int j = 0; j <= 1; ++j) {
        mul.push_back(mul_push(2, 1, sq_push(W(u_name(1, j)))));
        rel.push_back(pv3_pullback(mul.back(), {}));
    }
    c.put_work("multiplied", mul);
    c.put_work("relations", rel);
    put_lambda(c, rel);
}

const char* kPsiTorusTemplate =
    "a*alpha2 + b*t1*t2 + c*alpha1^2 + d*(t1 + t2)^2 + e*alpha1*(t1 + t2) + f*alpha1*x2 + g*(t1 + t2)*x2"
    " + h*alpha1*x1 + i*(t1 + t2)*x1 + j*x1*x2 + k*x2^2 + l*x1^2";
const char* kPsiTemplate =
    "a*alpha2 + b*beta2 + c*alpha1^2 + d*beta1^2 + e*alpha1*beta1 + f*alpha1*x2 + g*beta1*x2"
    " + h*alpha1*x1 + i*beta1*x1 + j*x1*x2 + k*x2^2 + l*x1^2";
const std::vector<std::string> kPsiParams = {"a", "b", "c", "d", "e", "f", "g", "h", "i", "j", "k", "l"};

void s4_6(Ctx& c) {
    UPolyContext c11({1, 1}), pv2({2}), c12({1, 2});
    Polynomial bd = diagonal_class(1, 3) * diagonal_class(2, 4);
    Polynomial bdu = to_u_basis(to_u_basis(bd, c11, 1), c11, 2);
    Polynomial graph = shift_factors(mul_push(1, 1, bdu), 3, -1);
    Polynomial torus = substitute(
        graph, merged({twist_substitutions({TwistKind::Phi, 2, 2, 1}), twist_substitutions({TwistKind::Phi, 3, 2, 2})}));
    torus = evaluate_u(torus, pv2, 1);
    c.put_work("bidiagonal", {bd});
    c.put_work("bidiagonal_u", {bdu});
    c.put_work("graph_push", {graph});
    c.put_work("psi_torus", {torus});

    // first determination: pull back to the maximal torus, where degree 2 has no relations
    auto T = ring_make("torus-graph-ring", {{"alpha1", 1}, {"alpha2", 2}, {"t1", 1}, {"t2", 1}, {"x1", 1}, {"x2", 1}},
                       {});
    auto tt = LinearTemplate::parse(kPsiTorusTemplate, T->ambient(), kPsiParams);
    MatchResult m1 = match_coefficients(tt, change_ring(torus, T->ambient()), T, 2);
    c.put_match("psi_match", T, m1);
    if (m1.status != MatchStatus::Unique) throw std::runtime_error("torus coefficients are not determined");
    Polynomial partial = LinearTemplate::parse(kPsiTemplate, work_ring(), kPsiParams).evaluate(integral(m1.values));

    // second determination: the graph of the squaring map, over GL2 x Z/2
    Polynomial dg = to_u_basis(diagonal_class(1, 2), UPolyContext({1}), 1);
    Polynomial sq_graph = evaluate_u(sq_push(dg), pv2, 1);
    c.put_work("sq_graph", {sq_graph});
    auto Z = ring_make("sign-graph-ring", {{"alpha1", 1}, {"alpha2", 2}, {"gamma", 1}, {"x1", 1}, {"x2", 1}},
                       {"2*gamma", "x2^2 - alpha1*x2 + alpha2"});
    Assignment sign;
    sign.emplace("beta1", W("gamma"));
    sign.emplace("beta2", W("0"));
    LinearTemplate gt{change_ring(substitute(partial, sign), Z->ambient()),
                      {"m", "n", "p", "q"},
                      {Z->parse("alpha1*gamma"), Z->parse("gamma^2"), Z->parse("gamma*x2"), Z->parse("gamma*x1")}};
    MatchResult m2 = match_coefficients(gt, change_ring(sq_graph, Z->ambient()), Z, 2);
    c.put_match("gamma_match", Z, m2);
    if (m2.status == MatchStatus::None) throw std::runtime_error("gamma coefficients have no solution");
    auto mnpq = integral(m2.values);
    Polynomial psi = partial + W("alpha1*gamma") * mnpq[0] + W("beta1*gamma") * mnpq[1] + W("gamma*x2") * mnpq[2] +
                     W("gamma*x1") * mnpq[3];
    c.put_work("psi", {psi});

    Polynomial pi2 = shift_factors(psi, 1, 1);
    Polynomial pi2u = to_u_basis(pi2, c12, 2);
    Polynomial mul = shift_factors(mul_push(1, 2, pi2u), 3, -1);
    Polynomial fin = pv3_pullback(mul, {});
    c.put_work("pi2_psi", {pi2});
    c.put_work("pi2_psi_u", {pi2u});
    c.put_work("multiplied", {mul});
    c.put_work("final", {fin});
    c.put("final_lambda", c.ring("B_biell"), {c.reg.alpha_to_lambda(fin)});
}

void s4_7(Ctx& c) {
    Polynomial pre = to_u_basis(diagonal_class(2, 3), UPolyContext({2, 1}), 2);
    Polynomial mul = mul_push(2, 1, pre);
    Polynomial pulled = pv3_pullback(mul, {TwistKind::Phi, 3, 2, 2});
    auto norm = norm_push_ideal({pulled}, "t1");
    c.put_work("pre_mul", {pre});
    c.put_work("multiplied", {mul});
    c.put_work("pulled", {pulled});
    c.put_work("norm", norm);
    put_lambda(c, norm);
}

std::vector<Polynomial> kernel_gens(const Ctx& c, std::string_view map) {
    return reduced_generators(ring_map_kernel(c.map(map)));
}

std::vector<Polynomial> alpha_classes(const Ctx& c, std::initializer_list<const char*> names) {
    std::vector<Polynomial> out;
    for (const auto* n : names) out.push_back(c.reg.alpha_class(n));
    return out;
}

MatchResult beta30_match(const Ctx& c) {
    auto M = c.ring("M2bar");
    auto t = LinearTemplate::parse("24*x*lambda2*delta1", M->ambient(), {"x"});
    return match_coefficients(t, c.constant("beta30_rational"), rationalize(M), 3);
}

const char* kBeta20Template = "4*y*lambda1*(delta1 + lambda1) + 144*z*lambda2";

MatchResult beta20_match(const Ctx& c) {
    auto R = c.ring("M2bar-D000-D001");
    auto t = LinearTemplate::parse(kBeta20Template, R->ambient(), {"y", "z"});
    return match_coefficients(t, c.constant("beta20_rational"), rationalize(R), 2);
}

const char* kBeta11Template = "(2*a*lambda1 + b*delta1)*(delta1 + lambda1) + 24*c*lambda2";

LinearTemplate beta11_template(const Ctx& c) {
    return LinearTemplate::parse(kBeta11Template, c.ring("M2bar-D00-D01")->ambient(), {"a", "b", "c"});
}

void s5_1(Ctx& c) {
    auto M = c.ring("M2bar");
    Ideal k1(M, kernel_gens(c, "M2bar_to_Delta1")), k2(M, kernel_gens(c, "M2bar_to_B_biell-D000")),
        k3(M, kernel_gens(c, "M2bar_to_M2bar-D1"));
    c.put("intersection", M, reduced_generators(ideal_intersect(ideal_intersect(k1, k2), k3)));
    c.put("alpha3", c.ring("M2bar-D1"), alpha_classes(c, {"alpha30", "alpha31", "alpha32", "alpha33"}));
    c.put_match("beta30_match", rationalize(M), beta30_match(c));
}

void s5_2(Ctx& c) {
    auto R = c.ring("M2bar-D000-D001");
    Ideal k1(R, kernel_gens(c, "M2bar-D000-D001_to_Delta1-D001")),
        k2(R, kernel_gens(c, "M2bar-D000-D001_to_B_biell-D00")), k3(R, kernel_gens(c, "M2bar-D000-D001_to_M2bar-D1"));
    Ideal pair = ideal_intersect(k1, k2);
    c.put("pair", R, reduced_generators(pair));
    c.put("triple", R, reduced_generators(ideal_intersect(pair, k3)));
    c.put("alpha2_tail", c.ring("M2bar-D1"), alpha_classes(c, {"alpha21", "alpha22"}));
    MatchResult m = beta20_match(c);
    c.put_match("beta20_match", rationalize(R), m);
    if (m.status == MatchStatus::None) throw std::runtime_error("beta20 template has no rational solution");
    auto t = LinearTemplate::parse(kBeta20Template, R->ambient(), {"y", "z"});
    c.put("beta20", R, {t.evaluate(integral(m.values))});
}

void s5_3(Ctx& c) {
    auto R = c.ring("M2bar-D00-D01");
    c.put("kernel", R, kernel_gens(c, "M2bar-D00-D01_to_Delta1-D01"));

    // restrict the general form away from Delta1 and compare with alpha11
    RingMap f = c.map("M2bar-D00-D01_to_M2bar-D00-D1");
    LinearTemplate gen = beta11_template(c);
    if (!f.apply(gen.coefficients[1]).is_zero()) throw std::logic_error("b-term survives the restriction");
    LinearTemplate ac{f.apply(gen.constant), {"a", "c"}, {f.apply(gen.coefficients[0]), f.apply(gen.coefficients[2])}};
    Polynomial a11 = change_ring(c.reg.alpha_class("alpha11"), f.target()->ambient());
    MatchResult m = match_coefficients(ac, a11, f.target(), 2);
    c.put_match("ac_match", f.target(), m);
    std::vector<Polynomial> shifts;
    for (std::size_t i = 0; i < m.lattice.rows(); ++i) shifts.push_back(gen.evaluate({m.lattice(i, 0), 0, m.lattice(i, 1)}));
    c.put("lattice_shifts", R, shifts);
    c.put("beta11_b0", R, {gen.evaluate({1, 0, -1})});
    c.put("beta11_bm1", R, {gen.evaluate({1, -1, -1})});

    auto P = c.reg.delta1_push("M2bar-D00-D01_to_Delta1-D01", c.w);
    Polynomial gamma = gamma_to_delta(c, c.ring("Delta1_basis_gamma")->var("gamma"));
    Polynomial gp = P.push(change_ring(gamma, P.restriction().target()->ambient()));
    c.put("gamma_push", R, {gp});
    c.put("grr_relation", R, {c.constant("grr_pushforward") - gp});
}

std::vector<Polynomial> beta3(const Ctx& c) {
    auto M = c.ring("M2bar");
    auto t = LinearTemplate::parse("24*x*lambda2*delta1", M->ambient(), {"x"});
    return {t.evaluate(integral(beta30_match(c).values)), M->zero(),
            M->parse(bind_moduli("24*w32*delta1*lambda2^2", c.w)), M->zero()};
}

std::vector<Polynomial> beta2(const Ctx& c) {
    auto R = c.ring("M2bar-D000-D001");
    auto t = LinearTemplate::parse(kBeta20Template, R->ambient(), {"y", "z"});
    return {t.evaluate(integral(beta20_match(c).values)), R->parse(bind_moduli("24*w21*lambda2*delta1", c.w)),
            R->zero()};
}

std::vector<Polynomial> beta1(const Ctx& c) {
    return {change_ring(c.constant("delta0"), c.ring("M2bar-D00-D01")->ambient()),
            beta11_template(c).evaluate({1, -1, -1})};
}

void put_alphas(Ctx& c) {
    auto V = c.ring("M2bar-D1");
    c.put("alpha3", V, alpha_classes(c, {"alpha30", "alpha31", "alpha32", "alpha33"}));
    c.put("alpha2", V, alpha_classes(c, {"alpha20", "alpha21", "alpha22"}));
    c.put("alpha1", V, alpha_classes(c, {"alpha10", "alpha11"}));
}

void s5_5a(Ctx& c) {
    c.put("beta3", c.ring("M2bar"), beta3(c));
    auto b2 = beta2(c);
    c.put("beta2", c.ring("M2bar-D000-D001"), b2);
    c.put("beta2_all", c.ring("M2bar-D000-D001"), b2);
    c.put("beta1", c.ring("M2bar-D00-D01"), beta1(c));
    put_alphas(c);
}

void s5_5b(Ctx& c) {
    std::vector<Polynomial> chain = beta3(c);
    for (auto& v : {beta2(c), beta1(c)}) chain.insert(chain.end(), v.begin(), v.end());
    c.put("chain", c.ring("M2bar-D01"), chain);
}

void s5_5c(Ctx& c) { put_alphas(c); }

using Pipeline = void (*)(Ctx&);

const std::map<std::string, Pipeline, std::less<>>& pipelines() {
    static const std::map<std::string, Pipeline, std::less<>> p = {
        {"S3.2-excise-D001", s3_2},     {"S3.3-excise-D01", s3_3},          {"S3.4a", s3_4a},
        {"S3.4b", s3_4b},               {"S4.4-biell-D000", s4_4},          {"S4.5-biell-D00-part1", s4_5},
        {"S4.6-biell-D00-part2", s4_6}, {"S4.7-biell-D0", s4_7},            {"S5.1-beta3", s5_1},
        {"S5.2-beta2", s5_2},           {"S5.3-beta11", s5_3},              {"S5.5a-assemble", s5_5a},
        {"S5.5b-M2ct", s5_5b},          {"S5.5c-M2", s5_5c}};
    return p;
}

// ---- claim evaluation

struct Failure {
    std::string witness, detail;
};
using Outcome = std::optional<Failure>;  // nullopt: pass

const Artifact& artifact(const Ctx& c, std::string_view ref) {
    auto it = c.arts.find(ref.substr(1));
    if (it == c.arts.end()) throw std::invalid_argument("no artifact '" + std::string(ref) + "'");
    return it->second;
}

bool is_ref(const json& j) { return j.is_string() && !j.get<std::string>().empty() && j.get<std::string>()[0] == '$'; }

// The ring of a claim: explicit, else the ring of its first artifact, else the work ring (null).
PresentedRingPtr claim_ring(const Ctx& c, const json& claim, const json& first) {
    if (claim.contains("ring")) {
        std::string n = claim["ring"];
        return n == "work" ? nullptr : c.ring(n);
    }
    if (is_ref(first)) return artifact(c, first.get<std::string>()).ring;
    if (first.is_array() && !first.empty() && is_ref(first[0])) return artifact(c, first[0].get<std::string>()).ring;
    return nullptr;
}

RingPtr ambient(const PresentedRingPtr& R) { return R ? R->ambient() : work_ring(); }

std::vector<Polynomial> expand(const Ctx& c, const json& spec, const RingPtr& amb) {
    std::vector<Polynomial> out;
    if (spec.is_array()) {
        for (const auto& s : spec) {
            auto v = expand(c, s, amb);
            out.insert(out.end(), v.begin(), v.end());
        }
        return out;
    }
    std::string s = spec.get<std::string>();
    if (is_ref(spec)) {
        for (const auto& p : artifact(c, s).polys) out.push_back(change_ring(p, amb));
        return out;
    }
    out.push_back(parse_polynomial(bind_moduli(s, c.w), amb));
    return out;
}

std::string list_string(const std::vector<Polynomial>& ps) {
    std::string s;
    for (const auto& p : ps) s += (s.empty() ? "" : "; ") + p.to_string();
    return s.empty() ? "(none)" : s;
}

Polynomial nf(const PresentedRingPtr& R, const Polynomial& p) { return normal_form(p, Ideal(R, {})); }

Outcome pairwise(const std::vector<Polynomial>& lhs, const std::vector<Polynomial>& rhs,
                 const std::function<Outcome(std::size_t, const Polynomial&, const Polynomial&)>& cmp) {
    if (lhs.size() != rhs.size())
        return Failure{"lhs has " + std::to_string(lhs.size()) + " entries, rhs " + std::to_string(rhs.size()),
                       "lhs = " + list_string(lhs)};
    for (std::size_t i = 0; i < lhs.size(); ++i)
        if (auto f = cmp(i, lhs[i], rhs[i])) return f;
    return std::nullopt;
}

Outcome compare_ideals(const Ideal& a, const Ideal& b) {
    for (const auto& g : b.gens())
        if (!ideal_contains(a, g))
            return Failure{"normal form " + normal_form(g, a).to_string(), g.to_string() + " is not in the left ideal"};
    for (const auto& g : a.gens())
        if (!ideal_contains(b, g))
            return Failure{"normal form " + normal_form(g, b).to_string(), g.to_string() + " is not in the right ideal"};
    return std::nullopt;
}

std::string invariants_string(const std::vector<Integer>& inv) {
    std::string s = "[";
    for (std::size_t i = 0; i < inv.size(); ++i) s += (i ? ", " : "") + inv[i].get_str();
    return s + "]";
}

Outcome check_match(const Artifact& a, const json& claim) {
    if (!a.match) throw std::invalid_argument("artifact is not a coefficient match");
    const MatchResult& m = *a.match;
    if (claim.contains("status") && to_string(m.status) != claim["status"].get<std::string>())
        return Failure{"status " + to_string(m.status), m.describe()};
    const json values = claim.value("values", json::object());
    for (const auto& [name, val] : values.items()) {
        auto it = std::find(m.names.begin(), m.names.end(), name);
        if (it == m.names.end()) throw std::invalid_argument("no parameter " + name);
        Rational want(val.get<std::string>());
        want.canonicalize();
        const Rational& got = m.values[it - m.names.begin()];
        if (got != want) return Failure{name + " = " + got.get_str() + ", expected " + want.get_str(), m.describe()};
    }
    return std::nullopt;
}

Outcome evaluate_claim(const Ctx& c, const json& claim) {
    const std::string kind = claim.at("kind");
    if (kind == "poly_equal" || kind == "element_equal") {
        auto R = claim_ring(c, claim, claim.at("lhs"));
        auto lhs = expand(c, claim["lhs"], ambient(R)), rhs = expand(c, claim.at("rhs"), ambient(R));
        if (claim.value("canonical", "") == "drop_u0") {
            for (auto& p : lhs) p = drop_u0(p);
            for (auto& p : rhs) p = drop_u0(p);
        }
        if (kind == "poly_equal")
            return pairwise(lhs, rhs, [](std::size_t i, const Polynomial& a, const Polynomial& b) -> Outcome {
                if (a == b) return std::nullopt;
                return Failure{"difference " + (a - b).to_string(), "entry " + std::to_string(i) + ": " + a.to_string()};
            });
        if (!R) throw std::invalid_argument("element_equal needs a presented ring");
        return pairwise(lhs, rhs, [&](std::size_t i, const Polynomial& a, const Polynomial& b) -> Outcome {
            Polynomial d = nf(R, a - b);
            if (d.is_zero()) return std::nullopt;
            return Failure{"normal form of difference " + d.to_string(), "entry " + std::to_string(i)};
        });
    }
    if (kind == "zero") {
        auto R = claim_ring(c, claim, claim.at("elements"));
        for (const auto& p : expand(c, claim["elements"], ambient(R))) {
            Polynomial r = nf(R, p);
            if (!r.is_zero()) return Failure{"normal form " + r.to_string(), p.to_string() + " is not zero"};
        }
        return std::nullopt;
    }
    if (kind == "ideal_equal") {
        auto R = claim_ring(c, claim, claim.at("lhs"));
        return compare_ideals(Ideal(R, expand(c, claim["lhs"], R->ambient())),
                              Ideal(R, expand(c, claim.at("rhs"), R->ambient())));
    }
    if (kind == "presentation") {
        auto R = c.ring(claim.at("ring").get<std::string>());
        auto S = c.ring(claim.at("equals").get<std::string>());
        auto F = ring_make(R->name() + "[free]", R->ambient(), {});
        std::vector<Polynomial> lhs = R->relations();
        for (const auto& g : expand(c, claim.at("quotient_by"), R->ambient()))
            if (!g.is_zero()) lhs.push_back(g);
        return compare_ideals(Ideal(F, lhs), Ideal(F, on_ring(S->relations(), R)));
    }
    if (kind == "kernel") {
        RingMap f = c.map(claim.at("map").get<std::string>());
        return compare_ideals(ring_map_kernel(f),
                              Ideal(f.source(), expand(c, claim.at("generators"), f.source()->ambient())));
    }
    if (kind == "member" || kind == "not_member") {
        auto R = c.ring(claim.at("ring").get<std::string>());
        Ideal I(R, expand(c, claim.at("ideal"), R->ambient()));
        for (const auto& p : expand(c, claim.at("element"), R->ambient())) {
            Polynomial r = normal_form(p, I);
            if (kind == "member" && !r.is_zero()) return Failure{"normal form " + r.to_string(), "not a member"};
            if (kind == "not_member" && r.is_zero()) return Failure{"normal form 0", p.to_string() + " is a member"};
        }
        return std::nullopt;
    }
    if (kind == "graded_piece") {
        auto R = c.ring(claim.at("ring").get<std::string>());
        GradedPiece g = graded_piece(Ideal(R, expand(c, claim.at("ideal"), R->ambient())), claim.at("degree").get<int>());
        std::vector<Integer> want;
        for (const auto& s : claim.at("invariants")) want.emplace_back(s.get<std::string>());
        if (g.invariants != want)
            return Failure{"invariants " + invariants_string(g.invariants) + ", expected " + invariants_string(want),
                           g.describe()};
        if (claim.contains("generator")) {
            Polynomial gen = expand(c, claim["generator"], R->ambient()).at(0);
            if (!piece_generated_by(g, gen))
                return Failure{"not generated by " + gen.to_string(), g.describe()};
        }
        return std::nullopt;
    }
    if (kind == "graded_span") {
        auto R = c.ring(claim.at("ring").get<std::string>());
        int d = claim.at("degree");
        GradedPiece a = graded_piece(Ideal(R, expand(c, claim.at("ideal"), R->ambient())), d);
        GradedPiece b = graded_piece(Ideal(R, expand(c, claim.at("generators"), R->ambient())), d);
        auto rows = [](const GradedPiece& g) {
            std::vector<std::vector<Integer>> r;
            for (std::size_t i = 0; i < g.span.rank; ++i) r.push_back(g.span.H.row(i));
            return r;
        };
        if (rows(a) == rows(b)) return std::nullopt;
        return Failure{"degree " + std::to_string(d) + " spans differ", a.describe() + " vs " + b.describe()};
    }
    if (kind == "match") return check_match(artifact(c, claim.at("artifact").get<std::string>()), claim);
    if (kind == "match_admits") {
        const Artifact& a = artifact(c, claim.at("artifact").get<std::string>());
        if (!a.match) throw std::invalid_argument("artifact is not a coefficient match");
        for (const auto& v : claim.at("values")) {
            std::vector<Integer> vals;
            for (const auto& n : a.match->names) vals.emplace_back(v.at(n).get<std::string>());
            if (!a.match->admits(vals)) return Failure{"does not admit " + v.dump(), a.match->describe()};
        }
        return std::nullopt;
    }
    if (kind == "nonzero") {
        auto R = c.ring(claim.at("ring").get<std::string>());
        if (claim.value("domain", "ZZ") == "QQ") R = rationalize(R);
        for (const auto& p : expand(c, claim.at("element"), R->ambient()))
            if (nf(R, p).is_zero()) return Failure{"normal form 0", p.to_string() + " vanishes"};
        return std::nullopt;
    }
    if (kind == "maps_to") {
        RingMap f = c.map(claim.at("map").get<std::string>());
        auto xs = expand(c, claim.at("elements"), f.source()->ambient());
        auto ys = expand(c, claim.at("images"), f.target()->ambient());
        return pairwise(xs, ys, [&](std::size_t i, const Polynomial& x, const Polynomial& y) -> Outcome {
            Polynomial d = nf(f.target(), f.apply(x) - y);
            if (d.is_zero()) return std::nullopt;
            return Failure{"normal form of image difference " + d.to_string(), "entry " + std::to_string(i)};
        });
    }
    if (kind == "delta1_check") {
        if (auto e = c.reg.delta1_push(claim.at("restriction").get<std::string>(), c.w).check())
            return Failure{*e, "boundary pushforward is not well defined"};
        return std::nullopt;
    }
    if (kind == "iso_check") {
        RingMap f = c.map(claim.at("forward").get<std::string>()), g = c.map(claim.at("backward").get<std::string>());
        for (const auto& [a, b] : {std::pair{&f, &g}, std::pair{&g, &f}})
            for (const auto& v : a->source()->ambient()->vars()) {
                Polynomial x = a->source()->var(v.name);
                Polynomial d = nf(a->source(), b->apply(a->apply(x)) - x);
                if (!d.is_zero()) return Failure{"normal form " + d.to_string(), "round trip of " + v.name};
            }
        return std::nullopt;
    }
    throw std::invalid_argument("unknown claim kind '" + kind + "'");
}

std::string artifact_string(const Artifact& a) {
    std::string ring = a.ring ? a.ring->name() : "work";
    if (a.match) return ring + ": " + a.match->describe();
    return ring + ": " + list_string(a.polys);
}

std::vector<std::string> string_list(const json& j, const char* key) {
    return j.value(key, std::vector<std::string>{});
}

}  // namespace

// ---- engine

json Engine::builtin_claims() { return json::parse(embedded::claims_json()); }

Engine::Engine(const json& claims, const RingRegistry& registry) : reg_(registry) {
    try {
        if (claims.value("schema", "") != kClaimsSchema) throw ParseError("claims document lacks schema chowz.claims/1", 0);
        std::set<std::string> seen;
        for (const auto& s : claims.at("steps")) {
            StepInfo i;
            i.id = s.at("id").get<std::string>();
            i.description = s.value("description", "");
            i.aliases = string_list(s, "aliases");
            i.anchors = string_list(s, "anchors");
            i.deps = string_list(s, "deps");
            i.iterate = string_list(s, "iterate");
            i.moduli = string_list(s, "moduli");
            i.claims = s.value("claims", json::array());
            if (seen.count(i.id)) throw ParseError("duplicate step '" + i.id + "'", 0);
            for (const auto& d : i.deps)
                if (!seen.count(d))
                    throw ParseError("step '" + i.id + "' depends on '" + d + "', which is unknown or not earlier", 0);
            std::set<std::string> ids;
            for (const auto& cl : i.claims) {
                std::string cid = cl.at("id");
                cl.at("kind").get<std::string>();
                if (!cl.contains("anchor")) throw ParseError("claim '" + i.id + ":" + cid + "' has no anchor", 0);
                if (!ids.insert(cid).second) throw ParseError("duplicate claim '" + i.id + ":" + cid + "'", 0);
            }
            seen.insert(i.id);
            steps_.push_back(std::move(i));
        }
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed claims document: ") + e.what(), 0);
    }
}

std::string Engine::resolve(std::string_view id) const {
    for (const auto& s : steps_) {
        if (s.id == id) return s.id;
        if (std::find(s.aliases.begin(), s.aliases.end(), id) != s.aliases.end()) return s.id;
    }
    for (const auto& s : steps_)
        if (s.id.substr(0, s.id.find('-')) == id) return s.id;
    throw UnknownStep("unknown step '" + std::string(id) + "'");
}

const StepInfo& Engine::info(const std::string& id) const {
    for (const auto& s : steps_)
        if (s.id == id) return s;
    throw UnknownStep("unknown step '" + id + "'");
}

StepReport Engine::run_step(std::string_view id, bool force) {
    const StepInfo& s = info(resolve(id));
    if (auto it = done_.find(s.id); it != done_.end()) return it->second;
    StepReport r;
    r.id = s.id;
    r.description = s.description;
    if (disabled_.count(s.id)) {
        r.dependency_failure = "disabled";
        return done_[s.id] = r;
    }
    std::string failed;
    for (const auto& d : s.deps)
        if (!run_step(d).passed() && failed.empty()) failed = d;
    if (!failed.empty() && !force) {
        r.dependency_failure = failed;
        return done_[s.id] = r;
    }
    r = execute(s);
    r.dependency_failure = failed;
    return done_[s.id] = r;
}

StepReport Engine::execute(const StepInfo& s) {
    StepReport r;
    r.id = s.id;
    r.description = s.description;
    r.moduli = s.moduli;
    auto pipe = pipelines().find(s.id);
    bool ok = true;
    for (const auto& w : moduli_grid(s.iterate)) {
        Ctx c{reg_, w, {}};
        std::string pipeline_error;
        if (pipe != pipelines().end()) {
            try {
                pipe->second(c);
            } catch (const std::exception& e) {
                pipeline_error = e.what();
            }
        }
        std::string suffix = moduli_suffix(w);
        for (const auto& [name, a] : c.arts) r.artifacts[name + suffix] = artifact_string(a);
        for (const auto& cl : s.claims) {
            ClaimResult cr{cl.at("id"), cl.at("kind"), cl.at("anchor"), suffix, false, "", ""};
            if (!pipeline_error.empty()) {
                cr.witness = "pipeline error: " + pipeline_error;
            } else {
                try {
                    Outcome o = evaluate_claim(c, cl);
                    cr.pass = !o;
                    if (o) {
                        cr.witness = o->witness;
                        cr.detail = o->detail;
                    }
                } catch (const std::exception& e) {
                    cr.witness = std::string("error: ") + e.what();
                }
            }
            ok = ok && cr.pass;
            r.claims.push_back(std::move(cr));
        }
    }
    r.verdict = !ok ? Verdict::Fail : s.moduli.empty() ? Verdict::Pass : Verdict::PassWithModuli;
    return r;
}

std::vector<StepReport> Engine::run_all(const std::vector<std::string>& filter, const std::set<std::string>& disabled) {
    std::vector<std::string> unknown;
    auto resolve_all = [&](const auto& names) {
        std::set<std::string> out;
        for (const auto& n : names) {
            try {
                out.insert(resolve(n));
            } catch (const UnknownStep&) {
                unknown.push_back(n);
            }
        }
        return out;
    };
    std::set<std::string> selected = resolve_all(filter), off = resolve_all(disabled);
    if (!unknown.empty()) {
        std::string msg = "unknown step ids:";
        for (const auto& u : unknown) msg += " " + u;
        throw UnknownStep(msg);
    }
    done_.clear();
    disabled_ = off;
    std::vector<StepReport> out;
    for (const auto& s : steps_)
        if (filter.empty() || selected.count(s.id)) out.push_back(run_step(s.id));
    disabled_.clear();
    return out;
}

// ---- reports

json to_json(const ClaimResult& c) {
    json j = {{"id", c.id}, {"kind", c.kind}, {"anchor", c.anchor}, {"moduli", c.moduli}, {"verdict", c.pass ? "pass" : "fail"}};
    if (!c.witness.empty()) j["witness"] = c.witness;
    if (!c.detail.empty()) j["detail"] = c.detail;
    return j;
}

json to_json(const StepReport& r) {
    json claims = json::array();
    for (const auto& c : r.claims) claims.push_back(to_json(c));
    json j = {{"id", r.id},           {"description", r.description}, {"verdict", to_string(r.verdict)},
              {"moduli", r.moduli},   {"claims", claims},             {"artifacts", r.artifacts}};
    if (!r.dependency_failure.empty()) j["dependency_failure"] = r.dependency_failure;
    return j;
}

StepReport step_report_from_json(const json& j) {
    try {
        StepReport r;
        r.id = j.at("id").get<std::string>();
        r.description = j.at("description").get<std::string>();
        r.verdict = verdict_from_string(j.at("verdict").get<std::string>());
        r.moduli = j.at("moduli").get<std::vector<std::string>>();
        r.artifacts = j.at("artifacts").get<std::map<std::string, std::string>>();
        r.dependency_failure = j.value("dependency_failure", "");
        for (const auto& c : j.at("claims")) {
            ClaimResult cr;
            cr.id = c.at("id").get<std::string>();
            cr.kind = c.at("kind").get<std::string>();
            cr.anchor = c.at("anchor").get<std::string>();
            cr.moduli = c.at("moduli").get<std::string>();
            std::string v = c.at("verdict").get<std::string>();
            if (v != "pass" && v != "fail") throw ParseError("unknown claim verdict '" + v + "'", 0);
            cr.pass = v == "pass";
            cr.witness = c.value("witness", "");
            cr.detail = c.value("detail", "");
            if (!cr.pass && cr.witness.empty()) throw ParseError("failed claim '" + cr.id + "' has no witness", 0);
            r.claims.push_back(std::move(cr));
        }
        return r;
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed step report: ") + e.what(), 0);
    }
}

json report_document(const std::vector<StepReport>& reports) {
    json steps = json::array();
    std::size_t passed = 0;
    for (const auto& r : reports) {
        steps.push_back(to_json(r));
        passed += r.passed();
    }
    return {{"schema", kReportSchema},
            {"summary", {{"steps", std::to_string(reports.size())},
                         {"passed", std::to_string(passed)},
                         {"failed", std::to_string(reports.size() - passed)}}},
            {"steps", steps}};
}

std::vector<StepReport> reports_from_document(const json& doc) {
    if (!doc.is_object() || doc.value("schema", "") != kReportSchema)
        throw ParseError("report document lacks schema chowz.report/1", 0);
    std::vector<StepReport> out;
    try {
        for (const auto& s : doc.at("steps")) out.push_back(step_report_from_json(s));
        if (doc.at("summary").at("steps").get<std::string>() != std::to_string(out.size()))
            throw ParseError("report summary disagrees with its steps", 0);
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed report: ") + e.what(), 0);
    }
    return out;
}

std::string human_report(const std::vector<StepReport>& reports) {
    std::ostringstream os;
    std::size_t passed = 0;
    for (const auto& r : reports) {
        passed += r.passed();
        os << to_string(r.verdict);
        if (r.verdict == Verdict::PassWithModuli) {
            os << " {";
            for (std::size_t i = 0; i < r.moduli.size(); ++i) os << (i ? "," : "") << r.moduli[i];
            os << "}";
        }
        std::size_t ok = std::count_if(r.claims.begin(), r.claims.end(), [](const ClaimResult& c) { return c.pass; });
        os << "  " << r.id << "  (" << ok << "/" << r.claims.size() << " claims)\n";
        if (!r.dependency_failure.empty()) os << "    blocked by " << r.dependency_failure << "\n";
        for (const auto& c : r.claims)
            if (!c.pass) os << "    FAIL " << c.id << c.moduli << " [" << c.anchor << "]: " << c.witness << "\n";
    }
    os << passed << "/" << reports.size() << " steps passed\n";
    return os.str();
}

}  // namespace chowz::replay
