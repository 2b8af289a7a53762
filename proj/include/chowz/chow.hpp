#pragma once

#include "chowz/groebner.hpp"
#include "chowz/poly.hpp"

#include <map>
#include <string>
#include <vector>

namespace chowz::chow {

// Scratch ring shared by the pushforward pipelines. Holds the classes of
// BGL2 x G (alpha, beta, gamma), the torus classes t1, t2, hyperplane classes
// x1..x4 and the symbols u1_j, u2_j (degree j, so u1_0 and u2_0 have degree 0).
inline constexpr int kMaxU = 6;
RingPtr work_ring();
Polynomial work(std::string_view text);

// Transfer along Gm x Gm -> G: pi_*(t1^a t2^b) = beta2^min(a,b) P(|a-b|),
// P(0) = 2, P(1) = beta1 + gamma, P(k) = beta1 P(k-1) - beta2 P(k-2).
// Every other variable is a spectator.
Polynomial norm_push(const Polynomial& p);
// Generators g and t*g for each g.
std::vector<Polynomial> norm_push_ideal(const std::vector<Polynomial>& gens, std::string_view t = "t1");
// beta1 -> t1 + t2, beta2 -> t1 t2, gamma -> 0
Polynomial norm_pullback(const Polynomial& p);
// f(t1, t2) -> f(t2, t1)
Polynomial swap_t(const Polynomial& p);

// zeta^r + c1 zeta^(r-1) + ... + cr
Polynomial proj_bundle_relation(const std::vector<Polynomial>& chern, std::string_view zeta);
// c1..c(n+1) of Sym^n V^* in alpha1, alpha2, by the splitting principle.
std::vector<Polynomial> chern_sym(int n);

class UPolyContext {
public:
    explicit UPolyContext(std::vector<int> weights) : weights_(std::move(weights)) {}
    const std::vector<int>& weights() const { return weights_; }
    int weight(int i) const;
    // u_i^j in x_i, alpha1, alpha2; factors are numbered from 1.
    const Polynomial& u(int i, int j) const;
    // u_i^(r_i + 1), which vanishes on PV_(r_i)
    Polynomial top(int i) const;

private:
    Polynomial step(int i, int j) const;
    std::vector<int> weights_;
    mutable std::map<std::pair<int, int>, Polynomial> cache_;
};

std::string x_name(int i);
std::string u_name(int i, int j);

// Rewrite powers of x_i (up to r_i) as u_i^j symbols; x_i-free terms get u_i^0.
Polynomial to_u_basis(const Polynomial& p, const UPolyContext& ctx, int i);
// Replace u_i^j symbols by their values u_poly(i, j).
Polynomial evaluate_u(const Polynomial& p, const UPolyContext& ctx, int i);
// Set u1_0 = u2_0 = 1, for comparing against displays that omit them.
Polynomial drop_u0(const Polynomial& p);
// Rename x_k -> x_(k+shift) for k >= from, in increasing order of k.
Polynomial shift_factors(const Polynomial& p, int from, int shift);

// A pushforward recorded as data: images of basis monomials in the table
// variables; every other variable is a coefficient.
struct PushforwardTable {
    std::string name;
    std::vector<std::string> table_vars;
    std::vector<std::string> forbidden;   // must not occur in the input
    std::map<Exponents, Polynomial> images;  // keyed by exponents of table_vars
    int shift = 0;                        // codimension shift of the pushforward

    Polynomial apply(const Polynomial& p) const;
    // Each image is homogeneous of (basis degree + shift); returns the first offender.
    std::optional<std::string> check_homogeneity() const;
};

PushforwardTable mul_table(int a, int b);
PushforwardTable sq_table();
// u1^al u2^be -> C(a-al+b-be, a-al) u1^(al+be) along PV_a x PV_b -> PV_(a+b)
Polynomial mul_push(int a, int b, const Polynomial& expr);
// u1^0 -> 2u1^1 - 2alpha1, u1^1 -> u1^2 - 2alpha2 along PV_1 -> PV_2
Polynomial sq_push(const Polynomial& expr);

// x_i + x_j - alpha1 on PV_1 x PV_1
Polynomial diagonal_class(int i, int j);

enum class TwistKind { Phi, ProjectivizationV3, ProjectivizationV1W, Trivial };
struct Twist {
    TwistKind kind = TwistKind::Trivial;
    int source = 0;  // Phi: factor whose hyperplane class is pulled back
    int target = 0;  // Phi: hyperplane factor on P(V1 (x) W)
    int torus = 1;   // Phi: which t_i
};
// Phi: x_source -> x_target - 2t_torus. Projectivization: x1 -> alpha1 (V3),
// x2 -> -alpha1 (V1 (x) W). Trivial: empty.
Assignment twist_substitutions(const Twist& t);

// Push from a Delta1 stratum along the boundary inclusion: (i^*x)·1 -> x·delta1.
class Delta1Push {
public:
    // restriction: target -> Delta1-stratum ring; lift: image in the target
    // ambient of each variable of the Delta1-stratum ring.
    Delta1Push(RingMap restriction, Assignment lift);
    const RingMap& restriction() const { return restriction_; }
    Polynomial lift(const Polynomial& x) const;
    Polynomial push(const Polynomial& x) const;
    std::vector<Polynomial> push(const std::vector<Polynomial>& xs) const;
    // nullopt if the lift is a section and every kernel element times delta1
    // vanishes in the target; otherwise a description of the failure.
    std::optional<std::string> check() const;

private:
    RingMap restriction_;
    Assignment lift_;
};

}  // namespace chowz::chow
