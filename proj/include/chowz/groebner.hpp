#pragma once

#include "chowz/poly.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace chowz {

class Ideal {
public:
    Ideal(PresentedRingPtr ring, std::vector<Polynomial> gens);

    const PresentedRingPtr& ring() const { return ring_; }
    const std::vector<Polynomial>& gens() const { return gens_; }
    // generators together with the relations of the ring
    std::vector<Polynomial> all_generators() const;

private:
    PresentedRingPtr ring_;
    std::vector<Polynomial> gens_;
};

struct GbStats {
    std::size_t pairs = 0;
    std::size_t reductions_to_zero = 0;
    std::size_t basis_peak = 0;
    std::size_t max_coeff_bits = 0;
    bool from_cache = false;
};

struct GbOptions {
    // called every few hundred pairs with a one-line status
    std::function<void(const std::string&)> progress;
};

class GroebnerBasis {
public:
    GroebnerBasis(RingPtr ring, Domain domain, std::vector<Polynomial> basis, GbStats stats = {});

    const RingPtr& ring() const { return ring_; }
    Domain domain() const { return domain_; }
    const std::vector<Polynomial>& basis() const { return basis_; }
    const GbStats& stats() const { return stats_; }

    // Canonical representative: over ZZ coefficients end up in [0, c) for the
    // smallest leading coefficient c available at each monomial; over QQ the
    // result is a primitive integer multiple of the rational normal form.
    Polynomial reduce(const Polynomial& p) const;
    bool contains(const Polynomial& p) const { return reduce(p).is_zero(); }
    bool is_unit_ideal() const;

    // Recomputes every S- and G-polynomial; returns a description of the first
    // pair that does not reduce to zero.
    std::optional<std::string> certificate_failure() const;

private:
    RingPtr ring_;
    Domain domain_;
    std::vector<Polynomial> basis_;
    GbStats stats_;
};

// Uncached Buchberger run.
GroebnerBasis compute_gb(const RingPtr& ring, std::vector<Polynomial> gens, Domain domain,
                         const GbOptions& opts = {});
// Goes through the on-disk cache according to the current cache configuration.
GroebnerBasis groebner_basis(const RingPtr& ring, std::vector<Polynomial> gens, Domain domain,
                             const GbOptions& opts = {});
GroebnerBasis strong_gb(const Ideal& I, const GbOptions& opts = {});

Polynomial normal_form(const Polynomial& p, const GroebnerBasis& gb);
Polynomial normal_form(const Polynomial& p, const Ideal& I);
bool ideal_contains(const Ideal& I, const Polynomial& p);
bool ideal_subset(const Ideal& a, const Ideal& b);
bool ideal_equal(const Ideal& a, const Ideal& b);
// Equality of elements in the presented ring.
bool element_equal(const PresentedRingPtr& r, const Polynomial& a, const Polynomial& b);
// Generators of the ideal that are nonzero modulo the ring relations and not implied by
// earlier ones, minimal degree first.
std::vector<Polynomial> reduced_generators(const Ideal& I);

Ideal ideal_intersect(const Ideal& a, const Ideal& b);
Ideal rationalize(const Ideal& I);
// Same generators, viewed in another presentation of the same ambient ring.
Ideal ideal_in(const Ideal& I, const PresentedRingPtr& ring);

class RingMap {
public:
    // images keyed by source variable name; unspecified variables go to the
    // target variable of the same name. Throws if the map is not graded or
    // does not send source relations into the target relations.
    RingMap(PresentedRingPtr source, PresentedRingPtr target, Assignment images);

    const PresentedRingPtr& source() const { return source_; }
    const PresentedRingPtr& target() const { return target_; }
    const Assignment& images() const { return images_; }
    Polynomial apply(const Polynomial& p) const;
    Ideal apply(const Ideal& I) const;

private:
    PresentedRingPtr source_;
    PresentedRingPtr target_;
    Assignment images_;
};

RingMap ring_map(PresentedRingPtr source, PresentedRingPtr target,
                 const std::map<std::string, std::string>& images);

// Kernel of f, as an ideal of the source (containing the source relations).
Ideal ring_map_kernel(const RingMap& f);
// Preimage of an ideal of the target.
Ideal ring_map_preimage(const RingMap& f, const Ideal& J);

enum class CachePolicy { Use, Verify, Off };
std::string to_string(CachePolicy p);
CachePolicy cache_policy_from_string(std::string_view s);

struct CacheConfig {
    std::string dir;
    CachePolicy policy = CachePolicy::Off;
};

struct CacheCounters {
    std::size_t hits = 0;
    std::size_t misses = 0;
    std::size_t rejected = 0;
};

// Defaults come from CHOWZ_CACHE_DIR (policy "use" when set, "off" otherwise).
CacheConfig cache_config();
// Also forgets bases memoized in this process.
void set_cache_config(CacheConfig c);
CacheCounters cache_counters();
void reset_cache_counters();

// Raised when the cache is in verify mode and a stored basis disagrees with a fresh one.
class CacheMismatch : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace chowz
