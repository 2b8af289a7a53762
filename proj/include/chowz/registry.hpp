#pragma once

#include "chowz/chow.hpp"
#include "chowz/groebner.hpp"
#include "chowz/serialize.hpp"

#include <map>
#include <string>
#include <vector>

namespace chowz {

// Values of the undetermined parameters w21, w32.
using Moduli = std::map<std::string, int, std::less<>>;
std::string moduli_suffix(const Moduli& w);  // "{w21=0,w32=1}" or ""

// Replace each parameter identifier in text by its value.
std::string bind_moduli(std::string_view text, const Moduli& w);

class RingRegistry {
public:
    explicit RingRegistry(const json& doc);
    // The registry compiled into the library.
    static const RingRegistry& builtin();

    std::vector<std::string> ring_names() const;
    std::vector<std::string> map_names() const;
    const std::vector<std::string>& params(std::string_view ring) const;

    // Instantiated with the parameters it uses; unknown names throw.
    PresentedRingPtr ring(std::string_view name, const Moduli& w = {}) const;
    RingMap map(std::string_view name, const Moduli& w = {}) const;
    chow::Delta1Push delta1_push(std::string_view restriction, const Moduli& w = {}) const;
    std::vector<std::string> delta1_push_names() const;

    Polynomial constant(std::string_view name, const Moduli& w = {}) const;
    std::string constant_ring(std::string_view name) const;
    Polynomial alpha_class(std::string_view name) const;  // in M2bar-D1

    // alpha, beta, gamma expression in the work ring -> normal form in B_biell
    Polynomial alpha_to_lambda(const Polynomial& expr) const;

    // Every ring and map, with relations in the text format.
    json export_json(const Moduli& w = {}) const;
    // Every registered map validates, for every value of the parameters.
    std::vector<std::string> validate() const;

private:
    struct RingDef {
        std::vector<VarSpec> vars;
        std::vector<std::string> relations;
        std::vector<std::string> params;
    };
    struct MapDef {
        std::string source, target;
        std::map<std::string, std::string> images;
    };
    struct PushDef {
        std::string restriction;
        std::map<std::string, std::string> lift;
    };
    Moduli restrict_moduli(std::string_view ring, const Moduli& w) const;
    const RingDef& ring_def(std::string_view name) const;

    std::map<std::string, RingDef, std::less<>> rings_;
    std::vector<std::string> ring_order_;
    std::map<std::string, MapDef, std::less<>> maps_;
    std::vector<std::string> map_order_;
    std::vector<PushDef> pushes_;
    std::map<std::string, std::pair<std::string, std::string>, std::less<>> constants_;
    std::map<std::string, std::string, std::less<>> alpha_classes_;
    mutable std::map<std::string, PresentedRingPtr, std::less<>> ring_cache_;
};

// All combinations of the given parameters over {0, 1}, in lexicographic order.
std::vector<Moduli> moduli_grid(const std::vector<std::string>& params);

}  // namespace chowz
