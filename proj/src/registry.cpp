#include "chowz/registry.hpp"

#include "embedded.hpp"

#include <regex>
#include <stdexcept>

namespace chowz {

std::string moduli_suffix(const Moduli& w) {
    if (w.empty()) return "";
    std::string s = "{";
    for (const auto& [k, v] : w) s += (s.size() > 1 ? "," : "") + k + "=" + std::to_string(v);
    return s + "}";
}

std::string bind_moduli(std::string_view text, const Moduli& w) {
    std::string s(text);
    for (const auto& [k, v] : w)
        s = std::regex_replace(s, std::regex("\\b" + k + "\\b"), "(" + std::to_string(v) + ")");
    return s;
}

std::vector<Moduli> moduli_grid(const std::vector<std::string>& params) {
    std::vector<Moduli> out{{}};
    for (const auto& p : params) {
        std::vector<Moduli> next;
        for (const auto& m : out)
            for (int v : {0, 1}) {
                Moduli n = m;
                n[p] = v;
                next.push_back(std::move(n));
            }
        out = std::move(next);
    }
    return out;
}

RingRegistry::RingRegistry(const json& doc) {
    try {
        for (const auto& r : doc.at("rings")) {
            RingDef d;
            for (const auto& v : r.at("vars")) d.vars.push_back({v.at(0).get<std::string>(), v.at(1).get<int>()});
            d.relations = r.at("relations").get<std::vector<std::string>>();
            d.params = r.value("params", std::vector<std::string>{});
            std::string name = r.at("name").get<std::string>();
            if (rings_.count(name)) throw ParseError("duplicate ring '" + name + "'", 0);
            rings_.emplace(name, std::move(d));
            ring_order_.push_back(name);
        }
        for (const auto& m : doc.at("maps")) {
            MapDef d{m.at("source").get<std::string>(), m.at("target").get<std::string>(),
                     m.at("images").get<std::map<std::string, std::string>>()};
            std::string name = m.at("name").get<std::string>();
            ring_def(d.source);
            ring_def(d.target);
            maps_.emplace(name, std::move(d));
            map_order_.push_back(name);
        }
        for (const auto& p : doc.value("delta1_pushes", json::array())) {
            PushDef d{p.at("restriction").get<std::string>(), p.at("lift").get<std::map<std::string, std::string>>()};
            if (!maps_.count(d.restriction)) throw ParseError("unknown restriction '" + d.restriction + "'", 0);
            pushes_.push_back(std::move(d));
        }
        const json consts = doc.value("constants", json::object());
        for (const auto& [k, v] : consts.items())
            constants_[k] = {v.at("ring").get<std::string>(), v.at("value").get<std::string>()};
        const json alpha = doc.value("alpha_classes", json::object());
        for (const auto& [k, v] : alpha.items()) alpha_classes_[k] = v.get<std::string>();
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed registry: ") + e.what(), 0);
    }
}

const RingRegistry& RingRegistry::builtin() {
    static const RingRegistry reg(json::parse(embedded::rings_json()));
    return reg;
}

std::vector<std::string> RingRegistry::ring_names() const { return ring_order_; }
std::vector<std::string> RingRegistry::map_names() const { return map_order_; }

const RingRegistry::RingDef& RingRegistry::ring_def(std::string_view name) const {
    auto it = rings_.find(name);
    if (it == rings_.end()) throw std::invalid_argument("unknown ring '" + std::string(name) + "'");
    return it->second;
}

const std::vector<std::string>& RingRegistry::params(std::string_view ring) const { return ring_def(ring).params; }

Moduli RingRegistry::restrict_moduli(std::string_view ring, const Moduli& w) const {
    Moduli out;
    for (const auto& p : ring_def(ring).params) {
        auto it = w.find(p);
        if (it == w.end())
            throw std::invalid_argument("ring '" + std::string(ring) + "' needs a value for " + p);
        out[p] = it->second;
    }
    return out;
}

PresentedRingPtr RingRegistry::ring(std::string_view name, const Moduli& w) const {
    const RingDef& d = ring_def(name);
    Moduli own = restrict_moduli(name, w);
    std::string full = std::string(name) + moduli_suffix(own);
    if (auto it = ring_cache_.find(full); it != ring_cache_.end()) return it->second;
    std::vector<std::string> rels;
    for (const auto& r : d.relations) rels.push_back(bind_moduli(r, own));
    auto R = ring_make(full, d.vars, rels);
    ring_cache_.emplace(full, R);
    return R;
}

RingMap RingRegistry::map(std::string_view name, const Moduli& w) const {
    auto it = maps_.find(name);
    if (it == maps_.end()) throw std::invalid_argument("unknown map '" + std::string(name) + "'");
    return ring_map(ring(it->second.source, w), ring(it->second.target, w), it->second.images);
}

chow::Delta1Push RingRegistry::delta1_push(std::string_view restriction, const Moduli& w) const {
    for (const auto& p : pushes_) {
        if (p.restriction != restriction) continue;
        RingMap f = map(restriction, w);
        Assignment lift;
        for (const auto& [k, v] : p.lift) lift.emplace(k, parse_polynomial(v, f.source()->ambient()));
        return chow::Delta1Push(std::move(f), std::move(lift));
    }
    throw std::invalid_argument("no delta1 push along '" + std::string(restriction) + "'");
}

std::vector<std::string> RingRegistry::delta1_push_names() const {
    std::vector<std::string> out;
    for (const auto& p : pushes_) out.push_back(p.restriction);
    return out;
}

Polynomial RingRegistry::constant(std::string_view name, const Moduli& w) const {
    auto it = constants_.find(name);
    if (it == constants_.end()) throw std::invalid_argument("unknown constant '" + std::string(name) + "'");
    return ring(it->second.first, w)->parse(it->second.second);
}

std::string RingRegistry::constant_ring(std::string_view name) const {
    auto it = constants_.find(name);
    if (it == constants_.end()) throw std::invalid_argument("unknown constant '" + std::string(name) + "'");
    return it->second.first;
}

Polynomial RingRegistry::alpha_class(std::string_view name) const {
    auto it = alpha_classes_.find(name);
    if (it == alpha_classes_.end()) throw std::invalid_argument("unknown class '" + std::string(name) + "'");
    return ring("M2bar-D1")->parse(it->second);
}

Polynomial RingRegistry::alpha_to_lambda(const Polynomial& expr) const {
    static const RingMap f = map("alpha_to_lambda");
    Polynomial src = change_ring(expr, f.source()->ambient());
    return normal_form(f.apply(src), Ideal(f.target(), {}));
}

json RingRegistry::export_json(const Moduli& w) const {
    json rings = json::array();
    for (const auto& n : ring_order_) {
        Moduli own;
        for (const auto& p : ring_def(n).params) own[p] = w.count(p) ? w.at(p) : 0;
        auto R = ring(n, own);
        json j = {{"name", R->name()}, {"vars", json::array()}, {"relations", json::array()}};
        for (const auto& v : R->ambient()->vars()) j["vars"].push_back({{"name", v.name}, {"degree", v.degree}});
        for (const auto& r : R->relations()) j["relations"].push_back(r.to_string());
        if (!ring_def(n).params.empty()) j["params"] = ring_def(n).params;
        rings.push_back(std::move(j));
    }
    json maps = json::array();
    for (const auto& n : map_order_) {
        const MapDef& d = maps_.find(n)->second;
        maps.push_back({{"name", n}, {"source", d.source}, {"target", d.target}, {"images", d.images}});
    }
    json pushes = json::array();
    for (const auto& p : pushes_) pushes.push_back({{"restriction", p.restriction}, {"lift", p.lift}});
    json consts = json::object();
    for (const auto& [k, v] : constants_) consts[k] = {{"ring", v.first}, {"value", v.second}};
    return {{"schema", "chowz.registry/1"}, {"rings", rings},     {"maps", maps},
            {"delta1_pushes", pushes},      {"constants", consts}, {"alpha_classes", alpha_classes_}};
}

std::vector<std::string> RingRegistry::validate() const {
    std::vector<std::string> problems;
    for (const auto& n : map_order_) {
        const MapDef& d = maps_.find(n)->second;
        std::vector<std::string> ps = ring_def(d.source).params;
        for (const auto& p : ring_def(d.target).params)
            if (std::find(ps.begin(), ps.end(), p) == ps.end()) ps.push_back(p);
        for (const auto& w : moduli_grid(ps)) {
            try {
                map(n, w);
            } catch (const std::exception& e) {
                problems.push_back(n + moduli_suffix(w) + ": " + e.what());
            }
        }
    }
    return problems;
}

}  // namespace chowz
