#include "chowz/serialize.hpp"

#include <fstream>
#include <sstream>

namespace chowz {
namespace {

void expect_schema(const json& j, const char* schema) {
    if (!j.is_object()) throw ParseError(std::string("expected a ") + schema + " object", 1);
    if (j.contains("schema") && j.at("schema") != schema)
        throw ParseError("schema mismatch: expected " + std::string(schema) + ", got " +
                             j.at("schema").dump(), 1);
}

Integer integer_from_json(const json& j) {
    if (j.is_number_integer()) return Integer(std::to_string(j.get<long long>()));
    if (j.is_string()) {
        Integer v;
        if (v.set_str(j.get<std::string>(), 10) != 0)
            throw ParseError("bad integer '" + j.get<std::string>() + "'", 1);
        return v;
    }
    throw ParseError("expected an integer, got " + j.dump(), 1);
}

}  // namespace

json to_json(const Polynomial& p) {
    json terms = json::array();
    for (const auto& t : p.terms())
        terms.push_back({{"coefficient", t.coeff.get_str()}, {"exponents", t.exps}});
    return terms;
}

Polynomial polynomial_from_json(const json& j, const RingPtr& ring) {
    if (j.is_string()) return parse_polynomial(j.get<std::string>(), ring);
    if (j.is_number_integer()) return Polynomial::constant(ring, integer_from_json(j));
    if (!j.is_array()) throw ParseError("expected a polynomial, got " + j.dump(), 1);
    std::vector<Term> terms;
    for (const auto& t : j) {
        if (!t.is_object() || !t.contains("coefficient") || !t.contains("exponents"))
            throw ParseError("malformed term " + t.dump(), 1);
        const auto& e = t.at("exponents");
        if (!e.is_array() || e.size() != ring->nvars())
            throw ParseError("exponent vector of wrong length in " + t.dump(), 1);
        Exponents ex;
        for (const auto& x : e) {
            if (!x.is_number_integer() || x.get<int>() < 0) throw ParseError("bad exponent in " + t.dump(), 1);
            ex.push_back(x.get<int>());
        }
        terms.push_back({std::move(ex), integer_from_json(t.at("coefficient"))});
    }
    return Polynomial::from_terms(ring, std::move(terms));
}

json to_json(const PolyRing& r) {
    json vars = json::array();
    for (const auto& v : r.vars()) vars.push_back({{"name", v.name}, {"degree", v.degree}});
    return {{"vars", vars}, {"order", {{"blocks", r.order().block_sizes()}}}};
}

RingPtr poly_ring_from_json(const json& j) {
    if (!j.is_object() || !j.contains("vars") || !j.at("vars").is_array())
        throw ParseError("ring document needs a 'vars' list", 1);
    std::vector<VarSpec> vars;
    for (const auto& v : j.at("vars")) {
        if (v.is_string()) {
            vars.push_back({v.get<std::string>(), 1});
        } else if (v.is_object() && v.contains("name")) {
            vars.push_back({v.at("name").get<std::string>(), v.value("degree", 1)});
        } else {
            throw ParseError("malformed variable " + v.dump(), 1);
        }
    }
    MonomialOrder order;
    if (j.contains("order") && j.at("order").contains("blocks"))
        order = MonomialOrder::blocks(j.at("order").at("blocks").get<std::vector<std::size_t>>());
    try {
        return make_ring(std::move(vars), std::move(order));
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), 1);
    }
}

json to_json(const PresentedRing& r) {
    json j = to_json(*r.ambient());
    j["schema"] = kRingSchema;
    j["name"] = r.name();
    j["domain"] = to_string(r.domain());
    json rels = json::array();
    for (const auto& p : r.relations()) rels.push_back(to_json(p));
    j["relations"] = rels;
    return j;
}

PresentedRingPtr presented_ring_from_json(const json& j) {
    expect_schema(j, kRingSchema);
    RingPtr amb = poly_ring_from_json(j);
    std::vector<Polynomial> rels;
    if (j.contains("relations"))
        for (const auto& r : j.at("relations")) rels.push_back(polynomial_from_json(r, amb));
    Domain d = j.contains("domain") ? domain_from_string(j.at("domain").get<std::string>()) : Domain::ZZ;
    return ring_make(j.value("name", std::string("R")), amb, std::move(rels), d);
}

json to_json(const Ideal& I) {
    json gens = json::array();
    for (const auto& g : I.gens()) gens.push_back(to_json(g));
    return {{"schema", kIdealSchema}, {"ring", I.ring()->name()}, {"generators", gens}};
}

Ideal ideal_from_json(const json& j, const PresentedRingPtr& ring) {
    expect_schema(j, kIdealSchema);
    std::vector<Polynomial> gens;
    if (!j.contains("generators")) throw ParseError("ideal document needs 'generators'", 1);
    for (const auto& g : j.at("generators")) gens.push_back(polynomial_from_json(g, ring->ambient()));
    return Ideal(ring, std::move(gens));
}

json to_json(const GroebnerBasis& gb) {
    json basis = json::array();
    for (const auto& g : gb.basis()) basis.push_back(to_json(g));
    json j = to_json(*gb.ring());
    j["schema"] = kBasisSchema;
    j["domain"] = to_string(gb.domain());
    j["basis"] = basis;
    return j;
}

GroebnerBasis basis_from_json(const json& j) {
    expect_schema(j, kBasisSchema);
    RingPtr r = poly_ring_from_json(j);
    std::vector<Polynomial> basis;
    for (const auto& g : j.at("basis")) basis.push_back(polynomial_from_json(g, r));
    return GroebnerBasis(r, domain_from_string(j.at("domain").get<std::string>()), std::move(basis));
}

json to_json(const RingMap& f) {
    json images = json::object();
    for (const auto& [k, v] : f.images()) images[k] = v.to_string();
    return {{"schema", kMapSchema},
            {"source", f.source()->name()},
            {"target", f.target()->name()},
            {"images", images}};
}

RingMap ring_map_from_json(const json& j, const PresentedRingPtr& source, const PresentedRingPtr& target) {
    expect_schema(j, kMapSchema);
    Assignment a;
    if (j.contains("images"))
        for (const auto& [k, v] : j.at("images").items())
            a.emplace(k, polynomial_from_json(v, target->ambient()));
    return RingMap(source, target, std::move(a));
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'", 0);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return json::parse(ss.str());
    } catch (const json::parse_error& e) {
        throw ParseError(path + ": " + e.what(), e.byte);
    }
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << text;
}

}  // namespace chowz
