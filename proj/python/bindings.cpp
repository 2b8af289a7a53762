#include "chowz/registry.hpp"
#include "chowz/replay.hpp"
#include "chowz/serialize.hpp"
#include "chowz/zlinalg.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace chowz;

namespace {

using StrMap = std::map<std::string, int>;

Moduli moduli(const StrMap& m) { return Moduli(m.begin(), m.end()); }

PresentedRingPtr ring(const std::string& name, const StrMap& w) { return RingRegistry::builtin().ring(name, moduli(w)); }

Ideal ideal(const PresentedRingPtr& R, const std::vector<std::string>& gens) {
    std::vector<Polynomial> ps;
    for (const auto& g : gens) ps.push_back(R->parse(g));
    return Ideal(R, std::move(ps));
}

std::vector<std::string> strings(const std::vector<Polynomial>& ps) {
    std::vector<std::string> out;
    for (const auto& p : ps) out.push_back(p.to_string());
    return out;
}

}  // namespace

PYBIND11_MODULE(_chowz, m) {
    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<replay::UnknownStep>(m, "UnknownStep", PyExc_KeyError);

    m.def(
        "verify_json",
        [](const std::vector<std::string>& steps, const std::string& claims_path) {
            json claims = claims_path.empty() ? replay::Engine::builtin_claims() : load_json_file(claims_path);
            replay::Engine e(claims);
            return dump(replay::report_document(e.run_all(steps)));
        },
        py::arg("steps") = std::vector<std::string>{}, py::arg("claims_path") = "");
    m.def("catalog_json", [] {
        replay::Engine e(replay::Engine::builtin_claims());
        json out = json::array();
        for (const auto& s : e.catalog())
            out.push_back({{"id", s.id}, {"description", s.description}, {"aliases", s.aliases}, {"deps", s.deps},
                           {"moduli", s.moduli}});
        return dump(out);
    });
    m.def("registry_json", [](const StrMap& w) { return dump(RingRegistry::builtin().export_json(moduli(w))); },
          py::arg("moduli") = StrMap{});
    m.def(
        "normal_form",
        [](const std::string& r, const std::vector<std::string>& gens, const std::string& element, const StrMap& w) {
            auto R = ring(r, w);
            return normal_form(R->parse(element), ideal(R, gens)).to_string();
        },
        py::arg("ring"), py::arg("ideal"), py::arg("element"), py::arg("moduli") = StrMap{});
    m.def(
        "ideal_equal",
        [](const std::string& r, const std::vector<std::string>& a, const std::vector<std::string>& b,
           const StrMap& w) {
            auto R = ring(r, w);
            return ideal_equal(ideal(R, a), ideal(R, b));
        },
        py::arg("ring"), py::arg("a"), py::arg("b"), py::arg("moduli") = StrMap{});
    m.def(
        "kernel",
        [](const std::string& map, const StrMap& w) {
            return strings(reduced_generators(ring_map_kernel(RingRegistry::builtin().map(map, moduli(w)))));
        },
        py::arg("map"), py::arg("moduli") = StrMap{});
    m.def(
        "graded_piece",
        [](const std::string& r, const std::vector<std::string>& gens, int degree, const StrMap& w) {
            GradedPiece g = graded_piece(ideal(ring(r, w), gens), degree);
            std::vector<std::string> inv;
            for (const auto& i : g.invariants) inv.push_back(i.get_str());
            return py::dict(py::arg("invariants") = inv, py::arg("generators") = strings(g.generators),
                            py::arg("description") = g.describe());
        },
        py::arg("ring"), py::arg("ideal"), py::arg("degree"), py::arg("moduli") = StrMap{});
}
