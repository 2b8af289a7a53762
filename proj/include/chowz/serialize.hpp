#pragma once

#include "chowz/groebner.hpp"
#include "chowz/poly.hpp"

#include <json.hpp>

#include <string>

namespace chowz {

using json = nlohmann::json;

inline constexpr const char* kRingSchema = "chowz.ring/1";
inline constexpr const char* kIdealSchema = "chowz.ideal/1";
inline constexpr const char* kBasisSchema = "chowz.gb/1";
inline constexpr const char* kMapSchema = "chowz.map/1";

json to_json(const Polynomial& p);
// Accepts the term-list form or an expression string.
Polynomial polynomial_from_json(const json& j, const RingPtr& ring);

json to_json(const PolyRing& r);
RingPtr poly_ring_from_json(const json& j);

json to_json(const PresentedRing& r);
PresentedRingPtr presented_ring_from_json(const json& j);

json to_json(const Ideal& I);
// Ideal documents carry only generators; the ring comes from elsewhere.
Ideal ideal_from_json(const json& j, const PresentedRingPtr& ring);

json to_json(const GroebnerBasis& gb);
GroebnerBasis basis_from_json(const json& j);

json to_json(const RingMap& f);
RingMap ring_map_from_json(const json& j, const PresentedRingPtr& source, const PresentedRingPtr& target);

// Fixed formatting, so equal documents serialize to equal bytes.
std::string dump(const json& j);
json load_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace chowz
