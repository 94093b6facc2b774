#pragma once

#include <string>

#include <json.hpp>

#include "ywq/series.hpp"

namespace ywq {

// Canonical text form: terms in lexicographic exponent order, each printed
// as "c * q0^a0 q1^a1 ..." with unit factors omitted. Byte-stable.
std::string to_text(const ZSeries& s);
std::string to_text(const CSeries& s);

// Structured record {variables, weights, laurent, truncation,
// terms: [{exp: [...], coeff: int | {order, coeffs: [...]}}]}.
nlohmann::json to_json(const ZSeries& s);
nlohmann::json to_json(const CSeries& s);
ZSeries zseries_from_json(const nlohmann::json& j);
CSeries cseries_from_json(const nlohmann::json& j);

}  // namespace ywq
