#pragma once

#include <json.hpp>
#include <string>

#include "torsionlab/exterior_algebra.hpp"

namespace torsionlab {

using OrderedJson = nlohmann::ordered_json;

OrderedJson complex_json(Complex c);
OrderedJson form_json(const Form& f);
void write_json(const OrderedJson& j, const std::string& path);

} // namespace torsionlab
