#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "rdk/central.hpp"
#include "rdk/morphism.hpp"
#include "rdk/root_datum.hpp"

namespace rdk::io {

using json = nlohmann::json;

/// Thrown on structurally invalid input; `path` locates the offending field.
struct SchemaError : std::runtime_error {
    std::string path;
    SchemaError(std::string p, const std::string& what)
        : std::runtime_error(p + ": " + what), path(std::move(p)) {}
};

// Integers serialise as JSON numbers up to 2^53 in magnitude and as decimal
// strings beyond, so every value round-trips exactly.
json int_to_json(const Int& v);
Int int_from_json(const json& j, const std::string& path);

json to_json(const IntMatrix& M);
IntMatrix matrix_from_json(const json& j, const std::string& path = "$");

json to_json(const RootDatum& R);
RootDatum datum_from_json(const json& j, const std::string& path = "$");

json to_json(const PMorphism& m);
PMorphism morphism_from_json(const json& j, const std::string& path = "$");

json to_json(const CentralProductSpec& spec);
CentralProductSpec central_spec_from_json(const json& j, const std::string& path = "$");

} // namespace rdk::io
