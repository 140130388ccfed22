#pragma once

#include <string>

#include "k3g2/pipeline.hpp"

namespace k3g2 {

// JSON serialization (schema_version 1).  Rationals are rendered as exact
// strings ("3/4"); lattice coordinates follow the fixed block order with
// Bourbaki numbering inside the definite blocks.
std::string report_to_json(const OrbifoldReport& rep);
std::string report_to_text(const OrbifoldReport& rep);

std::string flat_report_to_json(const FlatModelReport& rep);
std::string flat_report_to_text(const FlatModelReport& rep);

std::string catalog_to_json(const CatalogResult& cat);
std::string catalog_to_text(const CatalogResult& cat);

// Parses a build configuration: {"kind": 1, "keep1": [1,3], "keep2": [],
// "options": {"crosscheck": true}}.  A keep key that is absent or null
// leaves the block untouched; an empty array smooths the block completely.
OrbifoldSpec parse_spec_json(const std::string& text);

}  // namespace k3g2
