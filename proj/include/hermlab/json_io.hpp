#pragma once

#include "hermlab/catalog.hpp"
#include "hermlab/exterior.hpp"
#include "hermlab/gray_hervella.hpp"
#include "hermlab/invariant_geometry.hpp"
#include "hermlab/stable_forms.hpp"
#include "hermlab/twistor.hpp"

#include "json.hpp"

#include <string>
#include <utility>

namespace hermlab {

using Json = nlohmann::ordered_json;

/// {"degree": k, "terms": [{"indices": [1,2], "c": 1.0}, ...]} with 1-based indices.
Json kform_to_json(const KForm& a);
KForm kform_from_json(const Json& j);

/// {"brackets": [{"i": 1, "j": 2, "out": [{"k": 5, "c": 1.0}]}]}; omitted pairs are zero.
Json lie_to_json(const LieAlgebra6& lie);
LieAlgebra6 lie_from_json(const Json& j);

/// {"g": [[...]], "J": [[...]]}, row-major 6×6.
Json structure_to_json(const Metric& g, const ComplexStructure& j);
std::pair<Metric, ComplexStructure> structure_from_json(const Json& j);

Json matrix_to_json(const Mat6& m);
Mat6 matrix_from_json(const Json& j, const std::string& what);

Json classification_to_json(const Classification& c);
Json integrability_to_json(const IntegrabilityReport& r);
Json su3_to_json(const SU3Structure& s);
Json stability_to_json(const StabilityReport& r);
Json catalog_entry_to_json(const CatalogEntry& e);

/// Parses a file; throws InputError on I/O or syntax errors.
Json read_json_file(const std::string& path);

/// Accepts either the object itself or a wrapper holding it under `key`.
const Json& unwrap(const Json& j, const std::string& key);

}  // namespace hermlab
