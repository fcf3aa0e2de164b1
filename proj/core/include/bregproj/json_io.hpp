#pragma once

// JSON descriptions of spaces, gauges, potentials, sets, embeddings and points.

#include <string>

#include <nlohmann/json.hpp>

#include "bregproj/convex_sets.hpp"
#include "bregproj/embeddings.hpp"
#include "bregproj/gauges.hpp"
#include "bregproj/potentials.hpp"
#include "bregproj/spaces.hpp"

namespace bregproj {

using Json = nlohmann::json;

/// Parses text, throwing ValidationError with the parser message on failure.
Json parse_json(const std::string& text, const char* what);

SpaceDescriptor space_from_json(const Json& j);
Json to_json(const SpaceDescriptor& space);

Gauge gauge_from_json(const Json& j);
Json to_json(const Gauge& gauge);

/// Matrix spaces lift separable kinds spectrally.
PotentialPtr potential_from_json(const Json& j, const SpaceDescriptor& space);

ConvexSet set_from_json(const Json& j, const SpaceDescriptor& space);

/// The Mazur source is `space`; Lozanovskii and spin factor use `space` as target / inner space.
Embedding embedding_from_json(const Json& j, const SpaceDescriptor& space);

/// Vectors: "1,0,2" or a JSON array. Matrices: row-major entries, each a real
/// number or an [re, im] pair, either flat or nested by rows. Returns flat coordinates.
Vec point_from_text(const std::string& text, const SpaceDescriptor& space);
Vec point_from_json(const Json& j, const SpaceDescriptor& space);

/// Vectors as arrays; matrices as row-major [re, im] pairs.
Json point_to_json(const Vec& coords, const SpaceDescriptor& space);

/// Rounded to 12 significant digits; infinities and NaN become strings.
Json number(double v);
Json numbers(const Vec& v);
/// "%.12g"
std::string format_number(double v);

}  // namespace bregproj
