#pragma once

#include <functional>
#include <string>
#include <vector>

#include "json.hpp"

#include "carta/geometry.hpp"

namespace carta::geojson {

using Json = nlohmann::ordered_json;

/// Reads and structurally checks a GeoJSON file; JobFailure(kExitParse) on
/// any problem.
Json read(const std::string& path);

/// Every position of every geometry, in document order.
std::vector<SpherePoint> positions(const Json& doc);

/// Outer ring of the first Polygon (or MultiPolygon member), closing vertex
/// dropped; empty when the document has no polygon.
std::vector<SpherePoint> first_ring(const Json& doc);

/// Copy of `doc` with every position replaced by map(position) = [x, y].
Json map_positions(const Json& doc, const std::function<PlanePoint(const SpherePoint&)>& map);

Json point_feature(const SpherePoint& p, Json properties);

/// Deterministic pretty printer: 15 significant digits, two-space indent.
std::string dump(const Json& value);

}  // namespace carta::geojson
