#include "geojson.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "carta/jobs.hpp"

namespace carta::geojson {

namespace {

[[noreturn]] void parse_failure(const std::string& what) { throw JobFailure(kExitParse, "parse error: " + what); }

bool is_position(const Json& node) { return node.is_array() && !node.empty() && node.front().is_number(); }

SpherePoint to_sphere_point(const Json& pos) {
  if (pos.size() < 2) parse_failure("a position needs longitude and latitude");
  for (const auto& v : pos) {
    if (!v.is_number()) parse_failure("non-numeric coordinate");
  }
  const double lon = pos[0].get<double>(), lat = pos[1].get<double>();
  if (!std::isfinite(lon) || !std::isfinite(lat) || std::abs(lat) > 90.0 || std::abs(lon) > 180.0)
    parse_failure("coordinate [" + format_number(lon) + ", " + format_number(lat) + "] is out of range");
  return SpherePoint::from_degrees(lat, lon);
}

void check_coordinates(const Json& node, int depth) {
  if (is_position(node)) {
    if (depth != 0) parse_failure("coordinate nesting does not match the geometry type");
    to_sphere_point(node);
    return;
  }
  if (!node.is_array() || depth == 0) parse_failure("malformed coordinates array");
  for (const auto& child : node) check_coordinates(child, depth - 1);
}

int nesting_of(const std::string& type) {
  if (type == "Point") return 0;
  if (type == "MultiPoint" || type == "LineString") return 1;
  if (type == "MultiLineString" || type == "Polygon") return 2;
  if (type == "MultiPolygon") return 3;
  return -1;
}

void check_geometry(const Json& g) {
  if (g.is_null()) return;
  if (!g.is_object() || !g.contains("type") || !g["type"].is_string()) parse_failure("geometry without a type");
  const std::string type = g["type"].get<std::string>();
  if (type == "GeometryCollection") {
    if (!g.contains("geometries") || !g["geometries"].is_array()) parse_failure("GeometryCollection without geometries");
    for (const auto& child : g["geometries"]) check_geometry(child);
    return;
  }
  const int depth = nesting_of(type);
  if (depth < 0) parse_failure("unknown geometry type '" + type + "'");
  if (!g.contains("coordinates")) parse_failure(type + " without coordinates");
  check_coordinates(g["coordinates"], depth);
}

void check_document(const Json& doc) {
  if (!doc.is_object() || !doc.contains("type") || !doc["type"].is_string()) parse_failure("not a GeoJSON object");
  const std::string type = doc["type"].get<std::string>();
  if (type == "FeatureCollection") {
    if (!doc.contains("features") || !doc["features"].is_array()) parse_failure("FeatureCollection without features");
    for (const auto& f : doc["features"]) check_document(f);
  } else if (type == "Feature") {
    if (!doc.contains("geometry")) parse_failure("Feature without geometry");
    check_geometry(doc["geometry"]);
  } else {
    check_geometry(doc);
  }
}

template <class Fn>
void for_each_geometry(const Json& doc, Fn&& fn) {
  if (doc.is_null()) return;
  const std::string type = doc.value("type", "");
  if (type == "FeatureCollection") {
    for (const auto& f : doc["features"]) for_each_geometry(f, fn);
  } else if (type == "Feature") {
    for_each_geometry(doc["geometry"], fn);
  } else if (type == "GeometryCollection") {
    for (const auto& g : doc["geometries"]) for_each_geometry(g, fn);
  } else {
    fn(doc);
  }
}

void collect(const Json& node, std::vector<SpherePoint>& out) {
  if (is_position(node)) {
    out.push_back(to_sphere_point(node));
    return;
  }
  for (const auto& child : node) collect(child, out);
}

Json map_node(const Json& node, const std::function<PlanePoint(const SpherePoint&)>& map) {
  if (is_position(node)) {
    const PlanePoint q = map(to_sphere_point(node));
    return Json::array({q.x, q.y});
  }
  Json out = Json::array();
  for (const auto& child : node) out.push_back(map_node(child, map));
  return out;
}

Json map_document(const Json& doc, const std::function<PlanePoint(const SpherePoint&)>& map) {
  if (doc.is_null()) return doc;
  Json out = doc;
  const std::string type = doc.value("type", "");
  if (type == "FeatureCollection") {
    for (auto& f : out["features"]) f = map_document(f, map);
  } else if (type == "Feature") {
    out["geometry"] = map_document(doc["geometry"], map);
  } else if (type == "GeometryCollection") {
    for (auto& g : out["geometries"]) g = map_document(g, map);
  } else {
    out["coordinates"] = map_node(doc["coordinates"], map);
  }
  return out;
}

std::string quote(const std::string& s) { return Json(s).dump(-1, ' ', false, Json::error_handler_t::replace); }

void dump_into(const Json& v, int indent, std::ostringstream& os) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
  if (v.is_object()) {
    if (v.empty()) {
      os << "{}";
      return;
    }
    os << "{\n";
    bool first = true;
    for (auto it = v.begin(); it != v.end(); ++it) {
      if (!first) os << ",\n";
      first = false;
      os << inner << quote(it.key()) << ": ";
      dump_into(it.value(), indent + 1, os);
    }
    os << "\n" << pad << "}";
  } else if (v.is_array()) {
    // Arrays of scalars (positions, bounding boxes) stay on one line.
    const bool flat = std::all_of(v.begin(), v.end(), [](const Json& e) { return e.is_primitive(); });
    if (v.empty() || flat) {
      os << "[";
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) os << ", ";
        dump_into(v[i], indent + 1, os);
      }
      os << "]";
      return;
    }
    os << "[\n";
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) os << ",\n";
      os << inner;
      dump_into(v[i], indent + 1, os);
    }
    os << "\n" << pad << "]";
  } else if (v.is_number_float()) {
    const double x = v.get<double>();
    os << (std::isfinite(x) ? format_number(x) : "null");
  } else if (v.is_string()) {
    os << quote(v.get<std::string>());
  } else {
    os << v.dump();
  }
}

}  // namespace

Json read(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) parse_failure("cannot open '" + path + "'");
  Json doc = Json::parse(in, nullptr, false);
  if (doc.is_discarded()) parse_failure("'" + path + "' is not valid JSON");
  check_document(doc);
  return doc;
}

std::vector<SpherePoint> positions(const Json& doc) {
  std::vector<SpherePoint> out;
  for_each_geometry(doc, [&](const Json& g) { collect(g["coordinates"], out); });
  return out;
}

std::vector<SpherePoint> first_ring(const Json& doc) {
  std::vector<SpherePoint> ring;
  for_each_geometry(doc, [&](const Json& g) {
    if (!ring.empty()) return;
    const std::string type = g["type"].get<std::string>();
    const Json* rings = nullptr;
    if (type == "Polygon") rings = &g["coordinates"];
    if (type == "MultiPolygon" && !g["coordinates"].empty()) rings = &g["coordinates"][0];
    if (rings == nullptr || rings->empty()) return;
    for (const auto& pos : rings->front()) ring.push_back(to_sphere_point(pos));
  });
  if (ring.size() > 1 && chord_distance(ring.front(), ring.back()) < 1e-12) ring.pop_back();
  return ring;
}

Json map_positions(const Json& doc, const std::function<PlanePoint(const SpherePoint&)>& map) {
  return map_document(doc, map);
}

Json point_feature(const SpherePoint& p, Json properties) {
  Json f = Json::object();
  f["type"] = "Feature";
  f["geometry"] = {{"type", "Point"}, {"coordinates", Json::array({rad_to_deg(p.longitude()), rad_to_deg(p.latitude())})}};
  f["properties"] = std::move(properties);
  return f;
}

std::string dump(const Json& value) {
  std::ostringstream os;
  dump_into(value, 0, os);
  os << "\n";
  return os.str();
}

}  // namespace carta::geojson
