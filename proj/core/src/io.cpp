// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "segre/io.hpp"

#include <utility>
#include <vector>

#include "segre/error.hpp"

namespace segre {
namespace {

const nlohmann::json& require(const nlohmann::json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw InputError(std::string("point-set JSON: missing key '") + key + "'");
  }
  return j.at(key);
}

Scalar parse_coordinate(const FieldSpec& field, const nlohmann::json& c) {
  if (c.is_string()) return Scalar::parse(field, c.get<std::string>());
  if (c.is_number_integer()) return Scalar::from_int(field, c.get<long long>());
  throw InputError("point-set JSON: coordinates must be strings or integers");
}

}  // namespace

Json field_to_json(const FieldSpec& field) {
  Json j = Json::object();
  if (field.is_finite()) {
    j["kind"] = "GF";
    j["p"] = field.modulus();
  } else {
    j["kind"] = "Q";
  }
  return j;
}

FieldSpec field_from_json(const nlohmann::json& j) {
  if (j.is_string()) return FieldSpec::parse(j.get<std::string>());
  const auto& kind = require(j, "kind");
  if (!kind.is_string()) throw InputError("field kind must be a string");
  const auto k = kind.get<std::string>();
  if (k == "Q") return FieldSpec::rationals();
  if (k != "GF") throw InputError("unknown field kind '" + k + "'");
  const auto& p = require(j, "p");
  if (!p.is_number_unsigned()) throw InputError("field p must be a positive integer");
  const auto v = p.get<std::uint64_t>();
  if (v > FieldSpec::kMaxModulus) throw InputError("field modulus too large");
  return FieldSpec::prime(static_cast<std::uint32_t>(v));
}

Json multipoint_to_json(const MultiPoint& p) {
  Json comps = Json::array();
  for (const auto& c : p.components()) {
    Json coords = Json::array();
    for (const auto& x : c.coords()) coords.push_back(x.to_string());
    comps.push_back(std::move(coords));
  }
  return comps;
}

Json point_set_to_json(const PointSet& s) {
  Json j = Json::object();
  j["field"] = field_to_json(s.space().field());
  j["space"] = s.space().dims();
  Json pts = Json::array();
  for (const auto& p : s) pts.push_back(multipoint_to_json(p));
  j["points"] = std::move(pts);
  return j;
}

PointSet point_set_from_json(const nlohmann::json& j) {
  const FieldSpec field = field_from_json(require(j, "field"));
  const auto& space = require(j, "space");
  if (!space.is_array()) throw InputError("space must be an array of dimensions");
  std::vector<int> dims;
  for (const auto& d : space) {
    if (!d.is_number_integer()) throw InputError("space entries must be integers");
    dims.push_back(d.get<int>());
  }
  MultiprojectiveSpace y(field, dims);
  const auto& points = require(j, "points");
  if (!points.is_array() || points.empty()) {
    throw InputError("points must be a nonempty array");
  }
  std::vector<MultiPoint> out;
  for (const auto& p : points) {
    if (!p.is_array() || p.size() != y.factors()) {
      throw InputError("each point needs one component per factor");
    }
    std::vector<ProjPoint> comps;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (!p[i].is_array() || p[i].size() != static_cast<std::size_t>(y.dim(i)) + 1) {
        throw InputError("component length does not match the space");
      }
      Vector v;
      for (const auto& c : p[i]) v.push_back(parse_coordinate(field, c));
      comps.push_back(ProjPoint::normalized(std::move(v)));
    }
    out.emplace_back(std::move(comps));
  }
  return PointSet(std::move(y), std::move(out));
}

PointSet parse_point_set(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("invalid JSON: ") + e.what());
  }
  return point_set_from_json(j);
}

Json analysis_to_json(const PointSet& s, const AnalysisReport& r) {
  Json j = point_set_to_json(s);
  Json a = Json::object();
  a["size"] = r.size;
  a["rank"] = r.rank;
  a["defect"] = r.defect;
  a["width"] = r.width;
  a["concise"] = r.concise;
  a["hull_dims"] = r.hull_dims;
  a["class"] = to_string(r.dependency_class);
  a["equally_dependent"] = r.equally_dependent;
  a["uniformly_dependent"] =
      r.uniformly_dependent ? Json(*r.uniformly_dependent) : Json(nullptr);
  a["e_circuit"] = r.e_circuit ? Json(*r.e_circuit) : Json(nullptr);
  a["witness"] = r.witness ? point_set_to_json(*r.witness) : Json(nullptr);
  Json profile = Json::array();
  for (const auto& row : r.subset_profile) {
    Json counts = Json::object();
    for (const auto& [e, n] : row.defect_counts) counts[std::to_string(e)] = n;
    profile.push_back(Json{{"size", row.size}, {"defects", std::move(counts)}});
  }
  a["subset_profile"] = std::move(profile);
  j["analysis"] = std::move(a);
  return j;
}

}  // namespace segre
