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


// JSON interchange for point sets and analysis reports.
//
// Point sets use
//   {"field": {"kind": "GF", "p": 3}, "space": [1, 1, 2],
//    "points": [[["1", "0"], ["1", "1"], ["0", "1", "1"]], ...]}
// with coordinates as decimal or fraction strings ({"kind": "Q"} for the
// rationals). Readers normalize and deduplicate; writers emit canonical form.
// Unknown keys are ignored, so any report that embeds these three keys can be
// read back as its input set.

#ifndef SEGRE_IO_HPP_
#define SEGRE_IO_HPP_

#include <string>

#include <nlohmann/json.hpp>

#include "segre/dependence.hpp"
#include "segre/multiproj.hpp"

namespace segre {

using Json = nlohmann::ordered_json;

Json field_to_json(const FieldSpec& field);
// Throws InputError on a malformed field object.
FieldSpec field_from_json(const nlohmann::json& j);

// One point as a list of coordinate-string lists, one per factor.
Json multipoint_to_json(const MultiPoint& p);
Json point_set_to_json(const PointSet& s);
// Throws InputError on schema violations, a field/space mismatch, or an
// empty point list.
PointSet point_set_from_json(const nlohmann::json& j);
PointSet parse_point_set(const std::string& text);

// The input set's three keys followed by an "analysis" object.
Json analysis_to_json(const PointSet& s, const AnalysisReport& report);

}  // namespace segre

#endif  // SEGRE_IO_HPP_
