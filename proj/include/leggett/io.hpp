// Copyright 2026 The Leggett Toolkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>

#include <json.hpp>

#include "leggett/werner_model.hpp"
#include "leggett/correlation.hpp"
#include "leggett/membership.hpp"

namespace leggett::io {

using nlohmann::json;

json to_json(const UnitVector3& v);
UnitVector3 unit_vector_from_json(const json& j);

/// {alice_settings, bob_settings, MA, MB, C} with C as Alice-indexed rows.
json to_json(const BinaryCorrelation& corr);

/// Accepts the moment form above or the raw form
/// {alice_settings, bob_settings, P} with P[i][j] = [p++, p+-, p-+, p--].
/// Throws FormatError for malformed documents and SignalingError for raw
/// tables whose marginals depend on the remote setting.
BinaryCorrelation correlation_from_json(const json& j);

json to_json(const Certificate& cert);
/// {status, witness?, certificate?, margin?, diagnostics}.
json to_json(const FeasibilityVerdict& verdict);

/// Witness form of the antipodal Werner model: {V, components: [{u, weight}]}.
json werner_model_to_json(double visibility, const QuadratureScheme& scheme);

json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace leggett::io
