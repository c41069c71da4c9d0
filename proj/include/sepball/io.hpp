// Copyright 2026 The sepball Authors
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

#pragma once

#include <optional>
#include <string>

#include "json.hpp"

#include "sepball/criteria.hpp"
#include "sepball/dynamics.hpp"
#include "sepball/states.hpp"

namespace sepball::io {

using Json = nlohmann::ordered_json;

/// Every finite float is written with 17 significant digits; non-finite values
/// become the strings "inf", "-inf" and "nan". Arrays of scalars stay on one
/// line.
std::string dump_json(const Json& doc);
std::string format_double(double v);

Json parse_json(const std::string& text);
Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

/// Number or one of the non-finite strings written by dump_json.
double number_from_json(const Json& v);
Json number_to_json(double v);

ComplexMatrix matrix_from_json(const Json& rows);
Json matrix_to_json(const ComplexMatrix& m);

/// dims array; every dimension must be >= 2.
DimSignature dims_from_json(const Json& dims);
Json dims_to_json(const DimSignature& sig);

/// {"dims": [...], "matrix": [[[re, im], ...], ...]}
DensityMatrix state_from_json(const Json& doc);
Json state_to_json(const DensityMatrix& rho);

/// {"dims": [...], "factors": [matrix, ...]} or a matrix file holding an exact
/// product state.
ProductState product_from_json(const Json& doc);
Json product_to_json(const ProductState& prod);

/// {"dims": [...], "components": [{"weight": w, "factors": [matrix, ...]}, ...]}
SeparableDecomposition decomposition_from_json(const Json& doc);
Json decomposition_to_json(const SeparableDecomposition& decomp);

/// {"dims": [...], "terms": [{"coeff": c, "factors": [matrix, ...]}, ...]}
HamiltonianSpec hamiltonian_from_json(const Json& doc);
Json hamiltonian_to_json(const HamiltonianSpec& h);

Json certificate_to_json(const Certificate& cert);
Certificate certificate_from_json(const Json& doc);
Json negativity_to_json(const NegativityReport& rep);
NegativityReport negativity_from_json(const Json& doc);

/// time,distance,negativity
std::string timeline_csv(const Timeline& tl);

inline constexpr const char* kToolName = "sepball";
inline constexpr const char* kToolVersion = "1.0.0";

/// Checks the common report envelope (tool, version, command) and the
/// certificate/negativity entries when present.
void validate_report(const Json& report);

}  // namespace sepball::io
