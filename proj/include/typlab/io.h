// Copyright 2026 The Typlab Authors
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

#ifndef TYPLAB_IO_H
#define TYPLAB_IO_H

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "typlab/constraint_subspace.h"
#include "typlab/experiments.h"
#include "typlab/measurement_filter.h"

namespace typlab {

inline constexpr int kSchemaVersion = 1;

/// Malformed serialized input. The message names the offending field.
class ParseError : public Error {
    using Error::Error;
};

/// {"dimS": .., "dimE": .., "basis": [[[re, im], ...], ...]}, one inner list per basis vector.
nlohmann::json subspace_to_json(const ConstraintSubspace &sub);
ConstraintSubspace subspace_from_json(const nlohmann::json &j, std::size_t cap = kDefaultDimensionCap);

/// {"coordinates": "composite" | "subspace", "matrix": [[[re, im], ...], ...]} (row major).
nlohmann::json matrix_to_json(const ComplexMatrix &m);
ComplexMatrix matrix_from_json(const nlohmann::json &j, const std::string &field);
MeasurementFilter filter_from_json(const nlohmann::json &j, const ConstraintSubspace &sub);

/// Parses text, turning syntax errors into ParseError with line and column.
nlohmann::json parse_json_text(const std::string &text, const std::string &source);

/// FNV-1a 64 over the compact dump.
std::uint64_t config_hash(const nlohmann::json &config);
std::string hex64(std::uint64_t v);

/// 17 significant digits; empty for NaN.
std::string format_real(double v);

/// "# schema_version=.. seed=.. config_hash=.." followed by the header row
/// trial,trace_distance,purity,max_coeff_dev and one row per record.
void write_trial_csv(std::ostream &out, const std::vector<TrialRecord> &records, std::uint64_t seed,
                     std::uint64_t hash);

nlohmann::json summary_to_json(const SummaryStats &s);
nlohmann::json bound_rows_to_json(const std::vector<BoundRow> &rows);

}  // namespace typlab

#endif
