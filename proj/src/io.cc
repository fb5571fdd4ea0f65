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

#include "typlab/io.h"

#include <cmath>
#include <ostream>

#include <fmt/format.h>

namespace typlab {

namespace {

using nlohmann::json;

Complex complex_from_json(const json &j, const std::string &field) {
    if (j.is_number()) {
        return Complex(j.get<double>(), 0.0);
    }
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw ParseError(fmt::format("{}: expected a number or [re, im], got {}", field, j.dump()));
    }
    return Complex(j[0].get<double>(), j[1].get<double>());
}

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

std::size_t positive_count(const json &j, const char *field) {
    if (!j.contains(field)) {
        throw ParseError(fmt::format("missing field '{}'", field));
    }
    const json &v = j.at(field);
    if (!v.is_number_unsigned() || v.get<std::size_t>() == 0) {
        throw ParseError(fmt::format("field '{}' must be a positive integer, got {}", field, v.dump()));
    }
    return v.get<std::size_t>();
}

}  // namespace

json subspace_to_json(const ConstraintSubspace &sub) {
    json basis = json::array();
    for (std::size_t i = 0; i < sub.dim(); ++i) {
        ComplexVector v = sub.basis_vector(i);
        json col = json::array();
        for (Eigen::Index a = 0; a < v.size(); ++a) {
            col.push_back(complex_to_json(v(a)));
        }
        basis.push_back(std::move(col));
    }
    return json{{"dimS", sub.shape().dim_s()}, {"dimE", sub.shape().dim_e()}, {"basis", std::move(basis)}};
}

ConstraintSubspace subspace_from_json(const json &j, std::size_t cap) {
    if (!j.is_object()) {
        throw ParseError("subspace: expected a JSON object");
    }
    BipartiteShape shape(positive_count(j, "dimS"), positive_count(j, "dimE"));
    check_dimension_cap(shape.composite(), cap, "subspace file");
    if (!j.contains("basis") || !j.at("basis").is_array() || j.at("basis").empty()) {
        throw ParseError("subspace: 'basis' must be a nonempty array of vectors");
    }
    std::vector<ComplexVector> vectors;
    const json &basis = j.at("basis");
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const json &col = basis[i];
        std::string field = fmt::format("basis[{}]", i);
        if (!col.is_array() || col.size() != shape.composite()) {
            throw ParseError(fmt::format("{}: expected {} entries", field, shape.composite()));
        }
        ComplexVector v(static_cast<Eigen::Index>(col.size()));
        for (std::size_t a = 0; a < col.size(); ++a) {
            v(static_cast<Eigen::Index>(a)) = complex_from_json(col[a], fmt::format("{}[{}]", field, a));
        }
        vectors.push_back(std::move(v));
    }
    return ConstraintSubspace::from_basis_vectors(shape, vectors, cap);
}

json matrix_to_json(const ComplexMatrix &m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            row.push_back(complex_to_json(m(r, c)));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

ComplexMatrix matrix_from_json(const json &j, const std::string &field) {
    if (!j.is_array() || j.empty()) {
        throw ParseError(fmt::format("{}: expected a nonempty array of rows", field));
    }
    std::size_t n = j.size();
    ComplexMatrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t r = 0; r < n; ++r) {
        if (!j[r].is_array() || j[r].size() != n) {
            throw ParseError(fmt::format("{}[{}]: expected {} entries (square matrix)", field, r, n));
        }
        for (std::size_t c = 0; c < n; ++c) {
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                complex_from_json(j[r][c], fmt::format("{}[{}][{}]", field, r, c));
        }
    }
    return m;
}

MeasurementFilter filter_from_json(const json &j, const ConstraintSubspace &sub) {
    if (!j.is_object() || !j.contains("coordinates") || !j.at("coordinates").is_string()) {
        throw ParseError("filter: missing string field 'coordinates' (composite|subspace)");
    }
    if (!j.contains("matrix")) {
        throw ParseError("filter: missing field 'matrix'");
    }
    ComplexMatrix x = matrix_from_json(j.at("matrix"), "matrix");
    std::string coords = j.at("coordinates").get<std::string>();
    if (coords == "composite") {
        return MeasurementFilter::on_composite(std::move(x), sub.shape());
    }
    if (coords == "subspace") {
        return MeasurementFilter::on_subspace(std::move(x), sub);
    }
    throw ParseError(fmt::format("filter: coordinates must be 'composite' or 'subspace', got '{}'", coords));
}

json parse_json_text(const std::string &text, const std::string &source) {
    try {
        return json::parse(text);
    } catch (const json::parse_error &e) {
        // byte offset -> line/column
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ParseError(fmt::format("{}:{}:{}: malformed JSON ({})", source, line, col, e.what()));
    }
}

std::uint64_t config_hash(const json &config) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : config.dump()) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hex64(std::uint64_t v) { return fmt::format("{:016x}", v); }

std::string format_real(double v) {
    if (std::isnan(v)) {
        return "";
    }
    return fmt::format("{:.17g}", v);
}

void write_trial_csv(std::ostream &out, const std::vector<TrialRecord> &records, std::uint64_t seed,
                     std::uint64_t hash) {
    out << fmt::format("# schema_version={} seed={} config_hash={}\n", kSchemaVersion, seed, hex64(hash));
    out << "trial,trace_distance,purity,max_coeff_dev\n";
    for (const TrialRecord &r : records) {
        out << r.index << ',' << format_real(r.trace_distance) << ',' << format_real(r.purity) << ','
            << (r.max_coeff_deviation ? format_real(*r.max_coeff_deviation) : std::string()) << '\n';
    }
}

json summary_to_json(const SummaryStats &s) {
    json tails = json::array();
    for (const auto &[t, f] : s.tails) {
        tails.push_back(json{{"threshold", t}, {"frequency", f}});
    }
    return json{{"count", s.count}, {"mean", s.mean}, {"stddev", s.stddev}, {"standard_error", s.standard_error},
                {"min", s.min},     {"max", s.max},   {"q50", s.q50},       {"q90", s.q90},
                {"q99", s.q99},     {"tails", tails}};
}

json bound_rows_to_json(const std::vector<BoundRow> &rows) {
    json out = json::array();
    for (const BoundRow &r : rows) {
        json row{{"name", r.name},         {"bound", r.bound},         {"empirical", r.empirical},
                 {"tolerance", r.tolerance}, {"satisfied", r.satisfied}, {"vacuous", r.vacuous}};
        row["threshold"] = std::isnan(r.threshold) ? json(nullptr) : json(r.threshold);
        out.push_back(std::move(row));
    }
    return out;
}

}  // namespace typlab
