/**************************************************************************
 * report.hpp
 *
 * Copyright 2026 The kasami-designs Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 **************************************************************************/

#pragma once

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "kasami/kasami.hpp"

namespace kasami::report {

using Json = nlohmann::ordered_json;

inline std::string poly_string(const std::vector<int>& c) {
    // c0 + c1 x + ... + x^m, highest degree first
    std::string out;
    for (std::size_t i = c.size(); i-- > 0;) {
        if (c[i] == 0) continue;
        if (!out.empty()) out += " + ";
        const bool show_coeff = c[i] != 1 || i == 0;
        if (show_coeff) out += std::to_string(c[i]);
        if (i > 0) out += (show_coeff ? "*" : "") + std::string("x") + (i > 1 ? "^" + std::to_string(i) : "");
    }
    return out;
}

inline Json context_json(const FieldContext& ctx) {
    const auto& fp = ctx.params();
    Json j;
    j["p"] = fp.p;
    j["s"] = fp.s;
    j["l"] = fp.l;
    j["m"] = fp.m;
    j["q"] = fp.q;
    j["n"] = fp.n;
    j["d"] = fp.d;
    j["dprime"] = fp.dprime;
    j["case"] = to_string(fp.kase);
    j["primitive_poly"] = ctx.primitive_polynomial();
    j["primitive_poly_text"] = poly_string(ctx.primitive_polynomial());
    return j;
}

inline Json cycint_json(const CycInt& z) {
    Json j;
    j["coeffs"] = std::vector<std::int64_t>(z.coeffs().begin(), z.coeffs().end());
    return j;
}

/// Entries by descending count, ties by coefficient order.
inline std::vector<std::pair<CycInt, std::uint64_t>> sorted_values(const ValueDistribution& vd) {
    std::vector<std::pair<CycInt, std::uint64_t>> v(vd.entries.begin(), vd.entries.end());
    std::stable_sort(v.begin(), v.end(), [](const auto& x, const auto& y) { return x.second > y.second; });
    return v;
}

inline Json value_distribution_json(const ValueDistribution& vd) {
    Json arr = Json::array();
    for (const auto& [v, c] : sorted_values(vd)) {
        Json e;
        e["value"] = cycint_json(v);
        e["pretty"] = v.pretty();
        e["count"] = c;
        arr.push_back(std::move(e));
    }
    Json j;
    j["total"] = vd.total();
    j["distinct"] = vd.entries.size();
    j["entries"] = std::move(arr);
    return j;
}

inline std::string value_distribution_csv(const ValueDistribution& vd, int p) {
    std::ostringstream os;
    for (int i = 1; i < p; ++i) os << "c" << i << ',';
    os << "count\n";
    for (const auto& [v, c] : sorted_values(vd)) {
        for (auto x : v.coeffs()) os << x << ',';
        os << c << '\n';
    }
    return os.str();
}

inline Json weight_distribution_json(const WeightDistribution& wd) {
    Json arr = Json::array();
    for (const auto& [w, c] : wd.entries) {
        Json e;
        e["w"] = w;
        e["count"] = c;
        arr.push_back(std::move(e));
    }
    Json j;
    j["total"] = wd.total();
    j["weights"] = std::move(arr);
    return j;
}

inline std::string weight_distribution_csv(const WeightDistribution& wd) {
    std::ostringstream os;
    os << "weight,count\n";
    for (const auto& [w, c] : wd.entries) os << w << ',' << c << '\n';
    return os.str();
}

inline Json value_rows_json(const std::vector<PredictedValueRow>& rows) {
    Json arr = Json::array();
    for (const auto& r : rows) {
        Json e;
        e["row"] = r.label;
        e["value"] = cycint_json(r.value);
        e["pretty"] = r.value.pretty();
        e["count"] = r.count;
        arr.push_back(std::move(e));
    }
    return arr;
}

inline std::string value_rows_csv(const std::vector<PredictedValueRow>& rows, int p) {
    std::ostringstream os;
    os << "row,";
    for (int i = 1; i < p; ++i) os << "c" << i << ',';
    os << "count\n";
    for (const auto& r : rows) {
        os << r.label << ',';
        for (auto x : r.value.coeffs()) os << x << ',';
        os << r.count << '\n';
    }
    return os.str();
}

inline Json weight_rows_json(const std::vector<PredictedWeightRow>& rows) {
    Json arr = Json::array();
    for (const auto& r : rows) {
        Json e;
        e["row"] = r.label;
        e["w"] = r.weight;
        e["count"] = r.count;
        arr.push_back(std::move(e));
    }
    return arr;
}

inline std::string weight_rows_csv(const std::vector<PredictedWeightRow>& rows) {
    std::ostringstream os;
    os << "row,weight,count\n";
    for (const auto& r : rows) os << r.label << ',' << r.weight << ',' << r.count << '\n';
    return os.str();
}

inline Json design_parameters_json(const DesignParameters& d) {
    Json j;
    j["v"] = d.v;
    j["k"] = d.k;
    j["b"] = d.b;
    j["lambda"] = d.lambda;
    return j;
}

inline Json design_predictions_json(const std::vector<DesignPrediction>& preds) {
    Json arr = Json::array();
    for (const auto& dp : preds) {
        Json e = design_parameters_json(dp.params);
        Json rows = Json::array();
        for (const auto& r : dp.rows) {
            Json rj;
            rj["row"] = r.label;
            rj["lambda"] = r.lambda;
            rows.push_back(std::move(rj));
        }
        e["rows"] = std::move(rows);
        e["rows_consistent"] = dp.rows_consistent;
        arr.push_back(std::move(e));
    }
    return arr;
}

inline std::string design_predictions_csv(const std::vector<DesignPrediction>& preds) {
    std::ostringstream os;
    os << "v,k,b,lambda\n";
    for (const auto& dp : preds) os << dp.params.v << ',' << dp.params.k << ',' << dp.params.b << ',' << dp.params.lambda << '\n';
    return os.str();
}

} // namespace kasami::report
