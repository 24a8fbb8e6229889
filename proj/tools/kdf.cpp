/**************************************************************************
 * kdf.cpp
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

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "report.hpp"

using namespace kasami;
using report::Json;

namespace {

// Exit codes.
constexpr int kOk = 0;
constexpr int kMismatch = 1;
constexpr int kUsage = 2;

// Full pair counting above this many increments is refused.
constexpr std::uint64_t kFullPairBudget = std::uint64_t{1} << 28;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string subcommand;
    int p = 0;
    int s = 0;
    int l = 0;
    unsigned threads = 1;
    bool csv = false;
    std::string output;
    std::string method = "sums";
    std::string what;
    std::uint64_t trials = 100;
    std::uint64_t seed = 1;
    std::uint64_t weight = 0;
    std::uint64_t sampled = 0;
    bool full = false;
    std::string in_path;
    std::string out_path;
    std::uint64_t budget = kDefaultEnumerationBudget;
};

std::uint64_t budget_from_env() {
    const char* raw = std::getenv("KDF_BUDGET");
    if (raw == nullptr || *raw == '\0') return kDefaultEnumerationBudget;
    std::istringstream is(raw);
    std::uint64_t v = 0;
    if (!(is >> v) || !is.eof()) throw UsageError(std::string("KDF_BUDGET is not an unsigned integer: ") + raw);
    return v;
}

// Output never depends on the thread count, so it is left out.
Json config_json(const RunConfig& cfg) {
    Json j;
    j["subcommand"] = cfg.subcommand;
    if (cfg.subcommand != "verify-design") {
        j["p"] = cfg.p;
        j["s"] = cfg.s;
        j["l"] = cfg.l;
    }
    if (cfg.subcommand == "weight-dist" || (cfg.subcommand == "compare" && cfg.what == "weights")) j["method"] = cfg.method;
    if (cfg.subcommand == "weight-dist" && cfg.method == "enumerate") j["budget"] = cfg.budget;
    if (cfg.subcommand == "predict" || cfg.subcommand == "compare") j["what"] = cfg.what;
    if (cfg.subcommand == "check-affine") {
        j["trials"] = cfg.trials;
        j["seed"] = cfg.seed;
    }
    if (cfg.subcommand == "compare" && cfg.what == "designs") {
        j["full"] = cfg.full;
        j["sampled"] = cfg.sampled;
        j["seed"] = cfg.seed;
    }
    if (cfg.subcommand == "extract-design") {
        j["weight"] = cfg.weight;
        j["out"] = cfg.out_path;
    }
    if (cfg.subcommand == "verify-design") {
        j["in"] = cfg.in_path;
        j["sampled"] = cfg.sampled;
        j["seed"] = cfg.seed;
    }
    return j;
}

class Emitter {
public:
    explicit Emitter(const RunConfig& cfg) : cfg_(cfg) {}

    void json(Json body, const FieldContext* ctx) {
        Json doc;
        doc["config"] = config_json(cfg_);
        if (ctx != nullptr) doc["params"] = report::context_json(*ctx);
        if (cfg_.subcommand == "weight-dist") doc["method"] = cfg_.method;
        if (cfg_.subcommand == "predict") doc["method"] = "closed-form";
        for (auto& [k, v] : body.items()) doc[k] = v;
        text(doc.dump(2) + "\n");
    }

    void text(const std::string& s) {
        if (cfg_.output.empty()) {
            std::cout << s;
            return;
        }
        std::ofstream os(cfg_.output, std::ios::binary);
        if (!os) throw UsageError("cannot open output file " + cfg_.output);
        os << s;
    }

private:
    const RunConfig& cfg_;
};

WeightDistribution computed_weights(const FieldContext& ctx, const RunConfig& cfg) {
    if (cfg.method == "enumerate") return weight_distribution_enumerate(ctx, cfg.budget, cfg.threads);
    if (cfg.method == "sums") return weight_distribution_via_sums(ctx, cfg.threads);
    if (cfg.method == "closed-form") return predicted_weight_distribution(ctx.params());
    throw UsageError("unknown method " + cfg.method);
}

std::vector<DesignRowLambda> live_row_lambdas(const FieldParams& fp) {
    std::vector<DesignRowLambda> live;
    const auto weight_rows = predicted_weight_rows(fp);
    for (const auto& r : predicted_row_lambdas(fp))
        for (const auto& wr : weight_rows)
            if (wr.label == r.label && wr.count != 0) live.push_back(r);
    return live;
}

unsigned __int128 pair_increments(std::uint64_t b, std::uint64_t k) {
    return static_cast<unsigned __int128>(b) * k * (k - 1) / 2;
}

Json pair_report_json(const TwoDesignReport& rep) {
    Json j;
    j["is_design"] = rep.is_design;
    j["lambda"] = rep.lambda;
    if (rep.witness) {
        j["witness"] = {{"x", rep.witness->x}, {"y", rep.witness->y}, {"count", rep.witness->count}, {"expected", rep.witness->expected}};
    } else {
        j["witness"] = nullptr;
    }
    return j;
}

Json regularity_json(const PointRegularity& reg) {
    Json j;
    j["regular"] = reg.regular;
    j["replication"] = reg.replication;
    if (reg.witness) {
        j["witness"] = {{"point", reg.witness->first}, {"count", reg.witness->second}};
    } else {
        j["witness"] = nullptr;
    }
    return j;
}

int cmd_inspect(const RunConfig& cfg, Emitter& out) {
    const auto ctx = build_context(cfg.p, cfg.s, cfg.l);
    const auto fp = ctx.params();
    Json body;
    Json code;
    code["length"] = fp.q;
    code["dimension"] = verify_dimension(ctx).rank();
    code["defining_set"] = extended_defining_set(ctx);
    code["subfield_step"] = ctx.subfield_step();
    body["code"] = std::move(code);
    out.json(std::move(body), &ctx);
    return kOk;
}

int cmd_value_dist(const RunConfig& cfg, Emitter& out) {
    const auto ctx = build_context(cfg.p, cfg.s, cfg.l);
    const auto vd = value_distribution(ctx, cfg.threads);
    if (cfg.csv) {
        out.text(report::value_distribution_csv(vd, cfg.p));
    } else {
        out.json(report::value_distribution_json(vd), &ctx);
    }
    return kOk;
}

int cmd_weight_dist(const RunConfig& cfg, Emitter& out) {
    const auto ctx = build_context(cfg.p, cfg.s, cfg.l);
    const auto wd = computed_weights(ctx, cfg);
    if (cfg.csv) {
        out.text(report::weight_distribution_csv(wd));
    } else {
        out.json(report::weight_distribution_json(wd), &ctx);
    }
    return kOk;
}

int cmd_predict(const RunConfig& cfg, Emitter& out) {
    const auto ctx = build_context(cfg.p, cfg.s, cfg.l);
    const auto& fp = ctx.params();
    Json body;
    if (cfg.what == "values") {
        const auto rows = predicted_value_rows(fp);
        if (cfg.csv) {
            out.text(report::value_rows_csv(rows, cfg.p));
            return kOk;
        }
        body["rows"] = report::value_rows_json(rows);
        body["distribution"] = report::value_distribution_json(predicted_value_distribution(fp));
    } else if (cfg.what == "weights") {
        const auto rows = predicted_weight_rows(fp);
        if (cfg.csv) {
            out.text(report::weight_rows_csv(rows));
            return kOk;
        }
        body["rows"] = report::weight_rows_json(rows);
        body["distribution"] = report::weight_distribution_json(predicted_weight_distribution(fp));
    } else {
        const auto preds = predicted_design_parameters(fp);
        if (cfg.csv) {
            out.text(report::design_predictions_csv(preds));
            return kOk;
        }
        body["designs"] = report::design_predictions_json(preds);
    }
    out.json(std::move(body), &ctx);
    return kOk;
}

int compare_values(const FieldContext& ctx, const RunConfig& cfg, Emitter& out) {
    const auto computed = value_distribution(ctx, cfg.threads);
    const auto rows = predicted_value_rows(ctx.params());
    const auto predicted = predicted_value_distribution(ctx.params());
    std::set<CycInt> keys;
    for (const auto& [v, c] : computed.entries) keys.insert(v);
    for (const auto& [v, c] : predicted.entries) keys.insert(v);
    Json diff = Json::array();
    for (const auto& v : keys) {
        const auto a = computed.count(v), b = predicted.count(v);
        if (a == b) continue;
        Json e;
        e["value"] = report::cycint_json(v);
        e["row"] = classify_value(rows, v).value_or("");
        e["computed"] = a;
        e["predicted"] = b;
        diff.push_back(std::move(e));
    }
    Json body;
    body["match"] = diff.empty();
    body["computed_total"] = computed.total();
    body["predicted_total"] = predicted.total();
    body["diff"] = diff;
    out.json(std::move(body), &ctx);
    return diff.empty() ? kOk : kMismatch;
}

int compare_weights(const FieldContext& ctx, const RunConfig& cfg, Emitter& out) {
    if (cfg.method == "closed-form") throw UsageError("compare --what weights needs --method enumerate or sums");
    const auto computed = computed_weights(ctx, cfg);
    const auto predicted = predicted_weight_distribution(ctx.params());
    std::set<std::uint64_t> keys;
    for (const auto& [w, c] : computed.entries) keys.insert(w);
    for (const auto& [w, c] : predicted.entries) keys.insert(w);
    Json diff = Json::array();
    for (auto w : keys) {
        const auto a = computed.count(w), b = predicted.count(w);
        if (a != b) diff.push_back({{"w", w}, {"computed", a}, {"predicted", b}});
    }
    Json body;
    body["match"] = diff.empty();
    body["computed_total"] = computed.total();
    body["predicted_total"] = predicted.total();
    body["diff"] = diff;
    out.json(std::move(body), &ctx);
    return diff.empty() ? kOk : kMismatch;
}

int compare_designs(const FieldContext& ctx, const RunConfig& cfg, Emitter& out) {
    const auto& fp = ctx.params();
    const auto wd = weight_distribution_via_sums(ctx, cfg.threads);
    const auto computed = design_parameters_from(fp, wd, live_row_lambdas(fp));
    const auto predicted = predicted_design_parameters(fp);
    bool ok = computed.size() == predicted.size();
    const auto p1 = static_cast<std::uint64_t>(fp.p - 1);
    const auto bound = support_multiplicity_bound(wd.entries.upper_bound(0)->first, fp.q, fp.p);

    std::optional<CodeDesignSample> sample;
    if (cfg.sampled > 0) sample = sample_code_designs(ctx, cfg.sampled, cfg.seed, cfg.threads);

    Json classes = Json::array();
    for (std::size_t i = 0; i < computed.size(); ++i) {
        const auto& c = computed[i].params;
        Json e = report::design_parameters_json(c);
        const bool same = i < predicted.size() && predicted[i].params.k == c.k && predicted[i].params.b == c.b && predicted[i].params.lambda == c.lambda;
        const bool identity = design_identity_check(c.v, c.k, c.lambda, c.b);
        const bool row_sum = computed[i].rows_consistent;
        const bool within_bound = c.k <= bound;
        const bool regular_count = (c.b * c.k) % c.v == 0;
        e["matches_prediction"] = same;
        e["identity"] = identity;
        e["row_lambdas_sum"] = row_sum;
        e["within_multiplicity_bound"] = within_bound;
        e["replication"] = regular_count ? Json(c.b * c.k / c.v) : Json(nullptr);
        ok = ok && same && identity && row_sum && within_bound && regular_count;

        if (cfg.full) {
            if (pair_increments(c.b, c.k) > kFullPairBudget) {
                e["full"] = "skipped: pair budget exceeded";
            } else {
                const auto supports = extract_supports(ctx, c.k, cfg.threads);
                const auto hist = supports.multiplicity_histogram();
                const bool mult_ok = hist.size() == 1 && hist.begin()->first == p1;
                const auto rep = verify_two_design(supports.blocks, c.v);
                const auto reg = point_regularity(supports.blocks, c.v);
                Json fj;
                fj["distinct_supports"] = supports.blocks.size();
                fj["each_support_p_minus_1_times"] = mult_ok;
                fj["pairs"] = pair_report_json(rep);
                fj["points"] = regularity_json(reg);
                e["full"] = std::move(fj);
                ok = ok && mult_ok && rep.is_design && rep.lambda == c.lambda && reg.regular && reg.replication * c.v == c.b * c.k &&
                     supports.blocks.size() == c.b;
            }
        }
        if (sample) {
            const auto it = sample->classes.find(c.k);
            Json sj;
            bool pairs_ok = it != sample->classes.end();
            bool points_ok = pairs_ok;
            if (pairs_ok) {
                for (auto cnt : it->second.pair_counts) pairs_ok = pairs_ok && cnt == p1 * c.lambda;
                for (auto cnt : it->second.point_counts) points_ok = points_ok && regular_count && cnt == p1 * (c.b * c.k / c.v);
                sj["codewords"] = it->second.codewords;
            }
            sj["pairs"] = sample->pairs.size();
            sj["points"] = sample->points.size();
            sj["pairs_match"] = pairs_ok;
            sj["points_match"] = points_ok;
            e["sampled"] = std::move(sj);
            ok = ok && pairs_ok && points_ok;
        }
        classes.push_back(std::move(e));
    }
    Json body;
    body["match"] = ok;
    body["minimum_distance"] = wd.entries.upper_bound(0)->first;
    body["multiplicity_bound"] = bound;
    body["designs"] = std::move(classes);
    out.json(std::move(body), &ctx);
    return ok ? kOk : kMismatch;
}

int cmd_compare(const RunConfig& cfg, Emitter& out) {
    const auto ctx = build_context(cfg.p, cfg.s, cfg.l);
    if (cfg.what == "values") return compare_values(ctx, cfg, out);
    if (cfg.what == "weights") return compare_weights(ctx, cfg, out);
    return compare_designs(ctx, cfg, out);
}

int cmd_check_affine(const RunConfig& cfg, Emitter& out) {
    const auto ctx = build_context(cfg.p, cfg.s, cfg.l);
    const auto basis = verify_dimension(ctx);
    const auto check = defining_set_check(ctx);
    const auto trials = affine_trials(ctx, basis, cfg.trials, cfg.seed);
    Json body;
    body["dimension"] = basis.rank();
    body["defining_set"] = extended_defining_set(ctx);
    body["structural"] = check.affine_invariant;
    body["witness"] = check.witness ? Json{{"u", check.witness->first}, {"r", check.witness->second}} : Json(nullptr);
    body["empirical_trials"] = trials.trials;
    body["empirical_pass"] = trials.passed;
    const bool ok = check.affine_invariant && trials.passed == trials.trials;
    body["match"] = ok;
    out.json(std::move(body), &ctx);
    return ok ? kOk : kMismatch;
}

int cmd_extract_design(const RunConfig& cfg, Emitter& out) {
    const auto ctx = build_context(cfg.p, cfg.s, cfg.l);
    const auto& fp = ctx.params();
    if (cfg.weight == 0 || cfg.weight >= fp.q) throw UsageError("--weight must lie in [1, p^m - 1]");
    const auto supports = extract_supports(ctx, cfg.weight, cfg.threads);
    const auto p1 = static_cast<std::uint64_t>(fp.p - 1);
    const auto design = design_from_supports(ctx, supports);
    {
        std::ofstream os(cfg.out_path, std::ios::binary);
        if (!os) throw UsageError("cannot open block file " + cfg.out_path);
        write_block_file(os, design);
    }
    Json body;
    body["design"] = {{"v", design.v}, {"k", design.k}, {"b", design.b}, {"lambda", design.lambda}};
    body["codewords"] = supports.total;
    Json hist = Json::array();
    std::uint64_t repeated = 0;
    for (const auto& [mult, n] : supports.multiplicity_histogram()) {
        hist.push_back({{"multiplicity", mult}, {"supports", n}});
        if (mult != p1) repeated += n;
    }
    body["multiplicity_histogram"] = hist;
    // Supports shared by codewords that are not scalar multiples, e.g. across merged rows.
    body["irregular_supports"] = repeated;
    bool ok = repeated == 0;
    if (pair_increments(design.b, design.k) <= kFullPairBudget) {
        const auto rep = verify_two_design(design.blocks, design.v);
        const auto reg = point_regularity(design.blocks, design.v);
        body["pairs"] = pair_report_json(rep);
        body["points"] = regularity_json(reg);
        ok = ok && rep.is_design && rep.lambda == design.lambda && reg.regular;
    } else {
        body["pairs"] = "skipped: pair budget exceeded, use verify-design --sampled";
    }
    body["match"] = ok;
    out.json(std::move(body), &ctx);
    return ok ? kOk : kMismatch;
}

int cmd_verify_design(const RunConfig& cfg, Emitter& out) {
    std::ifstream is(cfg.in_path, std::ios::binary);
    if (!is) throw UsageError("cannot open block file " + cfg.in_path);
    Design design;
    try {
        design = read_block_file(is);
    } catch (const std::runtime_error& e) {
        throw UsageError(cfg.in_path + ": " + e.what());
    }
    Json body;
    body["design"] = {{"v", design.v}, {"k", design.k}, {"b", design.b}, {"lambda", design.lambda}};
    const bool identity = design_identity_check(design.v, design.k, design.lambda, design.b);
    body["identity"] = identity;
    const auto reg = point_regularity(design.blocks, design.v);
    body["points"] = regularity_json(reg);
    bool ok = identity && reg.regular && reg.replication * design.v == design.b * design.k;
    if (cfg.sampled > 0) {
        const auto counts = verify_two_design_sampled(design.blocks, design.v, cfg.sampled, cfg.seed);
        Json arr = Json::array();
        bool all = true;
        for (const auto& sp : counts) {
            arr.push_back({{"x", sp.x}, {"y", sp.y}, {"count", sp.count}});
            all = all && sp.count == design.lambda;
        }
        body["sampled"] = arr;
        body["sampled_match"] = all;
        ok = ok && all;
    } else {
        if (pair_increments(design.b, design.k) > kFullPairBudget) throw UsageError("full pair count exceeds budget; pass --sampled N");
        const auto rep = verify_two_design(design.blocks, design.v);
        body["pairs"] = pair_report_json(rep);
        ok = ok && rep.is_design && rep.lambda == design.lambda;
    }
    body["match"] = ok;
    out.json(std::move(body), nullptr);
    return ok ? kOk : kMismatch;
}

void add_field_options(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("-p", cfg.p, "odd prime p")->required();
    sub->add_option("-s", cfg.s, "half extension degree s, m = 2s")->required();
    sub->add_option("-l", cfg.l, "exponent l in [0, 2s-1], l != s")->required();
}

void add_common_options(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--threads", cfg.threads, "worker threads (0 = all cores); output does not depend on it");
    sub->add_option("-o,--output", cfg.output, "write the report here instead of stdout");
}

} // namespace

int main(int argc, char** argv) {
    RunConfig cfg;
    CLI::App app{"kdf: weight distributions and 2-designs of extended Kasami-type codes over GF(p^(2s))"};
    app.require_subcommand(1);
    app.footer(
        "Exit status: 0 success or match, 1 mismatch or failed verification, 2 usage error.\n"
        "KDF_BUDGET overrides the enumeration cap on q * p^(5s+1) symbol evaluations (default 2^35).\n"
        "Sampled pairs come from the 64-bit LCG x' = 6364136223846793005 x + 1442695040888963407 (mod 2^64)\n"
        "seeded with --seed; each draw is (x >> 32) mod v.");

    auto* inspect = app.add_subcommand("inspect", "field context and code parameters");
    auto* vdist = app.add_subcommand("value-dist", "exact distribution of S(a,b,c)");
    auto* wdist = app.add_subcommand("weight-dist", "weight distribution");
    auto* predict = app.add_subcommand("predict", "closed-form values, weights or design parameters");
    auto* compare = app.add_subcommand("compare", "computed vs closed form");
    auto* affine = app.add_subcommand("check-affine", "defining-set closure and random affine trials");
    auto* extract = app.add_subcommand("extract-design", "write the supports of one weight as a block file");
    auto* verify = app.add_subcommand("verify-design", "check a block file is a 2-design");

    for (auto* sub : {inspect, vdist, wdist, predict, compare, affine, extract}) add_field_options(sub, cfg);
    for (auto* sub : {inspect, vdist, wdist, predict, compare, affine, extract, verify}) add_common_options(sub, cfg);
    for (auto* sub : {vdist, wdist, predict}) sub->add_flag("--csv", cfg.csv, "CSV instead of JSON");

    wdist->add_option("--method", cfg.method, "enumerate | sums | closed-form")
        ->check(CLI::IsMember({"enumerate", "sums", "closed-form"}));
    predict->add_option("--what", cfg.what, "values | weights | designs")->required()->check(CLI::IsMember({"values", "weights", "designs"}));
    compare->add_option("--what", cfg.what, "values | weights | designs")->required()->check(CLI::IsMember({"values", "weights", "designs"}));
    compare->add_option("--method", cfg.method, "weights: enumerate | sums")->check(CLI::IsMember({"enumerate", "sums"}));
    compare->add_flag("--full", cfg.full, "designs: extract and pair-count every class within budget");
    compare->add_option("--sampled", cfg.sampled, "designs: sampled pairs per class, streamed over the code");
    compare->add_option("--seed", cfg.seed, "seed for sampled pairs");
    affine->add_option("--trials", cfg.trials, "random (codeword, g, t) trials");
    affine->add_option("--seed", cfg.seed, "trial seed");
    extract->add_option("--weight", cfg.weight, "codeword weight")->required();
    extract->add_option("--out", cfg.out_path, "block file path")->required();
    verify->add_option("--in", cfg.in_path, "block file path")->required();
    verify->add_option("--sampled", cfg.sampled, "check N sampled pairs instead of all pairs");
    verify->add_option("--seed", cfg.seed, "seed for sampled pairs");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "kdf: " << e.what() << "\n";
        return kUsage;
    }

    try {
        cfg.subcommand = app.get_subcommands().front()->get_name();
        if (cfg.threads == 0) cfg.threads = std::max(1U, std::thread::hardware_concurrency());
        cfg.budget = budget_from_env();
        if (cfg.subcommand != "verify-design") FieldParams::make(cfg.p, cfg.s, cfg.l);
        if (cfg.subcommand == "verify-design" && app.get_subcommands().front()->count("--seed") && cfg.sampled == 0)
            throw UsageError("--seed needs --sampled");

        Emitter out(cfg);
        if (cfg.subcommand == "inspect") return cmd_inspect(cfg, out);
        if (cfg.subcommand == "value-dist") return cmd_value_dist(cfg, out);
        if (cfg.subcommand == "weight-dist") return cmd_weight_dist(cfg, out);
        if (cfg.subcommand == "predict") return cmd_predict(cfg, out);
        if (cfg.subcommand == "compare") return cmd_compare(cfg, out);
        if (cfg.subcommand == "check-affine") return cmd_check_affine(cfg, out);
        if (cfg.subcommand == "extract-design") return cmd_extract_design(cfg, out);
        return cmd_verify_design(cfg, out);
    } catch (const ParameterError& e) {
        std::cerr << "kdf: " << e.what() << "\n";
        return kUsage;
    } catch (const UsageError& e) {
        std::cerr << "kdf: " << e.what() << "\n";
        return kUsage;
    } catch (const BudgetExceeded& e) {
        std::cerr << "kdf: " << e.what() << "\n";
        return kUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "kdf: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "kdf: " << e.what() << "\n";
        return kMismatch;
    }
}
