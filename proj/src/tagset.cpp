// Copyright 2026 The tagasl Authors
// Licensed under the Apache License, Version 2.0

#include "tagasl/tagset.hpp"

#include <algorithm>
#include <fstream>

#include "tagasl/error.hpp"
#include "tagasl/model.hpp"

namespace tagasl {

Workload load_workload(std::istream& in) {
    Workload w;
    std::string text;
    std::size_t line = 0;
    while (std::getline(in, text)) {
        ++line;
        if (text.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        const auto where = "workload line " + std::to_string(line) + ": ";
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(text);
        } catch (const nlohmann::json::parse_error& e) {
            throw Error(ErrorCode::Malformed, where + "invalid JSON: " + e.what());
        }
        if (!j.is_object() || !j.contains("term") || !j["term"].is_string() ||
            !j.contains("tag") || !j["tag"].is_string()) {
            throw Error(ErrorCode::Malformed, where + "expected {\"term\": string, \"tag\": string}");
        }
        TaggedQuery q{j["term"].get<std::string>(), j["tag"].get<std::string>()};
        try {
            q.validate();
        } catch (const Error& e) {
            throw Error(ErrorCode::Malformed, where + e.what());
        }
        w.queries.push_back(std::move(q));
    }
    if (w.queries.empty()) {
        throw Error(ErrorCode::Malformed, "workload has no queries");
    }
    return w;
}

Workload load_workload_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::InvalidArgument, "cannot open workload file '" + path + "'");
    }
    return load_workload(in);
}

LayerScore score_layer(const Corpus& corpus, const std::string& layer, const Workload& workload,
                       Weighting weighting) {
    const LayerRef ref = corpus.resolve_layer(layer);
    if (workload.queries.empty()) {
        throw Error(ErrorCode::EmptyEvaluation, "workload has no queries");
    }
    LayerScore score;
    score.layer = layer;
    double weighted = 0.0;
    double total_weight = 0.0;
    for (const auto& q : workload.queries) {
        QueryScore qs{q, std::nullopt, {}, 0};
        const auto est = estimate_params(corpus, q, ref);
        qs.weight = est.counts.term_docs;
        if (est.counts.term_docs == 0) {
            qs.reason = "term does not occur in the corpus";
        } else if (!est.p) {
            qs.reason = "no relevant documents";
        } else if (!est.tau || !est.pi) {
            qs.reason = "tau/pi undefined (no relevant document contains the term)";
        } else {
            qs.tif = tif({est.t, *est.p}, {*est.tau, *est.pi});
            const double w = weighting == Weighting::Unweighted ? 1.0 : static_cast<double>(qs.weight);
            weighted += w * *qs.tif;
            total_weight += w;
            ++score.evaluated_count;
        }
        score.per_query.push_back(std::move(qs));
    }
    if (score.evaluated_count == 0) {
        throw Error(ErrorCode::EmptyEvaluation,
                    "layer '" + layer + "': every query was excluded from the evaluation");
    }
    score.mean_tif = weighted / total_weight;
    return score;
}

std::vector<LayerScore> rank_layers(const Corpus& corpus, const std::vector<std::string>& layers,
                                    const Workload& workload, Weighting weighting) {
    if (layers.empty()) {
        throw Error(ErrorCode::InvalidArgument, "at least one layer is required");
    }
    std::vector<LayerScore> scored;
    std::vector<LayerScore> failed;
    for (const auto& name : layers) {
        try {
            scored.push_back(score_layer(corpus, name, workload, weighting));
        } catch (const Error& e) {
            LayerScore s;
            s.layer = name;
            s.error = e.what();
            failed.push_back(std::move(s));
        }
    }
    std::stable_sort(scored.begin(), scored.end(), [](const LayerScore& a, const LayerScore& b) {
        if (a.mean_tif != b.mean_tif) {
            return a.mean_tif > b.mean_tif;
        }
        return a.layer < b.layer;
    });
    std::stable_sort(failed.begin(), failed.end(),
                     [](const LayerScore& a, const LayerScore& b) { return a.layer < b.layer; });
    scored.insert(scored.end(), std::make_move_iterator(failed.begin()),
                  std::make_move_iterator(failed.end()));
    return scored;
}

nlohmann::json to_json(const LayerScore& score) {
    nlohmann::json per = nlohmann::json::array();
    for (const auto& q : score.per_query) {
        nlohmann::json row = {{"term", q.query.term},
                              {"tag", q.query.tag ? nlohmann::json(*q.query.tag) : nlohmann::json()},
                              {"tif", q.tif ? nlohmann::json(*q.tif) : nlohmann::json()}};
        if (!q.tif) {
            row["reason"] = q.reason;
        }
        per.push_back(std::move(row));
    }
    nlohmann::json j = {{"layer", score.layer},
                        {"mean_tif", score.error ? nlohmann::json() : nlohmann::json(score.mean_tif)},
                        {"evaluated_count", score.evaluated_count},
                        {"per_query", per}};
    if (score.error) {
        j["error"] = *score.error;
    }
    return j;
}

}  // namespace tagasl
