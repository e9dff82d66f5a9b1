// Copyright 2026 The tagasl Authors
// Licensed under the Apache License, Version 2.0

#pragma once

// Compare alternative tag layers by their mean Tagging Improvement Factor
// over a query workload. Higher is better.

#include <istream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tagasl/corpus.hpp"

namespace tagasl {

struct Workload {
    std::vector<TaggedQuery> queries;
};

/// JSONL of {"term": "...", "tag": "..."}. Throws Malformed with a line number.
Workload load_workload(std::istream& in);
Workload load_workload_file(const std::string& path);

enum class Weighting {
    Unweighted,
    /// Each query weighted by its number of term-bearing documents.
    TermFrequency,
};

struct QueryScore {
    TaggedQuery query;
    std::optional<double> tif;
    std::string reason;  // why tif is absent
    std::int64_t weight = 0;
};

struct LayerScore {
    std::string layer;
    double mean_tif = 0.0;
    std::vector<QueryScore> per_query;
    std::int64_t evaluated_count = 0;
    std::optional<std::string> error;  // set for layers that could not be scored
};

/// Throws UnknownLayer and EmptyEvaluation (every query excluded).
LayerScore score_layer(const Corpus& corpus, const std::string& layer, const Workload& workload,
                       Weighting weighting = Weighting::Unweighted);

/// Descending mean_tif, ties by name; layers that failed come last with `error` set.
std::vector<LayerScore> rank_layers(const Corpus& corpus, const std::vector<std::string>& layers,
                                    const Workload& workload,
                                    Weighting weighting = Weighting::Unweighted);

nlohmann::json to_json(const LayerScore& score);

}  // namespace tagasl
