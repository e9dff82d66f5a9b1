// Copyright 2026 The tagasl Authors
// Licensed under the Apache License, Version 2.0

#pragma once

// Tagged document collections with binary relevance judgments, and the
// estimation of model parameters (N, r, t, p, tau, pi) for one tagged query.
//
// Features are binary per document: a document "has the term" when any token
// matches the query term, and "has the tagged term" when at least one such
// token carries the query tag in the selected layer. Terms compare after NFC
// normalization and case folding; tags compare as exact strings.

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "tagasl/model.hpp"

namespace tagasl {

struct Token {
    std::string term;
    std::optional<std::string> tag;

    bool operator==(const Token&) const = default;
};

using TagLayer = std::vector<std::optional<std::string>>;

struct Document {
    std::string id;
    bool relevant = false;
    std::vector<Token> tokens;
    /// Alternative tag assignments, one slot per token.
    std::map<std::string, TagLayer> layers;

    bool operator==(const Document&) const = default;
};

struct TaggedQuery {
    std::string term;
    std::optional<std::string> tag;

    void validate() const;
};

/// Selects where token tags are read from: the inline token tags (nullopt)
/// or a named layer.
using LayerRef = std::optional<std::string>;

/// Name under which the inline token tags can be addressed as a layer.
inline constexpr std::string_view kInlineLayer = "@tokens";

/// NFC + Unicode case folding.
std::string normalize_term(std::string_view term);

struct DocMatch {
    bool term = false;
    bool tagged = false;
};

/// Immutable validated collection.
class Corpus {
public:
    /// Throws EmptyCorpus, DuplicateId, LayerMismatch or Malformed.
    explicit Corpus(std::vector<Document> docs);

    const std::vector<Document>& documents() const { return docs_; }
    std::size_t size() const { return docs_.size(); }
    std::size_t relevant_count() const;

    const std::vector<std::string>& layer_names() const { return layer_names_; }
    bool has_layer(std::string_view name) const;

    /// Resolves `name` to a LayerRef; kInlineLayer maps to the inline tags.
    /// Throws UnknownLayer.
    LayerRef resolve_layer(std::string_view name) const;

    /// Per-document binary features for the query, in document order.
    /// An untagged query leaves every `tagged` flag false.
    std::vector<DocMatch> match(const TaggedQuery& query, const LayerRef& layer = {}) const;

    /// Whether the normalized term of token `k` in document `d` equals `norm_term`.
    bool token_matches(std::size_t d, std::size_t k, const std::string& norm_term) const {
        return norm_terms_[d][k] == norm_term;
    }

private:
    std::vector<Document> docs_;
    std::vector<std::vector<std::string>> norm_terms_;
    std::vector<std::string> layer_names_;
};

enum class CorpusFormat { Jsonl, Tsv };

CorpusFormat parse_corpus_format(std::string_view name);

Corpus load_corpus(std::istream& in, CorpusFormat format);
Corpus load_corpus_file(const std::string& path, CorpusFormat format);
/// Picks the format from the extension (.tsv → Tsv, otherwise Jsonl).
CorpusFormat guess_corpus_format(const std::string& path);

/// TSV cannot carry layers; writing a layered corpus as TSV throws.
void write_corpus(std::ostream& out, const Corpus& corpus, CorpusFormat format);

struct EstimateCounts {
    std::int64_t docs = 0;
    std::int64_t relevant_docs = 0;
    std::int64_t term_docs = 0;
    std::int64_t relevant_term_docs = 0;
    std::int64_t tagged_term_docs = 0;
    std::int64_t relevant_tagged_term_docs = 0;
};

struct EstimatedParams {
    std::int64_t n_docs = 0;
    double rel_rate = 0.0;
    double t = 0.0;
    std::optional<double> p;
    std::optional<double> tau;
    std::optional<double> pi;
    EstimateCounts counts;
    std::vector<std::string> diagnostics;

    CollectionParams collection() const { return {n_docs, rel_rate}; }
};

EstimatedParams estimate_params(const Corpus& corpus, const TaggedQuery& query,
                                const LayerRef& layer = {});

/// Explicit values replacing estimates.
struct ParamOverrides {
    std::optional<double> rel_rate;
    std::optional<double> t;
    std::optional<double> p;
    std::optional<double> tau;
    std::optional<double> pi;
};

/// The estimate with overrides applied; throws InvalidArgument on out-of-range overrides.
EstimatedParams apply_overrides(EstimatedParams est, const ParamOverrides& overrides);

/// estimate_params + overrides + verdict. Throws MissingParameter when p, tau
/// or pi is unavailable.
TaggingVerdict predict_from_corpus(const Corpus& corpus, const TaggedQuery& query,
                                   const LayerRef& layer = {}, const ParamOverrides& overrides = {},
                                   double tol = 0.0);

}  // namespace tagasl
