// Copyright 2026 The tagasl Authors
// Licensed under the Apache License, Version 2.0

#pragma once

// Exact discrete ranking on a concrete corpus. Documents with the binary
// feature form the first tie block, the rest the second; each document's
// position is the midpoint of its block. These outcomes are the ground truth
// the closed-form model is checked against.

#include <cstdint>

#include "tagasl/corpus.hpp"

namespace tagasl {

struct RankingOutcome {
    double asl = 0.0;
    std::int64_t matched_block = 0;
    std::int64_t unmatched_block = 0;
    std::int64_t relevant_matched = 0;
    std::int64_t relevant_unmatched = 0;
};

/// use_tag selects the feature "term present with the query tag" instead of
/// "term present". Throws NoRelevant.
RankingOutcome block_asl(const Corpus& corpus, const TaggedQuery& query, bool use_tag,
                         const LayerRef& layer = {});

/// Mean, over `trials` uniformly random orderings inside each block, of the
/// mean position of the relevant documents. Trial i draws from a generator
/// seeded by (seed, i), so any thread count gives the same result.
double monte_carlo_asl(const Corpus& corpus, const TaggedQuery& query, bool use_tag,
                       std::int64_t trials, std::uint64_t seed, const LayerRef& layer = {},
                       unsigned threads = 1);

struct RetagResult {
    Corpus corpus;
    RankingOutcome outcome;
};

/// Tags every occurrence of the query term in relevant documents with the
/// query tag and strips the query tag from it elsewhere.
RetagResult best_case_retag(const Corpus& corpus, const TaggedQuery& query,
                            const LayerRef& layer = {});

/// Mirror image: the query tag lands only in non-relevant documents.
RetagResult worst_case_retag(const Corpus& corpus, const TaggedQuery& query,
                             const LayerRef& layer = {});

/// Copy of `corpus` with an extra layer `name` whose slots come from the
/// inline token tags (or from `source` when given).
Corpus with_layer_copy(const Corpus& corpus, const std::string& name, const LayerRef& source = {});

/// SplitMix64; fully specified so seeded runs reproduce across platforms.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform integer in [0, bound), bound > 0, by rejection.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t x;
        do {
            x = next();
        } while (x >= limit);
        return x % bound;
    }

private:
    std::uint64_t state_;
};

}  // namespace tagasl
