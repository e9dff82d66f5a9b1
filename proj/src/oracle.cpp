// Copyright 2026 The tagasl Authors
// Licensed under the Apache License, Version 2.0

#include "tagasl/oracle.hpp"

#include <algorithm>
#include <numeric>
#include <thread>
#include <vector>

#include "tagasl/error.hpp"

namespace tagasl {

namespace {

std::vector<bool> feature(const Corpus& corpus, const TaggedQuery& query, bool use_tag,
                          const LayerRef& layer) {
    if (use_tag && !query.tag) {
        throw Error(ErrorCode::InvalidArgument, "tagged ranking needs a query tag");
    }
    const auto matches = corpus.match(query, layer);
    std::vector<bool> out(matches.size());
    for (std::size_t d = 0; d < matches.size(); ++d) {
        out[d] = use_tag ? matches[d].tagged : matches[d].term;
    }
    return out;
}

void require_relevant(const Corpus& corpus) {
    if (corpus.relevant_count() == 0) {
        throw Error(ErrorCode::NoRelevant, "corpus has no relevant documents");
    }
}

// Ranked order: matched documents first, each block in corpus order.
std::vector<std::size_t> ranking(const std::vector<bool>& matched) {
    std::vector<std::size_t> order(matched.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_partition(order.begin(), order.end(), [&](std::size_t d) { return matched[d]; });
    return order;
}

RetagResult retag(const Corpus& corpus, const TaggedQuery& query, const LayerRef& layer,
                  bool tag_relevant) {
    require_relevant(corpus);
    if (!query.tag) {
        throw Error(ErrorCode::InvalidArgument, "retagging needs a query tag");
    }
    if (layer && !corpus.has_layer(*layer)) {
        throw Error(ErrorCode::UnknownLayer, "unknown tag layer '" + *layer + "'");
    }
    const std::string norm = normalize_term(query.term);
    std::vector<Document> docs = corpus.documents();
    for (std::size_t d = 0; d < docs.size(); ++d) {
        Document& doc = docs[d];
        const bool target = doc.relevant == tag_relevant;
        for (std::size_t k = 0; k < doc.tokens.size(); ++k) {
            if (!corpus.token_matches(d, k, norm)) {
                continue;
            }
            auto& slot = layer ? doc.layers.at(*layer)[k] : doc.tokens[k].tag;
            if (target) {
                slot = query.tag;
            } else if (slot == query.tag) {
                slot.reset();
            }
        }
    }
    Corpus out(std::move(docs));
    auto outcome = block_asl(out, query, true, layer);
    return {std::move(out), outcome};
}

}  // namespace

RankingOutcome block_asl(const Corpus& corpus, const TaggedQuery& query, bool use_tag,
                         const LayerRef& layer) {
    require_relevant(corpus);
    const auto matched = feature(corpus, query, use_tag, layer);
    const auto order = ranking(matched);
    const auto& docs = corpus.documents();

    RankingOutcome out;
    out.matched_block = std::count(matched.begin(), matched.end(), true);
    out.unmatched_block = static_cast<std::int64_t>(matched.size()) - out.matched_block;

    // Block [first, last] (1-based) has midpoint (first + last) / 2; sum the
    // doubled midpoints in integers and divide once.
    const std::int64_t n = static_cast<std::int64_t>(order.size());
    std::int64_t doubled_sum = 0;
    std::int64_t relevant = 0;
    for (std::int64_t pos = 1; pos <= n; ++pos) {
        const std::size_t d = order[static_cast<std::size_t>(pos - 1)];
        if (!docs[d].relevant) {
            continue;
        }
        ++relevant;
        if (matched[d]) {
            ++out.relevant_matched;
            doubled_sum += 1 + out.matched_block;
        } else {
            ++out.relevant_unmatched;
            doubled_sum += (out.matched_block + 1) + n;
        }
    }
    out.asl = static_cast<double>(doubled_sum) / (2.0 * static_cast<double>(relevant));
    return out;
}

double monte_carlo_asl(const Corpus& corpus, const TaggedQuery& query, bool use_tag,
                       std::int64_t trials, std::uint64_t seed, const LayerRef& layer,
                       unsigned threads) {
    require_relevant(corpus);
    if (trials < 1) {
        throw Error(ErrorCode::InvalidArgument, "trials must be >= 1");
    }
    const auto matched = feature(corpus, query, use_tag, layer);
    const auto order = ranking(matched);
    const auto& docs = corpus.documents();
    const auto m = static_cast<std::size_t>(std::count(matched.begin(), matched.end(), true));
    const std::size_t n = order.size();
    const double relevant = static_cast<double>(corpus.relevant_count());

    std::vector<double> per_trial(static_cast<std::size_t>(trials));
    auto run = [&](std::size_t begin, std::size_t end) {
        std::vector<std::int64_t> positions(n);
        for (std::size_t trial = begin; trial < end; ++trial) {
            SplitMix64 rng(SplitMix64(seed).next() ^ (0xD1B54A32D192ED03ULL * (trial + 1)));
            std::iota(positions.begin(), positions.end(), 1);
            // Fisher-Yates within each block.
            auto shuffle = [&](std::size_t lo, std::size_t hi) {
                for (std::size_t i = hi; i > lo + 1; --i) {
                    const std::size_t j = lo + static_cast<std::size_t>(rng.below(i - lo));
                    std::swap(positions[i - 1], positions[j]);
                }
            };
            shuffle(0, m);
            shuffle(m, n);
            std::int64_t sum = 0;
            for (std::size_t r = 0; r < n; ++r) {
                if (docs[order[r]].relevant) {
                    sum += positions[r];
                }
            }
            per_trial[trial] = static_cast<double>(sum) / relevant;
        }
    };

    const std::size_t total = per_trial.size();
    const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(threads, total));
    if (workers == 1) {
        run(0, total);
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (total + workers - 1) / workers;
        for (std::size_t w = 0; w < workers; ++w) {
            const std::size_t begin = w * chunk;
            const std::size_t end = std::min(total, begin + chunk);
            if (begin < end) {
                pool.emplace_back(run, begin, end);
            }
        }
        for (auto& t : pool) {
            t.join();
        }
    }
    // Summed in trial order so the result does not depend on the split.
    double acc = 0.0;
    for (double v : per_trial) {
        acc += v;
    }
    return acc / static_cast<double>(trials);
}

RetagResult best_case_retag(const Corpus& corpus, const TaggedQuery& query, const LayerRef& layer) {
    return retag(corpus, query, layer, true);
}

RetagResult worst_case_retag(const Corpus& corpus, const TaggedQuery& query, const LayerRef& layer) {
    return retag(corpus, query, layer, false);
}

Corpus with_layer_copy(const Corpus& corpus, const std::string& name, const LayerRef& source) {
    if (corpus.has_layer(name)) {
        throw Error(ErrorCode::InvalidArgument, "layer '" + name + "' already exists");
    }
    if (source && !corpus.has_layer(*source)) {
        throw Error(ErrorCode::UnknownLayer, "unknown tag layer '" + *source + "'");
    }
    std::vector<Document> docs = corpus.documents();
    for (auto& doc : docs) {
        TagLayer tags;
        if (source) {
            tags = doc.layers.at(*source);
        } else {
            for (const auto& tok : doc.tokens) {
                tags.push_back(tok.tag);
            }
        }
        doc.layers.emplace(name, std::move(tags));
    }
    return Corpus(std::move(docs));
}

}  // namespace tagasl
