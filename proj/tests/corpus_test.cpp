// Copyright 2026 The tagasl Authors
// Licensed under the Apache License, Version 2.0

#include "tagasl/corpus.hpp"

#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "tagasl/error.hpp"
#include "test_util.hpp"

namespace tagasl {
namespace {

using testing::kGirlSubj;
using testing::fixture;

constexpr double kTol = kExactTolerance;

ErrorCode load_error(const std::string& text, CorpusFormat fmt) {
    std::istringstream in(text);
    try {
        load_corpus(in, fmt);
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "expected an error";
    return ErrorCode::Internal;
}

std::string load_message(const std::string& text, CorpusFormat fmt) {
    std::istringstream in(text);
    try {
        load_corpus(in, fmt);
    } catch (const Error& e) {
        return e.what();
    }
    return {};
}

TEST(LoadCorpus, FixtureBothFormatsAgree) {
    const Corpus jsonl = fixture();
    const Corpus tsv = load_corpus_file(testing::kDataDir + "/fixture.tsv", CorpusFormat::Tsv);
    EXPECT_EQ(jsonl.size(), 10u);
    EXPECT_EQ(jsonl.relevant_count(), 5u);
    EXPECT_EQ(jsonl.documents(), tsv.documents());
}

TEST(LoadCorpus, EmptyStream) {
    EXPECT_EQ(load_error("", CorpusFormat::Jsonl), ErrorCode::EmptyCorpus);
    EXPECT_EQ(load_error("\n  \n", CorpusFormat::Tsv), ErrorCode::EmptyCorpus);
}

TEST(LoadCorpus, TsvTokens) {
    std::istringstream in("d1\t1\tgirl/SUBJ bites/VERB dog/OBJ\n");
    const Corpus c = load_corpus(in, CorpusFormat::Tsv);
    const auto& doc = c.documents().at(0);
    EXPECT_EQ(doc.id, "d1");
    EXPECT_TRUE(doc.relevant);
    ASSERT_EQ(doc.tokens.size(), 3u);
    EXPECT_EQ(doc.tokens[0], (Token{"girl", "SUBJ"}));
    EXPECT_EQ(doc.tokens[2], (Token{"dog", "OBJ"}));
}

TEST(LoadCorpus, TsvEscapedSlashAndUntagged) {
    std::istringstream in("d1\t0\tand\\/or/CONJ plain x\\\\y/Z\n");
    const Corpus c = load_corpus(in, CorpusFormat::Tsv);
    const auto& t = c.documents()[0].tokens;
    ASSERT_EQ(t.size(), 3u);
    EXPECT_EQ(t[0], (Token{"and/or", "CONJ"}));
    EXPECT_EQ(t[1], (Token{"plain", std::nullopt}));
    EXPECT_EQ(t[2], (Token{"x\\y", "Z"}));
}

TEST(LoadCorpus, MalformedLinesNameTheLine) {
    EXPECT_EQ(load_error("d1\t1\ta\nd2\t7\tb\n", CorpusFormat::Tsv), ErrorCode::Malformed);
    EXPECT_NE(load_message("d1\t1\ta\nd2\t7\tb\n", CorpusFormat::Tsv).find("line 2"), std::string::npos);
    EXPECT_EQ(load_error("d1\n", CorpusFormat::Tsv), ErrorCode::Malformed);
    EXPECT_EQ(load_error("d1\t1\tgirl/\n", CorpusFormat::Tsv), ErrorCode::Malformed);
    EXPECT_EQ(load_error("{\"id\": \"a\", \"relevant\": true, \"tokens\": []}\n{oops\n",
                         CorpusFormat::Jsonl),
              ErrorCode::Malformed);
    EXPECT_NE(load_message("{\"id\": \"a\", \"relevant\": true, \"tokens\": []}\n{oops\n",
                           CorpusFormat::Jsonl)
                  .find("line 2"),
              std::string::npos);
    EXPECT_EQ(load_error("{\"id\": \"a\", \"relevant\": 1, \"tokens\": []}\n", CorpusFormat::Jsonl),
              ErrorCode::Malformed);
    EXPECT_EQ(load_error("{\"id\": \"a\", \"relevant\": true, \"tokens\": [{\"term\": \"\"}]}\n",
                         CorpusFormat::Jsonl),
              ErrorCode::Malformed);
}

TEST(LoadCorpus, DuplicateIds) {
    EXPECT_EQ(load_error("d1\t1\ta\nd1\t0\tb\n", CorpusFormat::Tsv), ErrorCode::DuplicateId);
}

TEST(LoadCorpus, LayerLengthMismatch) {
    const std::string text =
        "{\"id\": \"a\", \"relevant\": true, \"tokens\": [{\"term\": \"x\", \"tag\": null}],"
        " \"layers\": {\"L\": [\"N\", \"V\"]}}\n";
    EXPECT_EQ(load_error(text, CorpusFormat::Jsonl), ErrorCode::LayerMismatch);
}

TEST(LoadCorpus, LayerSetsMustAgree) {
    const std::string text =
        "{\"id\": \"a\", \"relevant\": true, \"tokens\": [{\"term\": \"x\"}], \"layers\": {\"L\": [\"N\"]}}\n"
        "{\"id\": \"b\", \"relevant\": false, \"tokens\": [{\"term\": \"x\"}]}\n";
    EXPECT_EQ(load_error(text, CorpusFormat::Jsonl), ErrorCode::LayerMismatch);
}

TEST(Normalize, CaseFoldAndNfc) {
    EXPECT_EQ(normalize_term("GiRL"), "girl");
    // "é" precomposed vs "e" + combining acute.
    EXPECT_EQ(normalize_term("caf\xC3\xA9"), normalize_term("CAFE\xCC\x81"));
    EXPECT_EQ(normalize_term("Stra\xC3\x9F" "e"), "strasse");
}

TEST(Match, TagComparisonIsExact) {
    std::istringstream in("d1\t1\tGirl/SUBJ\nd2\t0\tgirl/subj\n");
    const Corpus c = load_corpus(in, CorpusFormat::Tsv);
    const auto m = c.match(kGirlSubj);
    EXPECT_TRUE(m[0].term && m[0].tagged);
    EXPECT_TRUE(m[1].term);
    EXPECT_FALSE(m[1].tagged);
}

TEST(Estimate, Fixture) {
    const auto est = estimate_params(fixture(), kGirlSubj);
    EXPECT_EQ(est.n_docs, 10);
    EXPECT_NEAR(est.rel_rate, 0.5, kTol);
    EXPECT_NEAR(est.t, 0.5, kTol);
    EXPECT_NEAR(*est.p, 0.6, kTol);
    EXPECT_NEAR(*est.pi, 2.0 / 3.0, kTol);
    EXPECT_NEAR(*est.tau, 0.6, kTol);
    EXPECT_EQ(est.counts.term_docs, 5);
    EXPECT_EQ(est.counts.relevant_term_docs, 3);
    EXPECT_EQ(est.counts.tagged_term_docs, 3);
    EXPECT_EQ(est.counts.relevant_tagged_term_docs, 2);
    ASSERT_EQ(est.diagnostics.size(), 1u);
    EXPECT_NE(est.diagnostics[0].find("1/2"), std::string::npos);
}

TEST(Estimate, TermOnlyInRelevantDocs) {
    const Corpus c = testing::make_corpus(
        {{true, true, false, false}, {true, true, true, false}, {false, false, false, true}, {false, false, false, false}});
    const auto est = estimate_params(c, kGirlSubj);
    EXPECT_EQ(*est.p, 1.0);
    EXPECT_EQ(est.t, est.rel_rate);
}

TEST(Estimate, SingleRelevantDoc) {
    const Corpus c = testing::make_corpus({{true, true, true, false}});
    const auto est = estimate_params(c, kGirlSubj);
    EXPECT_EQ(est.t, 1.0);
    EXPECT_EQ(*est.p, 1.0);
    EXPECT_EQ(*est.tau, 1.0);
    EXPECT_EQ(*est.pi, 1.0);
    EXPECT_TRUE(est.diagnostics.empty());
}

TEST(Estimate, AbsentParameters) {
    const Corpus no_rel = testing::make_corpus({{false, true, true, false}, {false, false, false, false}});
    const auto a = estimate_params(no_rel, kGirlSubj);
    EXPECT_FALSE(a.p);
    EXPECT_FALSE(a.pi);
    EXPECT_TRUE(a.tau);
    EXPECT_FALSE(a.diagnostics.empty());

    const auto missing = estimate_params(fixture(), {"zebra", "SUBJ"});
    EXPECT_EQ(missing.t, 0.0);
    EXPECT_FALSE(missing.tau);
    EXPECT_FALSE(missing.pi);

    const auto untagged = estimate_params(fixture(), {"girl", std::nullopt});
    EXPECT_FALSE(untagged.tau);
    EXPECT_FALSE(untagged.pi);
    EXPECT_TRUE(untagged.p);
}

TEST(Estimate, CountConsistencyOnRandomCorpora) {
    std::mt19937_64 rng(21);
    for (int rep = 0; rep < 300; ++rep) {
        const auto bits = testing::random_bits(rng, 1 + rng() % 40);
        const auto est = estimate_params(testing::make_corpus(bits), kGirlSubj);
        const auto& c = est.counts;
        EXPECT_LE(c.relevant_term_docs, c.term_docs);
        EXPECT_LE(c.tagged_term_docs, c.term_docs);
        EXPECT_LE(c.relevant_tagged_term_docs, c.tagged_term_docs);
        EXPECT_LE(c.relevant_tagged_term_docs, c.relevant_term_docs);
        EXPECT_LE(c.term_docs, c.docs);
        EXPECT_EQ(est.t, static_cast<double>(c.term_docs) / static_cast<double>(c.docs));
    }
}

TEST(RoundTrip, SerializeAndReloadKeepsEstimates) {
    std::mt19937_64 rng(22);
    for (int rep = 0; rep < 50; ++rep) {
        const Corpus c = testing::make_corpus(testing::random_bits(rng, 1 + rng() % 20));
        for (auto fmt : {CorpusFormat::Jsonl, CorpusFormat::Tsv}) {
            std::stringstream buf;
            write_corpus(buf, c, fmt);
            const Corpus back = load_corpus(buf, fmt);
            EXPECT_EQ(back.documents(), c.documents());
            const auto a = estimate_params(c, kGirlSubj);
            const auto b = estimate_params(back, kGirlSubj);
            EXPECT_EQ(a.t, b.t);
            EXPECT_EQ(a.p, b.p);
            EXPECT_EQ(a.tau, b.tau);
            EXPECT_EQ(a.pi, b.pi);
        }
    }
}

TEST(RoundTrip, TsvRejectsLayers) {
    std::vector<Document> docs{{"a", true, {{"x", "N"}}, {{"L", {std::string("V")}}}}};
    const Corpus c(std::move(docs));
    std::ostringstream os;
    EXPECT_THROW(write_corpus(os, c, CorpusFormat::Tsv), Error);
    EXPECT_NO_THROW(write_corpus(os, c, CorpusFormat::Jsonl));
}

TEST(Layers, EstimateAgainstNamedLayer) {
    const std::string text =
        "{\"id\": \"a\", \"relevant\": true, \"tokens\": [{\"term\": \"girl\", \"tag\": \"SUBJ\"}],"
        " \"layers\": {\"coarse\": [\"NOUN\"]}}\n"
        "{\"id\": \"b\", \"relevant\": false, \"tokens\": [{\"term\": \"girl\", \"tag\": \"OBJ\"}],"
        " \"layers\": {\"coarse\": [null]}}\n";
    std::istringstream in(text);
    const Corpus c = load_corpus(in, CorpusFormat::Jsonl);
    EXPECT_EQ(c.layer_names(), std::vector<std::string>{"coarse"});
    const auto est = estimate_params(c, {"girl", "NOUN"}, std::string("coarse"));
    EXPECT_EQ(*est.tau, 0.5);
    EXPECT_EQ(*est.pi, 1.0);
    EXPECT_EQ(*estimate_params(c, {"girl", "NOUN"}).tau, 0.0);
    EXPECT_THROW(estimate_params(c, {"girl", "NOUN"}, std::string("fine")), Error);
    EXPECT_FALSE(c.resolve_layer(kInlineLayer).has_value());
}

TEST(Predict, FixtureDirectEstimatesAreNeutral) {
    const auto v = predict_from_corpus(fixture(), kGirlSubj);
    EXPECT_NEAR(v.asl_untagged, 5.0, kTol);
    EXPECT_NEAR(v.asl_tagged, 5.0, kTol);
    EXPECT_NEAR(v.tif, 0.0, kTol);
}

TEST(Predict, FixtureWithTauOverride) {
    ParamOverrides o;
    o.tau = 0.5;
    const auto v = predict_from_corpus(fixture(), kGirlSubj, {}, o);
    EXPECT_NEAR(v.asl_tagged, 4.75, kTol);
    EXPECT_EQ(v.decision, Decision::Improves);
    o.tau = 1.5;
    EXPECT_THROW(predict_from_corpus(fixture(), kGirlSubj, {}, o), Error);
}

TEST(Predict, ProportionalTagsAreNeutral) {
    // Term in every document, tagged in half of relevant and half of non-relevant.
    const Corpus c = testing::make_corpus({{true, true, true, false},
                                           {true, true, false, false},
                                           {false, true, true, false},
                                           {false, true, false, false}});
    const auto v = predict_from_corpus(c, kGirlSubj);
    EXPECT_EQ(v.decision, Decision::Neutral);
}

TEST(Predict, UntaggedQueryIsMissingParameters) {
    try {
        predict_from_corpus(fixture(), {"girl", std::nullopt});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::MissingParameter);
    }
}

}  // namespace
}  // namespace tagasl
