// Copyright 2026 The tagasl Authors
// Licensed under the Apache License, Version 2.0

#include "tagasl/corpus.hpp"

#include <unicode/normalizer2.h>
#include <unicode/unistr.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "tagasl/error.hpp"
#include "tagasl/format.hpp"

namespace tagasl {

namespace {

bool is_ascii(std::string_view s) {
    return std::all_of(s.begin(), s.end(), [](char c) { return static_cast<unsigned char>(c) < 0x80; });
}

[[noreturn]] void malformed(std::size_t line, const std::string& why) {
    throw Error(ErrorCode::Malformed, "line " + std::to_string(line) + ": " + why);
}

std::string ratio_text(std::int64_t num, std::int64_t den) {
    return std::to_string(num) + "/" + std::to_string(den);
}

double ratio(std::int64_t num, std::int64_t den) {
    return static_cast<double>(num) / static_cast<double>(den);
}

// ---- JSONL ----

std::optional<std::string> optional_tag(const nlohmann::json& v, std::size_t line) {
    if (v.is_null()) {
        return std::nullopt;
    }
    if (!v.is_string()) {
        malformed(line, "tag must be a string or null");
    }
    return v.get<std::string>();
}

Document parse_jsonl_line(const std::string& text, std::size_t line) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        malformed(line, std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) {
        malformed(line, "expected a JSON object");
    }
    Document doc;
    if (!j.contains("id") || !j["id"].is_string()) {
        malformed(line, "missing string field 'id'");
    }
    doc.id = j["id"].get<std::string>();
    if (!j.contains("relevant") || !j["relevant"].is_boolean()) {
        malformed(line, "missing boolean field 'relevant'");
    }
    doc.relevant = j["relevant"].get<bool>();
    if (!j.contains("tokens") || !j["tokens"].is_array()) {
        malformed(line, "missing array field 'tokens'");
    }
    for (const auto& tok : j["tokens"]) {
        if (!tok.is_object() || !tok.contains("term") || !tok["term"].is_string()) {
            malformed(line, "each token needs a string 'term'");
        }
        Token t{tok["term"].get<std::string>(), std::nullopt};
        if (tok.contains("tag")) {
            t.tag = optional_tag(tok["tag"], line);
        }
        doc.tokens.push_back(std::move(t));
    }
    if (j.contains("layers") && !j["layers"].is_null()) {
        if (!j["layers"].is_object()) {
            malformed(line, "'layers' must be an object");
        }
        for (const auto& [name, tags] : j["layers"].items()) {
            if (!tags.is_array()) {
                malformed(line, "layer '" + name + "' must be an array");
            }
            TagLayer layer;
            for (const auto& v : tags) {
                layer.push_back(optional_tag(v, line));
            }
            doc.layers.emplace(name, std::move(layer));
        }
    }
    return doc;
}

nlohmann::json tag_json(const std::optional<std::string>& tag) {
    return tag ? nlohmann::json(*tag) : nlohmann::json(nullptr);
}

// ---- TSV ----

Token parse_tsv_token(std::string_view word, std::size_t line) {
    Token tok;
    std::string* target = &tok.term;
    std::string tag;
    bool split = false;
    for (std::size_t i = 0; i < word.size(); ++i) {
        const char c = word[i];
        if (c == '\\') {
            if (i + 1 == word.size()) {
                malformed(line, "dangling escape in token '" + std::string(word) + "'");
            }
            target->push_back(word[++i]);
        } else if (c == '/' && !split) {
            split = true;
            target = &tag;
        } else {
            target->push_back(c);
        }
    }
    if (tok.term.empty()) {
        malformed(line, "empty term in token '" + std::string(word) + "'");
    }
    if (split) {
        if (tag.empty()) {
            malformed(line, "empty tag in token '" + std::string(word) + "'");
        }
        tok.tag = std::move(tag);
    }
    return tok;
}

Document parse_tsv_line(const std::string& text, std::size_t line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const auto tab = text.find('\t', start);
        fields.push_back(text.substr(start, tab == std::string::npos ? std::string::npos : tab - start));
        if (tab == std::string::npos) {
            break;
        }
        start = tab + 1;
    }
    if (fields.size() < 2 || fields.size() > 3) {
        malformed(line, "expected 'id<TAB>rel<TAB>tokens'");
    }
    Document doc;
    doc.id = fields[0];
    if (fields[1] == "1") {
        doc.relevant = true;
    } else if (fields[1] != "0") {
        malformed(line, "relevance must be 0 or 1, got '" + fields[1] + "'");
    }
    if (fields.size() == 3) {
        std::istringstream words(fields[2]);
        std::string w;
        while (words >> w) {
            doc.tokens.push_back(parse_tsv_token(w, line));
        }
    }
    return doc;
}

std::string escape_tsv(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '/' || c == '\\') {
            out.push_back('\\');
        }
        out.push_back(c);
    }
    return out;
}

bool tsv_safe(const std::string& s) {
    return s.find_first_of(" \t\n\r") == std::string::npos;
}

}  // namespace

void TaggedQuery::validate() const {
    if (term.empty()) {
        throw Error(ErrorCode::InvalidArgument, "query term must be non-empty");
    }
    if (tag && tag->empty()) {
        throw Error(ErrorCode::InvalidArgument, "query tag, when given, must be non-empty");
    }
}

std::string normalize_term(std::string_view term) {
    if (is_ascii(term)) {
        std::string out(term);
        std::transform(out.begin(), out.end(), out.begin(), [](char c) {
            return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
        });
        return out;
    }
    icu::UnicodeString text =
        icu::UnicodeString::fromUTF8(icu::StringPiece(term.data(), static_cast<int32_t>(term.size())));
    text.foldCase();
    UErrorCode status = U_ZERO_ERROR;
    const icu::Normalizer2* nfc = icu::Normalizer2::getNFCInstance(status);
    if (U_FAILURE(status)) {
        throw Error(ErrorCode::Internal, "ICU NFC normalizer unavailable");
    }
    icu::UnicodeString normalized = nfc->normalize(text, status);
    if (U_FAILURE(status)) {
        throw Error(ErrorCode::Internal, "ICU normalization failed");
    }
    std::string out;
    normalized.toUTF8String(out);
    return out;
}

Corpus::Corpus(std::vector<Document> docs) : docs_(std::move(docs)) {
    if (docs_.empty()) {
        throw Error(ErrorCode::EmptyCorpus, "corpus has no documents");
    }
    std::set<std::string_view> ids;
    for (const auto& [name, layer] : docs_.front().layers) {
        layer_names_.push_back(name);
    }
    norm_terms_.reserve(docs_.size());
    for (const auto& doc : docs_) {
        if (!ids.insert(doc.id).second) {
            throw Error(ErrorCode::DuplicateId, "duplicate document id '" + doc.id + "'");
        }
        if (doc.layers.size() != layer_names_.size()) {
            throw Error(ErrorCode::LayerMismatch,
                        "document '" + doc.id + "' does not carry the same tag layers as the first document");
        }
        std::vector<std::string> norms;
        norms.reserve(doc.tokens.size());
        for (const auto& tok : doc.tokens) {
            if (tok.term.empty()) {
                throw Error(ErrorCode::Malformed, "document '" + doc.id + "' has an empty term");
            }
            if (tok.tag && tok.tag->empty()) {
                throw Error(ErrorCode::Malformed, "document '" + doc.id + "' has an empty tag");
            }
            norms.push_back(normalize_term(tok.term));
        }
        norm_terms_.push_back(std::move(norms));
        for (const auto& name : layer_names_) {
            auto it = doc.layers.find(name);
            if (it == doc.layers.end()) {
                throw Error(ErrorCode::LayerMismatch,
                            "document '" + doc.id + "' lacks tag layer '" + name + "'");
            }
            if (it->second.size() != doc.tokens.size()) {
                throw Error(ErrorCode::LayerMismatch, "document '" + doc.id + "': layer '" + name +
                                                          "' has " + std::to_string(it->second.size()) +
                                                          " slots for " +
                                                          std::to_string(doc.tokens.size()) + " tokens");
            }
            for (const auto& slot : it->second) {
                if (slot && slot->empty()) {
                    throw Error(ErrorCode::Malformed, "document '" + doc.id + "' has an empty tag");
                }
            }
        }
    }
}

std::size_t Corpus::relevant_count() const {
    return static_cast<std::size_t>(
        std::count_if(docs_.begin(), docs_.end(), [](const Document& d) { return d.relevant; }));
}

bool Corpus::has_layer(std::string_view name) const {
    return std::find(layer_names_.begin(), layer_names_.end(), name) != layer_names_.end();
}

LayerRef Corpus::resolve_layer(std::string_view name) const {
    if (has_layer(name)) {
        return std::string(name);
    }
    if (name == kInlineLayer) {
        return std::nullopt;
    }
    throw Error(ErrorCode::UnknownLayer, "unknown tag layer '" + std::string(name) + "'");
}

std::vector<DocMatch> Corpus::match(const TaggedQuery& query, const LayerRef& layer) const {
    query.validate();
    if (layer && !has_layer(*layer)) {
        throw Error(ErrorCode::UnknownLayer, "unknown tag layer '" + *layer + "'");
    }
    const std::string norm = normalize_term(query.term);
    std::vector<DocMatch> out(docs_.size());
    for (std::size_t d = 0; d < docs_.size(); ++d) {
        const Document& doc = docs_[d];
        const TagLayer* tags = layer ? &doc.layers.at(*layer) : nullptr;
        for (std::size_t k = 0; k < doc.tokens.size(); ++k) {
            if (norm_terms_[d][k] != norm) {
                continue;
            }
            out[d].term = true;
            if (query.tag) {
                const auto& tag = tags ? (*tags)[k] : doc.tokens[k].tag;
                if (tag && *tag == *query.tag) {
                    out[d].tagged = true;
                }
            }
        }
    }
    return out;
}

CorpusFormat parse_corpus_format(std::string_view name) {
    if (name == "jsonl") {
        return CorpusFormat::Jsonl;
    }
    if (name == "tsv") {
        return CorpusFormat::Tsv;
    }
    throw Error(ErrorCode::InvalidArgument, "unknown corpus format '" + std::string(name) + "'");
}

CorpusFormat guess_corpus_format(const std::string& path) {
    const auto dot = path.rfind('.');
    if (dot != std::string::npos && path.substr(dot) == ".tsv") {
        return CorpusFormat::Tsv;
    }
    return CorpusFormat::Jsonl;
}

Corpus load_corpus(std::istream& in, CorpusFormat format) {
    std::vector<Document> docs;
    std::set<std::string> ids;
    std::string text;
    std::size_t line = 0;
    while (std::getline(in, text)) {
        ++line;
        if (!text.empty() && text.back() == '\r') {
            text.pop_back();
        }
        if (text.find_first_not_of(" \t") == std::string::npos) {
            continue;
        }
        Document doc = format == CorpusFormat::Jsonl ? parse_jsonl_line(text, line)
                                                     : parse_tsv_line(text, line);
        if (doc.id.empty()) {
            malformed(line, "empty document id");
        }
        if (!ids.insert(doc.id).second) {
            throw Error(ErrorCode::DuplicateId,
                        "line " + std::to_string(line) + ": duplicate document id '" + doc.id + "'");
        }
        for (const auto& [name, layer] : doc.layers) {
            if (layer.size() != doc.tokens.size()) {
                throw Error(ErrorCode::LayerMismatch, "line " + std::to_string(line) + ": layer '" +
                                                          name + "' length does not match tokens");
            }
        }
        docs.push_back(std::move(doc));
    }
    if (docs.empty()) {
        throw Error(ErrorCode::EmptyCorpus, "corpus has no documents");
    }
    return Corpus(std::move(docs));
}

Corpus load_corpus_file(const std::string& path, CorpusFormat format) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::InvalidArgument, "cannot open corpus file '" + path + "'");
    }
    return load_corpus(in, format);
}

void write_corpus(std::ostream& out, const Corpus& corpus, CorpusFormat format) {
    if (format == CorpusFormat::Jsonl) {
        for (const auto& doc : corpus.documents()) {
            nlohmann::json tokens = nlohmann::json::array();
            for (const auto& tok : doc.tokens) {
                tokens.push_back({{"term", tok.term}, {"tag", tag_json(tok.tag)}});
            }
            nlohmann::json j = {{"id", doc.id}, {"relevant", doc.relevant}, {"tokens", tokens}};
            if (!doc.layers.empty()) {
                nlohmann::json layers = nlohmann::json::object();
                for (const auto& [name, tags] : doc.layers) {
                    nlohmann::json arr = nlohmann::json::array();
                    for (const auto& t : tags) {
                        arr.push_back(tag_json(t));
                    }
                    layers[name] = arr;
                }
                j["layers"] = layers;
            }
            out << j.dump() << '\n';
        }
        return;
    }
    if (!corpus.layer_names().empty()) {
        throw Error(ErrorCode::InvalidArgument, "TSV cannot represent tag layers; use JSONL");
    }
    for (const auto& doc : corpus.documents()) {
        if (!tsv_safe(doc.id)) {
            throw Error(ErrorCode::InvalidArgument, "document id '" + doc.id + "' is not TSV-safe");
        }
        out << doc.id << '\t' << (doc.relevant ? '1' : '0') << '\t';
        for (std::size_t k = 0; k < doc.tokens.size(); ++k) {
            const auto& tok = doc.tokens[k];
            if (!tsv_safe(tok.term) || (tok.tag && !tsv_safe(*tok.tag))) {
                throw Error(ErrorCode::InvalidArgument, "token in '" + doc.id + "' contains whitespace");
            }
            out << (k ? " " : "") << escape_tsv(tok.term);
            if (tok.tag) {
                out << '/' << escape_tsv(*tok.tag);
            }
        }
        out << '\n';
    }
}

EstimatedParams estimate_params(const Corpus& corpus, const TaggedQuery& query, const LayerRef& layer) {
    const auto matches = corpus.match(query, layer);
    EstimateCounts c;
    c.docs = static_cast<std::int64_t>(corpus.size());
    for (std::size_t d = 0; d < matches.size(); ++d) {
        const bool rel = corpus.documents()[d].relevant;
        c.relevant_docs += rel;
        c.term_docs += matches[d].term;
        c.relevant_term_docs += rel && matches[d].term;
        c.tagged_term_docs += matches[d].tagged;
        c.relevant_tagged_term_docs += rel && matches[d].tagged;
    }

    EstimatedParams est;
    est.counts = c;
    est.n_docs = c.docs;
    est.rel_rate = ratio(c.relevant_docs, c.docs);
    est.t = ratio(c.term_docs, c.docs);
    if (c.term_docs == 0) {
        est.diagnostics.push_back("warning: term '" + query.term + "' does not occur in the corpus; t = 0");
    }
    if (c.relevant_docs == 0) {
        est.diagnostics.push_back("warning: corpus has no relevant documents; p and pi are undefined");
    } else {
        est.p = ratio(c.relevant_term_docs, c.relevant_docs);
    }
    if (query.tag) {
        if (c.term_docs > 0) {
            est.tau = ratio(c.tagged_term_docs, c.term_docs);
        } else {
            est.diagnostics.push_back("warning: tau is undefined (no document contains the term)");
        }
        if (c.relevant_term_docs > 0) {
            est.pi = ratio(c.relevant_tagged_term_docs, c.relevant_term_docs);
        } else if (c.relevant_docs > 0) {
            est.diagnostics.push_back("warning: pi is undefined (no relevant document contains the term)");
        }
        const std::int64_t nonrel_term = c.term_docs - c.relevant_term_docs;
        const std::int64_t nonrel_tagged = c.tagged_term_docs - c.relevant_tagged_term_docs;
        if (est.tau && nonrel_term > 0 &&
            std::abs(ratio(nonrel_tagged, nonrel_term) - *est.tau) > kExactTolerance) {
            est.diagnostics.push_back(
                "note: tau = " + ratio_text(c.tagged_term_docs, c.term_docs) +
                " counts tagged documents over all term-bearing documents; restricted to the " +
                std::to_string(nonrel_term) + " non-relevant term-bearing documents it would be " +
                ratio_text(nonrel_tagged, nonrel_term) + " (" +
                format_real(ratio(nonrel_tagged, nonrel_term), 4) +
                "). Override tau to adopt that reading.");
        }
    }

    // Empirical proportions are mixtures by construction.
    auto issues = est.p ? feasibility_issues(est.collection(), {est.t, *est.p})
                        : std::vector<std::string>{};
    if (est.p && est.tau && est.pi) {
        issues = feasibility_issues(est.collection(), {est.t, *est.p}, {*est.tau, *est.pi});
    }
    if (!issues.empty()) {
        throw Error(ErrorCode::Internal, "estimated parameters infeasible: " + issues.front());
    }
    return est;
}

EstimatedParams apply_overrides(EstimatedParams est, const ParamOverrides& o) {
    auto set = [&](std::optional<double> v, auto& field, const char* name) {
        if (!v) {
            return;
        }
        if (!(*v >= 0.0 && *v <= 1.0)) {
            throw Error(ErrorCode::InvalidArgument, std::string("override ") + name + " must lie in [0, 1]");
        }
        field = *v;
        est.diagnostics.push_back(std::string("note: ") + name + " overridden to " + format_real(*v));
    };
    set(o.rel_rate, est.rel_rate, "r");
    set(o.t, est.t, "t");
    set(o.p, est.p, "p");
    set(o.tau, est.tau, "tau");
    set(o.pi, est.pi, "pi");
    return est;
}

TaggingVerdict predict_from_corpus(const Corpus& corpus, const TaggedQuery& query, const LayerRef& layer,
                                   const ParamOverrides& overrides, double tol) {
    const auto est = apply_overrides(estimate_params(corpus, query, layer), overrides);
    if (!est.p) {
        throw Error(ErrorCode::MissingParameter, "p is undefined: corpus has no relevant documents");
    }
    if (!est.tau || !est.pi) {
        throw Error(ErrorCode::MissingParameter,
                    "tau/pi are undefined for this query; a tagged query with term occurrences in relevant documents is required");
    }
    return verdict(est.collection(), {est.t, *est.p}, {*est.tau, *est.pi}, tol);
}

}  // namespace tagasl
