// Copyright 2026 The tagasl Authors
// Licensed under the Apache License, Version 2.0

#include "tagasl/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>

#include <json.hpp>

#include "tagasl/corpus.hpp"
#include "tagasl/error.hpp"
#include "tagasl/format.hpp"
#include "tagasl/model.hpp"
#include "tagasl/oracle.hpp"
#include "tagasl/surface.hpp"
#include "tagasl/tagset.hpp"

namespace tagasl::cli {

namespace {

using Json = nlohmann::ordered_json;

enum class Format { Json, Csv, Table };

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Globals {
    std::string format;
    std::string out_path;
    std::uint64_t seed = 0;
    double tolerance = 0.0;
};

Format format_or(const Globals& g, Format fallback) {
    if (g.format.empty()) {
        return fallback;
    }
    if (g.format == "json") return Format::Json;
    if (g.format == "csv") return Format::Csv;
    if (g.format == "table") return Format::Table;
    throw UsageError("--format must be json, csv or table");
}

double round_significant(double v) { return std::stod(format_real(v)); }

// Reals are rounded to 12 significant digits before JSON emission.
Json rounded(const Json& j) {
    if (j.is_number_float()) {
        return round_significant(j.get<double>());
    }
    if (j.is_structured()) {
        Json copy = j;
        for (auto it = copy.begin(); it != copy.end(); ++it) {
            *it = rounded(*it);
        }
        return copy;
    }
    return j;
}

std::string scalar_text(const Json& j, int digits) {
    if (j.is_number_float()) return format_real(j.get<double>(), digits);
    if (j.is_string()) return j.get<std::string>();
    if (j.is_null()) return "";
    return j.dump();
}

void flatten(const Json& j, const std::string& prefix, std::vector<std::pair<std::string, Json>>& rows) {
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it) {
            flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), rows);
        }
    } else if (j.is_array()) {
        for (std::size_t i = 0; i < j.size(); ++i) {
            flatten(j[i], prefix + "." + std::to_string(i), rows);
        }
    } else {
        rows.emplace_back(prefix, j);
    }
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        q += c;
        if (c == '"') q += '"';
    }
    return q + "\"";
}

void emit_report(std::ostream& os, const Json& report, Format fmt) {
    if (fmt == Format::Json) {
        os << rounded(report).dump(2) << '\n';
        return;
    }
    std::vector<std::pair<std::string, Json>> rows;
    flatten(report, "", rows);
    if (fmt == Format::Csv) {
        os << "key,value\n";
        for (const auto& [k, v] : rows) {
            os << csv_field(k) << ',' << csv_field(scalar_text(v, 12)) << '\n';
        }
        return;
    }
    std::size_t width = 0;
    for (const auto& [k, v] : rows) width = std::max(width, k.size());
    for (const auto& [k, v] : rows) {
        os << k << std::string(width - k.size() + 2, ' ') << scalar_text(v, 4) << '\n';
    }
}

void warn_all(std::ostream& err, const std::vector<std::string>& messages) {
    for (const auto& m : messages) {
        err << m << '\n';
    }
}

void require_unit(double v, const char* flag) {
    if (!(v >= 0.0 && v <= 1.0)) {
        throw UsageError(std::string(flag) + " must lie in [0, 1]");
    }
}

Json bounds_json(const Bounds& b) { return Json{{"worst", b.worst}, {"best", b.best}}; }

// Writes to --out when given, else to `out`.
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) : os_(&fallback) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) throw Error(ErrorCode::InvalidArgument, "cannot write '" + path + "'");
            os_ = file_.get();
        }
    }
    std::ostream& stream() { return *os_; }

private:
    std::unique_ptr<std::ofstream> file_;
    std::ostream* os_;
};

// ---- predict ----

struct PredictArgs {
    std::int64_t n_docs = 0;
    double t = 0.0;
    double p = 0.0;
    std::optional<double> tau;
    std::optional<double> pi;
    std::optional<double> r;
    std::string bounds = "auto";
};

int cmd_predict(const PredictArgs& a, const Globals& g, std::ostream& out, std::ostream& err) {
    if (a.n_docs < 1) throw UsageError("-N must be >= 1");
    require_unit(a.t, "-t");
    require_unit(a.p, "-p");
    if (a.tau) require_unit(*a.tau, "--tau");
    if (a.pi) require_unit(*a.pi, "--pi");
    if (a.r) require_unit(*a.r, "-r");
    if (a.tau.has_value() != a.pi.has_value()) throw UsageError("--tau and --pi must be given together");
    if (a.bounds != "auto" && a.bounds != "asymptotic" && a.bounds != "exact")
        throw UsageError("--bounds must be asymptotic or exact");
    if (a.bounds == "exact" && !a.r) throw UsageError("--bounds exact needs -r");

    const CollectionParams coll{a.n_docs, a.r.value_or(0.0)};
    const TermParams term{a.t, a.p};
    const auto untagged = asl_untagged(coll, term);

    Json rep;
    rep["N"] = a.n_docs;
    rep["t"] = a.t;
    rep["p"] = a.p;
    rep["a_factor"] = untagged.a_factor;
    rep["asl_untagged"] = untagged.asl;
    std::vector<std::string> warnings;
    if (a.tau) {
        const TagParams tag{*a.tau, *a.pi};
        const auto v = verdict(coll, term, tag, g.tolerance);
        rep["tau"] = tag.tau;
        rep["pi"] = tag.pi;
        rep["asl_tagged"] = v.asl_tagged;
        rep["tif"] = v.tif;
        rep["decision"] = to_string(v.decision);
        if (a.r) warnings = feasibility_issues(coll, term, tag);
    } else if (a.r) {
        warnings = feasibility_issues(coll, term);
    }
    Json bounds = Json::object();
    if (a.bounds != "exact") bounds["asymptotic"] = bounds_json(bounds_asymptotic(coll, term));
    if (a.r && a.bounds != "asymptotic") {
        rep["r"] = *a.r;
        bounds["exact"] = bounds_json(bounds_exact(coll, term));
    }
    rep["bounds"] = bounds;
    for (auto& w : warnings) w = "warning: " + w;
    warn_all(err, warnings);
    Sink sink(g.out_path, out);
    emit_report(sink.stream(), rep, format_or(g, Format::Table));
    return kExitOk;
}

// ---- breakeven ----

struct BreakevenArgs {
    std::optional<double> t;
    std::optional<double> p;
    std::optional<double> tau;
    bool surface = false;
    int steps = kDefaultSteps;
    double p_min = kDefaultMinP;
};

int cmd_breakeven(const BreakevenArgs& a, const Globals& g, std::ostream& out) {
    if (!a.t) throw UsageError("-t is required");
    require_unit(*a.t, "-t");
    Sink sink(g.out_path, out);
    if (a.surface) {
        if (a.p || a.tau) throw UsageError("--surface cannot be combined with -p/--tau");
        if (a.steps < 2) throw UsageError("--steps must be >= 2");
        if (!(a.p_min > 0.0 && a.p_min < 1.0)) throw UsageError("--p-min must lie in (0, 1)");
        GridSpec spec = default_break_even_spec(a.steps);
        spec.axis1.min = a.p_min;
        const auto grid = break_even_surface(*a.t, spec);
        if (format_or(g, Format::Csv) == Format::Json) {
            sink.stream() << rounded(Json::parse(to_json(grid).dump())).dump(2) << '\n';
        } else {
            write_csv(sink.stream(), grid);
        }
        return kExitOk;
    }
    if (!a.p || !a.tau) throw UsageError("-p and --tau are required unless --surface is given");
    require_unit(*a.p, "-p");
    require_unit(*a.tau, "--tau");
    const auto be = break_even_pi({*a.t, *a.p}, *a.tau);
    if (be.kind == BreakEvenKind::Undefined) throw UsageError("break-even pi is undefined at p=0");
    const std::string value = be.numeric() ? format_real(be.pi) : to_string(be.kind);
    const Format fmt = format_or(g, Format::Table);
    if (fmt == Format::Table) {
        sink.stream() << value << '\n';
        return kExitOk;
    }
    Json rep{{"t", *a.t}, {"p", *a.p}, {"tau", *a.tau}, {"kind", to_string(be.kind)}};
    rep["pi_break_even"] = be.numeric() ? Json(be.pi) : Json(nullptr);
    emit_report(sink.stream(), rep, fmt);
    return kExitOk;
}

// ---- mesh ----

struct MeshArgs {
    std::int64_t n_docs = 0;
    double t = 0.0;
    double p = 0.0;
    int steps = kDefaultSteps;
};

int cmd_mesh(const MeshArgs& a, const Globals& g, std::ostream& out) {
    if (a.n_docs < 1) throw UsageError("-N must be >= 1");
    require_unit(a.t, "-t");
    require_unit(a.p, "-p");
    if (a.steps < 2) throw UsageError("--steps must be >= 2");
    const auto mesh = asl_mesh({a.n_docs, 0.0}, {a.t, a.p}, default_mesh_spec(a.steps));
    Sink sink(g.out_path, out);
    switch (format_or(g, Format::Csv)) {
        case Format::Csv:
            write_mesh_csv(sink.stream(), mesh);
            break;
        case Format::Json: {
            Json j = Json::parse(to_json(mesh.tagged).dump());
            j["untagged_plane"] = mesh.untagged_plane;
            j["improvement_cells"] = improvement_cell_count(mesh);
            sink.stream() << rounded(j).dump(2) << '\n';
            break;
        }
        case Format::Table: {
            Json rep{{"N", a.n_docs}, {"t", a.t}, {"p", a.p}, {"cells", mesh.tagged.cells.size()},
                     {"untagged_plane", mesh.untagged_plane},
                     {"improvement_cells", improvement_cell_count(mesh)}};
            emit_report(sink.stream(), rep, Format::Table);
            break;
        }
    }
    return kExitOk;
}

// ---- corpus-based commands ----

struct CorpusArgs {
    std::string path;
    std::string format;
    std::string term;
    std::optional<std::string> tag;
    std::optional<std::string> layer;

    Corpus load() const {
        const auto fmt = format.empty() ? guess_corpus_format(path) : parse_corpus_format(format);
        return load_corpus_file(path, fmt);
    }
    CorpusFormat corpus_format() const {
        return format.empty() ? guess_corpus_format(path) : parse_corpus_format(format);
    }
    TaggedQuery query() const { return {term, tag}; }
    LayerRef layer_ref(const Corpus& c) const { return layer ? c.resolve_layer(*layer) : LayerRef{}; }
};

Json counts_json(const EstimateCounts& c) {
    return Json{{"docs", c.docs},
                {"relevant_docs", c.relevant_docs},
                {"term_docs", c.term_docs},
                {"relevant_term_docs", c.relevant_term_docs},
                {"tagged_term_docs", c.tagged_term_docs},
                {"relevant_tagged_term_docs", c.relevant_tagged_term_docs}};
}

Json opt_json(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

int cmd_estimate(const CorpusArgs& a, const ParamOverrides& o, const Globals& g, std::ostream& out,
                 std::ostream& err) {
    const Corpus corpus = a.load();
    const auto est = apply_overrides(estimate_params(corpus, a.query(), a.layer_ref(corpus)), o);
    warn_all(err, est.diagnostics);

    Json rep;
    rep["counts"] = counts_json(est.counts);
    rep["N"] = est.n_docs;
    rep["r"] = est.rel_rate;
    rep["t"] = est.t;
    rep["p"] = opt_json(est.p);
    rep["tau"] = opt_json(est.tau);
    rep["pi"] = opt_json(est.pi);
    if (est.p) {
        const auto coll = est.collection();
        const TermParams term{est.t, *est.p};
        Json pred;
        pred["a_factor"] = a_factor(term);
        pred["asl_untagged"] = asl_untagged(coll, term).asl;
        if (est.tau && est.pi) {
            const auto v = verdict(coll, term, {*est.tau, *est.pi}, g.tolerance);
            pred["asl_tagged"] = v.asl_tagged;
            pred["tif"] = v.tif;
            pred["decision"] = to_string(v.decision);
        }
        const auto b = bounds_exact(coll, term);
        pred["bounds"] = Json{{"exact", bounds_json(b)}};
        rep["prediction"] = pred;
    }
    rep["diagnostics"] = est.diagnostics;
    Sink sink(g.out_path, out);
    emit_report(sink.stream(), rep, format_or(g, Format::Table));
    return kExitOk;
}

struct SimulateArgs {
    std::optional<std::int64_t> trials;
    std::string retag;
    unsigned threads = 1;
};

Json outcome_json(const RankingOutcome& o) {
    return Json{{"asl", o.asl},
                {"matched_block", o.matched_block},
                {"unmatched_block", o.unmatched_block},
                {"relevant_matched", o.relevant_matched},
                {"relevant_unmatched", o.relevant_unmatched}};
}

int cmd_simulate(const CorpusArgs& a, const SimulateArgs& s, const Globals& g, std::ostream& out) {
    if (s.trials && *s.trials < 1) throw UsageError("--trials must be >= 1");
    if (!s.retag.empty() && s.retag != "best" && s.retag != "worst")
        throw UsageError("--retag must be best or worst");
    if (!s.retag.empty() && !a.tag) throw UsageError("--retag needs --tag");
    const Corpus corpus = a.load();
    const auto query = a.query();
    const auto layer = a.layer_ref(corpus);

    Json rep;
    rep["untagged"] = outcome_json(block_asl(corpus, query, false, layer));
    if (s.trials) {
        rep["untagged"]["monte_carlo_asl"] =
            monte_carlo_asl(corpus, query, false, *s.trials, g.seed, layer, s.threads);
    }
    if (a.tag) {
        rep["tagged"] = outcome_json(block_asl(corpus, query, true, layer));
        if (s.trials) {
            rep["tagged"]["monte_carlo_asl"] =
                monte_carlo_asl(corpus, query, true, *s.trials, g.seed, layer, s.threads);
        }
    }
    if (!s.retag.empty()) {
        auto result = s.retag == "best" ? best_case_retag(corpus, query, layer)
                                        : worst_case_retag(corpus, query, layer);
        rep["retag"] = s.retag;
        rep["retagged"] = outcome_json(result.outcome);
        if (!g.out_path.empty()) {
            std::ofstream file(g.out_path);
            if (!file) throw Error(ErrorCode::InvalidArgument, "cannot write '" + g.out_path + "'");
            write_corpus(file, result.corpus, a.corpus_format());
        }
    }
    if (s.trials) rep["seed"] = g.seed;
    emit_report(out, rep, format_or(g, Format::Table));
    return kExitOk;
}

struct EvaluateArgs {
    std::string corpus_path;
    std::string corpus_format;
    std::string workload_path;
    std::vector<std::string> layers;
    std::string weighting = "unweighted";
};

int cmd_evaluate_tags(const EvaluateArgs& a, const Globals& g, std::ostream& out, std::ostream& err) {
    Weighting weighting = Weighting::Unweighted;
    if (a.weighting == "frequency") {
        weighting = Weighting::TermFrequency;
    } else if (a.weighting != "unweighted") {
        throw UsageError("--weighting must be unweighted or frequency");
    }
    const auto fmt = a.corpus_format.empty() ? guess_corpus_format(a.corpus_path)
                                             : parse_corpus_format(a.corpus_format);
    const Corpus corpus = load_corpus_file(a.corpus_path, fmt);
    const Workload workload = load_workload_file(a.workload_path);
    for (const auto& name : a.layers) {
        corpus.resolve_layer(name);  // unknown layers are usage errors
    }
    const auto ranked = rank_layers(corpus, a.layers, workload, weighting);

    const std::string averaging = weighting == Weighting::Unweighted
                                      ? "unweighted mean over per-query TIF"
                                      : "mean over per-query TIF weighted by term document count";
    err << "note: layer score is the " << averaging
        << "; queries with undefined tau/pi are excluded\n";
    for (const auto& s : ranked) {
        if (s.error) err << "warning: layer '" << s.layer << "': " << *s.error << '\n';
        for (const auto& q : s.per_query) {
            if (!q.tif) {
                err << "warning: layer '" << s.layer << "': query " << q.query.term << '/'
                    << q.query.tag.value_or("") << " excluded: " << q.reason << '\n';
            }
        }
    }

    Sink sink(g.out_path, out);
    const Format f = format_or(g, Format::Table);
    if (f == Format::Table) {
        auto& os = sink.stream();
        os << "rank  layer  mean_tif  evaluated\n";
        int rank = 1;
        for (const auto& s : ranked) {
            os << rank++ << "  " << s.layer << "  "
               << (s.error ? std::string("error") : format_real(s.mean_tif, 4)) << "  "
               << s.evaluated_count << '\n';
            for (const auto& q : s.per_query) {
                os << "    " << q.query.term << '/' << q.query.tag.value_or("") << "  "
                   << (q.tif ? format_real(*q.tif, 4) : "excluded: " + q.reason) << '\n';
            }
        }
        return kExitOk;
    }
    Json layers = Json::array();
    for (const auto& s : ranked) layers.push_back(Json::parse(to_json(s).dump()));
    Json rep{{"averaging", averaging}, {"layers", layers}};
    emit_report(sink.stream(), rep, f);
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Analytic search-length prediction for part-of-speech tagged retrieval", "tagasl"};
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    app.add_option("--format", g.format, "Output format: json, csv or table");
    app.add_option("--out", g.out_path, "Write data to PATH instead of stdout");
    app.add_option("--seed", g.seed, "Seed for Monte Carlo trials");
    app.add_option("--tolerance", g.tolerance, "Neutral band for the tagging verdict")
        ->check(CLI::NonNegativeNumber);

    PredictArgs pa;
    auto* predict = app.add_subcommand("predict", "ASL with and without tagging, TIF, bounds");
    predict->add_option("-N,--docs", pa.n_docs, "Number of documents")->required();
    predict->add_option("-t,--term-rate", pa.t, "Pr(term)")->required();
    predict->add_option("-p,--rel-term-rate", pa.p, "Pr(term | relevant)")->required();
    predict->add_option("--tau", pa.tau, "Pr(tag | term)");
    predict->add_option("--pi", pa.pi, "Pr(tag | term, relevant)");
    predict->add_option("-r,--rel-fraction", pa.r, "Pr(relevant); enables exact bounds");
    predict->add_option("--bounds", pa.bounds, "asymptotic or exact (default: both when -r given)");

    BreakevenArgs ba;
    auto* breakeven = app.add_subcommand("breakeven", "Break-even pi for one point or a (p, tau) grid");
    breakeven->add_option("-t,--term-rate", ba.t, "Pr(term)");
    breakeven->add_option("-p,--rel-term-rate", ba.p, "Pr(term | relevant)");
    breakeven->add_option("--tau", ba.tau, "Pr(tag | term)");
    breakeven->add_flag("--surface", ba.surface, "Emit the full (p, tau) grid");
    breakeven->add_option("--steps", ba.steps, "Lattice points per axis");
    breakeven->add_option("--p-min", ba.p_min, "Lower end of the p axis");

    MeshArgs ma;
    auto* mesh = app.add_subcommand("mesh", "Tagged ASL over a (tau, pi) grid against the untagged plane");
    mesh->add_option("-N,--docs", ma.n_docs, "Number of documents")->required();
    mesh->add_option("-t,--term-rate", ma.t, "Pr(term)")->required();
    mesh->add_option("-p,--rel-term-rate", ma.p, "Pr(term | relevant)")->required();
    mesh->add_option("--steps", ma.steps, "Lattice points per axis");

    auto add_corpus_opts = [](CLI::App* sub, CorpusArgs& c) {
        sub->add_option("--corpus", c.path, "Corpus file (JSONL or TSV)")->required();
        sub->add_option("--corpus-format", c.format, "jsonl or tsv (default: by extension)");
        sub->add_option("--term", c.term, "Query term")->required();
        sub->add_option("--tag", c.tag, "Query tag");
        sub->add_option("--layer", c.layer, "Tag layer to read tags from");
    };

    CorpusArgs ea;
    ParamOverrides overrides;
    auto* estimate = app.add_subcommand("estimate", "Estimate N, r, t, p, tau, pi from a corpus");
    add_corpus_opts(estimate, ea);
    estimate->add_option("--override-r", overrides.rel_rate, "Replace the estimated r");
    estimate->add_option("--override-t", overrides.t, "Replace the estimated t");
    estimate->add_option("--override-p", overrides.p, "Replace the estimated p");
    estimate->add_option("--override-tau", overrides.tau, "Replace the estimated tau");
    estimate->add_option("--override-pi", overrides.pi, "Replace the estimated pi");

    CorpusArgs sa;
    SimulateArgs sim;
    auto* simulate = app.add_subcommand("simulate", "Exact block-ranking ASL on a corpus");
    add_corpus_opts(simulate, sa);
    simulate->add_option("--trials", sim.trials, "Monte Carlo trials over tie orderings");
    simulate->add_option("--retag", sim.retag, "best or worst constructive retagging");
    simulate->add_option("--threads", sim.threads, "Worker threads for Monte Carlo trials");

    EvaluateArgs va;
    auto* evaluate = app.add_subcommand("evaluate-tags", "Rank tag layers by mean TIF");
    evaluate->add_option("--corpus", va.corpus_path, "Corpus file")->required();
    evaluate->add_option("--corpus-format", va.corpus_format, "jsonl or tsv");
    evaluate->add_option("--workload", va.workload_path, "Workload JSONL")->required();
    evaluate->add_option("--weighting", va.weighting, "unweighted (default) or frequency");
    evaluate->add_option("layers", va.layers, "Layer names (@tokens for inline tags)")->required();

    for (auto* sub : {predict, breakeven, mesh, estimate, simulate, evaluate}) {
        sub->fallthrough();
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (*predict) return cmd_predict(pa, g, out, err);
        if (*breakeven) return cmd_breakeven(ba, g, out);
        if (*mesh) return cmd_mesh(ma, g, out);
        if (*estimate) return cmd_estimate(ea, overrides, g, out, err);
        if (*simulate) return cmd_simulate(sa, sim, g, out);
        if (*evaluate) return cmd_evaluate_tags(va, g, out, err);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return e.code() == ErrorCode::Internal ? kExitInternal : kExitUsage;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kExitInternal;
    }
    return kExitInternal;
}

}  // namespace tagasl::cli
