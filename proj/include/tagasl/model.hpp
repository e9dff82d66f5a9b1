// Copyright 2026 The tagasl Authors
// Licensed under the Apache License, Version 2.0

#pragma once

// Closed-form Average Search Length (ASL) model for single-term queries under
// optimal (binary feature) ranking, with and without a part-of-speech tag
// restriction on the query term.
//
//   A        = 1 + t - p
//   ASL      = N/2 * A + 1/2
//   ASL_tag  = N/2 * (1 + t*tau - p*pi) + 1/2
//   TIF      = t(1 - tau) - p(1 - pi)     (positive: tagging lowers ASL)
//
// All functions are pure.

#include <cstdint>
#include <string>
#include <vector>

namespace tagasl {

inline constexpr double kExactTolerance = 1e-12;

struct CollectionParams {
    std::int64_t n_docs = 1;
    double rel_rate = 0.0;  // Pr(rel)

    void validate() const;
};

struct TermParams {
    double t = 0.0;  // Pr(d)
    double p = 0.0;  // Pr(d | rel)

    void validate() const;
};

struct TagParams {
    double tau = 1.0;  // Pr(query tag | term present)
    double pi = 1.0;   // Pr(query tag | term present, rel)

    void validate() const;
};

struct Prediction {
    double asl = 0.0;
    double a_factor = 0.0;
    std::int64_t n_docs = 1;
};

enum class BoundKind { Asymptotic, Exact };

struct Bounds {
    double worst = 0.0;
    double best = 0.0;
    BoundKind kind = BoundKind::Asymptotic;
};

enum class Decision { Improves, Degrades, Neutral };

struct TaggingVerdict {
    double tif = 0.0;
    Decision decision = Decision::Neutral;
    double asl_untagged = 0.0;
    double asl_tagged = 0.0;
};

enum class BreakEvenKind { Numeric, AlwaysBeneficial, Undefined };

struct BreakEvenResult {
    BreakEvenKind kind = BreakEvenKind::Undefined;
    double pi = 0.0;  // meaningful only for Numeric

    bool numeric() const { return kind == BreakEvenKind::Numeric; }
};

const char* to_string(Decision d);
const char* to_string(BoundKind k);
const char* to_string(BreakEvenKind k);

double a_factor(const TermParams& term);

Prediction asl_untagged(const CollectionParams& coll, const TermParams& term);

/// Literal block-midpoint form: term-bearing block midpoint weighted by p plus
/// the term-free block midpoint weighted by (1 - p). Algebraically identical to
/// asl_untagged; kept as an independent evaluation route.
Prediction asl_positional(const CollectionParams& coll, const TermParams& term);

Prediction asl_tagged(const CollectionParams& coll, const TermParams& term, const TagParams& tag);

double tif(const TermParams& term, const TagParams& tag);

/// Decision is Improves when tif > tol, Degrades when tif < -tol.
TaggingVerdict verdict(const CollectionParams& coll, const TermParams& term, const TagParams& tag,
                       double tol = 0.0);

/// Root in pi of tif(term, {tau, pi}) = 0.
BreakEvenResult break_even_pi(const TermParams& term, double tau);

Bounds bounds_asymptotic(const CollectionParams& coll, const TermParams& term);
Bounds bounds_exact(const CollectionParams& coll, const TermParams& term);

/// Joint mixture-feasibility checks. Advisory: returns a human-readable
/// message per violated inequality, empty when feasible.
std::vector<std::string> feasibility_issues(const CollectionParams& coll, const TermParams& term);
std::vector<std::string> feasibility_issues(const CollectionParams& coll, const TermParams& term,
                                            const TagParams& tag);

}  // namespace tagasl
