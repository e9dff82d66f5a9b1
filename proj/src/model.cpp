// Copyright 2026 The tagasl Authors
// Licensed under the Apache License, Version 2.0

#include "tagasl/model.hpp"

#include <cmath>
#include <sstream>

#include "tagasl/error.hpp"

namespace tagasl {

namespace {

void require_unit(double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0)) {
        std::ostringstream os;
        os << name << " must lie in [0, 1], got " << v;
        throw Error(ErrorCode::InvalidArgument, os.str());
    }
}

double half_n(const CollectionParams& coll) { return static_cast<double>(coll.n_docs) / 2.0; }

Prediction make_prediction(const CollectionParams& coll, double a) {
    return {half_n(coll) * a + 0.5, a, coll.n_docs};
}

// Mixture check lo <= x <= hi with a small slack for rounding.
void check_between(std::vector<std::string>& out, const char* what, double lo, double x,
                   double hi) {
    if (x < lo - kExactTolerance || x > hi + kExactTolerance) {
        std::ostringstream os;
        os << what << " = " << x << " is outside the attainable range [" << lo << ", " << hi
           << "] for the given relevance rate";
        out.push_back(os.str());
    }
}

}  // namespace

void CollectionParams::validate() const {
    if (n_docs < 1) {
        throw Error(ErrorCode::InvalidArgument, "n_docs must be >= 1");
    }
    require_unit(rel_rate, "rel_rate");
}

void TermParams::validate() const {
    require_unit(t, "t");
    require_unit(p, "p");
}

void TagParams::validate() const {
    require_unit(tau, "tau");
    require_unit(pi, "pi");
}

const char* to_string(Decision d) {
    switch (d) {
        case Decision::Improves: return "improves";
        case Decision::Degrades: return "degrades";
        case Decision::Neutral: return "neutral";
    }
    return "?";
}

const char* to_string(BoundKind k) {
    return k == BoundKind::Exact ? "exact" : "asymptotic";
}

const char* to_string(BreakEvenKind k) {
    switch (k) {
        case BreakEvenKind::Numeric: return "numeric";
        case BreakEvenKind::AlwaysBeneficial: return "always";
        case BreakEvenKind::Undefined: return "undef";
    }
    return "?";
}

double a_factor(const TermParams& term) { return 1.0 + term.t - term.p; }

Prediction asl_untagged(const CollectionParams& coll, const TermParams& term) {
    return make_prediction(coll, a_factor(term));
}

Prediction asl_positional(const CollectionParams& coll, const TermParams& term) {
    const double n = static_cast<double>(coll.n_docs);
    const double with_term = term.p * term.t / 2.0;
    const double without_term = (1.0 - term.p) * (1.0 - (1.0 - term.t) / 2.0);
    const double asl = n * (with_term + without_term) + 0.5;
    return {asl, (asl - 0.5) * 2.0 / n, coll.n_docs};
}

Prediction asl_tagged(const CollectionParams& coll, const TermParams& term, const TagParams& tag) {
    return make_prediction(coll, 1.0 + term.t * tag.tau - term.p * tag.pi);
}

double tif(const TermParams& term, const TagParams& tag) {
    return term.t * (1.0 - tag.tau) - term.p * (1.0 - tag.pi);
}

TaggingVerdict verdict(const CollectionParams& coll, const TermParams& term, const TagParams& tag,
                       double tol) {
    if (!(tol >= 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "tolerance must be >= 0");
    }
    TaggingVerdict v;
    v.tif = tif(term, tag);
    v.asl_untagged = asl_untagged(coll, term).asl;
    v.asl_tagged = asl_tagged(coll, term, tag).asl;
    if (v.tif > tol) {
        v.decision = Decision::Improves;
    } else if (v.tif < -tol) {
        v.decision = Decision::Degrades;
    } else {
        v.decision = Decision::Neutral;
    }
    return v;
}

BreakEvenResult break_even_pi(const TermParams& term, double tau) {
    require_unit(tau, "tau");
    if (term.p == 0.0) {
        return {BreakEvenKind::Undefined, 0.0};
    }
    const double untagged_mass = term.t * (1.0 - tau);
    if (untagged_mass > term.p) {
        return {BreakEvenKind::AlwaysBeneficial, 0.0};
    }
    return {BreakEvenKind::Numeric, 1.0 - untagged_mass / term.p};
}

Bounds bounds_asymptotic(const CollectionParams& coll, const TermParams& term) {
    const double h = half_n(coll);
    return {h * (1.0 + term.t) + 0.5, h * (1.0 - term.p) + 0.5, BoundKind::Asymptotic};
}

Bounds bounds_exact(const CollectionParams& coll, const TermParams& term) {
    const double h = half_n(coll);
    const double rp = coll.rel_rate * term.p;
    return {h * (1.0 + term.t - rp) + 0.5, h * (1.0 + rp - term.p) + 0.5, BoundKind::Exact};
}

std::vector<std::string> feasibility_issues(const CollectionParams& coll, const TermParams& term) {
    std::vector<std::string> out;
    const double r = coll.rel_rate;
    check_between(out, "t", term.p * r, term.t, term.p * r + (1.0 - r));
    return out;
}

std::vector<std::string> feasibility_issues(const CollectionParams& coll, const TermParams& term,
                                            const TagParams& tag) {
    auto out = feasibility_issues(coll, term);
    const double r = coll.rel_rate;
    const double rel_tagged = tag.pi * term.p * r;
    check_between(out, "tau*t", rel_tagged, tag.tau * term.t, rel_tagged + (1.0 - r));
    return out;
}

}  // namespace tagasl
