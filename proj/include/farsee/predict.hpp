#pragma once

#include "farsee/discretize.hpp"
#include "farsee/rules.hpp"
#include "farsee/stage.hpp"

#include <map>
#include <set>
#include <span>
#include <vector>

namespace farsee {

// Prior-stage efforts for one prediction, plus their discretized items.
// Efforts outside a training universe are clamped to the nearest edge
// interval and the stage is flagged.
struct Query {
    Stage target = Stage::Specification;
    std::map<Stage, double> prior_efforts;
    Itemset items;
    std::set<Stage> clamped;
};

Query make_query(Stage target, const std::map<Stage, double>& prior_efforts,
                 const std::map<Stage, IntervalScheme>& schemes);

// Rules whose whole antecedent is contained in the query's items, in
// canonical order. Input must already be filtered for the query's target.
std::vector<AssociationRule> match_rules(const std::vector<AssociationRule>& rules,
                                         const Query& q);

// What to do when no rule matches a query.
struct Fallback {
    enum class Kind { error, dataset_median };
    Kind kind = Kind::error;
    double value = 0; // the training-set median, for dataset_median

    static Fallback error() { return {}; }
    static Fallback dataset_median(double v) { return {Kind::dataset_median, v}; }
};

struct Contribution {
    AssociationRule rule;
    double defuzzified = 0;
    double confidence = 0;
};

struct Estimate {
    double value = 0;
    std::vector<Contribution> contributions;
    bool fallback_used = false;
};

// Confidence-weighted average of the matched rules' defuzzified consequents:
// sum_i defuzz(A_ci) * conf_i / sum_i conf_i. The midpoints are the target
// stage's interval centres. Rules are summed in canonical order, so the
// result is independent of input permutation.
Estimate predict(const std::vector<AssociationRule>& matched,
                 std::span<const double> target_midpoints, const Fallback& fallback);
Estimate predict(const std::vector<AssociationRule>& matched,
                 const IntervalScheme& target_scheme, const Fallback& fallback);

} // namespace farsee
