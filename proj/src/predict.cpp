#include "farsee/predict.hpp"

#include "farsee/errors.hpp"

#include <algorithm>

namespace farsee {

Query make_query(Stage target, const std::map<Stage, double>& prior_efforts,
                 const std::map<Stage, IntervalScheme>& schemes) {
    Query q;
    q.target = target;
    q.prior_efforts = prior_efforts;
    for (const auto& [stage, effort] : prior_efforts) {
        if (ordinal(stage) >= ordinal(target)) {
            throw ParameterError("query stage " + std::string(stage_code(stage)) +
                                 " does not precede target " + std::string(stage_code(target)));
        }
        auto it = schemes.find(stage);
        if (it == schemes.end()) {
            throw ParameterError("no interval scheme for query stage " +
                                 std::string(stage_code(stage)));
        }
        const Location loc = locate(it->second, effort);
        q.items.push_back({stage, loc.index});
        if (loc.clamped) q.clamped.insert(stage);
    }
    std::sort(q.items.begin(), q.items.end());
    return q;
}

std::vector<AssociationRule> match_rules(const std::vector<AssociationRule>& rules,
                                         const Query& q) {
    std::vector<AssociationRule> matched;
    for (const auto& rule : rules) {
        if (std::includes(q.items.begin(), q.items.end(),
                          rule.antecedent.begin(), rule.antecedent.end())) {
            matched.push_back(rule);
        }
    }
    std::sort(matched.begin(), matched.end(), canonical_rule_less);
    return matched;
}

Estimate predict(const std::vector<AssociationRule>& matched,
                 std::span<const double> target_midpoints, const Fallback& fallback) {
    if (matched.empty()) {
        if (fallback.kind == Fallback::Kind::error) {
            throw PredictionError("no applicable rules for this query");
        }
        Estimate e;
        e.value = fallback.value;
        e.fallback_used = true;
        return e;
    }

    std::vector<AssociationRule> ordered = matched;
    std::sort(ordered.begin(), ordered.end(), canonical_rule_less);

    Estimate e;
    double weighted_sum = 0, weight_sum = 0;
    for (const auto& rule : ordered) {
        if (rule.consequent.size() != 1) {
            throw ParameterError("predict expects single-consequent rules (filter first)");
        }
        if (!(rule.confidence > 0)) {
            throw ParameterError("rule confidence must be positive");
        }
        const double value = defuzzify(target_midpoints, rule.consequent.front().interval);
        weighted_sum += value * rule.confidence;
        weight_sum += rule.confidence;
        e.contributions.push_back({rule, value, rule.confidence});
    }
    // a lone rule's weight cancels exactly
    e.value = ordered.size() == 1 ? e.contributions.front().defuzzified
                                  : weighted_sum / weight_sum;
    return e;
}

Estimate predict(const std::vector<AssociationRule>& matched,
                 const IntervalScheme& target_scheme, const Fallback& fallback) {
    return predict(matched, std::span<const double>(target_scheme.midpoints), fallback);
}

} // namespace farsee
