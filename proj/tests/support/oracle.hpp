#pragma once

// Brute-force mining oracle: exhaustive enumeration with direct counting,
// kept independent of the library's level-wise miner. Thresholds are exact
// decimals (digits / 10^scale) compared in integer arithmetic.

#include "farsee/rules.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

namespace oracle {

struct Decimal {
    std::int64_t digits = 0;
    std::int64_t pow10 = 1; // value = digits / pow10

    double as_double() const {
        return static_cast<double>(digits) / static_cast<double>(pow10);
    }
    // num/den >= digits/pow10, in integers
    bool leq_ratio(std::int64_t num, std::int64_t den) const {
        return num * pow10 >= digits * den;
    }
};

inline Decimal centi(std::int64_t hundredths) { return {hundredths, 100}; }

inline std::int64_t direct_count(const std::vector<farsee::Itemset>& transactions,
                                 const farsee::Itemset& items) {
    std::int64_t count = 0;
    for (const auto& t : transactions) {
        if (std::includes(t.begin(), t.end(), items.begin(), items.end())) ++count;
    }
    return count;
}

inline std::vector<farsee::Item> alphabet(const std::vector<farsee::Itemset>& transactions) {
    std::set<farsee::Item> distinct;
    for (const auto& t : transactions) distinct.insert(t.begin(), t.end());
    return {distinct.begin(), distinct.end()};
}

// Every non-empty itemset over the alphabet whose support meets the decimal
// threshold, with its exact count.
inline std::map<farsee::Itemset, std::int64_t> brute_frequent(
    const std::vector<farsee::Itemset>& transactions, Decimal min_support) {
    const auto items = alphabet(transactions);
    const auto db_size = static_cast<std::int64_t>(transactions.size());
    std::map<farsee::Itemset, std::int64_t> out;
    const std::uint32_t limit = 1u << items.size();
    for (std::uint32_t mask = 1; mask < limit; ++mask) {
        farsee::Itemset subset;
        for (std::size_t i = 0; i < items.size(); ++i) {
            if (mask & (1u << i)) subset.push_back(items[i]);
        }
        const std::int64_t count = direct_count(transactions, subset);
        if (min_support.leq_ratio(count, db_size)) out.emplace(std::move(subset), count);
    }
    return out;
}

// Every rule A => B with disjoint non-empty parts, A union B meeting the
// support threshold and count(AuB)/count(A) meeting the confidence threshold.
inline std::vector<farsee::AssociationRule> brute_rules(
    const std::vector<farsee::Itemset>& transactions, Decimal min_support,
    Decimal min_confidence) {
    const auto items = alphabet(transactions);
    const auto db_size = static_cast<std::int64_t>(transactions.size());
    std::vector<farsee::AssociationRule> rules;
    const std::uint32_t limit = 1u << items.size();
    for (std::uint32_t whole = 1; whole < limit; ++whole) {
        farsee::Itemset whole_set;
        for (std::size_t i = 0; i < items.size(); ++i) {
            if (whole & (1u << i)) whole_set.push_back(items[i]);
        }
        if (whole_set.size() < 2) continue;
        const std::int64_t whole_count = direct_count(transactions, whole_set);
        if (!min_support.leq_ratio(whole_count, db_size)) continue;
        // every proper non-empty sub-mask of `whole` as antecedent
        for (std::uint32_t a = (whole - 1) & whole; a != 0; a = (a - 1) & whole) {
            farsee::AssociationRule rule;
            for (std::size_t i = 0; i < items.size(); ++i) {
                if (!(whole & (1u << i))) continue;
                if (a & (1u << i)) {
                    rule.antecedent.push_back(items[i]);
                } else {
                    rule.consequent.push_back(items[i]);
                }
            }
            if (rule.consequent.empty()) continue;
            const std::int64_t a_count = direct_count(transactions, rule.antecedent);
            if (!min_confidence.leq_ratio(whole_count, a_count)) continue;
            rule.support = static_cast<double>(whole_count) / static_cast<double>(db_size);
            rule.confidence = static_cast<double>(whole_count) / static_cast<double>(a_count);
            rules.push_back(std::move(rule));
        }
    }
    std::sort(rules.begin(), rules.end(), farsee::canonical_rule_less);
    return rules;
}

} // namespace oracle
