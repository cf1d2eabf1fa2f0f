#pragma once

#include "farsee/dataset.hpp"
#include "farsee/discretize.hpp"
#include "farsee/stage.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace farsee {

// Nominal token pairing a stage with an interval index, e.g. EP1, ES4.
struct Item {
    Stage stage = Stage::Planning;
    int interval = 1;

    auto operator<=>(const Item&) const = default;
};

// Sorted, duplicate-free item list.
using Itemset = std::vector<Item>;

std::string item_code(const Item& item);      // "EP1"
Item parse_item_code(std::string_view code);  // throws SchemaError

struct TransactionDB {
    std::vector<Itemset> transactions; // one per project, one item per stage
    std::map<Stage, IntervalScheme> schemes;
};

// Discretizes each record into its item set under the given schemes. Every
// record must carry an effort for every scheme'd stage; a populated stage
// without a scheme is a configuration error.
TransactionDB itemize(const Dataset& d, const std::map<Stage, IntervalScheme>& schemes);

struct AssociationRule {
    Itemset antecedent;
    Itemset consequent; // single item once filtered for a target stage
    double support = 0;
    double confidence = 0;

    bool operator==(const AssociationRule&) const = default;
};

// Canonical rule order: support desc, confidence desc, then lexicographic
// antecedent and consequent. Mining output is always sorted this way.
bool canonical_rule_less(const AssociationRule& a, const AssociationRule& b);

struct FrequentItemsets {
    std::map<Itemset, std::int64_t> counts; // itemset -> transaction count
    std::int64_t db_size = 0;

    double support(const Itemset& items) const;
};

struct MineOptions {
    // Restricts candidate generation to itemsets with at most one item per
    // stage. Itemized transactions satisfy this by construction, so the
    // restriction cannot change results on them; it only skips dead candidates.
    bool one_item_per_stage = false;
};

// Level-wise Apriori: returns exactly the itemsets whose support meets
// min_support, with exact counts. min_support must be in (0, 1].
FrequentItemsets mine_frequent(const TransactionDB& db, double min_support,
                               const MineOptions& options = {});

// Emits every rule A => B with A union B frequent, A and B disjoint and
// non-empty, and confidence >= min_confidence, in canonical order. The input
// must be downward-closed (Apriori output always is).
std::vector<AssociationRule> generate_rules(const FrequentItemsets& frequent,
                                            double min_confidence);

// Keeps rules usable for predicting `target`: single consequent item of the
// target stage, all antecedent stages strictly earlier in pipeline order.
std::vector<AssociationRule> filter_rules(const std::vector<AssociationRule>& rules,
                                          Stage target);

// One rule per line: "EP1 ES2 => ED4 confidence=0.9 [support=0.25]".
std::string format_rule(const AssociationRule& rule);
std::vector<AssociationRule> parse_rules_text(const std::string& text);

} // namespace farsee
