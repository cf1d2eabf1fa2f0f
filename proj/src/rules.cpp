#include "farsee/rules.hpp"

#include "farsee/errors.hpp"
#include "farsee/stats.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

namespace farsee {

std::string item_code(const Item& item) {
    return std::string(stage_code(item.stage)) + std::to_string(item.interval);
}

Item parse_item_code(std::string_view code) {
    if (code.size() < 3) throw SchemaError("bad item code: '" + std::string(code) + "'");
    Item item;
    item.stage = stage_from_code(code.substr(0, 2));
    int interval = 0;
    auto digits = code.substr(2);
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), interval);
    if (ec != std::errc() || ptr != digits.data() + digits.size() || interval < 1) {
        throw SchemaError("bad interval index in item code: '" + std::string(code) + "'");
    }
    item.interval = interval;
    return item;
}

TransactionDB itemize(const Dataset& d, const std::map<Stage, IntervalScheme>& schemes) {
    TransactionDB db;
    db.schemes = schemes;
    for (const auto& rec : d.records) {
        Itemset items;
        items.reserve(schemes.size());
        for (const auto& [stage, scheme] : schemes) {
            const auto& effort = rec.effort(stage);
            if (!effort) {
                throw ParameterError("record '" + rec.project_id + "' has no " +
                                     std::string(stage_code(stage)) + " effort to discretize");
            }
            items.push_back({stage, locate(scheme, *effort).index});
        }
        for (Stage s : all_stages()) {
            if (rec.effort(s) && !schemes.contains(s)) {
                throw ParameterError("no interval scheme configured for populated stage " +
                                     std::string(stage_code(s)));
            }
        }
        db.transactions.push_back(std::move(items));
    }
    return db;
}

double FrequentItemsets::support(const Itemset& items) const {
    auto it = counts.find(items);
    if (it == counts.end()) return 0.0;
    return static_cast<double>(it->second) / static_cast<double>(db_size);
}

namespace {

bool contains_all(const Itemset& transaction, const Itemset& items) {
    return std::includes(transaction.begin(), transaction.end(), items.begin(), items.end());
}

bool stages_distinct(const Itemset& items) {
    for (std::size_t i = 1; i < items.size(); ++i) {
        if (items[i].stage == items[i - 1].stage) return false;
    }
    return true;
}

// Classic Apriori join: two sorted (k-1)-sets sharing their first k-2 items
// merge into one k-candidate.
std::vector<Itemset> candidate_join(const std::vector<Itemset>& level) {
    std::vector<Itemset> candidates;
    for (std::size_t a = 0; a < level.size(); ++a) {
        for (std::size_t b = a + 1; b < level.size(); ++b) {
            const Itemset& x = level[a];
            const Itemset& y = level[b];
            if (!std::equal(x.begin(), x.end() - 1, y.begin(), y.end() - 1)) break;
            Itemset cand = x; // shared prefix + y's last item keeps the set sorted
            cand.push_back(y.back());
            candidates.push_back(std::move(cand));
        }
    }
    return candidates;
}

bool all_subsets_frequent(const Itemset& cand,
                          const std::map<Itemset, std::int64_t>& counts) {
    Itemset sub(cand.size() - 1);
    for (std::size_t skip = 0; skip < cand.size(); ++skip) {
        std::size_t w = 0;
        for (std::size_t i = 0; i < cand.size(); ++i) {
            if (i != skip) sub[w++] = cand[i];
        }
        if (!counts.contains(sub)) return false;
    }
    return true;
}

} // namespace

FrequentItemsets mine_frequent(const TransactionDB& db, double min_support,
                               const MineOptions& options) {
    if (!(min_support > 0.0 && min_support <= 1.0)) {
        throw ParameterError("min_support must be in (0, 1]");
    }
    if (db.transactions.empty()) throw DataError("cannot mine an empty transaction database");

    FrequentItemsets result;
    result.db_size = static_cast<std::int64_t>(db.transactions.size());
    const ExactThreshold threshold(min_support);

    // Level 1: count single items.
    std::map<Itemset, std::int64_t> level_counts;
    for (const auto& t : db.transactions) {
        for (const Item& item : t) ++level_counts[{item}];
    }

    std::vector<Itemset> level; // frequent itemsets of the current size, sorted
    while (true) {
        level.clear();
        for (const auto& [items, count] : level_counts) {
            if (threshold.met_by(count, result.db_size)) {
                result.counts.emplace(items, count);
                level.push_back(items);
            }
        }
        if (level.empty()) break;

        // Next level: join, prune by downward closure, then count.
        level_counts.clear();
        for (Itemset& cand : candidate_join(level)) {
            if (options.one_item_per_stage && !stages_distinct(cand)) continue;
            if (!all_subsets_frequent(cand, result.counts)) continue;
            std::int64_t count = 0;
            for (const auto& t : db.transactions) {
                if (contains_all(t, cand)) ++count;
            }
            level_counts.emplace(std::move(cand), count);
        }
        if (level_counts.empty()) break;
    }
    return result;
}

bool canonical_rule_less(const AssociationRule& a, const AssociationRule& b) {
    if (a.support != b.support) return a.support > b.support;
    if (a.confidence != b.confidence) return a.confidence > b.confidence;
    if (a.antecedent != b.antecedent) return a.antecedent < b.antecedent;
    return a.consequent < b.consequent;
}

std::vector<AssociationRule> generate_rules(const FrequentItemsets& frequent,
                                            double min_confidence) {
    if (!(min_confidence > 0.0 && min_confidence <= 1.0)) {
        throw ParameterError("min_confidence must be in (0, 1]");
    }
    for (const auto& [items, count] : frequent.counts) {
        if (items.size() > 1 && !all_subsets_frequent(items, frequent.counts)) {
            throw InternalError("frequent itemset collection is not downward-closed");
        }
    }

    const ExactThreshold threshold(min_confidence);
    std::vector<AssociationRule> rules;
    for (const auto& [items, whole_count] : frequent.counts) {
        const auto size = items.size();
        if (size < 2) continue;
        // Every non-empty proper subset as antecedent, complement as consequent.
        const std::uint32_t full = (1u << size) - 1;
        for (std::uint32_t mask = 1; mask < full; ++mask) {
            AssociationRule rule;
            for (std::size_t i = 0; i < size; ++i) {
                if (mask & (1u << i)) {
                    rule.antecedent.push_back(items[i]);
                } else {
                    rule.consequent.push_back(items[i]);
                }
            }
            const std::int64_t antecedent_count = frequent.counts.at(rule.antecedent);
            if (!threshold.met_by(whole_count, antecedent_count)) continue;
            rule.support = static_cast<double>(whole_count) /
                           static_cast<double>(frequent.db_size);
            rule.confidence = static_cast<double>(whole_count) /
                              static_cast<double>(antecedent_count);
            rules.push_back(std::move(rule));
        }
    }
    std::sort(rules.begin(), rules.end(), canonical_rule_less);
    return rules;
}

std::vector<AssociationRule> filter_rules(const std::vector<AssociationRule>& rules,
                                          Stage target) {
    std::vector<AssociationRule> kept;
    for (const auto& rule : rules) {
        if (rule.consequent.size() != 1) continue;
        if (rule.consequent.front().stage != target) continue;
        bool all_prior = !rule.antecedent.empty();
        for (const Item& item : rule.antecedent) {
            if (ordinal(item.stage) >= ordinal(target)) { all_prior = false; break; }
        }
        if (all_prior) kept.push_back(rule);
    }
    return kept;
}

namespace {

std::string format_decimal6(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

} // namespace

std::string format_rule(const AssociationRule& rule) {
    std::string out;
    for (std::size_t i = 0; i < rule.antecedent.size(); ++i) {
        if (i > 0) out += ' ';
        out += item_code(rule.antecedent[i]);
    }
    out += " => ";
    for (std::size_t i = 0; i < rule.consequent.size(); ++i) {
        if (i > 0) out += ' ';
        out += item_code(rule.consequent[i]);
    }
    out += " confidence=" + format_decimal6(rule.confidence);
    out += " support=" + format_decimal6(rule.support);
    return out;
}

std::vector<AssociationRule> parse_rules_text(const std::string& text) {
    std::vector<AssociationRule> rules;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::istringstream tokens(line);
        std::string tok;
        AssociationRule rule;
        bool after_arrow = false;
        bool any = false;
        while (tokens >> tok) {
            any = true;
            if (tok == "#" || tok.front() == '#') break; // comment to end of line
            if (tok == "=>") {
                after_arrow = true;
                continue;
            }
            if (auto eq = tok.find('='); eq != std::string::npos &&
                                         (tok.rfind("confidence=", 0) == 0 ||
                                          tok.rfind("support=", 0) == 0)) {
                const std::string key = tok.substr(0, eq);
                double value = 0;
                const char* first = tok.data() + eq + 1;
                const char* last = tok.data() + tok.size();
                auto [ptr, ec] = std::from_chars(first, last, value);
                if (ec != std::errc() || ptr != last) {
                    throw SchemaError("rules line " + std::to_string(line_no) +
                                      ": bad " + key + " value");
                }
                (key == "confidence" ? rule.confidence : rule.support) = value;
                continue;
            }
            (after_arrow ? rule.consequent : rule.antecedent).push_back(parse_item_code(tok));
        }
        if (!any || (rule.antecedent.empty() && rule.consequent.empty())) continue;
        if (!after_arrow || rule.antecedent.empty() || rule.consequent.empty()) {
            throw SchemaError("rules line " + std::to_string(line_no) +
                              ": expected 'ITEM... => ITEM confidence=<decimal>'");
        }
        if (!(rule.confidence > 0.0 && rule.confidence <= 1.0)) {
            throw SchemaError("rules line " + std::to_string(line_no) +
                              ": confidence must be in (0, 1]");
        }
        std::sort(rule.antecedent.begin(), rule.antecedent.end());
        std::sort(rule.consequent.begin(), rule.consequent.end());
        rules.push_back(std::move(rule));
    }
    return rules;
}

} // namespace farsee
