#include "farsee/pipeline.hpp"

#include "farsee/errors.hpp"
#include "farsee/stats.hpp"

namespace farsee {

Dataset preprocess(const Dataset& d, const PipelineConfig& config,
                   PreprocessSummary* summary) {
    Dataset complete = filter_complete(d);
    OutlierResult cleaned = remove_outliers(complete, config.outlier_policy);
    if (summary) {
        summary->records_total = d.records.size();
        summary->records_complete = complete.records.size();
        summary->records_used = cleaned.dataset.records.size();
        summary->dropped_outliers = cleaned.dropped;
    }
    if (cleaned.dataset.records.empty()) {
        throw DataError("no records remain after outlier removal");
    }
    return cleaned.dataset;
}

std::map<Stage, IntervalScheme> build_schemes(const Dataset& train,
                                              const PipelineConfig& config,
                                              std::span<const Stage> stages) {
    std::map<Stage, IntervalScheme> schemes;
    for (Stage s : stages) {
        std::vector<double> values;
        values.reserve(train.records.size());
        for (const auto& rec : train.records) {
            const auto& effort = rec.effort(s);
            if (!effort) {
                throw ParameterError("record '" + rec.project_id + "' lacks " +
                                     std::string(stage_code(s)) + " effort");
            }
            values.push_back(*effort);
        }
        const Universe u = build_universe(values, config.padding_for(s));
        schemes.emplace(s, partition(s, u, config.intervals_for(s)));
    }
    return schemes;
}

TargetModel build_target_model(const Dataset& train, const PipelineConfig& config,
                               Stage target) {
    if (target == Stage::Planning) {
        throw ParameterError("Planning has no prior stage and cannot be predicted");
    }
    TargetModel model;
    model.target = target;
    model.schemes = build_schemes(train, config, all_stages());

    MineOptions options;
    options.one_item_per_stage = true; // transactions carry one item per stage
    TransactionDB db = itemize(train, model.schemes);
    // Items of stages after the target can never appear in a rule that
    // survives the stage-order filter, and dropping them leaves the counts of
    // every surviving itemset unchanged, so mine only up to the target.
    for (auto& transaction : db.transactions) {
        std::erase_if(transaction, [&](const Item& item) {
            return ordinal(item.stage) > ordinal(target);
        });
    }
    const FrequentItemsets frequent = mine_frequent(db, config.min_support, options);
    const std::vector<AssociationRule> all_rules =
        generate_rules(frequent, config.min_confidence);
    model.rules_before_filter = all_rules.size();
    model.rules = filter_rules(all_rules, target);

    std::vector<double> target_efforts;
    target_efforts.reserve(train.records.size());
    for (const auto& rec : train.records) target_efforts.push_back(*rec.effort(target));
    model.target_median = median(target_efforts);
    return model;
}

} // namespace farsee
