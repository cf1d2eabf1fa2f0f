#pragma once

#include "farsee/config.hpp"
#include "farsee/dataset.hpp"
#include "farsee/discretize.hpp"
#include "farsee/rules.hpp"

#include <map>
#include <span>
#include <vector>

namespace farsee {

struct PreprocessSummary {
    std::size_t records_total = 0;
    std::size_t records_complete = 0;
    std::size_t records_used = 0;
    std::vector<DroppedRecord> dropped_outliers;
};

// Completeness filter followed by the configured outlier policy.
Dataset preprocess(const Dataset& d, const PipelineConfig& config,
                   PreprocessSummary* summary = nullptr);

// Builds one interval scheme per requested stage from the training data.
std::map<Stage, IntervalScheme> build_schemes(const Dataset& train,
                                              const PipelineConfig& config,
                                              std::span<const Stage> stages);

// Training artifacts for one prediction target.
struct TargetModel {
    Stage target = Stage::Specification;
    std::map<Stage, IntervalScheme> schemes; // stages up to and including target
    std::vector<AssociationRule> rules;      // filtered for the target
    std::size_t rules_before_filter = 0;
    double target_median = 0; // fallback value for dataset_median
};

// Discretizes, mines and filters rules for predicting `target`. Mining runs
// over the stages up to the target; rules involving later stages could never
// survive the stage-order filter, and counts of the surviving rules are
// unaffected by items they do not contain.
TargetModel build_target_model(const Dataset& train, const PipelineConfig& config,
                               Stage target);

} // namespace farsee
