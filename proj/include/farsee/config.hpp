#pragma once

#include "farsee/dataset.hpp"
#include "farsee/discretize.hpp"
#include "farsee/stage.hpp"

#include <array>
#include <string>

namespace farsee {

// Full pipeline configuration. Defaults: per-stage interval counts
// EP 7, ES 8, ED 10, EB 9, ET 8, EI 11; symmetric 5% range padding;
// min support 0.01; min confidence 0.8; no outlier removal; dataset-median
// fallback when no rule matches.
struct PipelineConfig {
    std::array<int, kStageCount> intervals = {7, 8, 10, 9, 8, 11};
    std::array<PaddingPolicy, kStageCount> padding{};
    double min_support = 0.01;
    double min_confidence = 0.8;
    OutlierPolicy outlier_policy{};
    enum class FallbackKind { error, dataset_median };
    FallbackKind fallback = FallbackKind::dataset_median;
    std::string unit_label;

    int intervals_for(Stage s) const { return intervals[ordinal(s) - 1]; }
    int& intervals_for(Stage s) { return intervals[ordinal(s) - 1]; }
    const PaddingPolicy& padding_for(Stage s) const { return padding[ordinal(s) - 1]; }
    PaddingPolicy& padding_for(Stage s) { return padding[ordinal(s) - 1]; }

    // Throws SchemaError when any value is out of range.
    void validate() const;
};

// Flat key=value config file ('#' comments, blank lines ignored). Keys:
//   intervals.<STAGE> = <int>
//   padding.<STAGE>.mode = fraction | explicit
//   padding.<STAGE>.fraction = <decimal>
//   padding.<STAGE>.d1 / .d2 = <decimal>
//   mining.min_support / mining.min_confidence = <decimal>
//   preprocessing.outlier_policy = none | iqr
//   preprocessing.outlier_k = <decimal>
//   prediction.fallback = error | median
//   dataset.unit = <text>
// Unknown keys are schema errors; absent keys keep their defaults.
PipelineConfig parse_config(const std::string& text, PipelineConfig base = {});

PipelineConfig load_config_file(const std::string& path, PipelineConfig base = {});

} // namespace farsee
