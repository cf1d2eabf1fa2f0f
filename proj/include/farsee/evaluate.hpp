#pragma once

#include "farsee/config.hpp"
#include "farsee/dataset.hpp"
#include "farsee/pipeline.hpp"
#include "farsee/predict.hpp"
#include "farsee/stats.hpp"
#include "farsee/wilcoxon.hpp"

#include <optional>
#include <string>
#include <vector>

namespace farsee {

// One method's outcome for one held-out project.
struct MethodFold {
    std::optional<double> estimate;
    std::optional<double> bias;         // absent when the fold failed or actual == 0
    std::optional<double> abs_residual; // |actual - estimate|, effort units
    bool fallback_used = false;
    std::string error; // why the fold produced no estimate (empty on success)
};

struct FoldRow {
    std::string project_id;
    double actual = 0;
    bool clamped = false; // a prior effort fell outside the fold's universe
    MethodFold model;
    MethodFold regression;
};

struct MethodMetrics {
    std::optional<double> mean_bias;
    std::optional<double> mmre;
    std::optional<double> mdmre;
    int folds_used = 0;      // folds contributing to the metrics
    int folds_failed = 0;    // folds with no estimate
    int bias_undefined = 0;  // folds excluded because actual == 0
    int fallback_count = 0;
};

// Per-fold training artifacts, retained only on request (hygiene checks).
struct FoldArtifacts {
    std::map<Stage, IntervalScheme> schemes;
    std::vector<AssociationRule> rules;
};

struct StageEvaluation {
    Stage target = Stage::Specification;
    std::vector<AssociationRule> rules; // mined from the full dataset
    std::size_t rules_before_filter = 0;
    std::vector<FoldRow> folds;
    MethodMetrics model;
    MethodMetrics regression;
    std::optional<WilcoxonResult> wilcoxon; // model vs regression |residuals|
    std::string wilcoxon_error;
    std::optional<BoxplotSummary> boxplot_model;
    std::optional<BoxplotSummary> boxplot_regression;
    std::vector<FoldArtifacts> fold_artifacts; // parallel to folds when retained
};

struct EvaluationReport {
    PipelineConfig config;
    PreprocessSummary preprocessing;
    std::size_t records = 0;
    std::string unit_label;
    std::array<double, kStageCount> stage_min{}; // over the records actually used
    std::array<double, kStageCount> stage_max{};
    std::vector<StageEvaluation> stages;
};

struct JackknifeOptions {
    bool keep_fold_artifacts = false;
};

// Leave-one-out evaluation of one target stage over a complete dataset.
// Each fold rebuilds schemes, transactions and rules from the remaining
// records, predicts the held-out project from its prior-stage efforts, and
// fits the exponential-regression baseline on the same training records.
// Fold-level failures are recorded, not fatal.
StageEvaluation jackknife(const Dataset& d, const PipelineConfig& config, Stage target,
                          const JackknifeOptions& options = {});

// The five predictable targets (ES..EI): Planning has no prior stage.
std::vector<Stage> predictable_stages();

// Full evaluation: preprocesses per config, then jackknifes each target.
EvaluationReport evaluate(const Dataset& d, const PipelineConfig& config,
                          const std::vector<Stage>& targets,
                          const JackknifeOptions& options = {});

} // namespace farsee
