#include "farsee/evaluate.hpp"

#include "farsee/errors.hpp"
#include "farsee/metrics.hpp"
#include "farsee/regression.hpp"

#include <algorithm>
#include <cmath>

namespace farsee {

std::vector<Stage> predictable_stages() {
    return {Stage::Specification, Stage::Design, Stage::Building,
            Stage::Testing, Stage::Implementation};
}

namespace {

void finish_fold(MethodFold& fold, double actual, double estimate) {
    fold.estimate = estimate;
    fold.abs_residual = std::fabs(actual - estimate);
    if (actual != 0) {
        fold.bias = bias(actual, estimate);
    }
}

MethodMetrics summarize(const std::vector<FoldRow>& folds, bool regression_side) {
    MethodMetrics m;
    std::vector<double> biases;
    for (const FoldRow& row : folds) {
        const MethodFold& fold = regression_side ? row.regression : row.model;
        if (!fold.estimate) {
            ++m.folds_failed;
            continue;
        }
        if (fold.fallback_used) ++m.fallback_count;
        if (!fold.bias) {
            ++m.bias_undefined;
            continue;
        }
        biases.push_back(*fold.bias);
    }
    m.folds_used = static_cast<int>(biases.size());
    if (!biases.empty()) {
        // canonical summation order: metrics stay bit-identical when the
        // dataset's record order is permuted
        std::sort(biases.begin(), biases.end());
        m.mean_bias = mean(biases);
        m.mmre = mmre(biases);
        m.mdmre = mdmre(biases);
    }
    return m;
}

std::vector<double> residual_sample(const std::vector<FoldRow>& folds, bool regression_side) {
    std::vector<double> out;
    for (const FoldRow& row : folds) {
        const MethodFold& fold = regression_side ? row.regression : row.model;
        if (fold.abs_residual) out.push_back(*fold.abs_residual);
    }
    std::sort(out.begin(), out.end()); // canonical order, see summarize()
    return out;
}

} // namespace

StageEvaluation jackknife(const Dataset& d, const PipelineConfig& config, Stage target,
                          const JackknifeOptions& options) {
    if (d.records.size() < 3) {
        throw DataError("jackknife needs at least 3 records, got " +
                        std::to_string(d.records.size()));
    }
    for (const auto& rec : d.records) {
        if (!rec.complete()) {
            throw ParameterError("jackknife requires complete records; '" +
                                 rec.project_id + "' has missing efforts");
        }
    }

    StageEvaluation eval;
    eval.target = target;
    {
        const TargetModel full = build_target_model(d, config, target);
        eval.rules = full.rules;
        eval.rules_before_filter = full.rules_before_filter;
    }

    const std::vector<Stage> priors = prior_stages(target);
    for (std::size_t held_out = 0; held_out < d.records.size(); ++held_out) {
        const ProjectRecord& probe = d.records[held_out];
        Dataset train;
        train.unit_label = d.unit_label;
        train.records.reserve(d.records.size() - 1);
        for (std::size_t i = 0; i < d.records.size(); ++i) {
            if (i != held_out) train.records.push_back(d.records[i]);
        }

        FoldRow row;
        row.project_id = probe.project_id;
        row.actual = *probe.effort(target);

        std::map<Stage, double> prior_efforts;
        for (Stage s : priors) prior_efforts.emplace(s, *probe.effort(s));

        try {
            const TargetModel model = build_target_model(train, config, target);
            if (options.keep_fold_artifacts) {
                eval.fold_artifacts.push_back({model.schemes, model.rules});
            }
            const Query query = make_query(target, prior_efforts, model.schemes);
            row.clamped = !query.clamped.empty();
            const Fallback fallback = config.fallback == PipelineConfig::FallbackKind::error
                                          ? Fallback::error()
                                          : Fallback::dataset_median(model.target_median);
            const Estimate estimate = predict(match_rules(model.rules, query),
                                              model.schemes.at(target), fallback);
            row.model.fallback_used = estimate.fallback_used;
            finish_fold(row.model, row.actual, estimate.value);
        } catch (const Error& e) {
            row.model.error = e.what();
            if (options.keep_fold_artifacts &&
                eval.fold_artifacts.size() != eval.folds.size() + 1) {
                eval.fold_artifacts.emplace_back();
            }
        }

        try {
            const RegressionModel baseline = fit_exp_regression(train, target);
            finish_fold(row.regression, row.actual, baseline.predict(prior_efforts));
        } catch (const Error& e) {
            row.regression.error = e.what();
        }

        eval.folds.push_back(std::move(row));
    }

    eval.model = summarize(eval.folds, false);
    eval.regression = summarize(eval.folds, true);

    const std::vector<double> model_residuals = residual_sample(eval.folds, false);
    const std::vector<double> regression_residuals = residual_sample(eval.folds, true);
    try {
        if (model_residuals.empty() || regression_residuals.empty()) {
            throw DataError("a residual sample is empty");
        }
        eval.wilcoxon = wilcoxon_rank_sum(model_residuals, regression_residuals);
    } catch (const Error& e) {
        eval.wilcoxon_error = e.what();
    }
    if (model_residuals.size() >= 4) eval.boxplot_model = boxplot_stats(model_residuals);
    if (regression_residuals.size() >= 4) {
        eval.boxplot_regression = boxplot_stats(regression_residuals);
    }
    return eval;
}

EvaluationReport evaluate(const Dataset& d, const PipelineConfig& config,
                          const std::vector<Stage>& targets,
                          const JackknifeOptions& options) {
    EvaluationReport report;
    report.config = config;
    report.unit_label = config.unit_label.empty() ? d.unit_label : config.unit_label;
    const Dataset used = preprocess(d, config, &report.preprocessing);
    report.records = used.records.size();
    for (Stage s : all_stages()) {
        double lo = *used.records.front().effort(s), hi = lo;
        for (const auto& rec : used.records) {
            lo = std::min(lo, *rec.effort(s));
            hi = std::max(hi, *rec.effort(s));
        }
        report.stage_min[ordinal(s) - 1] = lo;
        report.stage_max[ordinal(s) - 1] = hi;
    }
    for (Stage target : targets) {
        report.stages.push_back(jackknife(used, config, target, options));
    }
    return report;
}

} // namespace farsee
