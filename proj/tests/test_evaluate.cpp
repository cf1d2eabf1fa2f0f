#include "farsee/evaluate.hpp"

#include "farsee/errors.hpp"
#include "support/synthetic.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace farsee;

namespace {

PipelineConfig uniform_config(int n_intervals) {
    PipelineConfig cfg;
    for (Stage s : all_stages()) cfg.intervals_for(s) = n_intervals;
    return cfg;
}

Dataset identical_projects(std::size_t n) {
    Dataset d;
    for (std::size_t i = 0; i < n; ++i) {
        ProjectRecord rec;
        rec.project_id = "t" + std::to_string(i);
        int k = 1;
        for (Stage s : all_stages()) rec.effort(s) = 100.0 * k++;
        d.records.push_back(std::move(rec));
    }
    return d;
}

} // namespace

TEST_CASE("identical projects with symmetric padding predict exactly") {
    // odd interval count: the single occupied interval's midpoint coincides
    // with the common value under symmetric pads
    const PipelineConfig cfg = uniform_config(5);
    const Dataset d = identical_projects(10);
    const StageEvaluation eval = jackknife(d, cfg, Stage::Specification);

    for (const FoldRow& row : eval.folds) {
        REQUIRE(row.model.estimate.has_value());
        CHECK(*row.model.estimate == row.actual);
        CHECK_FALSE(row.model.fallback_used);
    }
    REQUIRE(eval.model.mmre.has_value());
    CHECK(*eval.model.mmre == 0.0);
    CHECK(*eval.model.mean_bias == 0.0);

    // the regression baseline cannot fit constant priors; folds are flagged,
    // never fatal
    CHECK(eval.regression.folds_failed == static_cast<int>(d.records.size()));
    CHECK_FALSE(eval.wilcoxon.has_value());
    CHECK_FALSE(eval.wilcoxon_error.empty());

    // every rule mined from identical projects has confidence 1
    REQUIRE_FALSE(eval.rules.empty());
    for (const auto& rule : eval.rules) CHECK(rule.confidence == 1.0);
}

TEST_CASE("fold isolation: per-fold artifacts equal a from-scratch rebuild") {
    const Dataset d = synthetic::dataset(10, 2024);
    const PipelineConfig cfg = uniform_config(4);
    JackknifeOptions options;
    options.keep_fold_artifacts = true;
    const StageEvaluation eval = jackknife(d, cfg, Stage::Design, options);
    REQUIRE(eval.fold_artifacts.size() == d.records.size());

    for (std::size_t held_out = 0; held_out < d.records.size(); ++held_out) {
        Dataset train;
        for (std::size_t i = 0; i < d.records.size(); ++i) {
            if (i != held_out) train.records.push_back(d.records[i]);
        }
        const TargetModel scratch = build_target_model(train, cfg, Stage::Design);
        CHECK(eval.fold_artifacts[held_out].schemes == scratch.schemes);
        CHECK(eval.fold_artifacts[held_out].rules == scratch.rules);
    }
}

TEST_CASE("permuting the record order leaves all metrics bit-identical") {
    const Dataset d = synthetic::dataset(12, 77);
    Dataset permuted = d;
    std::rotate(permuted.records.begin(), permuted.records.begin() + 5,
                permuted.records.end());
    std::swap(permuted.records[0], permuted.records[3]);

    const PipelineConfig cfg = uniform_config(4);
    for (Stage target : {Stage::Specification, Stage::Building}) {
        const StageEvaluation a = jackknife(d, cfg, target);
        const StageEvaluation b = jackknife(permuted, cfg, target);
        CHECK(a.model.mean_bias == b.model.mean_bias);
        CHECK(a.model.mmre == b.model.mmre);
        CHECK(a.model.mdmre == b.model.mdmre);
        CHECK(a.regression.mmre == b.regression.mmre);
        if (a.wilcoxon && b.wilcoxon) {
            CHECK(a.wilcoxon->rank_sum == b.wilcoxon->rank_sum);
            CHECK(a.wilcoxon->p_value == b.wilcoxon->p_value);
        } else {
            CHECK(a.wilcoxon.has_value() == b.wilcoxon.has_value());
        }
    }
}

TEST_CASE("priors outside the training universe clamp to an edge interval, flagged") {
    Dataset d = synthetic::dataset(9, 5150);
    ProjectRecord odd;
    odd.project_id = "far-out";
    int k = 1;
    for (Stage s : all_stages()) odd.effort(s) = 9000.0 * k++;
    d.records.push_back(odd);

    const PipelineConfig cfg = uniform_config(6);
    const StageEvaluation eval = jackknife(d, cfg, Stage::Specification);
    const FoldRow& far = eval.folds.back();
    CHECK(far.clamped);
    CHECK(far.model.estimate.has_value());
    for (std::size_t i = 0; i + 1 < eval.folds.size(); ++i) {
        CHECK_FALSE(eval.folds[i].clamped);
    }
}

namespace {

// EP values cluster low with one high record, so the mid record's EP interval
// is unoccupied in its training fold and no rule can match.
Dataset gapped_dataset() {
    Dataset d;
    const double ep_values[] = {8, 9, 10, 11, 100, 50};
    int i = 0;
    for (double ep : ep_values) {
        ProjectRecord rec;
        rec.project_id = i == 5 ? "mid" : "low" + std::to_string(i);
        rec.effort(Stage::Planning) = ep;
        rec.effort(Stage::Specification) = 2 * ep + 5;
        rec.effort(Stage::Design) = 3 * ep;
        rec.effort(Stage::Building) = 4 * ep;
        rec.effort(Stage::Testing) = 2.5 * ep;
        rec.effort(Stage::Implementation) = ep + 1;
        d.records.push_back(std::move(rec));
        ++i;
    }
    return d;
}

} // namespace

TEST_CASE("an unmatched query falls back to the training median, flagged") {
    const Dataset d = gapped_dataset();
    const PipelineConfig cfg = uniform_config(6);
    const StageEvaluation eval = jackknife(d, cfg, Stage::Specification);
    const FoldRow& mid = eval.folds.back();
    REQUIRE(mid.project_id == "mid");
    CHECK_FALSE(mid.clamped); // 50 lies inside the training universe
    REQUIRE(mid.model.estimate.has_value());
    CHECK(mid.model.fallback_used);
    CHECK(eval.model.fallback_count >= 1);
}

TEST_CASE("error fallback records fold failures instead of estimates") {
    PipelineConfig cfg = uniform_config(6);
    cfg.fallback = PipelineConfig::FallbackKind::error;
    const StageEvaluation eval = jackknife(gapped_dataset(), cfg, Stage::Specification);
    const FoldRow& mid = eval.folds.back();
    CHECK_FALSE(mid.model.estimate.has_value());
    CHECK_FALSE(mid.model.error.empty());
    CHECK(eval.model.folds_failed >= 1);
}

TEST_CASE("jackknife preconditions") {
    const PipelineConfig cfg = uniform_config(4);
    CHECK_THROWS_AS(jackknife(synthetic::dataset(2, 1), cfg, Stage::Specification),
                    DataError);
    Dataset holey = synthetic::dataset(6, 2);
    holey.records[2].effort(Stage::Testing).reset();
    CHECK_THROWS_AS(jackknife(holey, cfg, Stage::Specification), ParameterError);
    CHECK_THROWS_AS(build_target_model(synthetic::dataset(6, 3), cfg, Stage::Planning),
                    ParameterError);
}

TEST_CASE("full evaluation produces finite metrics for every target") {
    const Dataset d = synthetic::dataset(34, 424242);
    PipelineConfig cfg; // Table-1 interval counts
    const EvaluationReport report = evaluate(d, cfg, predictable_stages());
    REQUIRE(report.stages.size() == 5);
    CHECK(report.records == 34);
    for (const auto& stage : report.stages) {
        REQUIRE(stage.model.mmre.has_value());
        CHECK(std::isfinite(*stage.model.mmre));
        CHECK(std::isfinite(*stage.model.mdmre));
        CHECK(std::isfinite(*stage.model.mean_bias));
        REQUIRE(stage.regression.mmre.has_value());
        CHECK(std::isfinite(*stage.regression.mmre));
        CHECK(stage.folds.size() == 34);
        REQUIRE(stage.wilcoxon.has_value());
        CHECK(std::isfinite(stage.wilcoxon->z_value));
        CHECK(stage.wilcoxon->p_value > 0);
        CHECK(stage.wilcoxon->p_value <= 1);
        REQUIRE(stage.boxplot_model.has_value());
        REQUIRE(stage.boxplot_regression.has_value());
    }
}
