#pragma once

#include "farsee/dataset.hpp"
#include "farsee/stage.hpp"

#include <map>
#include <vector>

namespace farsee {

// Baseline estimator: ordinary least squares on log target effort with raw
// prior-stage efforts as regressors. Predictions exponentiate the linear
// form, so they are always positive.
struct RegressionModel {
    Stage target = Stage::Specification;
    std::vector<Stage> regressors; // prior stages in pipeline order
    double intercept = 0;
    std::vector<double> coefficients; // one per regressor

    double predict(const std::map<Stage, double>& prior_efforts) const;
};

// Fits ln(effort_target) = b0 + sum_i b_i * effort_i over the training set.
// Requires every target effort > 0 and more records than regressors + 1;
// a rank-deficient design is reported naming the collinear columns.
RegressionModel fit_exp_regression(const Dataset& train, Stage target);

} // namespace farsee
