#include "farsee/regression.hpp"

#include "farsee/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <string>

namespace farsee {

double RegressionModel::predict(const std::map<Stage, double>& prior_efforts) const {
    double linear = intercept;
    for (std::size_t i = 0; i < regressors.size(); ++i) {
        auto it = prior_efforts.find(regressors[i]);
        if (it == prior_efforts.end()) {
            throw ParameterError("regression query missing effort for stage " +
                                 std::string(stage_code(regressors[i])));
        }
        linear += coefficients[i] * it->second;
    }
    return std::exp(linear);
}

RegressionModel fit_exp_regression(const Dataset& train, Stage target) {
    const std::vector<Stage> priors = prior_stages(target);
    if (priors.empty()) {
        throw ParameterError("regression target must have at least one prior stage");
    }
    const auto rows = static_cast<Eigen::Index>(train.records.size());
    const auto cols = static_cast<Eigen::Index>(priors.size()) + 1;
    if (rows <= cols) {
        throw DataError("regression needs more than " + std::to_string(cols) +
                        " records, got " + std::to_string(rows));
    }

    // canonical row order: the fit is row-order-invariant mathematically, and
    // sorting keeps it bit-identical when the caller permutes its records
    std::vector<const ProjectRecord*> ordered;
    ordered.reserve(train.records.size());
    for (const auto& rec : train.records) ordered.push_back(&rec);
    std::sort(ordered.begin(), ordered.end(),
              [](const ProjectRecord* a, const ProjectRecord* b) {
                  return a->project_id < b->project_id;
              });

    Eigen::MatrixXd design(rows, cols);
    Eigen::VectorXd log_target(rows);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const ProjectRecord& rec = *ordered[static_cast<std::size_t>(r)];
        const auto& y = rec.effort(target);
        if (!y || !rec.complete()) {
            throw ParameterError("regression training record '" + rec.project_id +
                                 "' has missing efforts");
        }
        if (*y <= 0) {
            throw DataError("regression requires positive target efforts; record '" +
                            rec.project_id + "' has " + std::string(stage_code(target)) +
                            " = " + std::to_string(*y));
        }
        log_target(r) = std::log(*y);
        design(r, 0) = 1.0;
        for (std::size_t c = 0; c < priors.size(); ++c) {
            design(r, static_cast<Eigen::Index>(c) + 1) = *rec.effort(priors[c]);
        }
    }

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
    if (qr.rank() < cols) {
        // The non-pivot columns are the ones expressible from the others.
        std::string collinear;
        const auto& perm = qr.colsPermutation().indices();
        for (Eigen::Index k = qr.rank(); k < cols; ++k) {
            const Eigen::Index col = perm(k);
            if (!collinear.empty()) collinear += ", ";
            collinear += col == 0 ? "intercept"
                                  : std::string(stage_code(priors[static_cast<std::size_t>(col) - 1]));
        }
        throw DataError("rank-deficient regression design; collinear columns: " + collinear);
    }

    const Eigen::VectorXd beta = qr.solve(log_target);
    RegressionModel model;
    model.target = target;
    model.regressors = priors;
    model.intercept = beta(0);
    model.coefficients.assign(beta.data() + 1, beta.data() + cols);
    return model;
}

} // namespace farsee
