#pragma once

#include <span>

namespace farsee {

// Relative estimation error, signed: positive when the model underestimates.
// Undefined for actual == 0 (throws DataError; evaluation flags such folds).
double bias(double actual, double estimated);

// Mean magnitude of relative error over a bias sample.
double mmre(std::span<const double> biases);

// Median magnitude of relative error (midpoint convention for even length).
double mdmre(std::span<const double> biases);

} // namespace farsee
