#include "farsee/metrics.hpp"

#include "farsee/errors.hpp"
#include "farsee/stats.hpp"

#include <cmath>
#include <vector>

namespace farsee {

double bias(double actual, double estimated) {
    if (actual == 0) throw DataError("bias undefined for actual effort 0");
    return (actual - estimated) / actual;
}

namespace {

std::vector<double> abs_values(std::span<const double> biases) {
    if (biases.empty()) throw ParameterError("empty bias sample");
    std::vector<double> out;
    out.reserve(biases.size());
    for (double b : biases) out.push_back(std::fabs(b));
    return out;
}

} // namespace

double mmre(std::span<const double> biases) { return mean(abs_values(biases)); }

double mdmre(std::span<const double> biases) { return median(abs_values(biases)); }

} // namespace farsee
