#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace farsee {

double mean(std::span<const double> values);

// Quantile convention used project-wide: linear interpolation between order
// statistics at position p*(n-1)+1 (1-based). quantile(v, 0.5) is the median
// (midpoint of the two central order statistics for even n). Input need not
// be sorted. Throws ParameterError on empty input or p outside [0, 1].
double quantile(std::span<const double> values, double p);

double median(std::span<const double> values);

struct Quartiles {
    double q1 = 0;
    double q2 = 0;
    double q3 = 0;
    double iqr() const { return q3 - q1; }
};

Quartiles quartiles(std::span<const double> values);

struct BoxplotSummary {
    double median = 0;
    double q1 = 0;
    double q3 = 0;
    double iqr = 0;
    double whisker_low = 0;  // furthest data point within q1 - 1.5*iqr
    double whisker_high = 0; // furthest data point within q3 + 1.5*iqr
    std::vector<double> outliers; // points beyond the whiskers, ascending
};

// Five-number summary with 1.5*IQR whiskers clipped to data extremes.
// Requires at least 4 values.
BoxplotSummary boxplot_stats(std::span<const double> values);

// Exact comparison of an integer ratio against a decimal threshold.
//
// The threshold double is interpreted as the shortest decimal that round-trips
// to it (i.e. what was written in a config file), and the comparison
// num/den >= threshold is carried out in integer arithmetic. This keeps
// support/confidence cut-offs stable when a count ratio lands exactly on the
// configured value, where a floating-point divide would flicker.
class ExactThreshold {
public:
    explicit ExactThreshold(double threshold);

    // num/den >= threshold, exactly. Requires den > 0 and 0 <= num <= den range
    // within int64; den must stay below 1e15.
    bool met_by(std::int64_t num, std::int64_t den) const;

    double value() const { return value_; }

private:
    double value_;
    std::int64_t digits_ = 0; // threshold == digits_ / 10^scale_ when exact_
    int scale_ = 0;
    bool exact_ = true;       // false for extreme exponents; falls back to <=/>= on value_
};

bool fraction_at_least(std::int64_t num, std::int64_t den, double threshold);

} // namespace farsee
