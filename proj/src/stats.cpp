#include "farsee/stats.hpp"

#include "farsee/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <string>

namespace farsee {

double mean(std::span<const double> values) {
    if (values.empty()) throw ParameterError("mean of empty sample");
    double sum = 0;
    for (double v : values) sum += v;
    return sum / static_cast<double>(values.size());
}

double quantile(std::span<const double> values, double p) {
    if (values.empty()) throw ParameterError("quantile of empty sample");
    if (!(p >= 0.0 && p <= 1.0)) throw ParameterError("quantile fraction must be in [0, 1]");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const auto n = sorted.size();
    if (n == 1) return sorted[0];
    const double pos = p * static_cast<double>(n - 1); // 0-based fractional position
    const auto lo = static_cast<std::size_t>(pos);
    const auto hi = std::min(lo + 1, n - 1);
    const double frac = pos - static_cast<double>(lo);
    if (frac == 0.0) return sorted[lo];
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

double median(std::span<const double> values) { return quantile(values, 0.5); }

Quartiles quartiles(std::span<const double> values) {
    return {quantile(values, 0.25), quantile(values, 0.5), quantile(values, 0.75)};
}

BoxplotSummary boxplot_stats(std::span<const double> values) {
    if (values.size() < 4) throw ParameterError("boxplot_stats requires at least 4 values");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());

    BoxplotSummary box;
    const Quartiles q = quartiles(sorted);
    box.q1 = q.q1;
    box.median = q.q2;
    box.q3 = q.q3;
    box.iqr = q.iqr();

    const double fence_low = box.q1 - 1.5 * box.iqr;
    const double fence_high = box.q3 + 1.5 * box.iqr;
    box.whisker_low = box.q1;
    box.whisker_high = box.q3;
    for (double v : sorted) {
        if (v >= fence_low) { box.whisker_low = v; break; }
    }
    for (auto it = sorted.rbegin(); it != sorted.rend(); ++it) {
        if (*it <= fence_high) { box.whisker_high = *it; break; }
    }
    for (double v : sorted) {
        if (v < fence_low || v > fence_high) box.outliers.push_back(v);
    }
    return box;
}

namespace {

using int128 = __int128;

// Parses the shortest round-trip decimal of `x` into digits/10^scale.
// Returns false when the exponent is too extreme for integer comparison.
bool decimal_parts(double x, std::int64_t& digits, int& scale) {
    char buf[40];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    if (ec != std::errc()) return false;
    std::string s(buf, end);

    std::int64_t mant = 0;
    int frac_digits = 0;
    int exp10 = 0;
    bool neg = false;
    std::size_t i = 0;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) { neg = s[i] == '-'; ++i; }
    bool in_frac = false;
    for (; i < s.size(); ++i) {
        char c = s[i];
        if (c == '.') { in_frac = true; continue; }
        if (c == 'e' || c == 'E') {
            exp10 = std::atoi(s.c_str() + i + 1);
            break;
        }
        if (mant > (std::int64_t{1} << 56)) return false; // > 17 digits, give up
        mant = mant * 10 + (c - '0');
        if (in_frac) ++frac_digits;
    }
    int sc = frac_digits - exp10;
    while (sc < 0) {
        if (mant > (std::int64_t{1} << 56)) return false;
        mant *= 10;
        ++sc;
    }
    if (sc > 18) return false; // keep 128-bit products in range
    digits = neg ? -mant : mant;
    scale = sc;
    return true;
}

int128 pow10_128(int k) {
    int128 r = 1;
    while (k-- > 0) r *= 10;
    return r;
}

} // namespace

ExactThreshold::ExactThreshold(double threshold) : value_(threshold) {
    exact_ = std::isfinite(threshold) && decimal_parts(threshold, digits_, scale_);
}

bool ExactThreshold::met_by(std::int64_t num, std::int64_t den) const {
    if (den <= 0) throw ParameterError("fraction denominator must be positive");
    if (!exact_) return static_cast<double>(num) / static_cast<double>(den) >= value_;
    // num / den >= digits / 10^scale  <=>  num * 10^scale >= digits * den
    const int128 lhs = static_cast<int128>(num) * pow10_128(scale_);
    const int128 rhs = static_cast<int128>(digits_) * static_cast<int128>(den);
    return lhs >= rhs;
}

bool fraction_at_least(std::int64_t num, std::int64_t den, double threshold) {
    return ExactThreshold(threshold).met_by(num, den);
}

} // namespace farsee
