#include "farsee/discretize.hpp"

#include "farsee/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace farsee {

Universe build_universe(std::span<const double> values, const PaddingPolicy& pad) {
    if (values.empty()) throw ParameterError("build_universe: no values");
    double lo = values[0], hi = values[0];
    for (double v : values) {
        if (!std::isfinite(v) || v < 0) {
            throw ParameterError("build_universe: values must be finite and non-negative");
        }
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }

    Universe u;
    if (pad.mode == PaddingPolicy::Mode::explicit_pads) {
        if (!(pad.d1 > 0) || !(pad.d2 > 0)) {
            throw ParameterError("explicit pads must be positive");
        }
        u.d1 = pad.d1;
        u.d2 = pad.d2;
    } else {
        if (!(pad.fraction > 0)) throw ParameterError("pad fraction must be positive");
        double pad_width = pad.fraction * (hi - lo);
        if (hi == lo) pad_width = pad.fraction * std::max(1.0, hi);
        u.d1 = u.d2 = pad_width;
    }
    u.lower = lo - u.d1;
    u.upper = hi + u.d2;
    if (!(u.lower < u.upper)) {
        throw DataError("degenerate universe: lower >= upper");
    }
    return u;
}

IntervalScheme partition(Stage stage, const Universe& u, int n) {
    if (n < 1) throw ParameterError("interval count must be >= 1, got " + std::to_string(n));
    IntervalScheme s;
    s.stage = stage;
    s.universe = u;
    s.n = n;
    s.length = (u.upper - u.lower) / n;
    s.bounds.resize(static_cast<std::size_t>(n) + 1);
    s.bounds.front() = u.lower;
    s.bounds.back() = u.upper; // keep the last edge exact
    for (int i = 1; i < n; ++i) s.bounds[static_cast<std::size_t>(i)] = u.lower + i * s.length;
    s.midpoints.resize(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        s.midpoints[static_cast<std::size_t>(j)] =
            (s.bounds[static_cast<std::size_t>(j)] + s.bounds[static_cast<std::size_t>(j) + 1]) / 2;
    }
    return s;
}

Location locate(const IntervalScheme& s, double v) {
    if (v < s.universe.lower) return {1, true};
    if (v > s.universe.upper) return {s.n, true};
    if (v == s.universe.upper) return {s.n, false};
    // first bound strictly above v; bounds[0] == lower <= v, so idx >= 1
    auto it = std::upper_bound(s.bounds.begin(), s.bounds.end(), v);
    int idx = static_cast<int>(it - s.bounds.begin());
    return {std::min(idx, s.n), false};
}

double membership(int fuzzy_set, int interval, int n) {
    if (fuzzy_set < 1 || fuzzy_set > n || interval < 1 || interval > n) {
        throw ParameterError("membership index out of range");
    }
    const int d = std::abs(fuzzy_set - interval);
    if (d == 0) return 1.0;
    if (d == 1) return 0.5;
    return 0.0;
}

double defuzzify(std::span<const double> midpoints, int fuzzy_set) {
    const int n = static_cast<int>(midpoints.size());
    if (n < 1) throw ParameterError("defuzzify: empty midpoint list");
    if (fuzzy_set < 1 || fuzzy_set > n) {
        throw ParameterError("defuzzify: fuzzy set index out of range");
    }
    double num = 0, den = 0;
    for (int j = 1; j <= n; ++j) {
        const double mu = membership(fuzzy_set, j, n);
        num += mu * midpoints[static_cast<std::size_t>(j - 1)];
        den += mu;
    }
    return num / den; // den >= 1: the set's own interval always has weight 1
}

double defuzzify(const IntervalScheme& s, int fuzzy_set) {
    return defuzzify(std::span<const double>(s.midpoints), fuzzy_set);
}

} // namespace farsee
