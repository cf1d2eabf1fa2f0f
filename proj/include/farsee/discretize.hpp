#pragma once

#include "farsee/stage.hpp"

#include <span>
#include <vector>

namespace farsee {

// How a stage's universe of discourse is padded beyond the observed
// [min, max]. Explicit pads reproduce hand-chosen margins; the fraction
// policy derives symmetric pads from the data range.
struct PaddingPolicy {
    enum class Mode { fraction, explicit_pads };
    Mode mode = Mode::fraction;
    double fraction = 0.05;
    double d1 = 0;
    double d2 = 0;

    static PaddingPolicy fraction_of_range(double f) {
        PaddingPolicy p;
        p.mode = Mode::fraction;
        p.fraction = f;
        return p;
    }
    static PaddingPolicy explicit_pads(double d1, double d2) {
        PaddingPolicy p;
        p.mode = Mode::explicit_pads;
        p.d1 = d1;
        p.d2 = d2;
        return p;
    }
    bool operator==(const PaddingPolicy&) const = default;
};

// Padded universe [min - d1, max + d2] covering one stage's effort values.
struct Universe {
    double lower = 0;
    double upper = 0;
    double d1 = 0;
    double d2 = 0;

    bool operator==(const Universe&) const = default;
};

// Builds the universe from observed values. With the fraction policy,
// d1 = d2 = f * (max - min); when the values are all equal the pad degrades
// to f * max(1, max) so the universe keeps positive width.
Universe build_universe(std::span<const double> values, const PaddingPolicy& pad);

// Equal-width partition of a universe into n intervals W_1..W_n. Intervals
// are half-open [bounds[i-1], bounds[i]) except W_n, which is closed at the
// upper edge.
struct IntervalScheme {
    Stage stage = Stage::Planning;
    Universe universe;
    int n = 0;
    double length = 0;             // (upper - lower) / n
    std::vector<double> bounds;    // n + 1 edges, bounds[i] = lower + i*length
    std::vector<double> midpoints; // n interval centres

    bool operator==(const IntervalScheme&) const = default;
};

IntervalScheme partition(Stage stage, const Universe& u, int n);

// Interval index (1-based) of a value, plus whether the value fell outside
// the universe and was clamped to the nearest edge interval.
struct Location {
    int index = 0;
    bool clamped = false;
};

Location locate(const IntervalScheme& s, double v);

// Membership of interval W_j in fuzzy set A_i: 1 at the set's own interval,
// 0.5 at immediate neighbours, 0 elsewhere. Indices are 1-based.
double membership(int fuzzy_set, int interval, int n);

// Crisp value of fuzzy set A_i over the given interval midpoints:
// sum_j mu_i(W_j) * m(W_j) / sum_j mu_i(W_j).
double defuzzify(std::span<const double> midpoints, int fuzzy_set);
double defuzzify(const IntervalScheme& s, int fuzzy_set);

} // namespace farsee
