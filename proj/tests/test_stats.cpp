#include "farsee/stats.hpp"

#include "farsee/errors.hpp"

#include <doctest.h>

#include <vector>

using namespace farsee;

TEST_CASE("quantile uses linear interpolation between order statistics") {
    // position p*(n-1)+1, 1-based
    const std::vector<double> v = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    CHECK(quantile(v, 0.25) == doctest::Approx(3.25).epsilon(1e-12));
    CHECK(quantile(v, 0.5) == doctest::Approx(5.5).epsilon(1e-12));
    CHECK(quantile(v, 0.75) == doctest::Approx(7.75).epsilon(1e-12));
    CHECK(quantile(v, 0.0) == 1);
    CHECK(quantile(v, 1.0) == 10);

    const std::vector<double> odd = {5, 1, 3};
    CHECK(median(odd) == 3);
    const std::vector<double> even = {0.1, 0.3};
    CHECK(median(even) == doctest::Approx(0.2).epsilon(1e-12));

    CHECK_THROWS_AS(quantile(std::vector<double>{}, 0.5), ParameterError);
    CHECK_THROWS_AS(quantile(v, 1.5), ParameterError);
}

TEST_CASE("boxplot summary") {
    SUBCASE("far point becomes an outlier") {
        const std::vector<double> v = {1, 2, 3, 4, 100};
        const BoxplotSummary box = boxplot_stats(v);
        CHECK(box.median == 3);
        CHECK(box.q1 == 2);
        CHECK(box.q3 == 4);
        CHECK(box.iqr == 2);
        CHECK(box.whisker_low == 1);
        CHECK(box.whisker_high == 4);
        REQUIRE(box.outliers.size() == 1);
        CHECK(box.outliers[0] == 100);
    }
    SUBCASE("all equal collapses to a zero-width box") {
        const std::vector<double> v = {7, 7, 7, 7, 7};
        const BoxplotSummary box = boxplot_stats(v);
        CHECK(box.median == 7);
        CHECK(box.iqr == 0);
        CHECK(box.whisker_low == 7);
        CHECK(box.whisker_high == 7);
        CHECK(box.outliers.empty());
    }
    SUBCASE("symmetric data centres the median") {
        const std::vector<double> v = {1, 2, 3, 4, 5};
        const BoxplotSummary box = boxplot_stats(v);
        CHECK(box.median - box.q1 == box.q3 - box.median);
    }
    SUBCASE("requires at least 4 values") {
        CHECK_THROWS_AS(boxplot_stats(std::vector<double>{1, 2, 3}), ParameterError);
    }
}

TEST_CASE("exact decimal threshold comparison") {
    // one occurrence in 34 transactions meets min support 0.01
    CHECK(fraction_at_least(1, 34, 0.01));
    // and fails a threshold just above 1/34
    CHECK_FALSE(fraction_at_least(1, 34, 0.0295));
    // ratios landing exactly on the configured decimal pass
    CHECK(fraction_at_least(2, 10, 0.2));
    CHECK(fraction_at_least(3, 10, 0.3));
    CHECK(fraction_at_least(1, 4, 0.25));
    CHECK_FALSE(fraction_at_least(2, 10, 0.21));
    CHECK_FALSE(fraction_at_least(0, 10, 0.01));
    CHECK(fraction_at_least(10, 10, 1.0));
    CHECK_FALSE(fraction_at_least(9, 10, 1.0));

    const ExactThreshold t(0.8);
    CHECK(t.met_by(4, 5));
    CHECK_FALSE(t.met_by(39, 50)); // 0.78 < 0.8
    CHECK_THROWS_AS(t.met_by(1, 0), ParameterError);
}
