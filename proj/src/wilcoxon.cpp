#include "farsee/wilcoxon.hpp"

#include "farsee/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace farsee {

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

namespace {

constexpr std::size_t kExactLimit = 12;

// Midranks of the combined sample plus the tie statistic sum(t^3 - t).
struct Ranking {
    std::vector<double> ranks; // aligned with the combined value vector
    double tie_term = 0;
};

Ranking midranks(const std::vector<double>& combined) {
    const std::size_t n = combined.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return combined[i] < combined[j]; });

    Ranking r;
    r.ranks.resize(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && combined[order[j + 1]] == combined[order[i]]) ++j;
        const double rank = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
        for (std::size_t k = i; k <= j; ++k) r.ranks[order[k]] = rank;
        const double t = static_cast<double>(j - i + 1);
        r.tie_term += t * t * t - t;
        i = j + 1;
    }
    return r;
}

// Two-sided permutation p over all size-n1 subsets of the midranks.
double exact_permutation_p(const std::vector<double>& ranks, std::size_t n1,
                           double observed_dev, double expected) {
    const std::size_t n = ranks.size();
    std::vector<std::size_t> pick(n1);
    std::iota(pick.begin(), pick.end(), std::size_t{0});
    std::size_t hits = 0, total = 0;
    while (true) {
        double w = 0;
        for (std::size_t idx : pick) w += ranks[idx];
        ++total;
        if (std::fabs(w - expected) >= observed_dev - 1e-9) ++hits;
        // next combination
        std::size_t k = n1;
        while (k > 0 && pick[k - 1] == n - n1 + k - 1) --k;
        if (k == 0) break;
        ++pick[k - 1];
        for (std::size_t j = k; j < n1; ++j) pick[j] = pick[j - 1] + 1;
    }
    return static_cast<double>(hits) / static_cast<double>(total);
}

} // namespace

WilcoxonResult wilcoxon_rank_sum(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) throw ParameterError("wilcoxon_rank_sum: empty sample");
    const auto n1 = static_cast<double>(a.size());
    const auto n2 = static_cast<double>(b.size());
    const double n = n1 + n2;

    std::vector<double> combined(a.begin(), a.end());
    combined.insert(combined.end(), b.begin(), b.end());
    const Ranking ranking = midranks(combined);

    WilcoxonResult result;
    for (std::size_t i = 0; i < a.size(); ++i) result.rank_sum += ranking.ranks[i];

    const double expected = n1 * (n + 1) / 2.0;
    const double variance =
        n1 * n2 / 12.0 * ((n + 1) - ranking.tie_term / (n * (n - 1)));
    if (!(variance > 0)) {
        throw DataError("degenerate rank-sum test: all values identical");
    }

    const double deviation = result.rank_sum - expected;
    // continuity correction of 0.5 toward the mean, never past it
    const double shifted = std::max(0.0, std::fabs(deviation) - 0.5);
    result.z_value = (deviation < 0 ? -shifted : shifted) / std::sqrt(variance);
    result.p_value = std::min(1.0, std::erfc(std::fabs(result.z_value) / std::sqrt(2.0)));

    if (combined.size() <= kExactLimit) {
        result.p_exact = exact_permutation_p(ranking.ranks, a.size(),
                                             std::fabs(deviation), expected);
    }
    return result;
}

} // namespace farsee
