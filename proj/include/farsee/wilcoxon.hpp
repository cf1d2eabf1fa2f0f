#pragma once

#include <optional>
#include <span>

namespace farsee {

struct WilcoxonResult {
    double rank_sum = 0; // sum of sample a's midranks over the combined sample
    double z_value = 0;  // normal approximation, tie-corrected, continuity-corrected
    double p_value = 0;  // two-sided, from the normal approximation
    std::optional<double> p_exact; // exhaustive permutation p, combined size <= 12
};

// Two-sample Wilcoxon rank-sum (Mann-Whitney) test with midranks for ties.
// Throws DataError when all values across both samples are identical (zero
// rank variance). For small combined samples an exact permutation p-value is
// reported alongside the normal approximation.
WilcoxonResult wilcoxon_rank_sum(std::span<const double> a, std::span<const double> b);

// Standard normal CDF.
double normal_cdf(double z);

} // namespace farsee
