#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bounded_subsets.hpp"

namespace ccbs {

/// Exact figures of merit for one scheme instance.
struct SchemeMetrics {
    SchemeParams params;
    int128 F = 0;          // subpacketization |B(m)|
    Rational R;            // |B(m-1)| / |B(m)|, reduced
    Rational cache_ratio;  // t/K, reduced
    int128 F_upper = 0;    // K * C(m + n, n)
    double log2_F = 0.0;
};

/// The classical uncoded-placement baseline at cache ratio t/K.
struct BaselineMetrics {
    int128 F_mn = 0;  // C(K, t)
    Rational R_mn;    // (K - t) / (1 + t), reduced
};

/// Computes F, R, M/N and the subpacketization bound. R is evaluated both as
/// the bounded-count ratio and as the closed-form expression; a disagreement
/// is an internal error.
SchemeMetrics metrics(const SchemeParams& params);

BaselineMetrics mn_baseline(uint32_t K, uint32_t t);

/// Smallest n for which the scheme coincides with the baseline: the first
/// integer strictly above t - K/(K-t), evaluated in exact rational
/// arithmetic and clamped to [0, t].
uint32_t mn_equivalence_threshold(uint32_t K, uint32_t t);

struct SweepRow {
    uint32_t n = 0;
    uint32_t ell = 0;
    int128 F = 0;
    double log2_F = 0.0;
    Rational R;
    int128 F_upper = 0;
};

/// One row per n in [n_min, n_max] (empty when n_min > n_max). Verifies that
/// F is nondecreasing and R nonincreasing across the rows and raises an
/// error on a violation instead of assuming it.
std::vector<SweepRow> sweep(uint32_t K, uint32_t t, uint32_t n_min, uint32_t n_max);

/// CSV with header n,ell,F,log2_F,R_num,R_den,R_decimal,F_upper; LF line
/// endings, no trailing separators.
std::string sweep_csv(const std::vector<SweepRow>& rows);

}  // namespace ccbs
