#include "analytics.hpp"

#include <cstdio>

namespace ccbs {

SchemeMetrics metrics(const SchemeParams& params) {
    const uint32_t K = params.K, m = params.m, ell = params.ell;
    SchemeMetrics out;
    out.params = params;
    out.F = count_bounded_closed(K, m, ell);
    out.cache_ratio = params.cache_ratio();

    const Rational from_counts = make_rational(count_bounded_closed(K, m - 1, ell), out.F);
    const Rational closed_form = make_rational(
        checked_mul(static_cast<int128>(m), count_containing(K, m - 1, ell)),
        checked_mul(static_cast<int128>(m - 1), count_containing(K, m, ell)));
    if (!(from_counts == closed_form)) {
        throw Error("rate disagreement between count ratio and closed form");
    }
    out.R = from_counts;

    out.F_upper = checked_mul(static_cast<int128>(K),
                              binomial(static_cast<int64_t>(m) + params.n(), params.n()));
    out.log2_F = log2_int128(out.F);
    return out;
}

BaselineMetrics mn_baseline(uint32_t K, uint32_t t) {
    if (t < 1 || t + 1 > K) throw ParamError("baseline requires 1 <= t <= K - 1");
    BaselineMetrics out;
    out.F_mn = binomial(K, t);
    out.R_mn = make_rational(static_cast<int128>(K) - t, static_cast<int128>(t) + 1);
    return out;
}

uint32_t mn_equivalence_threshold(uint32_t K, uint32_t t) {
    if (t < 1 || t + 2 > K) throw ParamError("threshold requires 1 <= t <= K - 2");
    // t - K/(K-t) as the exact fraction (t(K-t) - K) / (K-t); K-t > 0.
    const int64_t den = static_cast<int64_t>(K) - t;
    const int64_t num = static_cast<int64_t>(t) * den - K;
    // Smallest integer strictly greater than num/den: floor division plus one.
    int64_t fl = num / den;
    if (num % den != 0 && num < 0) --fl;
    const int64_t threshold = fl + 1;
    if (threshold < 0) return 0;
    if (threshold > static_cast<int64_t>(t)) return t;
    return static_cast<uint32_t>(threshold);
}

std::vector<SweepRow> sweep(uint32_t K, uint32_t t, uint32_t n_min, uint32_t n_max) {
    if (t < 1 || t + 2 > K) throw ParamError("sweep requires 1 <= t <= K - 2");
    std::vector<SweepRow> rows;
    if (n_min > n_max) return rows;
    if (n_max > t) throw ParamError("sweep range exceeds n <= t");
    for (uint32_t n = n_min; n <= n_max; ++n) {
        const SchemeMetrics mx = metrics(SchemeParams::from_tn(K, t, n));
        rows.push_back(SweepRow{n, mx.params.ell, mx.F, mx.log2_F, mx.R, mx.F_upper});
    }
    for (size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].F < rows[i - 1].F) throw Error("F not nondecreasing across sweep");
        // R_i <= R_{i-1} as cross-multiplied integers.
        if (checked_mul(rows[i].R.num, rows[i - 1].R.den) >
            checked_mul(rows[i - 1].R.num, rows[i].R.den)) {
            throw Error("R not nonincreasing across sweep");
        }
    }
    return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::string out = "n,ell,F,log2_F,R_num,R_den,R_decimal,F_upper\n";
    char buf[64];
    for (const SweepRow& r : rows) {
        out += std::to_string(r.n);
        out += ',';
        out += std::to_string(r.ell);
        out += ',';
        out += to_string(r.F);
        out += ',';
        std::snprintf(buf, sizeof(buf), "%.12g", r.log2_F);
        out += buf;
        out += ',';
        out += to_string(r.R.num);
        out += ',';
        out += to_string(r.R.den);
        out += ',';
        out += decimal_string(r.R);
        out += ',';
        out += to_string(r.F_upper);
        out += '\n';
    }
    return out;
}

}  // namespace ccbs
