#include <algorithm>
#include <cmath>

#include "analytics.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace ccbs;

TEST_CASE("metrics for the worked small instance") {
    const SchemeMetrics mx = metrics(SchemeParams::create(6, 3, 3));
    CHECK(mx.F == 18);
    CHECK(mx.R == make_rational(5, 6));
    CHECK(mx.cache_ratio == make_rational(1, 2));
    CHECK(mx.F_upper == 24);
    CHECK(mx.log2_F == doctest::Approx(std::log2(18.0)).epsilon(1e-12));
}

TEST_CASE("metrics in the all-subsets regime reproduces the baseline") {
    const SchemeMetrics mx = metrics(SchemeParams::create(50, 25, 2));
    CHECK(to_string(mx.F) == "126410606437752");
    CHECK(mx.R == make_rational(25, 26));
    CHECK(mx.cache_ratio == make_rational(1, 2));
}

TEST_CASE("n = 0 endpoint has linear subpacketization") {
    for (uint32_t K = 4; K <= 24; ++K) {
        for (uint32_t t = 1; t + 2 <= K; ++t) {
            const SchemeMetrics mx = metrics(SchemeParams::from_tn(K, t, 0));
            CHECK(mx.F_upper == K);  // K * C(m, 0)
            CHECK(mx.F <= K);
        }
    }
}

TEST_CASE("closed-form rate equals the count ratio and stays reduced") {
    for (uint32_t K = 3; K <= 16; ++K) {
        for (uint32_t m = 2; m + 1 <= K; ++m) {
            for (uint32_t ell = 1; ell <= K - m + 1; ++ell) {
                const SchemeMetrics mx = metrics(SchemeParams::create(K, m, ell));
                // metrics() already cross-validates the two routes; pin the
                // ratio against the counts independently here.
                CHECK(mx.R == make_rational(count_bounded_closed(K, m - 1, ell),
                                            count_bounded_closed(K, m, ell)));
                CHECK(mx.F == count_bounded_closed(K, m, ell));
                CHECK(mx.F <= mx.F_upper);
            }
        }
    }
}

TEST_CASE("baseline formulas") {
    const BaselineMetrics b63 = mn_baseline(6, 3);
    CHECK(b63.F_mn == 20);
    CHECK(b63.R_mn == make_rational(3, 4));

    CHECK(mn_baseline(9, 8).R_mn == make_rational(1, 9));  // t = K - 1
    CHECK(mn_baseline(50, 25).R_mn == make_rational(25, 26));
    CHECK(to_string(mn_baseline(50, 25).F_mn) == "126410606437752");
    CHECK_THROWS_AS(mn_baseline(6, 0), ParamError);
    CHECK_THROWS_AS(mn_baseline(6, 6), ParamError);
}

TEST_CASE("baseline-equivalence threshold") {
    CHECK(mn_equivalence_threshold(50, 25) == 24);
    CHECK(mn_equivalence_threshold(6, 3) == 2);
    CHECK(mn_equivalence_threshold(3, 1) == 0);  // clamped at the low end

    // At the threshold the scheme coincides with the baseline; just below the
    // worked example it does not.
    const BaselineMetrics base = mn_baseline(6, 3);
    const SchemeMetrics at = metrics(SchemeParams::from_tn(6, 3, 2));
    CHECK(at.F == base.F_mn);
    CHECK(at.R == base.R_mn);
    const SchemeMetrics below = metrics(SchemeParams::from_tn(6, 3, 1));
    CHECK(below.F == 18);
    CHECK(below.F != base.F_mn);

    for (uint32_t K = 4; K <= 20; ++K) {
        for (uint32_t t = 1; t + 2 <= K; ++t) {
            const uint32_t threshold = mn_equivalence_threshold(K, t);
            const BaselineMetrics mn = mn_baseline(K, t);
            for (uint32_t n = threshold; n <= t; ++n) {
                const SchemeMetrics mx = metrics(SchemeParams::from_tn(K, t, n));
                CHECK(mx.F == mn.F_mn);
                CHECK(mx.R == mn.R_mn);
            }
        }
    }
}

TEST_CASE("sweep rows, monotonicity and endpoints") {
    const auto rows = sweep(50, 25, 0, 25);
    REQUIRE(rows.size() == 26);
    for (size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].n == i);
        CHECK(rows[i].ell == 26 - i);
        if (i > 0) {
            CHECK(rows[i].F >= rows[i - 1].F);
            CHECK(checked_mul(rows[i].R.num, rows[i - 1].R.den) <=
                  checked_mul(rows[i - 1].R.num, rows[i].R.den));
        }
    }
    CHECK(to_string(rows.back().F) == "126410606437752");
    CHECK(rows.back().R == make_rational(25, 26));

    const auto small = sweep(6, 3, 0, 3);
    REQUIRE(small.size() == 4);
    CHECK(small[0].F == 6);
    CHECK(small[1].F == 18);
    CHECK(small[2].F == 20);
    CHECK(small[3].F == 20);

    CHECK(sweep(6, 3, 3, 2).empty());
    CHECK_THROWS_AS(sweep(6, 3, 0, 4), ParamError);
}

TEST_CASE("sweep CSV schema") {
    const auto rows = sweep(6, 3, 0, 3);
    const std::string csv = sweep_csv(rows);
    CHECK(csv.rfind("n,ell,F,log2_F,R_num,R_den,R_decimal,F_upper\n", 0) == 0);
    CHECK(csv.find("1,3,18,4.16992500144,5,6,0.833333333333,24\n") != std::string::npos);
    CHECK(csv.find("0,4,6,2.58496250072,2,1,2,6\n") != std::string::npos);
    CHECK(csv.find('\r') == std::string::npos);
    CHECK(csv.back() == '\n');
    // One line per row plus the header.
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);

    CHECK(sweep_csv({}) == "n,ell,F,log2_F,R_num,R_den,R_decimal,F_upper\n");
}
