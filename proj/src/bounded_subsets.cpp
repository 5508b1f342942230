#include "bounded_subsets.hpp"

#include <algorithm>
#include <numeric>

namespace ccbs {

SchemeParams SchemeParams::create(uint32_t K, uint32_t m, uint32_t ell) {
    if (m < 2 || m + 1 > K) {
        throw ParamError("scheme requires 2 <= m <= K - 1 (got K=" + std::to_string(K) +
                         ", m=" + std::to_string(m) + ")");
    }
    if (ell < 1 || ell > K - m + 1) {
        throw ParamError("scheme requires 1 <= ell <= K - m + 1 (got K=" + std::to_string(K) +
                         ", m=" + std::to_string(m) + ", ell=" + std::to_string(ell) + ")");
    }
    return SchemeParams{K, m, ell};
}

SchemeParams SchemeParams::from_tn(uint32_t K, uint32_t t, uint32_t n) {
    if (t < 1 || t + 2 > K) {
        throw ParamError("scheme requires 1 <= t <= K - 2 (got K=" + std::to_string(K) +
                         ", t=" + std::to_string(t) + ")");
    }
    if (n > t) {
        throw ParamError("scheme requires 0 <= n <= t (got t=" + std::to_string(t) +
                         ", n=" + std::to_string(n) + ")");
    }
    const uint32_t m = K - t;
    const uint32_t ell = K - m + 1 - n;
    return create(K, m, ell);
}

Rational SchemeParams::cache_ratio() const {
    return make_rational(t(), K);
}

void validate_subset(const UserSubset& A, uint32_t K) {
    if (A.empty()) throw ParamError("subset must be nonempty");
    for (size_t i = 0; i < A.size(); ++i) {
        if (A[i] >= K) throw ParamError("subset element out of Z_K range");
        if (i > 0 && A[i] <= A[i - 1]) throw ParamError("subset not strictly increasing");
    }
}

namespace {

void validate_gap_vector(const GapVector& v, uint32_t K) {
    if (v.anchor >= K) throw ParamError("gap-vector anchor out of Z_K range");
    if (v.gaps.empty()) throw ParamError("gap vector must have at least one gap");
    uint64_t sum = 0;
    for (uint32_t g : v.gaps) {
        if (g < 1) throw ParamError("gap-vector gaps must be >= 1");
        sum += g;
    }
    if (sum != K) throw ParamError("gap-vector gaps must sum to K");
}

// Largest circular gap of a canonical subset; the whole circle for singletons.
uint32_t max_gap(const UserSubset& A, uint32_t K) {
    if (A.size() == 1) return K;
    uint32_t best = A.front() + K - A.back();  // wrap-around gap
    for (size_t i = 1; i < A.size(); ++i) best = std::max(best, A[i] - A[i - 1]);
    return best;
}

}  // namespace

UserSubset expand(const GapVector& v, uint32_t K) {
    validate_gap_vector(v, K);
    UserSubset out;
    out.reserve(v.gaps.size());
    uint64_t pos = v.anchor;
    out.push_back(v.anchor);
    for (size_t i = 0; i + 1 < v.gaps.size(); ++i) {
        pos = (pos + v.gaps[i]) % K;
        out.push_back(static_cast<uint32_t>(pos));
    }
    std::sort(out.begin(), out.end());
    return out;
}

GapVector decompose(const UserSubset& A, uint32_t k, uint32_t K) {
    validate_subset(A, K);
    const auto it = std::lower_bound(A.begin(), A.end(), k);
    if (it == A.end() || *it != k) throw ParamError("anchor is not a member of the subset");
    const size_t m = A.size();
    const size_t start = static_cast<size_t>(it - A.begin());

    GapVector v;
    v.anchor = k;
    v.gaps.reserve(m);
    for (size_t step = 1; step <= m; ++step) {
        const uint32_t cur = A[(start + step - 1) % m];
        const uint32_t nxt = A[(start + step) % m];
        v.gaps.push_back(nxt > cur ? nxt - cur : nxt + K - cur);
    }
    return v;
}

std::vector<GapVector> fiber(const UserSubset& A, uint32_t K) {
    validate_subset(A, K);
    std::vector<GapVector> out;
    out.reserve(A.size());
    for (uint32_t k : A) out.push_back(decompose(A, k, K));
    return out;
}

bool is_bounded(const UserSubset& A, uint32_t ell, uint32_t K) {
    validate_subset(A, K);
    if (ell < 1) throw ParamError("ell must be >= 1");
    // One gap list suffices: all fiber elements are circular shifts, so they
    // share the same maximal gap.
    return max_gap(A, K) >= ell;
}

namespace {

void validate_count_params(uint32_t K, uint32_t s, uint32_t ell) {
    if (K < 1 || s < 1 || s > K) {
        throw ParamError("counting requires 1 <= s <= K (got K=" + std::to_string(K) +
                         ", s=" + std::to_string(s) + ")");
    }
    if (ell < 1 || ell > K - s + 1) {
        throw ParamError("counting requires 1 <= ell <= K - s + 1 (got K=" + std::to_string(K) +
                         ", s=" + std::to_string(s) + ", ell=" + std::to_string(ell) + ")");
    }
}

}  // namespace

std::vector<UserSubset> enumerate_bounded(uint32_t K, uint32_t s, uint32_t ell) {
    validate_count_params(K, s, ell);
    std::vector<UserSubset> out;
    // Lexicographic walk over all s-subsets of {0..K-1}.
    UserSubset cur(s);
    std::iota(cur.begin(), cur.end(), 0);
    while (true) {
        if (is_bounded(cur, ell, K)) out.push_back(cur);
        // Advance to the next combination.
        size_t i = s;
        while (i > 0 && cur[i - 1] == K - s + (i - 1)) --i;
        if (i == 0) break;
        ++cur[i - 1];
        for (size_t j = i; j < s; ++j) cur[j] = cur[j - 1] + 1;
    }
    return out;
}

int128 binomial(int64_t a, int64_t b) {
    if (b < 0 || a < 0 || b > a) return 0;
    if (b > a - b) b = a - b;
    int128 r = 1;
    for (int64_t i = 1; i <= b; ++i) {
        r = checked_mul(r, a - b + i);
        r /= i;  // exact: r is C(a-b+i, i) after this step
    }
    return r;
}

int128 forbidden_composition_count(uint32_t s, uint32_t cap, uint32_t total) {
    if (s < 1) throw ParamError("composition count requires s >= 1");
    if (cap < 1) throw ParamError("composition count requires cap >= 1");
    int128 sum = 0;
    for (uint32_t i = 0; i <= s; ++i) {
        const int64_t top = static_cast<int64_t>(total) + s - 1 -
                            static_cast<int64_t>(i) * cap;
        const int128 term = checked_mul(binomial(s, i), binomial(top, static_cast<int64_t>(s) - 1));
        sum = (i % 2 == 0) ? checked_add(sum, term) : checked_sub(sum, term);
    }
    return sum;
}

int128 count_containing(uint32_t K, uint32_t s, uint32_t ell) {
    validate_count_params(K, s, ell);
    int128 sum = 0;
    for (uint32_t i = 1; i <= s; ++i) {
        const int64_t top = static_cast<int64_t>(K) - 1 -
                            static_cast<int64_t>(i) * (static_cast<int64_t>(ell) - 1);
        const int128 term = checked_mul(binomial(s, i), binomial(top, static_cast<int64_t>(s) - 1));
        sum = (i % 2 == 1) ? checked_add(sum, term) : checked_sub(sum, term);
    }
    return sum;
}

int128 count_bounded_closed(uint32_t K, uint32_t s, uint32_t ell) {
    const int128 through_point = count_containing(K, s, ell);
    const int128 incidences = checked_mul(static_cast<int128>(K), through_point);
    if (incidences < 0 || incidences % s != 0) {
        throw Error("incidence count not divisible by subset size");
    }
    return incidences / s;
}

int128 count_bounded_upper(uint32_t K, uint32_t s, uint32_t ell) {
    validate_count_params(K, s, ell);
    return checked_mul(static_cast<int128>(K),
                       binomial(static_cast<int64_t>(K) - ell + 1, s));
}

}  // namespace ccbs
