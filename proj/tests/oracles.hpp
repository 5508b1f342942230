#pragma once

// Brute-force reference computations for the test suites. Everything here is
// deliberately written from first principles (recursion + explicit loops) and
// stays independent of the library's closed forms and index structures.

#include <cstdint>
#include <vector>

namespace oracle {

using u128 = unsigned __int128;
using Subset = std::vector<uint32_t>;

// Pascal-triangle binomial (additive route, no multiplication/division).
inline u128 binomial(int64_t a, int64_t b) {
    if (a < 0 || b < 0 || b > a) return 0;
    std::vector<u128> row(static_cast<size_t>(a) + 1, 0);
    row[0] = 1;
    for (int64_t i = 1; i <= a; ++i) {
        for (int64_t j = i; j >= 1; --j) row[j] += row[j - 1];
    }
    return row[b];
}

// All s-subsets of {0..K-1} in lexicographic order, by recursion.
inline void collect_subsets(uint32_t K, uint32_t s, uint32_t from, Subset& cur,
                            std::vector<Subset>& out) {
    if (cur.size() == s) {
        out.push_back(cur);
        return;
    }
    for (uint32_t v = from; v + (s - cur.size()) <= K; ++v) {
        cur.push_back(v);
        collect_subsets(K, s, v + 1, cur, out);
        cur.pop_back();
    }
}

inline std::vector<Subset> all_subsets(uint32_t K, uint32_t s) {
    std::vector<Subset> out;
    Subset cur;
    collect_subsets(K, s, 0, cur, out);
    return out;
}

// Every rotation's gap list, one per anchor position, by walking the circle.
inline std::vector<std::vector<uint32_t>> fiber_gap_lists(const Subset& A, uint32_t K) {
    const size_t m = A.size();
    std::vector<std::vector<uint32_t>> lists;
    for (size_t start = 0; start < m; ++start) {
        std::vector<uint32_t> gaps;
        for (size_t i = 0; i < m; ++i) {
            const uint32_t cur = A[(start + i) % m];
            const uint32_t nxt = A[(start + i + 1) % m];
            gaps.push_back(nxt > cur ? nxt - cur : nxt + K - cur);
        }
        lists.push_back(std::move(gaps));
    }
    return lists;
}

// Literal reading of the bounded-subset definition: some representation of A
// has some gap >= ell.
inline bool is_bounded(const Subset& A, uint32_t ell, uint32_t K) {
    for (const auto& gaps : fiber_gap_lists(A, K)) {
        for (uint32_t g : gaps) {
            if (g >= ell) return true;
        }
    }
    return false;
}

inline std::vector<Subset> enumerate_bounded(uint32_t K, uint32_t s, uint32_t ell) {
    std::vector<Subset> out;
    for (const Subset& A : all_subsets(K, s)) {
        if (is_bounded(A, ell, K)) out.push_back(A);
    }
    return out;
}

inline uint64_t count_bounded(uint32_t K, uint32_t s, uint32_t ell) {
    return enumerate_bounded(K, s, ell).size();
}

inline uint64_t count_bounded_through(uint32_t K, uint32_t s, uint32_t ell, uint32_t k) {
    uint64_t count = 0;
    for (const Subset& A : enumerate_bounded(K, s, ell)) {
        for (uint32_t e : A) {
            if (e == k) {
                ++count;
                break;
            }
        }
    }
    return count;
}

// Tuples over [0, cap)^s with the given sum, counted by direct recursion.
inline uint64_t compositions_below_cap(uint32_t s, uint32_t cap, uint32_t total) {
    if (s == 0) return total == 0 ? 1 : 0;
    uint64_t count = 0;
    for (uint32_t first = 0; first < cap && first <= total; ++first) {
        count += compositions_below_cap(s - 1, cap, total - first);
    }
    return count;
}

}  // namespace oracle
