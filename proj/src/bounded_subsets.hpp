#pragma once

#include <cstdint>
#include <vector>

#include "checked_int.hpp"

namespace ccbs {

/// A subset of Z_K in canonical form: strictly increasing, values in [0, K).
using UserSubset = std::vector<uint32_t>;

/// Circular-gap representation of a subset of Z_K: an anchor element plus the
/// circular distances walked anchor -> next -> ... -> back to anchor. Valid
/// when every gap is >= 1 and the gaps sum to K.
struct GapVector {
    uint32_t anchor = 0;
    std::vector<uint32_t> gaps;

    bool operator==(const GapVector&) const = default;
};

/// Validated (K, m, ell) triple for the caching construction, with the
/// derived quantities t = K - m and n = K - m + 1 - ell.
struct SchemeParams {
    uint32_t K = 0;
    uint32_t m = 0;
    uint32_t ell = 0;

    /// Validates 2 <= m <= K - 1 and 1 <= ell <= K - m + 1.
    static SchemeParams create(uint32_t K, uint32_t m, uint32_t ell);

    /// Same scheme parameterized by t = K - m and n = K - m + 1 - ell.
    static SchemeParams from_tn(uint32_t K, uint32_t t, uint32_t n);

    uint32_t t() const { return K - m; }
    uint32_t n() const { return K - m + 1 - ell; }
    Rational cache_ratio() const;  // t/K, reduced
};

/// ParamError unless A is nonempty, strictly increasing and within [0, K).
void validate_subset(const UserSubset& A, uint32_t K);

/// The subset represented by a gap vector: anchor plus its running prefix
/// sums mod K, sorted.
UserSubset expand(const GapVector& v, uint32_t K);

/// The gap vector of A anchored at k (k must be a member of A).
/// expand(decompose(A, k, K), K) == A for every k in A.
GapVector decompose(const UserSubset& A, uint32_t k, uint32_t K);

/// All |A| gap vectors representing A, one per anchor, in element order.
/// Their gap lists are circular shifts of one another.
std::vector<GapVector> fiber(const UserSubset& A, uint32_t K);

/// True iff some (equivalently, every) gap vector of A has a gap >= ell.
bool is_bounded(const UserSubset& A, uint32_t ell, uint32_t K);

/// All bounded s-subsets of Z_K in canonical (lexicographic) order. The
/// position of a subset in this list is its packet/tag index everywhere.
std::vector<UserSubset> enumerate_bounded(uint32_t K, uint32_t s, uint32_t ell);

/// C(a, b) with the zero convention: 0 whenever b < 0, b > a, or a < 0.
int128 binomial(int64_t a, int64_t b);

/// Number of s-tuples with entries in [0, cap) summing to total
/// (inclusion-exclusion over entries that reach cap).
int128 forbidden_composition_count(uint32_t s, uint32_t cap, uint32_t total);

/// Number of bounded s-subsets of Z_K through a fixed element; independent
/// of which element.
int128 count_containing(uint32_t K, uint32_t s, uint32_t ell);

/// |B_{K,ell}(s)| = (K/s) * count_containing(K, s, ell); the division is
/// exact by the incidence-count identity.
int128 count_bounded_closed(uint32_t K, uint32_t s, uint32_t ell);

/// Upper bound K * C(K - ell + 1, s) on the bounded-subset count.
int128 count_bounded_upper(uint32_t K, uint32_t s, uint32_t ell);

}  // namespace ccbs
