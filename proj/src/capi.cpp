#include "ccbs/ccbs.h"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <memory>
#include <string>
#include <vector>

#include "analytics.hpp"
#include "bounded_subsets.hpp"
#include "sim_harness.hpp"

namespace {

thread_local std::string g_last_error;

constexpr uint32_t kEnumerateMaxK = 24;

void copy_num(char out[CCBS_NUM_STR_LEN], ccbs::int128 v) {
    const std::string s = ccbs::to_string(v);
    std::snprintf(out, CCBS_NUM_STR_LEN, "%s", s.c_str());
}

// Runs fn, translating the C++ error types onto status codes.
template <typename Fn>
ccbs_status guarded(Fn&& fn) {
    try {
        fn();
        g_last_error.clear();
        return CCBS_OK;
    } catch (const ccbs::ParamError& e) {
        g_last_error = e.what();
        return CCBS_ERR_PARAM;
    } catch (const ccbs::OverflowError& e) {
        g_last_error = e.what();
        return CCBS_ERR_OVERFLOW;
    } catch (const ccbs::ResourceError& e) {
        g_last_error = e.what();
        return CCBS_ERR_RESOURCE;
    } catch (const ccbs::IntegrityError& e) {
        g_last_error = e.what();
        return CCBS_ERR_INTEGRITY;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return CCBS_ERR_INTERNAL;
    }
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out == nullptr) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

}  // namespace

struct ccbs_subsets {
    uint32_t width = 0;
    std::vector<ccbs::UserSubset> items;
};

extern "C" {

const char* ccbs_version(void) { return "0.1.0"; }

const char* ccbs_strerror(ccbs_status status) {
    switch (status) {
        case CCBS_OK: return "ok";
        case CCBS_ERR_PARAM: return "invalid parameter";
        case CCBS_ERR_OVERFLOW: return "arithmetic overflow";
        case CCBS_ERR_RESOURCE: return "resource guard exceeded";
        case CCBS_ERR_INTEGRITY: return "integrity check failed";
        case CCBS_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

const char* ccbs_last_error(void) { return g_last_error.c_str(); }

ccbs_status ccbs_binomial(int64_t a, int64_t b, char out[CCBS_NUM_STR_LEN]) {
    return guarded([&] { copy_num(out, ccbs::binomial(a, b)); });
}

ccbs_status ccbs_count_bounded(uint32_t K, uint32_t s, uint32_t ell,
                               char out[CCBS_NUM_STR_LEN]) {
    return guarded([&] { copy_num(out, ccbs::count_bounded_closed(K, s, ell)); });
}

ccbs_status ccbs_count_containing(uint32_t K, uint32_t s, uint32_t ell,
                                  char out[CCBS_NUM_STR_LEN]) {
    return guarded([&] { copy_num(out, ccbs::count_containing(K, s, ell)); });
}

ccbs_status ccbs_count_bounded_upper(uint32_t K, uint32_t s, uint32_t ell,
                                     char out[CCBS_NUM_STR_LEN]) {
    return guarded([&] { copy_num(out, ccbs::count_bounded_upper(K, s, ell)); });
}

ccbs_status ccbs_composition_count(uint32_t s, uint32_t cap, uint32_t total,
                                   char out[CCBS_NUM_STR_LEN]) {
    return guarded([&] { copy_num(out, ccbs::forbidden_composition_count(s, cap, total)); });
}

ccbs_status ccbs_is_bounded(uint32_t K, uint32_t ell, const uint32_t* elems, size_t count,
                            int* out_bounded) {
    return guarded([&] {
        if (elems == nullptr || out_bounded == nullptr) {
            throw ccbs::ParamError("null pointer argument");
        }
        const ccbs::UserSubset A(elems, elems + count);
        *out_bounded = ccbs::is_bounded(A, ell, K) ? 1 : 0;
    });
}

ccbs_status ccbs_enumerate(uint32_t K, uint32_t s, uint32_t ell, ccbs_subsets** out) {
    return guarded([&] {
        if (out == nullptr) throw ccbs::ParamError("null pointer argument");
        if (K > kEnumerateMaxK) {
            throw ccbs::ResourceError("enumeration guard: K <= " +
                                      std::to_string(kEnumerateMaxK));
        }
        auto list = std::make_unique<ccbs_subsets>();
        list->width = s;
        list->items = ccbs::enumerate_bounded(K, s, ell);
        *out = list.release();
    });
}

size_t ccbs_subsets_count(const ccbs_subsets* list) {
    return list == nullptr ? 0 : list->items.size();
}

uint32_t ccbs_subsets_width(const ccbs_subsets* list) {
    return list == nullptr ? 0 : list->width;
}

ccbs_status ccbs_subsets_get(const ccbs_subsets* list, size_t index, uint32_t* elems) {
    return guarded([&] {
        if (list == nullptr || elems == nullptr) {
            throw ccbs::ParamError("null pointer argument");
        }
        if (index >= list->items.size()) throw ccbs::ParamError("subset index out of range");
        const ccbs::UserSubset& S = list->items[index];
        std::copy(S.begin(), S.end(), elems);
    });
}

void ccbs_subsets_free(ccbs_subsets* list) { delete list; }

ccbs_status ccbs_scheme_metrics(uint32_t K, uint32_t t, uint32_t n, ccbs_metrics* out) {
    return guarded([&] {
        if (out == nullptr) throw ccbs::ParamError("null pointer argument");
        const ccbs::SchemeParams params = ccbs::SchemeParams::from_tn(K, t, n);
        const ccbs::SchemeMetrics mx = ccbs::metrics(params);
        const ccbs::BaselineMetrics base = ccbs::mn_baseline(K, t);

        std::memset(out, 0, sizeof(*out));
        out->K = K;
        out->t = t;
        out->n = n;
        out->m = params.m;
        out->ell = params.ell;
        copy_num(out->F, mx.F);
        copy_num(out->F_upper, mx.F_upper);
        copy_num(out->R_num, mx.R.num);
        copy_num(out->R_den, mx.R.den);
        std::snprintf(out->R_decimal, sizeof(out->R_decimal), "%s",
                      ccbs::decimal_string(mx.R).c_str());
        copy_num(out->cache_num, mx.cache_ratio.num);
        copy_num(out->cache_den, mx.cache_ratio.den);
        copy_num(out->mn_F, base.F_mn);
        copy_num(out->mn_R_num, base.R_mn.num);
        copy_num(out->mn_R_den, base.R_mn.den);
        std::snprintf(out->mn_R_decimal, sizeof(out->mn_R_decimal), "%s",
                      ccbs::decimal_string(base.R_mn).c_str());
        out->log2_F = mx.log2_F;
        out->matches_mn = (mx.F == base.F_mn && mx.R == base.R_mn) ? 1 : 0;
        out->mn_threshold = ccbs::mn_equivalence_threshold(K, t);
        out->mn_condition = (n >= out->mn_threshold) ? 1 : 0;
    });
}

ccbs_status ccbs_sweep_csv(uint32_t K, uint32_t t, uint32_t n_min, uint32_t n_max,
                           char** out_csv, size_t* out_rows) {
    return guarded([&] {
        if (out_csv == nullptr || out_rows == nullptr) {
            throw ccbs::ParamError("null pointer argument");
        }
        const auto rows = ccbs::sweep(K, t, n_min, n_max);
        *out_rows = rows.size();
        *out_csv = dup_string(ccbs::sweep_csv(rows));
    });
}

void ccbs_string_free(char* s) { std::free(s); }

ccbs_status ccbs_run_trial(const ccbs_trial_config* cfg, int* out_recovered_ok,
                           char** out_json) {
    return guarded([&] {
        if (cfg == nullptr || out_recovered_ok == nullptr || out_json == nullptr) {
            throw ccbs::ParamError("null pointer argument");
        }
        ccbs::TrialConfig trial;
        trial.params = ccbs::SchemeParams::create(cfg->K, cfg->m, cfg->ell);
        trial.num_files = cfg->files;
        trial.packet_bytes = cfg->packet_bytes;
        trial.seed = cfg->seed;
        switch (cfg->demand_mode) {
            case CCBS_DEMANDS_RANDOM:
                trial.mode = ccbs::DemandMode::random_vectors;
                trial.random_count = cfg->random_count;
                break;
            case CCBS_DEMANDS_EXHAUSTIVE:
                trial.mode = ccbs::DemandMode::exhaustive;
                break;
            default:
                throw ccbs::ParamError("unknown demand mode");
        }
        if (cfg->corrupt != 0) trial.corrupt_payload_byte = cfg->corrupt_index;

        const ccbs::TrialReport report = ccbs::run_trial(trial);
        *out_recovered_ok = report.recovered_ok ? 1 : 0;
        *out_json = dup_string(ccbs::trial_report_json(trial, report));
    });
}

}  // extern "C"
