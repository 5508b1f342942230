#include "sim_harness.hpp"

#include <algorithm>

#include "json.hpp"
#include "rng.hpp"

namespace ccbs {

namespace {

constexpr uint64_t kExhaustiveCap = 1000000;  // demand vectors
constexpr uint32_t kTrialMaxK = 24;

// Demand-space size N^K, or nullopt when it exceeds the cap.
std::optional<uint64_t> exhaustive_size(uint32_t num_files, uint32_t K) {
    uint64_t total = 1;
    for (uint32_t i = 0; i < K; ++i) {
        if (total > kExhaustiveCap / num_files + 1) return std::nullopt;
        total *= num_files;
        if (total > kExhaustiveCap) return std::nullopt;
    }
    return total;
}

void validate_config(const TrialConfig& cfg) {
    SchemeParams::create(cfg.params.K, cfg.params.m, cfg.params.ell);
    if (cfg.num_files < 1) throw ParamError("trial requires at least one file");
    if (cfg.packet_bytes < 1) throw ParamError("trial requires packet_bytes >= 1");
    if (cfg.params.K > kTrialMaxK) {
        throw ResourceError("trial guard: K <= " + std::to_string(kTrialMaxK));
    }
    if (cfg.mode == DemandMode::exhaustive && !exhaustive_size(cfg.num_files, cfg.params.K)) {
        throw ResourceError("exhaustive demands exceed the 10^6 vector cap");
    }
    if (cfg.mode == DemandMode::explicit_list && cfg.explicit_demands.empty()) {
        throw ParamError("explicit demand mode requires at least one vector");
    }
}

// demand vector <- base-N digits of `ordinal`, most significant digit first.
std::vector<uint32_t> nth_demand_vector(uint64_t ordinal, uint32_t num_files, uint32_t K) {
    std::vector<uint32_t> d(K, 0);
    for (uint32_t i = K; i-- > 0;) {
        d[i] = static_cast<uint32_t>(ordinal % num_files);
        ordinal /= num_files;
    }
    return d;
}

std::string demand_mode_label(const TrialConfig& cfg) {
    switch (cfg.mode) {
        case DemandMode::random_vectors:
            return "random:" + std::to_string(cfg.random_count);
        case DemandMode::exhaustive:
            return "exhaustive";
        case DemandMode::explicit_list:
            return "explicit:" + std::to_string(cfg.explicit_demands.size());
    }
    return "unknown";
}

}  // namespace

TrialReport run_trial(const TrialConfig& cfg) {
    validate_config(cfg);
    const SchemeParams& p = cfg.params;
    const SchemeIndex index(p);
    const uint32_t F = index.num_packets();

    // Stream derivation: the root generator's first output seeds the library
    // stream, its second seeds the demand stream.
    SplitMix64 root(cfg.seed);
    const uint64_t library_seed = root.next();
    const uint64_t demand_seed = root.next();
    SplitMix64 demand_rng(demand_seed);

    const FileLibrary library =
        FileLibrary::random(cfg.num_files, F, cfg.packet_bytes, library_seed);
    const auto caches = place(library, index);

    uint64_t num_vectors = 0;
    switch (cfg.mode) {
        case DemandMode::random_vectors:
            num_vectors = cfg.random_count;
            break;
        case DemandMode::exhaustive:
            num_vectors = *exhaustive_size(cfg.num_files, p.K);
            break;
        case DemandMode::explicit_list:
            num_vectors = cfg.explicit_demands.size();
            break;
    }

    TrialReport report;
    Fnv1a64 digest;
    report.messages_sent = index.num_tags();
    report.cache_per_user_per_file = caches.front().per_file_count();

    for (uint64_t v = 0; v < num_vectors; ++v) {
        std::vector<uint32_t> demands;
        switch (cfg.mode) {
            case DemandMode::random_vectors: {
                demands.reserve(p.K);
                for (uint32_t k = 0; k < p.K; ++k) {
                    demands.push_back(static_cast<uint32_t>(demand_rng.next_below(cfg.num_files)));
                }
                break;
            }
            case DemandMode::exhaustive:
                demands = nth_demand_vector(v, cfg.num_files, p.K);
                break;
            case DemandMode::explicit_list:
                demands = cfg.explicit_demands[v];
                break;
        }

        const auto messages = deliver(library, demands, index);
        auto wire = serialize_transcript(messages);
        if (cfg.corrupt_payload_byte) {
            // Map the index into the payload region of the wire format:
            // message i's payload starts after its tag words and lengths.
            const uint64_t total_payload =
                static_cast<uint64_t>(messages.size()) * cfg.packet_bytes;
            const uint64_t j = *cfg.corrupt_payload_byte % total_payload;
            const uint64_t msg_idx = j / cfg.packet_bytes;
            const uint64_t byte_idx = j % cfg.packet_bytes;
            const size_t record = 4 + 4 * (p.m - 1) + 4 + cfg.packet_bytes;
            wire[msg_idx * record + 8 + 4 * (p.m - 1) + byte_idx] ^= 0x01;
        }
        digest.update(wire);
        const auto received = deserialize_transcript(wire);

        for (uint32_t user = 0; user < p.K; ++user) {
            const auto decoded = decode(user, caches[user], received, demands, index);
            const auto expected = library.file_bytes(demands[user]);
            if (std::equal(decoded.begin(), decoded.end(), expected.begin(), expected.end())) {
                continue;
            }
            // Locate the first mismatching packet for the failure report.
            uint32_t bad_packet = 0;
            for (uint32_t s = 0; s < F; ++s) {
                const size_t off = static_cast<size_t>(s) * cfg.packet_bytes;
                if (!std::equal(decoded.begin() + off,
                                decoded.begin() + off + cfg.packet_bytes,
                                expected.begin() + off)) {
                    bad_packet = s;
                    break;
                }
            }
            report.failures.push_back(
                TrialFailure{demands, user, index.packet_subsets()[bad_packet]});
        }
    }

    report.recovered_ok = report.failures.empty();
    report.measured_rate = make_rational(report.messages_sent, F);
    report.measured_cache_ratio = make_rational(report.cache_per_user_per_file, F);
    report.transcript_digest = digest.value();
    return report;
}

std::string trial_report_json(const TrialConfig& cfg, const TrialReport& report) {
    nlohmann::ordered_json j;
    j["config"] = {
        {"K", cfg.params.K},
        {"m", cfg.params.m},
        {"ell", cfg.params.ell},
        {"files", cfg.num_files},
        {"packet_bytes", cfg.packet_bytes},
        {"seed", cfg.seed},
        {"demands", demand_mode_label(cfg)},
    };
    j["recovered_ok"] = report.recovered_ok;
    j["messages_sent"] = report.messages_sent;
    j["cache_per_user_per_file"] = report.cache_per_user_per_file;
    if (!fits_int64(report.measured_rate.num) || !fits_int64(report.measured_rate.den)) {
        throw OverflowError("rate does not fit the report integer range");
    }
    j["rate_num"] = static_cast<int64_t>(report.measured_rate.num);
    j["rate_den"] = static_cast<int64_t>(report.measured_rate.den);
    j["digest"] = report.transcript_digest;
    return j.dump();
}

GridSummary verify_grid(uint32_t K_max, uint32_t num_files, uint32_t demands_per_config,
                        uint64_t seed) {
    if (K_max > 12) throw ResourceError("grid guard: K_max <= 12");
    if (num_files < 1) throw ParamError("grid requires at least one file");
    GridSummary summary;
    for (uint32_t K = 3; K <= K_max; ++K) {
        for (uint32_t m = 2; m + 1 <= K; ++m) {
            for (uint32_t ell = 1; ell <= K - m + 1; ++ell) {
                TrialConfig cfg;
                cfg.params = SchemeParams::create(K, m, ell);
                cfg.num_files = num_files;
                cfg.mode = DemandMode::random_vectors;
                cfg.random_count = demands_per_config;
                cfg.seed = seed ^ (static_cast<uint64_t>(K) << 32 |
                                   static_cast<uint64_t>(m) << 16 | ell);
                const TrialReport rep = run_trial(cfg);
                summary.entries.push_back(GridEntry{cfg.params, rep.recovered_ok});
                if (rep.recovered_ok) {
                    ++summary.num_passed;
                } else {
                    ++summary.num_failed;
                }
            }
        }
    }
    return summary;
}

}  // namespace ccbs
