#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "scheme.hpp"

namespace ccbs {

enum class DemandMode { random_vectors, exhaustive, explicit_list };

struct TrialConfig {
    SchemeParams params;
    uint32_t num_files = 1;
    uint32_t packet_bytes = 1;
    uint64_t seed = 0;
    DemandMode mode = DemandMode::random_vectors;
    uint32_t random_count = 100;
    std::vector<std::vector<uint32_t>> explicit_demands;
    /// Test hook: flip one bit of the given payload byte (mod the total
    /// payload size) in every serialized transcript before decoding.
    std::optional<uint64_t> corrupt_payload_byte;
};

struct TrialFailure {
    std::vector<uint32_t> demands;
    uint32_t user = 0;
    UserSubset packet_subset;  // first mismatching packet
};

struct TrialReport {
    bool recovered_ok = false;
    uint64_t messages_sent = 0;               // per delivery
    uint64_t cache_per_user_per_file = 0;     // packets
    Rational measured_rate;                   // messages_sent / F
    Rational measured_cache_ratio;            // cached packets / F
    uint64_t transcript_digest = 0;           // FNV-1a over all transcripts
    std::vector<TrialFailure> failures;
};

/// Runs placement, then delivery + per-user decoding for every demand
/// vector the config selects, comparing each decoded file bytewise against
/// the library. Identical configs produce identical reports.
TrialReport run_trial(const TrialConfig& cfg);

/// JSON object with keys config, recovered_ok, messages_sent,
/// cache_per_user_per_file, rate_num, rate_den, digest, in that order.
std::string trial_report_json(const TrialConfig& cfg, const TrialReport& report);

struct GridEntry {
    SchemeParams params;
    bool passed = false;
};

struct GridSummary {
    std::vector<GridEntry> entries;
    uint32_t num_passed = 0;
    uint32_t num_failed = 0;
};

/// Runs a random-demand trial for every valid (K, m, ell) with K <= K_max.
/// K_max is capped at 12 to keep the grid desk-scale.
GridSummary verify_grid(uint32_t K_max, uint32_t num_files, uint32_t demands_per_config = 20,
                        uint64_t seed = 1);

}  // namespace ccbs
