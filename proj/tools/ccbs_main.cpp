// ccbs command-line front end: enumeration, counting, scheme metrics,
// verification trials and parameter sweeps over the shared-library C API.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ccbs/ccbs.h"

namespace {

enum ExitCode : int {
    kExitOk = 0,
    kExitVerifyFailed = 1,
    kExitUsage = 2,
    kExitResource = 3,
    kExitOverflow = 4,
};

int exit_code_for(ccbs_status status) {
    switch (status) {
        case CCBS_OK: return kExitOk;
        case CCBS_ERR_PARAM: return kExitUsage;
        case CCBS_ERR_RESOURCE: return kExitResource;
        case CCBS_ERR_OVERFLOW: return kExitOverflow;
        case CCBS_ERR_INTEGRITY: return kExitVerifyFailed;
        case CCBS_ERR_INTERNAL: return kExitVerifyFailed;
    }
    return kExitVerifyFailed;
}

int fail(ccbs_status status) {
    std::cerr << "error: " << ccbs_strerror(status);
    const std::string detail = ccbs_last_error();
    if (!detail.empty()) std::cerr << " (" << detail << ")";
    std::cerr << "\n";
    return exit_code_for(status);
}

struct EnumerateArgs {
    uint32_t K = 0, size = 0, ell = 0;
    std::string format = "csv";
};

int run_enumerate(const EnumerateArgs& args) {
    ccbs_subsets* list = nullptr;
    const ccbs_status st = ccbs_enumerate(args.K, args.size, args.ell, &list);
    if (st != CCBS_OK) return fail(st);

    const size_t count = ccbs_subsets_count(list);
    const uint32_t width = ccbs_subsets_width(list);
    std::vector<uint32_t> elems(width);

    std::string out;
    if (args.format == "json") {
        out += "{\"K\":" + std::to_string(args.K) + ",\"size\":" + std::to_string(args.size) +
               ",\"ell\":" + std::to_string(args.ell) + ",\"subsets\":[";
        for (size_t i = 0; i < count; ++i) {
            ccbs_subsets_get(list, i, elems.data());
            out += i == 0 ? "[" : ",[";
            for (uint32_t j = 0; j < width; ++j) {
                if (j > 0) out += ',';
                out += std::to_string(elems[j]);
            }
            out += ']';
        }
        out += "],\"count\":" + std::to_string(count) + "}\n";
    } else {
        for (size_t i = 0; i < count; ++i) {
            ccbs_subsets_get(list, i, elems.data());
            for (uint32_t j = 0; j < width; ++j) {
                if (j > 0) out += ',';
                out += std::to_string(elems[j]);
            }
            out += '\n';
        }
        out += "# count=" + std::to_string(count) + "\n";
    }
    ccbs_subsets_free(list);
    std::cout << out;
    return kExitOk;
}

struct CountArgs {
    uint32_t K = 0, size = 0, ell = 0;
    bool brute_force = false;
};

int run_count(const CountArgs& args) {
    char closed[CCBS_NUM_STR_LEN];
    const ccbs_status st = ccbs_count_bounded(args.K, args.size, args.ell, closed);
    if (st != CCBS_OK) return fail(st);

    if (!args.brute_force) {
        std::cout << closed << "\n";
        return kExitOk;
    }
    ccbs_subsets* list = nullptr;
    const ccbs_status est = ccbs_enumerate(args.K, args.size, args.ell, &list);
    if (est != CCBS_OK) return fail(est);
    const std::string brute = std::to_string(ccbs_subsets_count(list));
    ccbs_subsets_free(list);

    const bool match = brute == closed;
    std::cout << closed << " " << brute << " " << (match ? "OK" : "MISMATCH") << "\n";
    return match ? kExitOk : kExitVerifyFailed;
}

struct MetricsArgs {
    uint32_t K = 0, t = 0, n = 0;
};

int run_metrics(const MetricsArgs& args) {
    ccbs_metrics m;
    const ccbs_status st = ccbs_scheme_metrics(args.K, args.t, args.n, &m);
    if (st != CCBS_OK) return fail(st);

    std::printf("K=%u t=%u n=%u m=%u ell=%u\n", m.K, m.t, m.n, m.m, m.ell);
    std::printf("F=%s\n", m.F);
    std::printf("log2_F=%.12g\n", m.log2_F);
    std::printf("F_upper=%s\n", m.F_upper);
    std::printf("R=%s/%s (%s)\n", m.R_num, m.R_den, m.R_decimal);
    std::printf("M/N=%s/%s\n", m.cache_num, m.cache_den);
    std::printf("MN_F=%s\n", m.mn_F);
    std::printf("MN_R=%s/%s (%s)\n", m.mn_R_num, m.mn_R_den, m.mn_R_decimal);
    std::printf("MN_condition_holds=%s (threshold n=%u)\n", m.mn_condition ? "yes" : "no",
                m.mn_threshold);
    std::printf("matches_MN=%s\n", m.matches_mn ? "yes" : "no");
    return kExitOk;
}

struct VerifyArgs {
    uint32_t K = 0, m = 0, ell = 0;
    uint32_t files = 1;
    uint32_t packet_bytes = 1;
    uint64_t seed = 0;
    std::string demands = "random:100";
    int64_t corrupt_byte = -1;
};

int run_verify(const VerifyArgs& args) {
    ccbs_trial_config cfg{};
    cfg.K = args.K;
    cfg.m = args.m;
    cfg.ell = args.ell;
    cfg.files = args.files;
    cfg.packet_bytes = args.packet_bytes;
    cfg.seed = args.seed;
    if (args.demands == "exhaustive") {
        cfg.demand_mode = CCBS_DEMANDS_EXHAUSTIVE;
    } else if (args.demands.rfind("random:", 0) == 0) {
        cfg.demand_mode = CCBS_DEMANDS_RANDOM;
        try {
            cfg.random_count = static_cast<uint32_t>(std::stoul(args.demands.substr(7)));
        } catch (const std::exception&) {
            std::cerr << "error: bad --demands count\n";
            return kExitUsage;
        }
    } else {
        std::cerr << "error: --demands must be random:COUNT or exhaustive\n";
        return kExitUsage;
    }
    if (args.corrupt_byte >= 0) {
        cfg.corrupt = 1;
        cfg.corrupt_index = static_cast<uint64_t>(args.corrupt_byte);
    }

    int recovered = 0;
    char* json = nullptr;
    const ccbs_status st = ccbs_run_trial(&cfg, &recovered, &json);
    if (st != CCBS_OK) return fail(st);
    std::cout << json << "\n";
    ccbs_string_free(json);
    return recovered ? kExitOk : kExitVerifyFailed;
}

struct SweepArgs {
    uint32_t K = 0, t = 0;
    uint32_t n_min = 0;
    uint32_t n_max = 0;
    bool n_max_given = false;
    std::string out_path;
};

int run_sweep(const SweepArgs& args) {
    const uint32_t n_max = args.n_max_given ? args.n_max : args.t;
    char* csv = nullptr;
    size_t rows = 0;
    const ccbs_status st = ccbs_sweep_csv(args.K, args.t, args.n_min, n_max, &csv, &rows);
    if (st != CCBS_OK) return fail(st);

    if (args.out_path.empty()) {
        std::cout << csv;
        std::cerr << "rows=" << rows << "\n";
    } else {
        std::ofstream f(args.out_path, std::ios::binary);
        if (!f) {
            std::cerr << "error: cannot open " << args.out_path << "\n";
            ccbs_string_free(csv);
            return kExitUsage;
        }
        f << csv;
        std::cout << "rows=" << rows << "\n";
    }
    ccbs_string_free(csv);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"coded caching over bounded subsets of Z_K"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(ccbs_version()));

    EnumerateArgs enum_args;
    auto* cmd_enum = app.add_subcommand("enumerate", "List the bounded subsets in canonical order");
    cmd_enum->add_option("--K", enum_args.K, "Universe size")->required();
    cmd_enum->add_option("--size", enum_args.size, "Subset size")->required();
    cmd_enum->add_option("--ell", enum_args.ell, "Bound parameter")->required();
    cmd_enum->add_option("--format", enum_args.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));

    CountArgs count_args;
    auto* cmd_count = app.add_subcommand("count", "Closed-form bounded-subset count");
    cmd_count->add_option("--K", count_args.K, "Universe size")->required();
    cmd_count->add_option("--size", count_args.size, "Subset size")->required();
    cmd_count->add_option("--ell", count_args.ell, "Bound parameter")->required();
    cmd_count->add_flag("--brute-force", count_args.brute_force,
                        "Cross-check against enumeration");

    MetricsArgs metrics_args;
    auto* cmd_metrics = app.add_subcommand("metrics", "Scheme figures for (K, t, n)");
    cmd_metrics->add_option("--K", metrics_args.K, "User count")->required();
    cmd_metrics->add_option("--t", metrics_args.t, "Cache parameter t = K*M/N")->required();
    cmd_metrics->add_option("--n", metrics_args.n, "Subpacketization degree")->required();

    VerifyArgs verify_args;
    auto* cmd_verify = app.add_subcommand("verify", "Run a placement/delivery/decode trial");
    cmd_verify->add_option("--K", verify_args.K, "User count")->required();
    cmd_verify->add_option("--m", verify_args.m, "Subset size m = K - t")->required();
    cmd_verify->add_option("--ell", verify_args.ell, "Bound parameter")->required();
    cmd_verify->add_option("--files", verify_args.files, "Number of files");
    cmd_verify->add_option("--packet-bytes", verify_args.packet_bytes, "Bytes per packet");
    cmd_verify->add_option("--seed", verify_args.seed, "RNG seed");
    cmd_verify->add_option("--demands", verify_args.demands, "random:COUNT or exhaustive");
    cmd_verify->add_option("--corrupt-byte", verify_args.corrupt_byte,
                           "Flip one bit of the given transcript payload byte");

    SweepArgs sweep_args;
    auto* cmd_sweep = app.add_subcommand("sweep", "Emit the F/R trade-off table as CSV");
    cmd_sweep->add_option("--K", sweep_args.K, "User count")->required();
    cmd_sweep->add_option("--t", sweep_args.t, "Cache parameter t = K*M/N")->required();
    cmd_sweep->add_option("--n-min", sweep_args.n_min, "First n");
    auto* opt_n_max = cmd_sweep->add_option("--n-max", sweep_args.n_max, "Last n (default t)");
    cmd_sweep->add_option("--out", sweep_args.out_path, "Write CSV to a file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    if (cmd_enum->parsed()) return run_enumerate(enum_args);
    if (cmd_count->parsed()) return run_count(count_args);
    if (cmd_metrics->parsed()) return run_metrics(metrics_args);
    if (cmd_verify->parsed()) return run_verify(verify_args);
    if (cmd_sweep->parsed()) {
        sweep_args.n_max_given = opt_n_max->count() > 0;
        return run_sweep(sweep_args);
    }
    return kExitUsage;
}
