#include <algorithm>
#include <future>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "rng.hpp"
#include "scheme.hpp"

using namespace ccbs;

namespace {

UserSubset inserted(const UserSubset& T, uint32_t k) {
    UserSubset S = T;
    S.insert(std::lower_bound(S.begin(), S.end(), k), k);
    return S;
}

std::vector<uint32_t> oracle_neighborhood(const UserSubset& T, const SchemeParams& p) {
    std::vector<uint32_t> u;
    for (uint32_t k = 0; k < p.K; ++k) {
        if (std::binary_search(T.begin(), T.end(), k)) continue;
        if (oracle::is_bounded(inserted(T, k), p.ell, p.K)) u.push_back(k);
    }
    return u;
}

}  // namespace

TEST_CASE("neighborhood lists the boundedness-preserving completions") {
    const auto p533 = SchemeParams::create(5, 3, 3);
    CHECK(neighborhood({0, 1}, p533) == std::vector<uint32_t>{2, 4});
    CHECK(neighborhood({2, 3}, p533) == std::vector<uint32_t>{1, 4});

    const auto p633 = SchemeParams::create(6, 3, 3);
    CHECK(neighborhood({0, 2}, p633) == std::vector<uint32_t>{1, 3, 5});

    // ell = 1: every completion stays bounded.
    const auto p531 = SchemeParams::create(5, 3, 1);
    CHECK(neighborhood({0, 1}, p531) == std::vector<uint32_t>{2, 3, 4});

    CHECK_THROWS_AS(neighborhood({0, 1, 2}, p533), ParamError);  // wrong size
    // {0,3} has max gap 3 < 4, so it is not a usable tag at ell = 4.
    CHECK_THROWS_AS(neighborhood({0, 3}, SchemeParams::create(6, 3, 4)), ParamError);
}

TEST_CASE("co_neighborhood bijects onto bounded m-sets through the user") {
    const auto p533 = SchemeParams::create(5, 3, 3);
    const auto v4 = co_neighborhood(4, p533);
    CHECK(v4 == std::vector<UserSubset>{{0, 1}, {0, 3}, {2, 3}});

    const auto p541 = SchemeParams::create(5, 4, 1);
    CHECK(co_neighborhood(0, p541).size() == static_cast<size_t>(binomial(4, 3)));

    for (uint32_t K = 3; K <= 9; ++K) {
        for (uint32_t m = 2; m + 1 <= K; ++m) {
            for (uint32_t ell = 1; ell <= K - m + 1; ++ell) {
                const auto p = SchemeParams::create(K, m, ell);
                for (uint32_t k = 0; k < K; ++k) {
                    CHECK(co_neighborhood(k, p).size() ==
                          static_cast<uint64_t>(count_containing(K, m, ell)));
                }
            }
        }
    }
    CHECK_THROWS_AS(co_neighborhood(5, p533), ParamError);
}

TEST_CASE("neighborhood agrees with brute force and is never empty") {
    for (uint32_t K = 3; K <= 10; ++K) {
        for (uint32_t m = 2; m + 1 <= K; ++m) {
            for (uint32_t ell = 1; ell <= K - m + 1; ++ell) {
                const auto p = SchemeParams::create(K, m, ell);
                const SchemeIndex index(p);
                for (uint32_t t = 0; t < index.num_tags(); ++t) {
                    const auto& u = index.neighborhood_of(t);
                    CHECK_FALSE(u.empty());
                    CHECK(u == oracle_neighborhood(index.tag_subsets()[t], p));
                }
            }
        }
    }
}

TEST_CASE("index dimensions follow the bounded-set counts") {
    const SchemeIndex index(SchemeParams::create(6, 3, 3));
    CHECK(index.num_packets() == 18);
    CHECK(index.num_tags() == 15);
    for (uint32_t s = 0; s < index.num_packets(); ++s) {
        CHECK(index.packet_index(index.packet_subsets()[s]) == s);
    }
    CHECK_THROWS_AS(index.packet_index({0, 2, 4}), ParamError);
}

TEST_CASE("placement caches exactly the packets avoiding the user") {
    const SchemeIndex index(SchemeParams::create(6, 3, 3));
    const FileLibrary lib = FileLibrary::random(1, index.num_packets(), 1, 7);
    const auto caches = place(lib, index);
    REQUIRE(caches.size() == 6);
    for (const auto& cache : caches) {
        CHECK(cache.per_file_count() == 9);  // 18 - 9
        for (uint32_t s = 0; s < index.num_packets(); ++s) {
            const auto& S = index.packet_subsets()[s];
            const bool member = std::binary_search(S.begin(), S.end(), cache.user());
            CHECK(cache.has(0, s) == !member);
            if (!member) {
                const auto a = cache.packet(0, s);
                const auto b = lib.packet(0, s);
                CHECK(std::equal(a.begin(), a.end(), b.begin(), b.end()));
            }
        }
    }

    const FileLibrary empty_lib(0, index.num_packets(), 1);
    for (const auto& cache : place(empty_lib, index)) {
        CHECK(cache.per_file_count() == 9);
        CHECK_FALSE(cache.has(0, 0));  // no files at all
    }

    const FileLibrary wrong(1, 7, 1);
    CHECK_THROWS_AS(place(wrong, index), ParamError);
}

TEST_CASE("delivery emits one canonical message per bounded tag") {
    const SchemeIndex index(SchemeParams::create(6, 3, 3));
    const std::vector<uint32_t> demands{0, 0, 0, 0, 0, 0};

    const FileLibrary zeros(1, index.num_packets(), 4);
    const auto quiet = deliver(zeros, demands, index);
    REQUIRE(quiet.size() == 15);
    for (uint32_t t = 0; t < quiet.size(); ++t) {
        CHECK(quiet[t].tag == index.tag_subsets()[t]);
        CHECK(quiet[t].payload == std::vector<uint8_t>(4, 0));
    }

    // One nonzero packet, demanded by a single user, surfaces in exactly one
    // message: the one tagged by the packet subset minus that user.
    FileLibrary lib(2, index.num_packets(), 4);
    const UserSubset S{0, 1, 2};
    const uint32_t carrier = 1;
    std::vector<uint32_t> lone = demands;
    lone[carrier] = 1;
    auto pkt = lib.packet(1, index.packet_index(S));
    pkt[0] = 0xAB;
    pkt[3] = 0x01;
    const auto messages = deliver(lib, lone, index);
    UserSubset expected_tag = S;
    expected_tag.erase(std::find(expected_tag.begin(), expected_tag.end(), carrier));
    size_t nonzero = 0;
    for (const auto& msg : messages) {
        if (msg.payload == std::vector<uint8_t>(4, 0)) continue;
        ++nonzero;
        CHECK(msg.tag == expected_tag);
        CHECK(msg.payload == std::vector<uint8_t>{0xAB, 0, 0, 0x01});
    }
    CHECK(nonzero == 1);

    CHECK_THROWS_AS(deliver(lib, std::vector<uint32_t>{9, 0, 0, 0, 0, 0}, index), ParamError);
    CHECK_THROWS_AS(deliver(lib, std::vector<uint32_t>{0}, index), ParamError);
}

TEST_CASE("every payload equals the brute-force XOR over the library") {
    const auto p = SchemeParams::create(7, 3, 4);
    const SchemeIndex index(p);
    const FileLibrary lib = FileLibrary::random(3, index.num_packets(), 8, 99);
    const std::vector<uint32_t> demands{2, 0, 1, 2, 1, 0, 2};
    const auto messages = deliver(lib, demands, index);
    REQUIRE(messages.size() == index.num_tags());
    for (const auto& msg : messages) {
        std::vector<uint8_t> expected(8, 0);
        for (uint32_t k : oracle_neighborhood(msg.tag, p)) {
            const auto src = lib.packet(demands[k], index.packet_index(inserted(msg.tag, k)));
            for (size_t i = 0; i < expected.size(); ++i) expected[i] ^= src[i];
        }
        CHECK(msg.payload == expected);
    }
}

TEST_CASE("decode recovers the demanded file bit-exactly") {
    // Exhaustive demand space for a small instance.
    const SchemeIndex index(SchemeParams::create(5, 3, 3));
    const FileLibrary lib = FileLibrary::random(2, index.num_packets(), 3, 1234);
    const auto caches = place(lib, index);
    for (uint32_t code = 0; code < 32; ++code) {
        std::vector<uint32_t> demands(5);
        for (uint32_t k = 0; k < 5; ++k) demands[k] = (code >> k) & 1;
        const auto messages = deliver(lib, demands, index);
        for (uint32_t k = 0; k < 5; ++k) {
            const auto out = decode(k, caches[k], messages, demands, index);
            const auto want = lib.file_bytes(demands[k]);
            CHECK(std::equal(out.begin(), out.end(), want.begin(), want.end()));
        }
    }
}

TEST_CASE("decode works across the parameter grid") {
    SplitMix64 rng(2024);
    for (uint32_t K = 3; K <= 8; ++K) {
        for (uint32_t m = 2; m + 1 <= K; ++m) {
            for (uint32_t ell = 1; ell <= K - m + 1; ++ell) {
                const SchemeIndex index(SchemeParams::create(K, m, ell));
                const FileLibrary lib =
                    FileLibrary::random(3, index.num_packets(), 2, rng.next());
                const auto caches = place(lib, index);
                std::vector<uint32_t> demands(K);
                for (auto& d : demands) d = static_cast<uint32_t>(rng.next_below(3));
                const auto messages = deliver(lib, demands, index);
                CHECK(messages.size() == static_cast<uint64_t>(count_bounded_closed(K, m - 1, ell)));
                for (uint32_t k = 0; k < K; ++k) {
                    const auto out = decode(k, caches[k], messages, demands, index);
                    const auto want = lib.file_bytes(demands[k]);
                    CHECK(std::equal(out.begin(), out.end(), want.begin(), want.end()));
                }
            }
        }
    }
}

TEST_CASE("decode validates the transcript before solving") {
    const SchemeIndex index(SchemeParams::create(5, 3, 3));
    const FileLibrary lib = FileLibrary::random(2, index.num_packets(), 1, 5);
    const auto caches = place(lib, index);
    const std::vector<uint32_t> demands{0, 1, 0, 1, 0};
    auto messages = deliver(lib, demands, index);

    auto missing = messages;
    missing.pop_back();
    CHECK_THROWS_AS(decode(0, caches[0], missing, demands, index), IntegrityError);

    auto duplicated = messages;
    duplicated.back() = duplicated.front();
    CHECK_THROWS_AS(decode(0, caches[0], duplicated, demands, index), IntegrityError);

    auto alien = messages;
    alien.front().tag = {9, 11};
    CHECK_THROWS_AS(decode(0, caches[0], alien, demands, index), IntegrityError);

    auto fat = messages;
    fat.front().payload.push_back(0);
    CHECK_THROWS_AS(decode(0, caches[0], fat, demands, index), IntegrityError);

    CHECK_THROWS_AS(decode(1, caches[0], messages, demands, index), ParamError);

    // A corrupted payload is not a structural error: it decodes to wrong bytes.
    auto corrupted = messages;
    corrupted.front().payload[0] ^= 0x01;
    bool some_user_sees_garbage = false;
    for (uint32_t k = 0; k < 5; ++k) {
        const auto out = decode(k, caches[k], corrupted, demands, index);
        const auto want = lib.file_bytes(demands[k]);
        if (!std::equal(out.begin(), out.end(), want.begin(), want.end())) {
            some_user_sees_garbage = true;
        }
    }
    CHECK(some_user_sees_garbage);
}

TEST_CASE("every missing packet is covered by exactly its own tag") {
    for (uint32_t K = 3; K <= 9; ++K) {
        for (uint32_t m = 2; m + 1 <= K; ++m) {
            for (uint32_t ell = 1; ell <= K - m + 1; ++ell) {
                const SchemeIndex index(SchemeParams::create(K, m, ell));
                for (const auto& S : index.packet_subsets()) {
                    for (uint32_t k : S) {
                        UserSubset T = S;
                        T.erase(std::find(T.begin(), T.end(), k));
                        const uint32_t t = index.tag_index(T);  // closure: T stays bounded
                        const auto& u = index.neighborhood_of(t);
                        CHECK(std::binary_search(u.begin(), u.end(), k));
                    }
                }
            }
        }
    }
}

TEST_CASE("transcript wire format round-trips and rejects truncation") {
    const SchemeIndex index(SchemeParams::create(5, 3, 3));
    const FileLibrary lib = FileLibrary::random(2, index.num_packets(), 2, 77);
    const std::vector<uint32_t> demands{1, 0, 1, 1, 0};
    const auto messages = deliver(lib, demands, index);

    const auto wire = serialize_transcript(messages);
    // Record layout: tag count, tag elements, payload length, payload bytes.
    const size_t record = 4 + 4 * 2 + 4 + 2;
    REQUIRE(wire.size() == record * messages.size());
    CHECK(wire[0] == 2);  // first tag has two elements
    CHECK(wire[4] == messages[0].tag[0]);
    CHECK(wire[8] == messages[0].tag[1]);
    CHECK(wire[12] == 2);  // payload length
    CHECK(wire[16] == messages[0].payload[0]);

    const auto parsed = deserialize_transcript(wire);
    REQUIRE(parsed.size() == messages.size());
    for (size_t i = 0; i < parsed.size(); ++i) {
        CHECK(parsed[i].tag == messages[i].tag);
        CHECK(parsed[i].payload == messages[i].payload);
    }

    auto truncated = wire;
    truncated.pop_back();
    CHECK_THROWS_AS(deserialize_transcript(truncated), IntegrityError);
}

TEST_CASE("concurrent decodes against a shared transcript agree") {
    const SchemeIndex index(SchemeParams::create(8, 4, 3));
    const FileLibrary lib = FileLibrary::random(2, index.num_packets(), 4, 31337);
    const auto caches = place(lib, index);
    const std::vector<uint32_t> demands{0, 1, 1, 0, 1, 0, 0, 1};
    const auto messages = deliver(lib, demands, index);

    std::vector<std::future<std::vector<uint8_t>>> jobs;
    for (uint32_t k = 0; k < 8; ++k) {
        jobs.push_back(std::async(std::launch::async, [&, k] {
            return decode(k, caches[k], messages, demands, index);
        }));
    }
    for (uint32_t k = 0; k < 8; ++k) {
        const auto out = jobs[k].get();
        const auto want = lib.file_bytes(demands[k]);
        CHECK(std::equal(out.begin(), out.end(), want.begin(), want.end()));
    }
}
