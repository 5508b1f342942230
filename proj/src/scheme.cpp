#include "scheme.hpp"

#include <algorithm>
#include <cstring>

#include "rng.hpp"

namespace ccbs {

namespace {

// Sorted insert of k into T; ParamError if k already present.
UserSubset with_element(const UserSubset& T, uint32_t k) {
    UserSubset S = T;
    const auto it = std::lower_bound(S.begin(), S.end(), k);
    if (it != S.end() && *it == k) throw ParamError("element already in subset");
    S.insert(it, k);
    return S;
}

uint32_t index_in(const std::vector<UserSubset>& sorted_list, const UserSubset& S,
                  const char* what) {
    const auto it = std::lower_bound(sorted_list.begin(), sorted_list.end(), S);
    if (it == sorted_list.end() || *it != S) {
        throw ParamError(std::string("subset is not a ") + what);
    }
    return static_cast<uint32_t>(it - sorted_list.begin());
}

void xor_into(std::span<uint8_t> acc, std::span<const uint8_t> src) {
    size_t i = 0;
    for (; i + 8 <= acc.size(); i += 8) {
        uint64_t a, b;
        std::memcpy(&a, acc.data() + i, 8);
        std::memcpy(&b, src.data() + i, 8);
        a ^= b;
        std::memcpy(acc.data() + i, &a, 8);
    }
    for (; i < acc.size(); ++i) acc[i] ^= src[i];
}

}  // namespace

SchemeIndex::SchemeIndex(const SchemeParams& params)
    : params_(SchemeParams::create(params.K, params.m, params.ell)),
      packet_subsets_(enumerate_bounded(params.K, params.m, params.ell)),
      tag_subsets_(enumerate_bounded(params.K, params.m - 1, params.ell)) {
    neighborhoods_.reserve(tag_subsets_.size());
    completions_.reserve(tag_subsets_.size());
    for (const UserSubset& T : tag_subsets_) {
        std::vector<uint32_t> users;
        std::vector<uint32_t> packets;
        for (uint32_t k = 0; k < params_.K; ++k) {
            if (std::binary_search(T.begin(), T.end(), k)) continue;
            const UserSubset S = with_element(T, k);
            if (!is_bounded(S, params_.ell, params_.K)) continue;
            users.push_back(k);
            packets.push_back(index_in(packet_subsets_, S, "bounded packet subset"));
        }
        // Every bounded tag admits a completion (any element at circular
        // distance ell from a tag member works); treat a violation as a
        // broken index rather than assuming the fact.
        if (users.empty()) throw IntegrityError("bounded tag with empty completion neighborhood");
        neighborhoods_.push_back(std::move(users));
        completions_.push_back(std::move(packets));
    }
    // Dropping one element of a bounded subset keeps it bounded, so every
    // packet has a full set of cover tags; a lookup failure here means that
    // closure broke.
    cover_tags_.reserve(packet_subsets_.size());
    for (const UserSubset& S : packet_subsets_) {
        std::vector<uint32_t> tags;
        tags.reserve(S.size());
        for (uint32_t drop : S) {
            UserSubset T = S;
            T.erase(std::find(T.begin(), T.end(), drop));
            const auto it = std::lower_bound(tag_subsets_.begin(), tag_subsets_.end(), T);
            if (it == tag_subsets_.end() || *it != T) {
                throw IntegrityError("packet subset lacks a bounded cover tag");
            }
            tags.push_back(static_cast<uint32_t>(it - tag_subsets_.begin()));
        }
        cover_tags_.push_back(std::move(tags));
    }
}

uint32_t SchemeIndex::packet_index(const UserSubset& S) const {
    return index_in(packet_subsets_, S, "bounded packet subset");
}

uint32_t SchemeIndex::tag_index(const UserSubset& T) const {
    return index_in(tag_subsets_, T, "bounded tag subset");
}

std::vector<uint32_t> neighborhood(const UserSubset& T, const SchemeParams& params) {
    validate_subset(T, params.K);
    if (T.size() != params.m - 1 || !is_bounded(T, params.ell, params.K)) {
        throw ParamError("tag must be a bounded (m-1)-subset");
    }
    std::vector<uint32_t> u;
    for (uint32_t k = 0; k < params.K; ++k) {
        if (std::binary_search(T.begin(), T.end(), k)) continue;
        if (is_bounded(with_element(T, k), params.ell, params.K)) u.push_back(k);
    }
    return u;
}

std::vector<UserSubset> co_neighborhood(uint32_t k, const SchemeParams& params) {
    if (k >= params.K) throw ParamError("user out of Z_K range");
    std::vector<UserSubset> out;
    for (const UserSubset& T : enumerate_bounded(params.K, params.m - 1, params.ell)) {
        if (std::binary_search(T.begin(), T.end(), k)) continue;
        if (is_bounded(with_element(T, k), params.ell, params.K)) out.push_back(T);
    }
    return out;
}

FileLibrary::FileLibrary(uint32_t num_files, uint32_t num_packets, uint32_t packet_bytes)
    : num_files_(num_files), num_packets_(num_packets), packet_bytes_(packet_bytes) {
    if (packet_bytes_ < 1) throw ParamError("packet_bytes must be >= 1");
    data_.resize(static_cast<size_t>(num_files_) * num_packets_ * packet_bytes_);
}

FileLibrary FileLibrary::random(uint32_t num_files, uint32_t num_packets, uint32_t packet_bytes,
                                uint64_t seed) {
    FileLibrary lib(num_files, num_packets, packet_bytes);
    SplitMix64 rng(seed);
    rng.fill_bytes(lib.data_);
    return lib;
}

std::span<const uint8_t> FileLibrary::packet(uint32_t file, uint32_t packet_idx) const {
    const size_t off =
        (static_cast<size_t>(file) * num_packets_ + packet_idx) * packet_bytes_;
    return {data_.data() + off, packet_bytes_};
}

std::span<uint8_t> FileLibrary::packet(uint32_t file, uint32_t packet_idx) {
    const size_t off =
        (static_cast<size_t>(file) * num_packets_ + packet_idx) * packet_bytes_;
    return {data_.data() + off, packet_bytes_};
}

std::span<const uint8_t> FileLibrary::file_bytes(uint32_t file) const {
    const size_t off = static_cast<size_t>(file) * num_packets_ * packet_bytes_;
    return {data_.data() + off, static_cast<size_t>(num_packets_) * packet_bytes_};
}

CacheContents::CacheContents(uint32_t user, uint32_t num_files, uint32_t packet_bytes,
                             std::vector<uint32_t> cached_ids, uint32_t num_packets)
    : user_(user),
      num_files_(num_files),
      packet_bytes_(packet_bytes),
      cached_ids_(std::move(cached_ids)),
      rank_of_id_(num_packets, -1) {
    for (size_t r = 0; r < cached_ids_.size(); ++r) {
        rank_of_id_[cached_ids_[r]] = static_cast<int32_t>(r);
    }
    bytes_.resize(static_cast<size_t>(num_files_) * cached_ids_.size() * packet_bytes_);
}

bool CacheContents::has(uint32_t file, uint32_t packet_idx) const {
    return file < num_files_ && packet_idx < rank_of_id_.size() &&
           rank_of_id_[packet_idx] >= 0;
}

std::span<const uint8_t> CacheContents::packet(uint32_t file, uint32_t packet_idx) const {
    if (!has(file, packet_idx)) {
        throw IntegrityError("required packet missing from cache (user " +
                             std::to_string(user_) + ")");
    }
    const size_t off = (static_cast<size_t>(file) * cached_ids_.size() +
                        static_cast<size_t>(rank_of_id_[packet_idx])) *
                       packet_bytes_;
    return {bytes_.data() + off, packet_bytes_};
}

std::span<uint8_t> CacheContents::packet_mutable(uint32_t file, uint32_t packet_idx) {
    auto view = static_cast<const CacheContents*>(this)->packet(file, packet_idx);
    return {bytes_.data() + (view.data() - bytes_.data()), view.size()};
}

std::vector<CacheContents> place(const FileLibrary& library, const SchemeIndex& index) {
    if (library.num_packets() != index.num_packets()) {
        throw ParamError("library not dimensioned for this scheme's packet count");
    }
    const SchemeParams& p = index.params();
    std::vector<CacheContents> caches;
    caches.reserve(p.K);
    for (uint32_t user = 0; user < p.K; ++user) {
        std::vector<uint32_t> ids;
        for (uint32_t s = 0; s < index.num_packets(); ++s) {
            const UserSubset& S = index.packet_subsets()[s];
            if (!std::binary_search(S.begin(), S.end(), user)) ids.push_back(s);
        }
        CacheContents cache(user, library.num_files(), library.packet_bytes(), std::move(ids),
                            index.num_packets());
        for (uint32_t n = 0; n < library.num_files(); ++n) {
            for (uint32_t s = 0; s < index.num_packets(); ++s) {
                if (!cache.has(n, s)) continue;
                auto dst = cache.packet_mutable(n, s);
                auto src = library.packet(n, s);
                std::copy(src.begin(), src.end(), dst.begin());
            }
        }
        caches.push_back(std::move(cache));
    }
    return caches;
}

namespace {

void validate_demands(const std::vector<uint32_t>& demands, const FileLibrary& library,
                      const SchemeParams& p) {
    if (demands.size() != p.K) throw ParamError("demand vector must have one entry per user");
    for (uint32_t d : demands) {
        if (d >= library.num_files()) throw ParamError("demand out of file range");
    }
}

}  // namespace

std::vector<DeliveryMessage> deliver(const FileLibrary& library,
                                     const std::vector<uint32_t>& demands,
                                     const SchemeIndex& index) {
    if (library.num_packets() != index.num_packets()) {
        throw ParamError("library not dimensioned for this scheme's packet count");
    }
    validate_demands(demands, library, index.params());
    std::vector<DeliveryMessage> messages;
    messages.reserve(index.num_tags());
    for (uint32_t t = 0; t < index.num_tags(); ++t) {
        DeliveryMessage msg;
        msg.tag = index.tag_subsets()[t];
        msg.payload.assign(library.packet_bytes(), 0);
        const auto& users = index.neighborhood_of(t);
        const auto& packets = index.completion_packets(t);
        for (size_t j = 0; j < users.size(); ++j) {
            xor_into(msg.payload, library.packet(demands[users[j]], packets[j]));
        }
        messages.push_back(std::move(msg));
    }
    return messages;
}

std::vector<uint8_t> decode(uint32_t user, const CacheContents& cache,
                            const std::vector<DeliveryMessage>& messages,
                            const std::vector<uint32_t>& demands, const SchemeIndex& index) {
    const SchemeParams& p = index.params();
    if (user >= p.K) throw ParamError("user out of Z_K range");
    if (cache.user() != user) throw ParamError("cache belongs to a different user");
    if (demands.size() != p.K) throw ParamError("demand vector must have one entry per user");

    // Validate the transcript up front: exactly one message per expected tag.
    std::vector<const DeliveryMessage*> by_tag(index.num_tags(), nullptr);
    if (messages.size() != index.num_tags()) {
        throw IntegrityError("transcript message count does not match tag count");
    }
    for (uint32_t i = 0; i < messages.size(); ++i) {
        const DeliveryMessage& msg = messages[i];
        uint32_t t;
        if (msg.tag == index.tag_subsets()[i]) {
            t = i;  // canonical order, the common case
        } else {
            try {
                t = index.tag_index(msg.tag);
            } catch (const ParamError&) {
                throw IntegrityError("transcript contains an unknown tag");
            }
        }
        if (by_tag[t] != nullptr) throw IntegrityError("transcript contains a duplicate tag");
        if (msg.payload.size() != cache.packet_bytes()) {
            throw IntegrityError("transcript payload width mismatch");
        }
        by_tag[t] = &msg;
    }

    const uint32_t file = demands[user];
    const uint32_t pb = cache.packet_bytes();
    std::vector<uint8_t> out(static_cast<size_t>(index.num_packets()) * pb);

    for (uint32_t s = 0; s < index.num_packets(); ++s) {
        std::span<uint8_t> dst(out.data() + static_cast<size_t>(s) * pb, pb);
        const UserSubset& S = index.packet_subsets()[s];
        const auto pos_it = std::lower_bound(S.begin(), S.end(), user);
        if (pos_it == S.end() || *pos_it != user) {
            auto src = cache.packet(file, s);
            std::copy(src.begin(), src.end(), dst.begin());
            continue;
        }
        // Missing packet: solve through the unique tag T = S \ {user}.
        const uint32_t t = index.cover_tags(s)[pos_it - S.begin()];
        const DeliveryMessage& msg = *by_tag[t];
        std::copy(msg.payload.begin(), msg.payload.end(), dst.begin());
        const auto& users = index.neighborhood_of(t);
        const auto& packets = index.completion_packets(t);
        for (size_t j = 0; j < users.size(); ++j) {
            if (users[j] == user) continue;
            xor_into(dst, cache.packet(demands[users[j]], packets[j]));
        }
    }
    return out;
}

namespace {

void append_u32le(std::vector<uint8_t>& out, uint32_t v) {
    out.push_back(static_cast<uint8_t>(v));
    out.push_back(static_cast<uint8_t>(v >> 8));
    out.push_back(static_cast<uint8_t>(v >> 16));
    out.push_back(static_cast<uint8_t>(v >> 24));
}

uint32_t read_u32le(std::span<const uint8_t> bytes, size_t& pos) {
    if (pos + 4 > bytes.size()) throw IntegrityError("truncated transcript");
    const uint32_t v = static_cast<uint32_t>(bytes[pos]) |
                       (static_cast<uint32_t>(bytes[pos + 1]) << 8) |
                       (static_cast<uint32_t>(bytes[pos + 2]) << 16) |
                       (static_cast<uint32_t>(bytes[pos + 3]) << 24);
    pos += 4;
    return v;
}

}  // namespace

std::vector<uint8_t> serialize_transcript(const std::vector<DeliveryMessage>& messages) {
    std::vector<uint8_t> out;
    for (const DeliveryMessage& msg : messages) {
        append_u32le(out, static_cast<uint32_t>(msg.tag.size()));
        for (uint32_t e : msg.tag) append_u32le(out, e);
        append_u32le(out, static_cast<uint32_t>(msg.payload.size()));
        out.insert(out.end(), msg.payload.begin(), msg.payload.end());
    }
    return out;
}

std::vector<DeliveryMessage> deserialize_transcript(std::span<const uint8_t> bytes) {
    std::vector<DeliveryMessage> messages;
    size_t pos = 0;
    while (pos < bytes.size()) {
        DeliveryMessage msg;
        const uint32_t tag_len = read_u32le(bytes, pos);
        if (static_cast<size_t>(tag_len) * 4 > bytes.size() - pos) {
            throw IntegrityError("truncated transcript");
        }
        msg.tag.reserve(tag_len);
        for (uint32_t i = 0; i < tag_len; ++i) msg.tag.push_back(read_u32le(bytes, pos));
        const uint32_t payload_len = read_u32le(bytes, pos);
        if (pos + payload_len > bytes.size()) throw IntegrityError("truncated transcript");
        msg.payload.assign(bytes.begin() + pos, bytes.begin() + pos + payload_len);
        pos += payload_len;
        messages.push_back(std::move(msg));
    }
    return messages;
}

}  // namespace ccbs
