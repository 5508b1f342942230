#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "bounded_subsets.hpp"

namespace ccbs {

/// One broadcast: the tag subset T (size m-1) plus the XOR of all packets
/// W_{d_k, T+{k}} over k in the tag's completion neighborhood.
struct DeliveryMessage {
    UserSubset tag;
    std::vector<uint8_t> payload;
};

/// Precomputed index structure shared by placement, delivery and decoding
/// for one (K, m, ell): the canonical packet subsets B(m), the canonical tag
/// subsets B(m-1), and each tag's completion neighborhood U(T).
class SchemeIndex {
public:
    explicit SchemeIndex(const SchemeParams& params);

    const SchemeParams& params() const { return params_; }
    uint32_t num_packets() const { return static_cast<uint32_t>(packet_subsets_.size()); }
    uint32_t num_tags() const { return static_cast<uint32_t>(tag_subsets_.size()); }
    const std::vector<UserSubset>& packet_subsets() const { return packet_subsets_; }
    const std::vector<UserSubset>& tag_subsets() const { return tag_subsets_; }

    /// Canonical position of a bounded m-subset; ParamError if not a member.
    uint32_t packet_index(const UserSubset& S) const;
    /// Canonical position of a bounded (m-1)-subset; ParamError if not a member.
    uint32_t tag_index(const UserSubset& T) const;

    /// U(T) for the tag at `tag_idx`, ascending.
    const std::vector<uint32_t>& neighborhood_of(uint32_t tag_idx) const {
        return neighborhoods_[tag_idx];
    }

    /// Packet index of T + {k} for the j-th member k of neighborhood_of(tag_idx).
    const std::vector<uint32_t>& completion_packets(uint32_t tag_idx) const {
        return completions_[tag_idx];
    }

    /// Tag index of S - {S[i]} for the i-th element of packet subset s.
    const std::vector<uint32_t>& cover_tags(uint32_t packet_idx) const {
        return cover_tags_[packet_idx];
    }

private:
    SchemeParams params_;
    std::vector<UserSubset> packet_subsets_;
    std::vector<UserSubset> tag_subsets_;
    std::vector<std::vector<uint32_t>> neighborhoods_;
    std::vector<std::vector<uint32_t>> completions_;
    std::vector<std::vector<uint32_t>> cover_tags_;
};

/// U(T): every user k whose insertion keeps T bounded at size m.
/// ParamError if T is not a bounded (m-1)-subset.
std::vector<uint32_t> neighborhood(const UserSubset& T, const SchemeParams& params);

/// V(k): every bounded (m-1)-subset T with T+{k} bounded at size m.
/// |V(k)| equals count_containing(K, m, ell).
std::vector<UserSubset> co_neighborhood(uint32_t k, const SchemeParams& params);

/// N files of F packets, packet_bytes bytes each, stored contiguously.
/// Packet indices follow the canonical order of B_{K,ell}(m).
class FileLibrary {
public:
    FileLibrary(uint32_t num_files, uint32_t num_packets, uint32_t packet_bytes);

    /// Library with contents drawn from a SplitMix64 byte stream.
    static FileLibrary random(uint32_t num_files, uint32_t num_packets, uint32_t packet_bytes,
                              uint64_t seed);

    uint32_t num_files() const { return num_files_; }
    uint32_t num_packets() const { return num_packets_; }
    uint32_t packet_bytes() const { return packet_bytes_; }

    std::span<const uint8_t> packet(uint32_t file, uint32_t packet_idx) const;
    std::span<uint8_t> packet(uint32_t file, uint32_t packet_idx);
    std::span<const uint8_t> file_bytes(uint32_t file) const;

private:
    uint32_t num_files_;
    uint32_t num_packets_;
    uint32_t packet_bytes_;
    std::vector<uint8_t> data_;
};

/// The uncoded cache of one user: verbatim copies of every packet W_{n,S}
/// with the user outside S, for every file n.
class CacheContents {
public:
    CacheContents(uint32_t user, uint32_t num_files, uint32_t packet_bytes,
                  std::vector<uint32_t> cached_ids, uint32_t num_packets);

    uint32_t user() const { return user_; }
    uint32_t packet_bytes() const { return packet_bytes_; }
    uint32_t per_file_count() const { return static_cast<uint32_t>(cached_ids_.size()); }
    bool has(uint32_t file, uint32_t packet_idx) const;

    std::span<const uint8_t> packet(uint32_t file, uint32_t packet_idx) const;
    std::span<uint8_t> packet_mutable(uint32_t file, uint32_t packet_idx);

private:
    uint32_t user_;
    uint32_t num_files_;
    uint32_t packet_bytes_;
    std::vector<uint32_t> cached_ids_;   // ascending packet indices
    std::vector<int32_t> rank_of_id_;    // packet index -> rank, -1 if absent
    std::vector<uint8_t> bytes_;
};

/// Placement phase: verbatim packet copies, no coding.
std::vector<CacheContents> place(const FileLibrary& library, const SchemeIndex& index);

/// Delivery phase: one XOR message per bounded (m-1)-subset, in canonical
/// tag order.
std::vector<DeliveryMessage> deliver(const FileLibrary& library,
                                     const std::vector<uint32_t>& demands,
                                     const SchemeIndex& index);

/// Decoding for one user: cached packets verbatim, missing packets resolved
/// through the unique message tagged S minus {user}. Returns the file as
/// F * packet_bytes bytes. IntegrityError when the transcript is missing
/// tags, has duplicates, or the cache lacks a required packet.
std::vector<uint8_t> decode(uint32_t user, const CacheContents& cache,
                            const std::vector<DeliveryMessage>& messages,
                            const std::vector<uint32_t>& demands, const SchemeIndex& index);

/// Wire form of a delivery: per message, the tag element count and elements,
/// then the payload length and bytes; all lengths and elements are
/// little-endian 32-bit words.
std::vector<uint8_t> serialize_transcript(const std::vector<DeliveryMessage>& messages);
std::vector<DeliveryMessage> deserialize_transcript(std::span<const uint8_t> bytes);

}  // namespace ccbs
