#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace smartson {

using Sha256Digest = std::array<std::uint8_t, 32>;

/// FIPS 180-4 SHA-256 of the given bytes.
Sha256Digest sha256(std::span<const std::uint8_t> data);

std::string to_hex(std::span<const std::uint8_t> bytes);

/// Canonical byte encoder for transaction hashing: fixed-width big-endian
/// integers, raw byte arrays, length-prefixed strings.
class ByteWriter {
public:
    void u8(std::uint8_t v) { bytes_.push_back(v); }
    void u64(std::uint64_t v);
    void u128(unsigned __int128 v);
    void raw(std::span<const std::uint8_t> data);
    void str(std::string_view s);  // u64 length prefix, then bytes

    std::span<const std::uint8_t> bytes() const { return bytes_; }

private:
    std::vector<std::uint8_t> bytes_;
};

}  // namespace smartson
