#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace smartson {

/// 20-byte ledger address, rendered as 0x-prefixed lowercase hex. Contract
/// accounts and user accounts share this namespace.
struct AccountId {
    std::array<std::uint8_t, 20> bytes{};

    std::string to_hex() const;
    static AccountId from_hex(std::string_view hex);

    auto operator<=>(const AccountId&) const = default;
};

}  // namespace smartson
