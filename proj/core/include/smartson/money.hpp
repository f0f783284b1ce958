#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace smartson {

/// Fixed-point currency amount. One table unit ("Wei" in the trace files)
/// equals 10^18 base units, so every price and fee in the bundled data is
/// representable exactly and the 2% contract fee never drifts.
///
/// Amounts are non-negative by construction; subtraction below zero throws
/// MoneyRangeError instead of wrapping.
class Money {
public:
    using Units = unsigned __int128;

    static constexpr std::uint64_t kScale = 1'000'000'000'000'000'000ULL;  // 10^18
    static constexpr int kFractionDigits = 18;

    constexpr Money() : units_(0) {}

    static constexpr Money from_base_units(Units units) { return Money(units); }
    static Money from_units(std::uint64_t whole);  // whole table units

    /// Parses "1", "0.0188", "0.5". At most 18 fractional digits; anything
    /// else is a MoneyParseError.
    static Money parse(std::string_view text);

    constexpr Units base_units() const { return units_; }
    constexpr bool is_zero() const { return units_ == 0; }

    Money plus(Money other) const;
    Money minus(Money other) const;       // throws MoneyRangeError on underflow
    Money times(std::uint64_t factor) const;

    /// floor(amount * percent / 100), multiply before divide.
    Money percent_floor(unsigned percent) const;

    /// Canonical decimal: fractional part trimmed of trailing zeros ("0.192",
    /// "2"). Matches how the trace files print amounts.
    std::string to_decimal() const;

    /// Fixed 18-digit rendering used by ledger dumps
    /// ("0.192000000000000000"). parse() round-trips both renderings.
    std::string to_fixed() const;

    /// Value as a double through the canonical decimal string, so a price
    /// parsed from a trace row converts to exactly the double the printed
    /// decimal denotes. Used for the resource vector only.
    double to_double() const;

    friend constexpr bool operator==(Money a, Money b) { return a.units_ == b.units_; }
    friend constexpr auto operator<=>(Money a, Money b) { return a.units_ <=> b.units_; }

private:
    explicit constexpr Money(Units units) : units_(units) {}

    Units units_;
};

inline Money operator+(Money a, Money b) { return a.plus(b); }
inline Money operator-(Money a, Money b) { return a.minus(b); }

}  // namespace smartson
