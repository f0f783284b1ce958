#include "smartson/money.hpp"

#include <cstdlib>
#include <limits>

#include "smartson/errors.hpp"

namespace smartson {

namespace {

constexpr Money::Units kMaxUnits = ~Money::Units{0};

std::string units_to_string(Money::Units value) {
    if (value == 0) return "0";
    std::string digits;
    while (value > 0) {
        digits.push_back(static_cast<char>('0' + static_cast<unsigned>(value % 10)));
        value /= 10;
    }
    return {digits.rbegin(), digits.rend()};
}

}  // namespace

Money Money::from_units(std::uint64_t whole) {
    return Money(static_cast<Units>(whole) * kScale);
}

Money Money::parse(std::string_view text) {
    if (text.empty()) throw MoneyParseError("empty amount");

    const auto dot = text.find('.');
    const std::string_view whole_part = text.substr(0, dot);
    const std::string_view frac_part =
        dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);

    if (whole_part.empty()) throw MoneyParseError("missing integer part: '" + std::string(text) + "'");
    if (dot != std::string_view::npos && frac_part.empty())
        throw MoneyParseError("missing fraction after '.': '" + std::string(text) + "'");
    if (frac_part.size() > kFractionDigits)
        throw MoneyParseError("more than 18 fractional digits: '" + std::string(text) + "'");

    Units value = 0;
    for (char c : whole_part) {
        if (c < '0' || c > '9') throw MoneyParseError("invalid character in amount: '" + std::string(text) + "'");
        if (value > (kMaxUnits - (c - '0')) / 10) throw MoneyRangeError("amount out of range: " + std::string(text));
        value = value * 10 + static_cast<unsigned>(c - '0');
    }
    if (value > kMaxUnits / kScale) throw MoneyRangeError("amount out of range: " + std::string(text));
    value *= kScale;

    Units frac = 0;
    for (char c : frac_part) {
        if (c < '0' || c > '9') throw MoneyParseError("invalid character in amount: '" + std::string(text) + "'");
        frac = frac * 10 + static_cast<unsigned>(c - '0');
    }
    for (std::size_t i = frac_part.size(); i < kFractionDigits; ++i) frac *= 10;

    if (value > kMaxUnits - frac) throw MoneyRangeError("amount out of range: " + std::string(text));
    return Money(value + frac);
}

Money Money::plus(Money other) const {
    if (units_ > kMaxUnits - other.units_) throw MoneyRangeError("addition overflow");
    return Money(units_ + other.units_);
}

Money Money::minus(Money other) const {
    if (other.units_ > units_) throw MoneyRangeError("subtraction below zero");
    return Money(units_ - other.units_);
}

Money Money::times(std::uint64_t factor) const {
    if (factor != 0 && units_ > kMaxUnits / factor) throw MoneyRangeError("multiplication overflow");
    return Money(units_ * factor);
}

Money Money::percent_floor(unsigned percent) const {
    if (percent != 0 && units_ > kMaxUnits / percent) throw MoneyRangeError("fee computation overflow");
    return Money(units_ * percent / 100);
}

std::string Money::to_decimal() const {
    std::string fixed = to_fixed();
    auto last = fixed.find_last_not_of('0');
    if (fixed[last] == '.') --last;  // trim "2.000..." to "2"
    return fixed.substr(0, last + 1);
}

std::string Money::to_fixed() const {
    std::string whole = units_to_string(units_ / kScale);
    std::string frac = units_to_string(units_ % kScale);
    return whole + "." + std::string(kFractionDigits - frac.size(), '0') + frac;
}

double Money::to_double() const {
    return std::strtod(to_decimal().c_str(), nullptr);
}

}  // namespace smartson
