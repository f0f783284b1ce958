#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "smartson/money.hpp"

namespace smartson {

/// One tradeable resource: a title plus the six-component numeric vector
/// (hourly price, MIPS, storage $/GB, RAM GB, bandwidth Mbps, CPU cores) in
/// trace-column order. Components are finite and non-negative with at least
/// one strictly positive.
struct ResourceSpec {
    std::string title;
    Money price;  // per hour
    double mips = 0;
    double storage_price = 0;
    double ram_gb = 0;
    double bandwidth_mbps = 0;
    double cpu_cores = 0;

    /// The similarity vector. The price participates as its decimal value,
    /// not in base units, so scores reproduce what the trace decimals denote.
    std::array<double, 6> vector() const;

    bool operator==(const ResourceSpec&) const = default;
};

/// A provider's resource pool: an ordered multiset. remove() takes exactly
/// one matching instance; put() restores one at the end.
class Catalogue {
public:
    Catalogue() = default;
    explicit Catalogue(std::vector<ResourceSpec> entries) : entries_(std::move(entries)) {}

    const std::vector<ResourceSpec>& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }
    std::size_t size() const { return entries_.size(); }

    std::optional<ResourceSpec> remove(const ResourceSpec& resource);
    void put(ResourceSpec resource) { entries_.push_back(std::move(resource)); }

private:
    std::vector<ResourceSpec> entries_;
};

/// Parses a provider trace CSV with header
/// `title,wei_per_hr,mips,usd_per_gb,ram_gb,bw_mbps,cpu_cores`.
/// Throws ParseError with the offending line number.
std::vector<ResourceSpec> load_trace(const std::string& path);
std::vector<ResourceSpec> parse_trace(const std::string& csv_text);

/// Looks a title up in a loaded trace.
std::optional<ResourceSpec> find_by_title(const std::vector<ResourceSpec>& trace,
                                          const std::string& title);

}  // namespace smartson
