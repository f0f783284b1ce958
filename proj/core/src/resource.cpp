#include "smartson/resource.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "smartson/errors.hpp"

namespace smartson {

std::array<double, 6> ResourceSpec::vector() const {
    return {price.to_double(), mips, storage_price, ram_gb, bandwidth_mbps, cpu_cores};
}

std::optional<ResourceSpec> Catalogue::remove(const ResourceSpec& resource) {
    for (auto it = entries_.begin(); it != entries_.end(); ++it) {
        if (*it == resource) {
            ResourceSpec taken = std::move(*it);
            entries_.erase(it);
            return taken;
        }
    }
    return std::nullopt;
}

namespace {

constexpr const char* kTraceHeader = "title,wei_per_hr,mips,usd_per_gb,ram_gb,bw_mbps,cpu_cores";

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

double parse_component(const std::string& text, std::size_t line_no) {
    std::size_t consumed = 0;
    double value = 0;
    try {
        value = std::stod(text, &consumed);
    } catch (const std::exception&) {
        throw ParseError("invalid number '" + text + "'", line_no);
    }
    if (consumed != text.size()) throw ParseError("trailing junk in number '" + text + "'", line_no);
    if (!std::isfinite(value) || value < 0)
        throw ParseError("component must be finite and non-negative", line_no);
    return value;
}

}  // namespace

std::vector<ResourceSpec> parse_trace(const std::string& csv_text) {
    std::istringstream in(csv_text);
    std::string line;
    std::size_t line_no = 0;
    std::vector<ResourceSpec> rows;

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line_no == 1) {
            if (line != kTraceHeader)
                throw ParseError("expected header '" + std::string(kTraceHeader) + "'", line_no);
            continue;
        }
        const auto fields = split_csv_line(line);
        if (fields.size() != 7)
            throw ParseError("expected 7 columns, got " + std::to_string(fields.size()), line_no);

        ResourceSpec spec;
        spec.title = fields[0];
        if (spec.title.empty()) throw ParseError("empty title", line_no);
        try {
            spec.price = Money::parse(fields[1]);
        } catch (const std::exception& e) {
            throw ParseError(e.what(), line_no);
        }
        spec.mips = parse_component(fields[2], line_no);
        spec.storage_price = parse_component(fields[3], line_no);
        spec.ram_gb = parse_component(fields[4], line_no);
        spec.bandwidth_mbps = parse_component(fields[5], line_no);
        spec.cpu_cores = parse_component(fields[6], line_no);

        const auto v = spec.vector();
        bool any_positive = false;
        for (double c : v) any_positive = any_positive || c > 0;
        if (!any_positive) throw ParseError("zero resource vector", line_no);

        rows.push_back(std::move(spec));
    }
    return rows;
}

std::vector<ResourceSpec> load_trace(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open trace file " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_trace(buffer.str());
}

std::optional<ResourceSpec> find_by_title(const std::vector<ResourceSpec>& trace,
                                          const std::string& title) {
    for (const auto& row : trace)
        if (row.title == title) return row;
    return std::nullopt;
}

}  // namespace smartson
