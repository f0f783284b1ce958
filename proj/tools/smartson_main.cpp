#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "smartson/errors.hpp"
#include "smartson/journal.hpp"
#include "smartson/matching.hpp"
#include "smartson/resource.hpp"
#include "smartson/scenario.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitProtocol = 2;

smartson::ResourceSpec request_from_arg(const std::vector<smartson::ResourceSpec>& trace,
                                        const std::string& arg) {
    if (auto row = smartson::find_by_title(trace, arg)) return *row;

    // Not a title: expect the six vector components, comma separated.
    std::vector<std::string> parts;
    std::string part;
    std::istringstream in(arg);
    while (std::getline(in, part, ',')) parts.push_back(part);
    if (parts.size() != 6)
        throw smartson::ConfigError("request must be a trace title or 6 comma-separated values");

    smartson::ResourceSpec spec;
    spec.title = "custom";
    spec.price = smartson::Money::parse(parts[0]);
    spec.mips = std::stod(parts[1]);
    spec.storage_price = std::stod(parts[2]);
    spec.ram_gb = std::stod(parts[3]);
    spec.bandwidth_mbps = std::stod(parts[4]);
    spec.cpu_cores = std::stod(parts[5]);
    return spec;
}

int cmd_run(const std::string& config_path, std::optional<std::uint64_t> seed,
            const std::string& format, const std::string& out_dir) {
    auto config = smartson::ScenarioConfig::from_json_file(config_path);
    if (seed) config.seed = *seed;

    const auto report = smartson::run_scenario(config);
    const auto fmt = format == "csv" ? smartson::ReportFormat::Csv : smartson::ReportFormat::Json;
    const auto written = smartson::emit_report(report, fmt, out_dir);

    std::cout << report.to_csv();
    std::cout << "total_wei=" << report.total_amount.to_decimal()
              << " total_fee=" << report.total_fee.to_decimal() << "\n";
    for (const auto& path : written) std::cout << "wrote " << path << "\n";
    return kExitOk;
}

int cmd_match(const std::string& trace_path, const std::string& request_arg) {
    std::vector<smartson::ResourceSpec> trace;
    try {
        trace = smartson::load_trace(trace_path);
    } catch (const smartson::ParseError& e) {
        throw smartson::ConfigError(std::string("bad trace: ") + e.what());
    }
    const auto request = request_from_arg(trace, request_arg);

    std::cout << "request: " << request.title << "\n";
    std::cout << std::setprecision(15);
    for (const auto& entry : trace)
        std::cout << entry.title << "," << smartson::cosine_similarity(request, entry) << "\n";
    return kExitOk;
}

int cmd_replay(const std::string& log_path) {
    std::ifstream in(log_path, std::ios::binary);
    if (!in) throw smartson::IoError("cannot open log " + log_path);
    std::ostringstream buffer;
    buffer << in.rdbuf();

    const auto records = smartson::validate_message_log(buffer.str());
    std::cout << "ok: " << records.size() << " messages\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"SmartSON marketplace simulator"};
    app.require_subcommand(1);

    std::string config_path;
    std::string format = "json";
    std::string out_dir = ".";
    std::optional<std::uint64_t> seed;
    auto* run = app.add_subcommand("run", "Run a scenario config and emit reports");
    run->add_option("--config", config_path, "Scenario JSON config")->required();
    run->add_option("--seed", seed, "Override the config seed");
    run->add_option("--format", format, "Report format")->check(CLI::IsMember({"csv", "json"}));
    run->add_option("--out", out_dir, "Output directory");

    std::string trace_path;
    std::string request_arg;
    auto* match = app.add_subcommand("match", "Score a request against every trace entry");
    match->add_option("--trace", trace_path, "Provider trace CSV")->required();
    match->add_option("--request", request_arg, "Trace title or 6 comma-separated components")
        ->required();

    std::string log_path;
    auto* replay = app.add_subcommand("replay", "Re-validate an emitted message log");
    replay->add_option("--log", log_path, "messages.jsonl path")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(config_path, seed, format, out_dir);
        if (match->parsed()) return cmd_match(trace_path, request_arg);
        if (replay->parsed()) return cmd_replay(log_path);
    } catch (const smartson::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const smartson::IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const smartson::ProtocolError& e) {
        std::cerr << "protocol failure: " << e.what() << "\n";
        return kExitProtocol;
    } catch (const smartson::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitProtocol;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitProtocol;
    }
    return kExitOk;
}
