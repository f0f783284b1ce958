#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "smartson/journal.hpp"
#include "smartson/money.hpp"

namespace smartson {

struct ProviderSeed {
    std::string name;
    std::vector<std::string> catalogue_titles;
};

/// Everything a headless run needs. Catalogues and requests are either
/// explicit title lists (titles must exist in the trace) or seeded draws
/// from the trace.
struct ScenarioConfig {
    std::string name = "scenario";
    std::string trace_path;
    std::uint64_t seed = 0;
    bool deterministic = true;
    unsigned fee_percent = 2;
    std::uint64_t lease_time_hours = 1;
    std::uint64_t deadline_offset_blocks = 100;
    unsigned epochs = 1;

    std::vector<ProviderSeed> providers;  // explicit catalogues when non-empty
    unsigned num_providers = 5;           // used with random_catalogues
    unsigned catalogue_size = 5;
    bool random_catalogues = false;

    std::vector<std::string> requests;  // one title per epoch
    bool random_requests = false;

    unsigned num_consumers = 1;

    Money initial_authority;                       // unstated upstream; configurable, default 0
    Money initial_consumer = Money::from_units(2);
    Money initial_provider = Money::parse("0.05");

    /// Per-epoch winner replacement (provider names). When set, the consumer
    /// takes the named provider's proposal instead of the score argmax.
    std::vector<std::string> winner_overrides;

    std::optional<unsigned> reply_timeout_polls;

    static ScenarioConfig from_json_file(const std::string& path);  // ConfigError
    static ScenarioConfig from_json_text(const std::string& text, const std::string& base_dir);
};

struct ScoreRow {
    std::string provider;
    std::string requested;
    std::vector<std::pair<std::string, double>> entries;  // title -> score, catalogue order
};

struct EpochRecord {
    unsigned epoch = 0;  // 1-based
    std::string consumer;
    std::string requested;
    std::string winner;   // empty when the trade ended without a lease
    std::string offered;
    double winning_score = 0;
    Money amount;        // escrowed deposit (the Wei column)
    Money contract_fee;  // floor(amount * fee_percent / 100)
    Money provider_amount;
    std::string contract_address;
    bool completed = false;
    std::string failure;
    std::vector<TxRecord> receipts;
    std::vector<ScoreRow> scores;  // per provider, full catalogue scoring
};

struct SimulationReport {
    std::string scenario;
    std::uint64_t seed = 0;
    bool deterministic = true;
    unsigned fee_percent = 2;
    std::uint64_t lease_time_hours = 1;
    unsigned epochs = 0;
    std::vector<std::string> provider_names;
    std::vector<std::string> consumer_names;
    std::vector<EpochRecord> records;
    Money total_amount;
    Money total_fee;
    std::vector<std::pair<std::string, Money>> initial_balances;  // authority, providers, consumers
    std::vector<std::pair<std::string, Money>> final_balances;
    std::string ledger_dump;
    EventJournal journal;

    /// Byte-stable full report; totals are column sums of the records.
    std::string to_json() const;
    /// Epoch table: epoch,requested,winner,offered,wei,contract_fee.
    std::string to_csv() const;
};

/// Runs the scenario: per epoch the consumer requests, contracts, acquires,
/// holds for the lease, releases; catalogues are restored before the next
/// epoch. Throws ConfigError for invalid configs and ProtocolError when a
/// deterministic run deadlocks (the message log tail is attached).
SimulationReport run_scenario(const ScenarioConfig& config);

/// Cumulative provider balances: entry k is the balance after epoch k, with
/// entry 0 the initial endowment. Derived from the report records alone.
std::vector<std::pair<std::string, std::vector<Money>>> balance_series(
    const SimulationReport& report);

enum class ReportFormat { Csv, Json };

/// Writes the report into out_dir: report.json + messages.jsonl + ledger.json
/// for Json, epochs.csv for Csv. Returns the written paths.
std::vector<std::string> emit_report(const SimulationReport& report, ReportFormat format,
                                     const std::string& out_dir);

}  // namespace smartson
