#include "smartson/scenario.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <sstream>

#include <json.hpp>

#include "smartson/agents.hpp"
#include "smartson/errors.hpp"
#include "smartson/rng.hpp"

namespace smartson {

namespace {

using Json = nlohmann::ordered_json;

Money parse_balance(const Json& j, const char* key, Money fallback) {
    if (!j.contains(key)) return fallback;
    try {
        return Money::parse(j.at(key).get<std::string>());
    } catch (const std::exception& e) {
        throw ConfigError(std::string("bad balance for ") + key + ": " + e.what());
    }
}

}  // namespace

ScenarioConfig ScenarioConfig::from_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return from_json_text(buffer.str(), std::filesystem::path(path).parent_path().string());
}

ScenarioConfig ScenarioConfig::from_json_text(const std::string& text,
                                              const std::string& base_dir) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("invalid config JSON: ") + e.what());
    }

    try {
        ScenarioConfig cfg;
        cfg.name = j.value("name", cfg.name);
        if (!j.contains("trace")) throw ConfigError("config is missing \"trace\"");
        std::filesystem::path trace(j.at("trace").get<std::string>());
        if (trace.is_relative() && !base_dir.empty()) trace = std::filesystem::path(base_dir) / trace;
        cfg.trace_path = trace.lexically_normal().string();

        cfg.seed = j.value("seed", cfg.seed);
        cfg.deterministic = j.value("deterministic", cfg.deterministic);
        cfg.fee_percent = j.value("fee_percent", cfg.fee_percent);
        cfg.lease_time_hours = j.value("lease_time_hours", cfg.lease_time_hours);
        cfg.deadline_offset_blocks = j.value("deadline_offset_blocks", cfg.deadline_offset_blocks);
        cfg.epochs = j.value("epochs", cfg.epochs);
        cfg.num_consumers = j.value("num_consumers", cfg.num_consumers);

        if (j.contains("providers")) {
            for (const auto& p : j.at("providers")) {
                ProviderSeed seed;
                seed.name = p.at("name").get<std::string>();
                for (const auto& t : p.at("catalogue")) seed.catalogue_titles.push_back(t.get<std::string>());
                cfg.providers.push_back(std::move(seed));
            }
        } else {
            cfg.random_catalogues = true;
            cfg.num_providers = j.value("num_providers", cfg.num_providers);
            cfg.catalogue_size = j.value("catalogue_size", cfg.catalogue_size);
        }

        if (j.contains("requests")) {
            for (const auto& r : j.at("requests")) cfg.requests.push_back(r.get<std::string>());
        } else {
            cfg.random_requests = true;
        }

        if (j.contains("initial_balances")) {
            const auto& balances = j.at("initial_balances");
            cfg.initial_authority = parse_balance(balances, "authority", cfg.initial_authority);
            cfg.initial_consumer = parse_balance(balances, "consumer", cfg.initial_consumer);
            cfg.initial_provider = parse_balance(balances, "provider", cfg.initial_provider);
        }

        if (j.contains("winner_overrides"))
            for (const auto& w : j.at("winner_overrides"))
                cfg.winner_overrides.push_back(w.get<std::string>());

        if (j.contains("reply_timeout_polls"))
            cfg.reply_timeout_polls = j.at("reply_timeout_polls").get<unsigned>();

        return cfg;
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(std::string("invalid config: ") + e.what());
    }
}

namespace {

// Collects the per-entry scores providers compute while answering CFPs.
class ScoreSink final : public ScoreObserver {
public:
    void on_scores(const std::string& provider, const std::string& requested,
                   const std::vector<std::pair<std::string, double>>& scores) override {
        rows_.push_back(ScoreRow{provider, requested, scores});
    }

    std::vector<ScoreRow> take() { return std::exchange(rows_, {}); }

private:
    std::vector<ScoreRow> rows_;
};

std::vector<std::string> catalogue_titles(const Catalogue& catalogue) {
    std::vector<std::string> titles;
    for (const auto& e : catalogue.entries()) titles.push_back(e.title);
    std::sort(titles.begin(), titles.end());
    return titles;
}

struct World {
    ScenarioConfig cfg;
    std::vector<ResourceSpec> trace;
    EventJournal journal;
    Platform platform{&journal};
    Ledger ledger;
    LedgerClient client{ledger, &journal};

    AccountId authority_wallet;
    std::unique_ptr<RegistrarAgent> registrar;
    std::vector<std::unique_ptr<ProviderAgent>> providers;
    std::vector<std::unique_ptr<ConsumerAgent>> consumers;
    std::vector<std::vector<std::string>> initial_catalogues;  // sorted titles per provider
    ScoreSink score_sink;

    void run_until(const std::function<bool()>& done);
};

void World::run_until(const std::function<bool()>& done) {
    const unsigned idle_limit =
        1000 + 2 * cfg.reply_timeout_polls.value_or(0);
    unsigned idle_rounds = 0;
    while (!done()) {
        bool progress = registrar->poll(platform, client);
        for (auto& p : providers) progress = p->poll(platform, client) || progress;
        for (auto& c : consumers) progress = c->poll(platform, client) || progress;
        if (progress) {
            idle_rounds = 0;
            continue;
        }
        if (++idle_rounds > idle_limit) {
            std::string log = journal.messages_jsonl();
            if (log.size() > 4000) log = "..." + log.substr(log.size() - 4000);
            throw ProtocolError("protocol deadlock in deterministic run; message log:\n" + log);
        }
    }
}

ResourceSpec lookup_title(const std::vector<ResourceSpec>& trace, const std::string& title) {
    auto spec = find_by_title(trace, title);
    if (!spec) throw ConfigError("title not present in trace: " + title);
    return *spec;
}

}  // namespace

SimulationReport run_scenario(const ScenarioConfig& config) {
    if (config.epochs < 1) throw ConfigError("epochs must be >= 1");
    if (config.lease_time_hours < 1) throw ConfigError("lease_time_hours must be >= 1");
    if (config.fee_percent > 100) throw ConfigError("fee_percent must be <= 100");
    if (config.num_consumers < 1) throw ConfigError("num_consumers must be >= 1");
    if (!config.winner_overrides.empty() && config.winner_overrides.size() != config.epochs)
        throw ConfigError("winner_overrides must name one provider per epoch");
    if (!config.requests.empty() && config.requests.size() != config.epochs)
        throw ConfigError("requests must list one title per epoch");
    if (!config.random_requests && config.requests.empty())
        throw ConfigError("no requests configured");

    World world;
    world.cfg = config;
    try {
        world.trace = load_trace(config.trace_path);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("trace not loadable: ") + e.what());
    }

    SplitMix64 rng(config.seed);

    // Seed catalogues. Random draws consume the generator in provider order,
    // then one draw per epoch for random requests.
    std::vector<ProviderSeed> seeds = config.providers;
    if (config.random_catalogues) {
        if (config.num_providers < 1) throw ConfigError("num_providers must be >= 1");
        if (config.catalogue_size > world.trace.size())
            throw ConfigError("catalogue_size exceeds trace rows");
        for (unsigned i = 0; i < config.num_providers; ++i) {
            ProviderSeed seed;
            seed.name = "provider-" + std::to_string(i + 1);
            for (auto idx : rng.sample_without_replacement(config.catalogue_size, world.trace.size()))
                seed.catalogue_titles.push_back(world.trace[idx].title);
            seeds.push_back(std::move(seed));
        }
    }
    if (seeds.empty()) throw ConfigError("no providers configured");

    std::vector<std::string> requests = config.requests;
    if (config.random_requests) {
        for (unsigned e = 0; e < config.epochs; ++e)
            requests.push_back(world.trace[rng.below(world.trace.size())].title);
    }
    for (const auto& title : requests) lookup_title(world.trace, title);

    // Wallets first (authority, providers, consumers), then platform agents
    // in the same order so directory order equals provider list order.
    world.authority_wallet = world.ledger.create_account(config.initial_authority);
    const AgentId registrar_id = world.platform.register_agent("registrar");
    world.registrar =
        std::make_unique<RegistrarAgent>(registrar_id, world.authority_wallet, config.fee_percent);

    std::map<std::string, AccountId> wallet_directory;
    for (const auto& seed : seeds) {
        const AccountId wallet = world.ledger.create_account(config.initial_provider);
        std::vector<ResourceSpec> entries;
        for (const auto& title : seed.catalogue_titles)
            entries.push_back(lookup_title(world.trace, title));
        const AgentId id = world.platform.register_agent(seed.name);
        world.platform.df_register(id, "resource-provider");
        auto agent = std::make_unique<ProviderAgent>(id, wallet, Catalogue(std::move(entries)));
        agent->set_score_observer(&world.score_sink);
        wallet_directory.emplace(seed.name, wallet);
        world.initial_catalogues.push_back(catalogue_titles(agent->catalogue()));
        world.providers.push_back(std::move(agent));
    }

    for (unsigned i = 0; i < config.num_consumers; ++i) {
        const AccountId wallet = world.ledger.create_account(config.initial_consumer);
        const AgentId id = world.platform.register_agent("consumer-" + std::to_string(i + 1));
        ConsumerConfig consumer_cfg{registrar_id, config.lease_time_hours,
                                    config.deadline_offset_blocks, wallet_directory,
                                    config.reply_timeout_polls};
        world.consumers.push_back(std::make_unique<ConsumerAgent>(id, wallet, consumer_cfg));
    }

    SimulationReport report;
    report.scenario = config.name;
    report.seed = config.seed;
    report.deterministic = config.deterministic;
    report.fee_percent = config.fee_percent;
    report.lease_time_hours = config.lease_time_hours;
    report.epochs = config.epochs;
    for (const auto& p : world.providers) report.provider_names.push_back(p->id().name);
    for (const auto& c : world.consumers) report.consumer_names.push_back(c->id().name);

    report.initial_balances.emplace_back("authority", config.initial_authority);
    for (const auto& p : world.providers)
        report.initial_balances.emplace_back(p->id().name, world.ledger.balance_of(p->wallet()));
    for (const auto& c : world.consumers)
        report.initial_balances.emplace_back(c->id().name, world.ledger.balance_of(c->wallet()));

    for (unsigned epoch = 1; epoch <= config.epochs; ++epoch) {
        const ResourceSpec target = lookup_title(world.trace, requests[epoch - 1]);
        std::optional<std::string> winner_override;
        if (!config.winner_overrides.empty()) winner_override = config.winner_overrides[epoch - 1];

        const std::size_t tx_mark = world.journal.transactions().size();
        for (auto& c : world.consumers) c->request_resource(world.platform, target, winner_override);

        // Everyone acquires (or fails), holds for the lease, then releases.
        world.run_until([&] {
            return std::all_of(world.consumers.begin(), world.consumers.end(), [](const auto& c) {
                return c->phase() == TradePhase::Holding || c->trade_finished();
            });
        });
        for (std::uint64_t hour = 0; hour < config.lease_time_hours; ++hour)
            for (auto& c : world.consumers) c->on_epoch_end();
        world.run_until([&] {
            return std::all_of(world.consumers.begin(), world.consumers.end(),
                               [](const auto& c) { return c->trade_finished(); });
        });

        auto scores = world.score_sink.take();
        for (std::size_t i = 0; i < world.consumers.size(); ++i) {
            const auto& consumer = *world.consumers[i];
            const auto& outcome = consumer.outcome();
            EpochRecord record;
            record.epoch = epoch;
            record.consumer = consumer.id().name;
            record.requested = target.title;
            record.completed = outcome.completed;
            record.failure = outcome.failure;
            if (outcome.selected) {
                record.winner = outcome.selected->provider;
                record.offered = outcome.selected->resource.title;
                record.winning_score = outcome.selected->score;
            }
            if (outcome.completed && outcome.contract_address) {
                const auto& contract = world.ledger.contract_at(*outcome.contract_address);
                if (config.deterministic && contract.status() != EscrowState::EscrowComplete)
                    throw ProtocolError("completed trade left escrow in " +
                                        to_string(contract.status()));
                record.amount = outcome.deposit;
                record.contract_fee = contract.fee_amount();
                record.provider_amount = contract.provider_amount();
                record.contract_address = outcome.contract_address->to_hex();
            }
            if (i == 0) record.scores = scores;  // one scoring pass per epoch in golden runs
            report.records.push_back(std::move(record));
        }
        // Receipts: everything mined during this epoch goes to the (single)
        // consumer's record; with several consumers the journal keeps the
        // authoritative interleaving.
        if (world.consumers.size() == 1) {
            auto& record = report.records.back();
            const auto& txs = world.journal.transactions();
            record.receipts.assign(txs.begin() + static_cast<std::ptrdiff_t>(tx_mark), txs.end());
        }

        if (config.deterministic) {
            for (std::size_t i = 0; i < world.providers.size(); ++i) {
                if (catalogue_titles(world.providers[i]->catalogue()) != world.initial_catalogues[i])
                    throw ProtocolError("catalogue of " + world.providers[i]->id().name +
                                        " not restored after epoch " + std::to_string(epoch));
            }
        }
    }

    for (const auto& r : report.records) {
        report.total_amount = report.total_amount + r.amount;
        report.total_fee = report.total_fee + r.contract_fee;
    }

    report.final_balances.emplace_back("authority", world.ledger.balance_of(world.authority_wallet));
    for (const auto& p : world.providers)
        report.final_balances.emplace_back(p->id().name, world.ledger.balance_of(p->wallet()));
    for (const auto& c : world.consumers)
        report.final_balances.emplace_back(c->id().name, world.ledger.balance_of(c->wallet()));
    report.ledger_dump = world.ledger.dump_json();
    report.journal = std::move(world.journal);
    return report;
}

std::vector<std::pair<std::string, std::vector<Money>>> balance_series(
    const SimulationReport& report) {
    std::vector<std::pair<std::string, std::vector<Money>>> series;
    for (const auto& name : report.provider_names) {
        Money initial;
        for (const auto& [who, amount] : report.initial_balances)
            if (who == name) initial = amount;
        std::vector<Money> balances{initial};
        for (unsigned epoch = 1; epoch <= report.epochs; ++epoch) {
            Money current = balances.back();
            for (const auto& r : report.records)
                if (r.epoch == epoch && r.winner == name && r.completed)
                    current = current + r.amount - r.contract_fee;
            balances.push_back(current);
        }
        series.emplace_back(name, std::move(balances));
    }
    return series;
}

namespace {

Json event_to_json(const EscrowEvent& event) {
    Json j;
    if (const auto* deposit = std::get_if<DepositEvent>(&event)) {
        j["event"] = "Deposit";
        j["depositor"] = deposit->depositor.to_hex();
        j["amount"] = deposit->amount.to_decimal();
    } else if (const auto* payment = std::get_if<ServicePaymentEvent>(&event)) {
        j["event"] = "ServicePayment";
        j["block_no"] = payment->block_no;
        j["contract_balance"] = payment->contract_balance.to_decimal();
    }
    return j;
}

Json tx_to_json(const TxRecord& tx) {
    Json j;
    j["seq"] = tx.seq;
    j["actor"] = tx.actor;
    j["kind"] = tx.kind;
    j["block"] = tx.block;
    if (tx.reverted) {
        j["reverted"] = true;
        j["revert_reason"] = tx.revert_reason;
    } else {
        j["tx_hash"] = tx.tx_hash;
    }
    if (!tx.events.empty()) {
        auto& events = j["events"];
        events = Json::array();
        for (const auto& e : tx.events) events.push_back(event_to_json(e));
    }
    return j;
}

}  // namespace

std::string SimulationReport::to_json() const {
    Json j;
    j["scenario"] = scenario;
    j["seed"] = seed;
    j["deterministic"] = deterministic;
    j["fee_percent"] = fee_percent;
    j["lease_time_hours"] = lease_time_hours;
    j["epochs"] = epochs;
    j["providers"] = provider_names;
    j["consumers"] = consumer_names;

    auto& records_json = j["records"];
    records_json = Json::array();
    for (const auto& r : records) {
        Json rec;
        rec["epoch"] = r.epoch;
        rec["consumer"] = r.consumer;
        rec["requested"] = r.requested;
        rec["winner"] = r.winner;
        rec["offered"] = r.offered;
        rec["winning_score"] = r.winning_score;
        rec["wei"] = r.amount.to_decimal();
        rec["contract_fee"] = r.contract_fee.to_decimal();
        rec["provider_amount"] = r.provider_amount.to_decimal();
        rec["contract_address"] = r.contract_address;
        rec["completed"] = r.completed;
        rec["failure"] = r.failure;
        auto& receipts = rec["receipts"];
        receipts = Json::array();
        for (const auto& tx : r.receipts) receipts.push_back(tx_to_json(tx));
        auto& scores = rec["scores"];
        scores = Json::array();
        for (const auto& row : r.scores) {
            Json s;
            s["provider"] = row.provider;
            s["requested"] = row.requested;
            auto& entries = s["entries"];
            entries = Json::array();
            for (const auto& [title, score] : row.entries) {
                Json e;
                e["title"] = title;
                e["score"] = score;
                entries.push_back(std::move(e));
            }
            scores.push_back(std::move(s));
        }
        records_json.push_back(std::move(rec));
    }

    j["totals"]["wei"] = total_amount.to_decimal();
    j["totals"]["contract_fee"] = total_fee.to_decimal();

    auto& initial = j["balances"]["initial"];
    initial = Json::object();
    for (const auto& [name, amount] : initial_balances) initial[name] = amount.to_decimal();
    auto& final_ = j["balances"]["final"];
    final_ = Json::object();
    for (const auto& [name, amount] : final_balances) final_[name] = amount.to_decimal();

    auto& series_json = j["provider_balance_series"];
    series_json = Json::object();
    for (const auto& [name, balances] : balance_series(*this)) {
        auto& arr = series_json[name];
        arr = Json::array();
        for (const auto& b : balances) arr.push_back(b.to_decimal());
    }

    j["notes"] = journal.notes();
    j["message_log"] = "messages.jsonl";
    return j.dump(2) + "\n";
}

std::string SimulationReport::to_csv() const {
    std::ostringstream out;
    out << "epoch,requested,winner,offered,wei,contract_fee\n";
    for (const auto& r : records) {
        out << r.epoch << "," << r.requested << "," << r.winner << "," << r.offered << ","
            << r.amount.to_decimal() << "," << r.contract_fee.to_decimal() << "\n";
    }
    return out.str();
}

std::vector<std::string> emit_report(const SimulationReport& report, ReportFormat format,
                                     const std::string& out_dir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create output directory " + out_dir + ": " + ec.message());

    auto write = [&](const std::string& file_name, const std::string& content) {
        const fs::path path = fs::path(out_dir) / file_name;
        std::ofstream out(path, std::ios::binary);
        if (!out) throw IoError("cannot write " + path.string());
        out << content;
        if (!out) throw IoError("short write to " + path.string());
        return path.string();
    };

    std::vector<std::string> written;
    if (format == ReportFormat::Json) {
        written.push_back(write("report.json", report.to_json()));
        written.push_back(write("messages.jsonl", report.journal.messages_jsonl()));
        written.push_back(write("ledger.json", report.ledger_dump));
    } else {
        written.push_back(write("epochs.csv", report.to_csv()));
    }
    return written;
}

}  // namespace smartson
