#include <doctest.h>

#include <atomic>
#include <thread>

#include "smartson/agents.hpp"
#include "support/paths.hpp"

using namespace smartson;

// Stress mode: agents as free-running tasks over the shared platform and
// ledger. Golden outputs stay with the deterministic scheduler; this only
// checks that the invariants survive real concurrency.
TEST_SUITE("concurrent") {

TEST_CASE("a trade completes with agents on independent threads") {
    const auto trace = load_trace(smartson::test::trace_path());
    auto row = [&](const char* title) { return *find_by_title(trace, title); };

    EventJournal journal;
    Platform platform(&journal);
    Ledger ledger;
    LedgerClient client(ledger, &journal);

    const AccountId authority_wallet = ledger.create_account(Money{});
    RegistrarAgent registrar(platform.register_agent("registrar"), authority_wallet, 2);

    std::map<std::string, AccountId> wallets;
    std::vector<std::unique_ptr<ProviderAgent>> providers;
    for (int i = 1; i <= 3; ++i) {
        const std::string name = "provider-" + std::to_string(i);
        const AgentId id = platform.register_agent(name);
        platform.df_register(id, "resource-provider");
        const AccountId wallet = ledger.create_account(Money::parse("0.05"));
        wallets.emplace(name, wallet);
        providers.push_back(std::make_unique<ProviderAgent>(
            id, wallet, Catalogue({row("t3a.small"), row("m5.large")})));
    }

    const AccountId consumer_wallet = ledger.create_account(Money::parse("2"));
    ConsumerConfig cfg{registrar.id(), 1, 100, wallets, std::nullopt};
    ConsumerAgent consumer(platform.register_agent("consumer-1"), consumer_wallet, cfg);

    const Money total_before = ledger.total_balance();
    std::atomic<bool> stop{false};

    std::vector<std::jthread> tasks;
    tasks.emplace_back([&] {
        while (!stop.load()) {
            if (!registrar.poll(platform, client)) std::this_thread::yield();
        }
    });
    for (auto& p : providers) {
        tasks.emplace_back([&platform, &client, &stop, provider = p.get()] {
            while (!stop.load()) {
                if (!provider->poll(platform, client)) std::this_thread::yield();
            }
        });
    }

    // The consumer owns its whole lifecycle on one thread.
    std::thread consumer_task([&] {
        consumer.request_resource(platform, row("t3a.small"));
        while (consumer.phase() != TradePhase::Holding && !consumer.trade_finished()) {
            if (!consumer.poll(platform, client)) std::this_thread::yield();
        }
        if (consumer.phase() == TradePhase::Holding) {
            consumer.on_epoch_end();
            while (!consumer.trade_finished()) {
                if (!consumer.poll(platform, client)) std::this_thread::yield();
            }
        }
    });
    consumer_task.join();
    stop.store(true);
    tasks.clear();

    CHECK(consumer.outcome().completed);
    CHECK(ledger.total_balance() == total_before);
    CHECK(ledger.balance_of(authority_wallet) == Money::parse("0.000376"));
    CHECK(ledger.balance_of(consumer_wallet) == Money::parse("2") - Money::parse("0.0188"));

    // Per-pair FIFO held under concurrency: sequence numbers of messages on
    // each (sender, receiver) pair increase in delivery order by design; the
    // journal must at least contain a complete, valid log.
    CHECK_NOTHROW(validate_message_log(journal.messages_jsonl()));
}

}  // TEST_SUITE
