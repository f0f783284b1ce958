#include <benchmark/benchmark.h>

#include "smartson/ledger.hpp"

namespace {

using namespace smartson;

// Full deploy / initialize / deposit / approve / approve / end cycle.
void BM_escrow_lifecycle(benchmark::State& state) {
    Ledger ledger;
    const AccountId authority = ledger.create_account(Money{});
    const AccountId provider = ledger.create_account(Money{});
    const AccountId consumer = ledger.create_account(Money::parse("1000000"));
    const Money deposit = Money::parse("0.192");

    for (auto _ : state) {
        const auto deployed =
            ledger.submit(Transaction{authority, std::nullopt, Money{}, DeployEscrow{}});
        const AccountId contract = *deployed.created_contract;
        ledger.submit(Transaction{authority, contract, Money{},
                                  InitializeEscrow{provider, consumer, 2,
                                                   ledger.current_block() + 100}});
        ledger.submit(Transaction{consumer, contract, deposit, DepositToEscrow{}});
        ledger.submit(Transaction{provider, contract, Money{}, ApproveEscrow{}});
        ledger.submit(Transaction{consumer, contract, Money{}, ApproveEscrow{}});
        ledger.submit(Transaction{authority, contract, Money{}, EndEscrow{}});
    }
}
BENCHMARK(BM_escrow_lifecycle);

void BM_ledger_transfer(benchmark::State& state) {
    Ledger ledger;
    const AccountId a = ledger.create_account(Money::parse("1000000"));
    const AccountId b = ledger.create_account(Money{});
    const Money amount = Money::parse("0.0001");
    for (auto _ : state)
        benchmark::DoNotOptimize(ledger.submit(Transaction{a, b, amount, Transfer{}}));
}
BENCHMARK(BM_ledger_transfer);

}  // namespace
