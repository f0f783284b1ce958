#include <doctest.h>

#include "smartson/errors.hpp"
#include "smartson/ledger.hpp"

using namespace smartson;

namespace {

Money wei(const char* text) { return Money::parse(text); }

// deploy + initialize a 2% escrow and fund the consumer path up to `status`.
struct Rig {
    Ledger ledger;
    AccountId authority, provider, consumer;
    AccountId contract;

    explicit Rig(const char* consumer_funds = "0.5") {
        authority = ledger.create_account(Money{});
        provider = ledger.create_account(wei("0.05"));
        consumer = ledger.create_account(wei(consumer_funds));
        auto receipt =
            ledger.submit(Transaction{authority, std::nullopt, Money{}, DeployEscrow{}});
        contract = *receipt.created_contract;
        ledger.submit(Transaction{authority, contract, Money{},
                                  InitializeEscrow{provider, consumer, 2, 100}});
    }
};

}  // namespace

TEST_SUITE("ledger") {

TEST_CASE("create_account endows without mining") {
    Ledger ledger;
    const AccountId a = ledger.create_account(wei("0.05"));
    CHECK(ledger.balance_of(a) == wei("0.05"));
    CHECK(ledger.current_block() == 0);

    const AccountId b = ledger.create_account(Money{});
    CHECK(ledger.balance_of(b) == Money{});

    const AccountId c = ledger.create_account(wei("0.05"));
    CHECK(c != a);
}

TEST_CASE("deposit moves value into the contract and advances one block") {
    Rig rig;
    const auto block_before = rig.ledger.current_block();
    rig.ledger.submit(Transaction{rig.consumer, rig.contract, wei("0.192"), DepositToEscrow{}});
    CHECK(rig.ledger.balance_of(rig.consumer) == wei("0.308"));
    CHECK(rig.ledger.balance_of(rig.contract) == wei("0.192"));
    CHECK(rig.ledger.current_block() == block_before + 1);
}

TEST_CASE("zero value transfer still mines") {
    Ledger ledger;
    const AccountId a = ledger.create_account(wei("1"));
    const AccountId b = ledger.create_account(wei("1"));
    ledger.submit(Transaction{a, b, Money{}, Transfer{}});
    CHECK(ledger.balance_of(a) == wei("1"));
    CHECK(ledger.balance_of(b) == wei("1"));
    CHECK(ledger.current_block() == 1);
}

TEST_CASE("overdrawn transfer is rejected with state untouched") {
    Ledger ledger;
    const AccountId a = ledger.create_account(wei("0.1"));
    const AccountId b = ledger.create_account(Money{});
    const std::string before = ledger.dump_json();
    CHECK_THROWS_AS(ledger.submit(Transaction{a, b, wei("0.2"), Transfer{}}),
                    InsufficientFundsError);
    CHECK(ledger.dump_json() == before);
    CHECK(ledger.current_block() == 0);
}

TEST_CASE("balance_of unknown account") {
    Ledger ledger;
    CHECK_THROWS_AS(ledger.balance_of(AccountId{}), UnknownAccountError);
}

TEST_CASE("only mined transactions advance the block") {
    Ledger ledger;
    const AccountId a = ledger.create_account(wei("1"));
    const AccountId b = ledger.create_account(Money{});
    CHECK(ledger.current_block() == 0);
    ledger.submit(Transaction{a, b, wei("0.1"), Transfer{}});
    ledger.submit(Transaction{a, b, wei("0.1"), Transfer{}});
    CHECK_THROWS_AS(ledger.submit(Transaction{a, b, wei("100"), Transfer{}}),
                    InsufficientFundsError);
    CHECK(ledger.current_block() == 2);
    ledger.submit(Transaction{a, b, wei("0.1"), Transfer{}});
    CHECK(ledger.current_block() == 3);
}

TEST_CASE("receipts carry strictly increasing block numbers") {
    Ledger ledger;
    const AccountId a = ledger.create_account(wei("1"));
    const AccountId b = ledger.create_account(Money{});
    std::uint64_t last = 0;
    for (int i = 0; i < 5; ++i) {
        const auto receipt = ledger.submit(Transaction{a, b, wei("0.01"), Transfer{}});
        CHECK(receipt.block_no > last);
        last = receipt.block_no;
    }
}

TEST_CASE("conservation across a full escrow lifecycle") {
    Rig rig;
    const Money total = rig.ledger.total_balance();
    rig.ledger.submit(Transaction{rig.consumer, rig.contract, wei("0.192"), DepositToEscrow{}});
    CHECK(rig.ledger.total_balance() == total);
    rig.ledger.submit(Transaction{rig.provider, rig.contract, Money{}, ApproveEscrow{}});
    CHECK(rig.ledger.total_balance() == total);
    rig.ledger.submit(Transaction{rig.consumer, rig.contract, Money{}, ApproveEscrow{}});
    CHECK(rig.ledger.total_balance() == total);
    rig.ledger.submit(Transaction{rig.authority, rig.contract, Money{}, EndEscrow{}});
    CHECK(rig.ledger.total_balance() == total);
}

TEST_CASE("a revert leaves state identical and still mines") {
    Rig rig;
    const std::string before = rig.ledger.dump_json();
    const auto& contract_before = rig.ledger.contract_at(rig.contract);
    const auto status_before = contract_before.status();
    const auto block_before = rig.ledger.current_block();

    // Provider cannot deposit.
    CHECK_THROWS_AS(
        rig.ledger.submit(Transaction{rig.provider, rig.contract, wei("0.01"), DepositToEscrow{}}),
        ContractRevertError);

    CHECK(rig.ledger.current_block() == block_before + 1);
    CHECK(rig.ledger.contract_at(rig.contract).status() == status_before);
    // Every balance is unchanged; only the block counter moved.
    const std::string after = rig.ledger.dump_json();
    const auto cut = [](const std::string& dump) {
        return dump.substr(0, dump.rfind("\"current_block\""));
    };
    CHECK(cut(after) == cut(before));
}

TEST_CASE("plain transfers to a contract account are rejected by the fallback") {
    Rig rig;
    CHECK_THROWS_AS(rig.ledger.submit(Transaction{rig.consumer, rig.contract, wei("0.01"), Transfer{}}),
                    ContractRevertError);
    CHECK(rig.ledger.balance_of(rig.contract) == Money{});
}

TEST_CASE("contract calls against a user account revert") {
    Ledger ledger;
    const AccountId a = ledger.create_account(wei("1"));
    const AccountId b = ledger.create_account(Money{});
    CHECK_THROWS_AS(ledger.submit(Transaction{a, b, Money{}, ApproveEscrow{}}),
                    ContractRevertError);
    CHECK(ledger.current_block() == 1);  // mined-but-reverted
}

TEST_CASE("deterministic replay yields identical hashes and dumps") {
    auto script = [](Ledger& ledger) {
        const AccountId a = ledger.create_account(wei("1"));
        const AccountId b = ledger.create_account(wei("0.5"));
        std::vector<std::string> hashes;
        auto r1 = ledger.submit(Transaction{a, b, wei("0.25"), Transfer{}});
        hashes.push_back(to_hex(r1.tx_hash));
        auto r2 = ledger.submit(Transaction{a, std::nullopt, Money{}, DeployEscrow{}});
        hashes.push_back(to_hex(r2.tx_hash));
        auto r3 = ledger.submit(Transaction{a, *r2.created_contract, Money{},
                                            InitializeEscrow{b, b, 2, 9}});
        hashes.push_back(to_hex(r3.tx_hash));
        return hashes;
    };
    Ledger first, second;
    CHECK(script(first) == script(second));
    CHECK(first.dump_json() == second.dump_json());
}

TEST_CASE("state dump is stable and renders 18 fractional digits") {
    Ledger ledger;
    ledger.create_account(wei("0.05"));
    const std::string dump = ledger.dump_json();
    CHECK(dump.find("0.050000000000000000") != std::string::npos);
    CHECK(dump.find("current_block") != std::string::npos);
    CHECK(dump == ledger.dump_json());
}

}  // TEST_SUITE
