#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <variant>
#include <vector>

#include "smartson/account.hpp"
#include "smartson/digest.hpp"
#include "smartson/escrow.hpp"
#include "smartson/money.hpp"

namespace smartson {

// Call payloads. Everything except Transfer targets a contract account.
struct Transfer {};
struct DeployEscrow {
    bool timeout_refund_enabled = false;
};
struct InitializeEscrow {
    AccountId provider;
    AccountId consumer;
    unsigned fee_percent = 0;
    std::uint64_t deadline_block = 0;
};
struct DepositToEscrow {};
struct ApproveEscrow {};
struct CancelEscrow {};
struct EndEscrow {};
struct TimeoutRefundEscrow {};

using CallData = std::variant<Transfer, DeployEscrow, InitializeEscrow, DepositToEscrow,
                              ApproveEscrow, CancelEscrow, EndEscrow, TimeoutRefundEscrow>;

struct Transaction {
    AccountId sender;
    std::optional<AccountId> target;  // absent only for DeployEscrow
    Money value;
    CallData call;
};

struct TransactionReceipt {
    std::uint64_t block_no = 0;
    Sha256Digest tx_hash{};
    std::vector<EscrowEvent> events;
    std::optional<AccountId> created_contract;
};

/// Simulated single-chain ledger: accounts, balance transfers, a monotone
/// block counter, deterministic receipts. One mined transaction advances the
/// block by exactly one; failed preconditions (unknown account, insufficient
/// funds) do not mine, contract reverts mine but roll state back atomically.
///
/// The sum of all balances is invariant across every operation except
/// create_account. Feeding two ledgers the same operation sequence yields
/// identical account maps, block counters and transaction hashes.
///
/// Linearizable: all operations apply in one total order under an internal
/// lock, so concurrent agent tasks observe atomic, serialized effects. A
/// contract reference from contract_at stays valid until EndEscrow destroys
/// that contract.
class Ledger {
public:
    /// Account creation is not a transaction; the block counter is unchanged.
    AccountId create_account(Money initial_balance);

    /// Applies the transaction. Throws UnknownAccountError or
    /// InsufficientFundsError before mining, ContractRevertError after (the
    /// block advances, state does not).
    TransactionReceipt submit(const Transaction& tx);

    Money balance_of(const AccountId& account) const;
    std::uint64_t current_block() const;

    bool account_exists(const AccountId& account) const;
    bool contract_exists(const AccountId& account) const;
    const EscrowContract& contract_at(const AccountId& account) const;

    Money total_balance() const;

    /// Snapshot: {"accounts": {hex id -> fixed 18-digit balance}, "current_block": N}.
    /// Byte-stable for equal state.
    std::string dump_json() const;

private:
    class Book;

    Money balance_locked(const AccountId& account) const;
    TransactionReceipt execute(const Transaction& tx, std::uint64_t block_submitted,
                               std::uint64_t block_mined);
    Sha256Digest hash_transaction(const Transaction& tx, std::uint64_t block_no) const;
    AccountId fresh_account_id(const char* domain, std::uint64_t counter) const;

    mutable std::mutex mutex_;
    std::map<AccountId, Money> accounts_;
    std::map<AccountId, EscrowContract> contracts_;
    std::uint64_t current_block_ = 0;
    std::uint64_t accounts_created_ = 0;
    std::uint64_t contracts_created_ = 0;
};

}  // namespace smartson
