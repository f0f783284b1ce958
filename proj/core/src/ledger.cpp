#include "smartson/ledger.hpp"

#include <json.hpp>

#include "smartson/errors.hpp"

namespace smartson {

std::string to_string(RevertReason reason) {
    switch (reason) {
        case RevertReason::NotAuthority: return "NotAuthority";
        case RevertReason::PartyIsAuthority: return "PartyIsAuthority";
        case RevertReason::WrongState: return "WrongState";
        case RevertReason::NotConsumer: return "NotConsumer";
        case RevertReason::NotParty: return "NotParty";
        case RevertReason::DeadlinePassed: return "DeadlinePassed";
        case RevertReason::DeadlineNotReached: return "DeadlineNotReached";
        case RevertReason::ExtensionDisabled: return "ExtensionDisabled";
        case RevertReason::NotAContract: return "NotAContract";
        case RevertReason::ValueNotAccepted: return "ValueNotAccepted";
        case RevertReason::FallbackRejected: return "FallbackRejected";
    }
    return "?";
}

std::string AccountId::to_hex() const {
    return "0x" + smartson::to_hex(bytes);
}

AccountId AccountId::from_hex(std::string_view hex) {
    if (hex.starts_with("0x")) hex.remove_prefix(2);
    if (hex.size() != 40) throw std::invalid_argument("account id must be 40 hex digits");
    AccountId id;
    auto nibble = [](char c) -> unsigned {
        if (c >= '0' && c <= '9') return unsigned(c - '0');
        if (c >= 'a' && c <= 'f') return unsigned(c - 'a' + 10);
        throw std::invalid_argument("invalid hex digit in account id");
    };
    for (std::size_t i = 0; i < 20; ++i)
        id.bytes[i] = std::uint8_t(nibble(hex[2 * i]) << 4 | nibble(hex[2 * i + 1]));
    return id;
}

// Moves money between ledger accounts on behalf of contract code. Runs
// inside submit, which already holds the ledger lock.
class Ledger::Book final : public BalanceBook {
public:
    explicit Book(Ledger& ledger) : ledger_(ledger) {}

    Money balance(const AccountId& account) const override {
        return ledger_.balance_locked(account);
    }

    void move(const AccountId& from, const AccountId& to, Money amount) override {
        if (from == to) return;
        auto from_it = ledger_.accounts_.find(from);
        auto to_it = ledger_.accounts_.find(to);
        if (from_it == ledger_.accounts_.end() || to_it == ledger_.accounts_.end())
            throw UnknownAccountError("transfer party does not exist");
        from_it->second = from_it->second - amount;  // MoneyRangeError if overdrawn
        to_it->second = to_it->second + amount;
    }

private:
    Ledger& ledger_;
};

AccountId Ledger::fresh_account_id(const char* domain, std::uint64_t counter) const {
    ByteWriter w;
    w.str(domain);
    w.u64(counter);
    const Sha256Digest digest = sha256(w.bytes());
    AccountId id;
    std::copy_n(digest.begin(), id.bytes.size(), id.bytes.begin());
    return id;
}

AccountId Ledger::create_account(Money initial_balance) {
    std::lock_guard lock(mutex_);
    const AccountId id = fresh_account_id("smartson.account", accounts_created_++);
    accounts_.emplace(id, initial_balance);
    return id;
}

Money Ledger::balance_locked(const AccountId& account) const {
    auto it = accounts_.find(account);
    if (it == accounts_.end()) throw UnknownAccountError("unknown account " + account.to_hex());
    return it->second;
}

Money Ledger::balance_of(const AccountId& account) const {
    std::lock_guard lock(mutex_);
    return balance_locked(account);
}

std::uint64_t Ledger::current_block() const {
    std::lock_guard lock(mutex_);
    return current_block_;
}

bool Ledger::account_exists(const AccountId& account) const {
    std::lock_guard lock(mutex_);
    return accounts_.contains(account);
}

bool Ledger::contract_exists(const AccountId& account) const {
    std::lock_guard lock(mutex_);
    return contracts_.contains(account);
}

const EscrowContract& Ledger::contract_at(const AccountId& account) const {
    std::lock_guard lock(mutex_);
    auto it = contracts_.find(account);
    if (it == contracts_.end()) throw UnknownAccountError("no contract at " + account.to_hex());
    return it->second;
}

Money Ledger::total_balance() const {
    std::lock_guard lock(mutex_);
    Money total;
    for (const auto& [id, balance] : accounts_) total = total + balance;
    return total;
}

TransactionReceipt Ledger::submit(const Transaction& tx) {
    std::lock_guard lock(mutex_);
    auto sender_it = accounts_.find(tx.sender);
    if (sender_it == accounts_.end())
        throw UnknownAccountError("unknown sender " + tx.sender.to_hex());
    const bool is_deploy = std::holds_alternative<DeployEscrow>(tx.call);
    if (!is_deploy) {
        if (!tx.target || !accounts_.contains(*tx.target))
            throw UnknownAccountError("unknown target account");
    }
    if (sender_it->second < tx.value)
        throw InsufficientFundsError("sender balance below transaction value");

    // The transaction mines from here on. Contract logic runs against live
    // state; on revert the snapshot is restored and only the block advances.
    const auto accounts_snapshot = accounts_;
    const auto contracts_snapshot = contracts_;
    const std::uint64_t block_submitted = current_block_;
    const std::uint64_t block_mined = current_block_ + 1;

    TransactionReceipt receipt;
    try {
        receipt = execute(tx, block_submitted, block_mined);
    } catch (const ContractRevertError&) {
        accounts_ = accounts_snapshot;
        contracts_ = contracts_snapshot;
        current_block_ = block_mined;
        throw;
    }
    current_block_ = block_mined;
    receipt.block_no = block_mined;
    receipt.tx_hash = hash_transaction(tx, block_mined);
    return receipt;
}

TransactionReceipt Ledger::execute(const Transaction& tx, std::uint64_t block_submitted,
                                   std::uint64_t block_mined) {
    TransactionReceipt receipt;
    Book book(*this);
    const EscrowCallCtx ctx{tx.sender, tx.value, block_submitted, block_mined};

    if (std::holds_alternative<Transfer>(tx.call)) {
        // Contract accounts only accept money through the deposit call.
        if (contracts_.contains(*tx.target))
            throw ContractRevertError(RevertReason::FallbackRejected, block_mined);
        book.move(tx.sender, *tx.target, tx.value);
        return receipt;
    }

    if (const auto* deploy = std::get_if<DeployEscrow>(&tx.call)) {
        if (!tx.value.is_zero())
            throw ContractRevertError(RevertReason::ValueNotAccepted, block_mined);
        const AccountId address = fresh_account_id("smartson.contract", contracts_created_++);
        accounts_.emplace(address, Money{});
        contracts_.emplace(address,
                           EscrowContract::deploy(tx.sender, address, deploy->timeout_refund_enabled));
        receipt.created_contract = address;
        return receipt;
    }

    auto contract_it = contracts_.find(*tx.target);
    if (contract_it == contracts_.end())
        throw ContractRevertError(RevertReason::NotAContract, block_mined);
    EscrowContract& contract = contract_it->second;

    if (std::holds_alternative<DepositToEscrow>(tx.call)) {
        book.move(tx.sender, *tx.target, tx.value);
        receipt.events = contract.deposit(book, ctx);
        return receipt;
    }
    if (!tx.value.is_zero())
        throw ContractRevertError(RevertReason::ValueNotAccepted, block_mined);

    if (const auto* init = std::get_if<InitializeEscrow>(&tx.call)) {
        contract.initialize(ctx, init->provider, init->consumer, init->fee_percent,
                            init->deadline_block);
    } else if (std::holds_alternative<ApproveEscrow>(tx.call)) {
        receipt.events = contract.approve(book, ctx);
    } else if (std::holds_alternative<CancelEscrow>(tx.call)) {
        contract.cancel(book, ctx);
    } else if (std::holds_alternative<EndEscrow>(tx.call)) {
        contract.check_end(ctx);
        // Self-destruct: sweep any residue to the authority, drop the account.
        book.move(*tx.target, contract.authority(), balance_locked(*tx.target));
        contracts_.erase(*tx.target);
        accounts_.erase(*tx.target);
    } else if (std::holds_alternative<TimeoutRefundEscrow>(tx.call)) {
        contract.timeout_refund(book, ctx);
    }
    return receipt;
}

Sha256Digest Ledger::hash_transaction(const Transaction& tx, std::uint64_t block_no) const {
    ByteWriter w;
    w.u64(block_no);
    w.raw(tx.sender.bytes);
    w.raw(tx.target ? tx.target->bytes : AccountId{}.bytes);
    w.u128(tx.value.base_units());
    w.u8(std::uint8_t(tx.call.index()));
    if (const auto* deploy = std::get_if<DeployEscrow>(&tx.call)) {
        w.u8(deploy->timeout_refund_enabled ? 1 : 0);
    } else if (const auto* init = std::get_if<InitializeEscrow>(&tx.call)) {
        w.raw(init->provider.bytes);
        w.raw(init->consumer.bytes);
        w.u64(init->fee_percent);
        w.u64(init->deadline_block);
    }
    return sha256(w.bytes());
}

std::string Ledger::dump_json() const {
    std::lock_guard lock(mutex_);
    nlohmann::ordered_json doc;
    auto& accounts = doc["accounts"];
    accounts = nlohmann::ordered_json::object();
    for (const auto& [id, balance] : accounts_) accounts[id.to_hex()] = balance.to_fixed();
    doc["current_block"] = current_block_;
    return doc.dump(2) + "\n";
}

}  // namespace smartson
