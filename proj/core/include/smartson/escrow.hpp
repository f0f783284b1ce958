#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "smartson/account.hpp"
#include "smartson/money.hpp"

namespace smartson {

enum class EscrowState {
    UnInitialized,
    Initialized,
    ConsumerDeposited,
    ServiceApproved,
    EscrowComplete,
    EscrowCancelled,
};

std::string to_string(EscrowState state);

struct DepositEvent {
    AccountId depositor;
    Money amount;
};

/// Emitted after the dual-approval payout; contract_balance is the balance
/// left after fee and provider transfers (zero on the normal path).
struct ServicePaymentEvent {
    std::uint64_t block_no;
    Money contract_balance;
};

using EscrowEvent = std::variant<DepositEvent, ServicePaymentEvent>;

/// Money-movement interface the hosting ledger hands to contract code.
class BalanceBook {
public:
    virtual ~BalanceBook() = default;
    virtual Money balance(const AccountId& account) const = 0;
    virtual void move(const AccountId& from, const AccountId& to, Money amount) = 0;
};

struct EscrowCallCtx {
    AccountId caller;
    Money value;                    // already credited to the contract by the host
    std::uint64_t block_submitted;  // ledger counter before this transaction mined
    std::uint64_t block_mined;      // block this transaction mines into
};

/// Escrow state machine hosted at a contract account.
///
/// Lifecycle: UnInitialized -> Initialized -> ConsumerDeposited ->
/// {ServiceApproved -> EscrowComplete | EscrowCancelled}. ServiceApproved is
/// transient: the second approval pays out and lands on EscrowComplete within
/// the same transaction. Any transition outside this graph reverts, and a
/// revert leaves every field untouched (the host rolls back).
///
/// Guards compare against block_submitted, so a deadline of D admits
/// deposits and cancels exactly while the observable block counter is < D.
/// The payout fee is floor(balance * fee_percent / 100), multiply before
/// divide. Only the deposit call accepts value; everything else reverts on a
/// non-zero value, and plain transfers to the contract account are rejected
/// by the host so the contract balance always equals escrow_charge.
class EscrowContract {
public:
    static EscrowContract deploy(AccountId authority, AccountId self, bool timeout_refund_enabled);

    void initialize(const EscrowCallCtx& ctx, AccountId provider, AccountId consumer,
                    unsigned fee_percent, std::uint64_t deadline_block);
    std::vector<EscrowEvent> deposit(BalanceBook& book, const EscrowCallCtx& ctx);
    std::vector<EscrowEvent> approve(BalanceBook& book, const EscrowCallCtx& ctx);
    void cancel(BalanceBook& book, const EscrowCallCtx& ctx);

    /// Guard half of EndEscrow; the host performs the actual self-destruct
    /// (sweep residual balance to the authority, drop the account).
    void check_end(const EscrowCallCtx& ctx) const;

    /// Post-deadline consumer refund minus the fee. Disabled unless the
    /// contract was deployed with timeout_refund_enabled.
    void timeout_refund(BalanceBook& book, const EscrowCallCtx& ctx);

    EscrowState status() const { return status_; }
    const AccountId& self() const { return self_; }
    const AccountId& authority() const { return authority_; }
    const std::optional<AccountId>& provider() const { return provider_; }
    const std::optional<AccountId>& consumer() const { return consumer_; }
    unsigned fee_percent() const { return fee_percent_; }
    std::uint64_t deadline_block() const { return deadline_block_; }
    const std::vector<Money>& deposits() const { return deposits_; }
    Money escrow_charge() const { return escrow_charge_; }
    bool provider_approval() const { return provider_approval_; }
    bool consumer_approval() const { return consumer_approval_; }
    bool provider_cancel() const { return provider_cancel_; }
    bool consumer_cancel() const { return consumer_cancel_; }
    Money fee_amount() const { return fee_amount_; }
    Money provider_amount() const { return provider_amount_; }
    bool timeout_refund_enabled() const { return timeout_refund_enabled_; }
    const std::map<AccountId, Money>& internal_ledger() const { return internal_ledger_; }

private:
    EscrowContract() = default;

    AccountId self_;
    AccountId authority_;
    std::optional<AccountId> provider_;
    std::optional<AccountId> consumer_;
    unsigned fee_percent_ = 0;
    std::uint64_t deadline_block_ = 0;
    EscrowState status_ = EscrowState::UnInitialized;
    std::vector<Money> deposits_;
    Money escrow_charge_;
    bool provider_approval_ = false;
    bool consumer_approval_ = false;
    bool provider_cancel_ = false;
    bool consumer_cancel_ = false;
    Money fee_amount_;
    Money provider_amount_;
    bool timeout_refund_enabled_ = false;

    // Bookkeeping replica of the parties' positions. Kept in step with the
    // deposit and payout flows but carries no authority over transfers; the
    // hosting ledger's balances are the truth.
    std::map<AccountId, Money> internal_ledger_;
};

}  // namespace smartson
