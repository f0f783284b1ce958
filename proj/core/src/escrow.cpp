#include "smartson/escrow.hpp"

#include "smartson/errors.hpp"

namespace smartson {

namespace {

[[noreturn]] void revert(RevertReason reason, const EscrowCallCtx& ctx) {
    throw ContractRevertError(reason, ctx.block_mined);
}

}  // namespace

std::string to_string(EscrowState state) {
    switch (state) {
        case EscrowState::UnInitialized: return "unInitialized";
        case EscrowState::Initialized: return "initialized";
        case EscrowState::ConsumerDeposited: return "consumerDeposited";
        case EscrowState::ServiceApproved: return "serviceApproved";
        case EscrowState::EscrowComplete: return "escrowComplete";
        case EscrowState::EscrowCancelled: return "escrowCancelled";
    }
    return "?";
}

EscrowContract EscrowContract::deploy(AccountId authority, AccountId self,
                                      bool timeout_refund_enabled) {
    EscrowContract c;
    c.self_ = self;
    c.authority_ = authority;
    c.timeout_refund_enabled_ = timeout_refund_enabled;
    return c;
}

void EscrowContract::initialize(const EscrowCallCtx& ctx, AccountId provider, AccountId consumer,
                                unsigned fee_percent, std::uint64_t deadline_block) {
    if (ctx.caller != authority_) revert(RevertReason::NotAuthority, ctx);
    if (provider == authority_ || consumer == authority_) revert(RevertReason::PartyIsAuthority, ctx);
    if (status_ != EscrowState::UnInitialized) revert(RevertReason::WrongState, ctx);

    provider_ = provider;
    consumer_ = consumer;
    fee_percent_ = fee_percent;
    deadline_block_ = deadline_block;
    status_ = EscrowState::Initialized;
    internal_ledger_[provider] = Money{};
    internal_ledger_[consumer] = Money{};
}

std::vector<EscrowEvent> EscrowContract::deposit(BalanceBook&, const EscrowCallCtx& ctx) {
    if (!consumer_ || ctx.caller != *consumer_) revert(RevertReason::NotConsumer, ctx);
    if (ctx.block_submitted >= deadline_block_) revert(RevertReason::DeadlinePassed, ctx);
    if (status_ != EscrowState::Initialized && status_ != EscrowState::ConsumerDeposited)
        revert(RevertReason::WrongState, ctx);

    internal_ledger_[*consumer_] = internal_ledger_[*consumer_] + ctx.value;
    deposits_.push_back(ctx.value);
    escrow_charge_ = escrow_charge_ + ctx.value;
    status_ = EscrowState::ConsumerDeposited;
    return {DepositEvent{ctx.caller, ctx.value}};
}

std::vector<EscrowEvent> EscrowContract::approve(BalanceBook& book, const EscrowCallCtx& ctx) {
    const bool is_provider = provider_ && ctx.caller == *provider_;
    const bool is_consumer = consumer_ && ctx.caller == *consumer_;
    if (!is_provider && !is_consumer) revert(RevertReason::NotParty, ctx);
    if (status_ != EscrowState::ConsumerDeposited) revert(RevertReason::WrongState, ctx);

    if (is_provider) provider_approval_ = true;
    if (is_consumer) consumer_approval_ = true;
    if (!(provider_approval_ && consumer_approval_)) return {};

    status_ = EscrowState::ServiceApproved;

    // Fee first, then the remaining balance to the provider.
    const Money balance = book.balance(self_);
    fee_amount_ = balance.percent_floor(fee_percent_);
    book.move(self_, authority_, fee_amount_);

    const Money remaining = book.balance(self_);
    internal_ledger_[*consumer_] = internal_ledger_[*consumer_] - remaining;
    internal_ledger_[*provider_] = internal_ledger_[*provider_] + remaining;
    provider_amount_ = remaining;
    status_ = EscrowState::EscrowComplete;
    book.move(self_, *provider_, remaining);

    return {ServicePaymentEvent{ctx.block_mined, book.balance(self_)}};
}

void EscrowContract::cancel(BalanceBook& book, const EscrowCallCtx& ctx) {
    const bool is_provider = provider_ && ctx.caller == *provider_;
    const bool is_consumer = consumer_ && ctx.caller == *consumer_;
    if (!is_provider && !is_consumer) revert(RevertReason::NotParty, ctx);
    if (ctx.block_submitted >= deadline_block_) revert(RevertReason::DeadlinePassed, ctx);
    if (status_ != EscrowState::ConsumerDeposited) revert(RevertReason::WrongState, ctx);

    if (is_provider) provider_cancel_ = true;
    if (is_consumer) consumer_cancel_ = true;
    if (!(provider_cancel_ && consumer_cancel_)) return;

    // Dual cancel refunds the full balance, no fee.
    status_ = EscrowState::EscrowCancelled;
    book.move(self_, *consumer_, book.balance(self_));
}

void EscrowContract::check_end(const EscrowCallCtx& ctx) const {
    if (ctx.caller != authority_) revert(RevertReason::NotAuthority, ctx);
    // ServiceApproved is observable here only if a payout was interrupted;
    // EscrowComplete is the normal approved terminal.
    if (status_ != EscrowState::ServiceApproved && status_ != EscrowState::EscrowComplete &&
        status_ != EscrowState::EscrowCancelled)
        revert(RevertReason::WrongState, ctx);
}

void EscrowContract::timeout_refund(BalanceBook& book, const EscrowCallCtx& ctx) {
    if (!timeout_refund_enabled_) revert(RevertReason::ExtensionDisabled, ctx);
    if (!consumer_ || ctx.caller != *consumer_) revert(RevertReason::NotConsumer, ctx);
    if (status_ != EscrowState::ConsumerDeposited) revert(RevertReason::WrongState, ctx);
    if (ctx.block_submitted < deadline_block_) revert(RevertReason::DeadlineNotReached, ctx);

    const Money balance = book.balance(self_);
    fee_amount_ = balance.percent_floor(fee_percent_);
    book.move(self_, authority_, fee_amount_);
    status_ = EscrowState::EscrowCancelled;
    book.move(self_, *consumer_, book.balance(self_));
}

}  // namespace smartson
