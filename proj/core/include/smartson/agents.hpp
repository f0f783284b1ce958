#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "smartson/journal.hpp"
#include "smartson/ledger.hpp"
#include "smartson/matching.hpp"
#include "smartson/message.hpp"
#include "smartson/platform.hpp"

namespace smartson {

struct SubmittedTx {
    TransactionReceipt receipt;
    TxRecord record;
};

/// Submits agent transactions and journals every mined one, reverted calls
/// included. Rejected (unmined) transactions propagate without a record.
class LedgerClient {
public:
    LedgerClient(Ledger& ledger, EventJournal* journal) : ledger_(ledger), journal_(journal) {}

    SubmittedTx submit(const std::string& actor, const std::string& kind, const Transaction& tx);

    Ledger& ledger() { return ledger_; }
    const Ledger& ledger() const { return ledger_; }
    EventJournal* journal() { return journal_; }

private:
    Ledger& ledger_;
    EventJournal* journal_;
};

/// Per-entry similarity scores a provider computed while answering a CFP.
class ScoreObserver {
public:
    virtual ~ScoreObserver() = default;
    virtual void on_scores(const std::string& provider, const std::string& requested_title,
                           const std::vector<std::pair<std::string, double>>& scores) = 0;
};

/// Authority-side contract server: answers REQUEST with CONFIRM(contract
/// address) after deploying and initializing an escrow, or CANCEL when
/// either step fails. Owns every contract it deploys, never a party.
class RegistrarAgent {
public:
    RegistrarAgent(AgentId id, AccountId wallet, unsigned contract_fee_percent,
                   bool timeout_refund_enabled = false)
        : id_(std::move(id)),
          wallet_(wallet),
          contract_fee_percent_(contract_fee_percent),
          timeout_refund_enabled_(timeout_refund_enabled) {}

    /// Handles one queued message; true when something was processed.
    bool poll(Platform& platform, LedgerClient& ledger);

    const AgentId& id() const { return id_; }
    const AccountId& wallet() const { return wallet_; }

private:
    AgentId id_;
    AccountId wallet_;
    unsigned contract_fee_percent_;
    bool timeout_refund_enabled_;
};

/// Provider-side behaviors: answer CFPs with the catalogue's best match,
/// lease on ACCEPT_PROPOSAL (pop, fund check, escrow approval, INFORM),
/// restore on DISCONFIRM. A resource is pooled xor leased, never both.
class ProviderAgent {
public:
    ProviderAgent(AgentId id, AccountId wallet, Catalogue catalogue)
        : id_(std::move(id)), wallet_(wallet), catalogue_(std::move(catalogue)) {}

    bool poll(Platform& platform, LedgerClient& ledger);

    void set_score_observer(ScoreObserver* observer) { score_observer_ = observer; }

    const AgentId& id() const { return id_; }
    const AccountId& wallet() const { return wallet_; }
    const Catalogue& catalogue() const { return catalogue_; }
    const std::map<std::string, ResourceSpec>& leases() const { return consumer_resource_map_; }

private:
    void handle_cfp(Platform& platform, const Message& msg);
    void handle_accept_proposal(Platform& platform, LedgerClient& ledger, const Message& msg);
    void handle_disconfirm(Platform& platform, const Message& msg);
    void handle_cancel(LedgerClient& ledger, const Message& msg);

    AgentId id_;
    AccountId wallet_;
    Catalogue catalogue_;
    std::map<std::string, ResourceSpec> consumer_resource_map_;  // consumer name -> leased
    std::map<std::string, AccountId> pending_cancels_;           // conversation -> contract
    ScoreObserver* score_observer_ = nullptr;
};

enum class TradePhase {
    Idle,
    Collecting,
    AwaitingConfirm,
    AwaitingInform,
    Holding,
    AwaitingReleaseAck,
    Recovering,
    Done,
};

/// Null winner means the trade ended without a lease (no providers, all
/// refusals, registrar CANCEL, insufficient funds, provider FAILURE).
struct TradeOutcome {
    bool completed = false;
    std::string failure;  // empty on completion
    std::optional<SelectedProposal> selected;
    std::optional<AccountId> contract_address;
    Money deposit;
    std::vector<TxRecord> receipts;
    std::string interface_details;
};

struct ConsumerConfig {
    AgentId registrar;
    std::uint64_t lease_time_hours = 1;
    std::uint64_t deadline_offset_blocks = 100;
    std::map<std::string, AccountId> wallet_directory;  // provider name -> wallet
    std::optional<unsigned> reply_timeout_polls;        // missing replies count as refusals
};

/// Consumer-side trade state machine. One trade at a time: request, await
/// proposals, contract through the registrar, deposit, acquire, hold for the
/// lease, then approve and disengage. Drive with poll(); epoch boundaries
/// come from on_epoch_end().
class ConsumerAgent {
public:
    ConsumerAgent(AgentId id, AccountId wallet, ConsumerConfig config)
        : id_(std::move(id)), wallet_(wallet), config_(std::move(config)) {}

    /// Broadcasts a CFP for the target to every directory-listed provider.
    /// With no providers registered the trade completes immediately with a
    /// null outcome and nothing is sent. An optional winner override replaces
    /// the best-score selection with the named provider's proposal.
    void request_resource(Platform& platform, const ResourceSpec& target,
                          std::optional<std::string> winner_override = std::nullopt);

    bool poll(Platform& platform, LedgerClient& ledger);

    /// Marks one elapsed lease epoch; the release runs on the next poll.
    void on_epoch_end();

    /// Release behavior, also the recovery entry point used when a lease
    /// must be unwound by hand: approves the escrow (a revert is journaled
    /// and does not stop the disengagement) and sends DISCONFIRM.
    void release_resource(Platform& platform, LedgerClient& ledger, const ResourceSpec& resource,
                          const AgentId& provider, const AccountId& contract_address);

    TradePhase phase() const { return phase_; }
    bool trade_finished() const { return phase_ == TradePhase::Done; }
    const TradeOutcome& outcome() const { return outcome_; }
    const AgentId& id() const { return id_; }
    const AccountId& wallet() const { return wallet_; }
    std::uint64_t lease_time_hours() const { return config_.lease_time_hours; }

    using LeaseKey = AccountId;  // contract address
    struct ActiveLease {
        AgentId provider;
        ResourceSpec resource;
        std::uint64_t epochs_remaining = 0;
    };
    const std::map<LeaseKey, ActiveLease>& active_leases() const { return active_leases_; }

private:
    void begin_contract(Platform& platform, LedgerClient& ledger);
    void record_tx(const char* kind, const TransactionReceipt& receipt);
    void finish(bool completed, std::string failure);

    AgentId id_;
    AccountId wallet_;
    ConsumerConfig config_;

    TradePhase phase_ = TradePhase::Idle;
    TradeOutcome outcome_;
    std::string conversation_;
    ResourceSpec target_;
    std::optional<std::string> winner_override_;
    std::size_t providers_asked_ = 0;
    std::size_t replies_ = 0;
    std::vector<ProposalEntry> proposals_;
    unsigned polls_waited_ = 0;
    bool release_due_ = false;
    std::map<LeaseKey, ActiveLease> active_leases_;
};

}  // namespace smartson
