#include "smartson/agents.hpp"

#include "smartson/errors.hpp"

namespace smartson {

SubmittedTx LedgerClient::submit(const std::string& actor, const std::string& kind,
                                 const Transaction& tx) {
    TxRecord record;
    record.actor = actor;
    record.kind = kind;
    try {
        TransactionReceipt receipt = ledger_.submit(tx);
        record.block = receipt.block_no;
        record.tx_hash = "0x" + to_hex(receipt.tx_hash);
        record.events = receipt.events;
        if (journal_) record = journal_->record_tx(std::move(record));
        return SubmittedTx{std::move(receipt), std::move(record)};
    } catch (const ContractRevertError& e) {
        record.block = e.block_no;
        record.reverted = true;
        record.revert_reason = to_string(e.reason);
        if (journal_) journal_->record_tx(std::move(record));
        throw;
    }
}

// ---------------------------------------------------------------------------
// Registrar

bool RegistrarAgent::poll(Platform& platform, LedgerClient& ledger) {
    auto msg = platform.receive(id_, {Performative::Request});
    if (!msg) return false;

    const auto& init = std::get<ContractInit>(msg->payload);
    try {
        auto deployed = ledger.submit(id_.name, "deploy",
                                      Transaction{wallet_, std::nullopt, Money{},
                                                  DeployEscrow{timeout_refund_enabled_}});
        const AccountId contract = *deployed.receipt.created_contract;
        const std::uint64_t deadline_block = ledger.ledger().current_block() + init.deadline;
        ledger.submit(id_.name, "initialize",
                      Transaction{wallet_, contract, Money{},
                                  InitializeEscrow{init.provider_address, init.consumer_address,
                                                   contract_fee_percent_, deadline_block}});
        platform.send(msg->reply_from(id_, Performative::Confirm, ContractAddress{contract}));
    } catch (const ContractRevertError&) {
        platform.send(msg->reply_from(id_, Performative::Cancel, EmptyPayload{}));
    } catch (const UnknownAccountError&) {
        platform.send(msg->reply_from(id_, Performative::Cancel, EmptyPayload{}));
    }
    return true;
}

// ---------------------------------------------------------------------------
// Provider

bool ProviderAgent::poll(Platform& platform, LedgerClient& ledger) {
    auto msg = platform.receive(id_);
    if (!msg) return false;

    switch (msg->performative) {
        case Performative::Cfp: handle_cfp(platform, *msg); break;
        case Performative::AcceptProposal: handle_accept_proposal(platform, ledger, *msg); break;
        case Performative::Disconfirm: handle_disconfirm(platform, *msg); break;
        case Performative::Cancel: handle_cancel(ledger, *msg); break;
        default: break;  // Do Nothing
    }
    return true;
}

void ProviderAgent::handle_cfp(Platform& platform, const Message& msg) {
    const auto& requested = std::get<ResourceSpec>(msg.payload);

    if (score_observer_) {
        std::vector<std::pair<std::string, double>> scores;
        scores.reserve(catalogue_.size());
        for (const auto& entry : catalogue_.entries())
            scores.emplace_back(entry.title, cosine_similarity(requested, entry));
        score_observer_->on_scores(id_.name, requested.title, scores);
    }

    if (auto best = best_match(requested, catalogue_)) {
        platform.send(msg.reply_from(id_, Performative::Propose,
                                     Proposal{best->score, best->resource}));
    } else {
        platform.send(msg.reply_from(id_, Performative::Refuse, Refusal{"not-available"}));
    }
}

void ProviderAgent::handle_accept_proposal(Platform& platform, LedgerClient& ledger,
                                           const Message& msg) {
    const auto& order = std::get<LeaseOrder>(msg.payload);
    // Remember the contract so a follow-up CANCEL can unwind a failed lease.
    pending_cancels_[msg.conversation_id] = order.contract_address;

    auto fail = [&](const std::string& reason) {
        platform.send(msg.reply_from(id_, Performative::Failure, FailureReason{reason}));
    };

    // The deposit must cover the stipulated price for the whole lease.
    Money funded;
    try {
        funded = ledger.ledger().balance_of(order.contract_address);
    } catch (const UnknownAccountError&) {
        fail("underfunded");
        return;
    }
    if (funded < order.resource.price.times(order.lease_time)) {
        fail("underfunded");
        return;
    }

    if (consumer_resource_map_.contains(msg.sender.name)) {
        fail("not-available");
        return;
    }
    auto popped = catalogue_.remove(order.resource);
    if (!popped) {
        fail("not-available");
        return;
    }
    consumer_resource_map_.emplace(msg.sender.name, *popped);

    try {
        ledger.submit(id_.name, "approve",
                      Transaction{wallet_, order.contract_address, Money{}, ApproveEscrow{}});
    } catch (const ContractRevertError&) {
        consumer_resource_map_.erase(msg.sender.name);
        catalogue_.put(*popped);
        fail("escrow-approval-failed");
        return;
    }

    pending_cancels_.erase(msg.conversation_id);
    platform.send(msg.reply_from(id_, Performative::Inform,
                                 InterfaceDetails{"Resource Interaction Details"}));
}

void ProviderAgent::handle_disconfirm(Platform& platform, const Message& msg) {
    const auto& released = std::get<ResourceSpec>(msg.payload);
    auto it = consumer_resource_map_.find(msg.sender.name);
    if (it == consumer_resource_map_.end() || !(it->second == released)) {
        platform.send(msg.reply_from(id_, Performative::Failure, FailureReason{"not-available"}));
        return;
    }
    catalogue_.put(it->second);
    consumer_resource_map_.erase(it);
    platform.send(msg.reply_from(id_, Performative::Disconfirm, released));
}

void ProviderAgent::handle_cancel(LedgerClient& ledger, const Message& msg) {
    auto it = pending_cancels_.find(msg.conversation_id);
    if (it == pending_cancels_.end()) return;
    const AccountId contract = it->second;
    pending_cancels_.erase(it);
    try {
        ledger.submit(id_.name, "cancel",
                      Transaction{wallet_, contract, Money{}, CancelEscrow{}});
    } catch (const ContractRevertError&) {
        // Journaled; nothing to unwind on the provider side.
    }
}

// ---------------------------------------------------------------------------
// Consumer

void ConsumerAgent::request_resource(Platform& platform, const ResourceSpec& target,
                                     std::optional<std::string> winner_override) {
    outcome_ = TradeOutcome{};
    proposals_.clear();
    replies_ = 0;
    polls_waited_ = 0;
    target_ = target;
    winner_override_ = std::move(winner_override);

    const auto providers = platform.df_find_all("resource-provider");
    if (providers.empty()) {
        finish(false, "no-providers");
        return;
    }
    providers_asked_ = providers.size();
    conversation_ = platform.next_conversation_id(id_);

    Message cfp;
    cfp.sender = id_;
    cfp.receivers = providers;
    cfp.performative = Performative::Cfp;
    cfp.payload = target;
    cfp.conversation_id = conversation_;
    platform.send(cfp);
    phase_ = TradePhase::Collecting;
}

bool ConsumerAgent::poll(Platform& platform, LedgerClient& ledger) {
    switch (phase_) {
        case TradePhase::Idle:
        case TradePhase::Done:
            return false;

        case TradePhase::Collecting: {
            bool advanced = false;
            while (auto msg = platform.receive(id_, {Performative::Propose, Performative::Refuse})) {
                if (msg->conversation_id != conversation_) {
                    if (auto* journal = ledger.journal())
                        journal->note("dropped stale " + to_string(msg->performative) + " from " +
                                      msg->sender.name + " (conversation " + msg->conversation_id +
                                      ")");
                    continue;
                }
                ++replies_;
                advanced = true;
                if (msg->performative == Performative::Propose) {
                    const auto& proposal = std::get<Proposal>(msg->payload);
                    proposals_.push_back(
                        ProposalEntry{msg->sender.name, proposal.match_score, proposal.resource});
                }
            }
            if (replies_ < providers_asked_) {
                if (advanced) return true;
                // A capped wait treats silent providers as refusals.
                if (config_.reply_timeout_polls && ++polls_waited_ > *config_.reply_timeout_polls) {
                    replies_ = providers_asked_;
                } else {
                    return false;
                }
            }

            if (winner_override_) {
                outcome_.selected.reset();
                for (const auto& p : proposals_) {
                    if (p.provider == *winner_override_) {
                        outcome_.selected = SelectedProposal{p.provider, p.score, p.resource};
                        break;
                    }
                }
                if (!outcome_.selected)
                    throw ProtocolError("winner override '" + *winner_override_ +
                                        "' sent no proposal");
            } else {
                outcome_.selected = select_best_proposal(proposals_);
            }
            if (!outcome_.selected) {
                finish(false, "all-refused");
                return true;
            }
            begin_contract(platform, ledger);
            return true;
        }

        case TradePhase::AwaitingConfirm: {
            auto msg = platform.receive(id_, {Performative::Confirm, Performative::Cancel});
            if (!msg) return false;
            if (msg->conversation_id != conversation_) return true;
            if (msg->performative == Performative::Cancel) {
                finish(false, "registrar-cancelled");
                return true;
            }
            const AccountId contract = std::get<ContractAddress>(msg->payload).address;
            outcome_.contract_address = contract;
            const Money deposit =
                outcome_.selected->resource.price.times(config_.lease_time_hours);
            try {
                auto submitted = ledger.submit(
                    id_.name, "deposit",
                    Transaction{wallet_, contract, deposit, DepositToEscrow{}});
                outcome_.receipts.push_back(submitted.record);
                outcome_.deposit = deposit;
            } catch (const InsufficientFundsError&) {
                finish(false, "insufficient-funds");
                return true;
            }

            Message accept;
            accept.sender = id_;
            accept.receivers = {AgentId{outcome_.selected->provider}};
            accept.performative = Performative::AcceptProposal;
            accept.payload =
                LeaseOrder{outcome_.selected->resource, contract, config_.lease_time_hours};
            accept.conversation_id = conversation_;
            platform.send(accept);
            phase_ = TradePhase::AwaitingInform;
            return true;
        }

        case TradePhase::AwaitingInform: {
            auto msg = platform.receive(id_, {Performative::Inform, Performative::Failure});
            if (!msg) return false;
            if (msg->conversation_id != conversation_) return true;
            if (msg->performative == Performative::Failure) {
                // Unwind the deposit: dual cancel with the provider.
                try {
                    ledger.submit(id_.name, "cancel",
                                  Transaction{wallet_, *outcome_.contract_address, Money{},
                                              CancelEscrow{}});
                } catch (const ContractRevertError&) {
                }
                Message cancel;
                cancel.sender = id_;
                cancel.receivers = {AgentId{outcome_.selected->provider}};
                cancel.performative = Performative::Cancel;
                cancel.payload = EmptyPayload{};
                cancel.conversation_id = conversation_;
                platform.send(cancel);
                phase_ = TradePhase::Recovering;
                return true;
            }
            outcome_.interface_details = std::get<InterfaceDetails>(msg->payload).details;
            active_leases_[*outcome_.contract_address] =
                ActiveLease{AgentId{outcome_.selected->provider}, outcome_.selected->resource,
                            config_.lease_time_hours};
            phase_ = TradePhase::Holding;
            return true;
        }

        case TradePhase::Holding: {
            for (auto it = active_leases_.begin(); it != active_leases_.end(); ++it) {
                if (it->second.epochs_remaining == 0) {
                    const auto lease = it->second;
                    const AccountId contract = it->first;
                    active_leases_.erase(it);
                    release_resource(platform, ledger, lease.resource, lease.provider, contract);
                    phase_ = TradePhase::AwaitingReleaseAck;
                    return true;
                }
            }
            return false;
        }

        case TradePhase::AwaitingReleaseAck: {
            auto msg = platform.receive(id_, {Performative::Disconfirm, Performative::Failure});
            if (!msg) return false;
            if (msg->conversation_id != conversation_) return true;
            finish(msg->performative == Performative::Disconfirm, "");
            return true;
        }

        case TradePhase::Recovering: {
            const Ledger& ledger_state = ledger.ledger();
            if (outcome_.contract_address &&
                ledger_state.contract_exists(*outcome_.contract_address) &&
                ledger_state.contract_at(*outcome_.contract_address).status() ==
                    EscrowState::EscrowCancelled) {
                finish(false, "provider-failure-refunded");
                return true;
            }
            return false;
        }
    }
    return false;
}

void ConsumerAgent::on_epoch_end() {
    for (auto& [contract, lease] : active_leases_)
        if (lease.epochs_remaining > 0) --lease.epochs_remaining;
}

void ConsumerAgent::release_resource(Platform& platform, LedgerClient& ledger,
                                     const ResourceSpec& resource, const AgentId& provider,
                                     const AccountId& contract_address) {
    try {
        auto submitted = ledger.submit(
            id_.name, "approve",
            Transaction{wallet_, contract_address, Money{}, ApproveEscrow{}});
        outcome_.receipts.push_back(submitted.record);
    } catch (const ContractRevertError&) {
        // Journaled as a reverted transaction; the disengagement proceeds.
    }

    Message disconfirm;
    disconfirm.sender = id_;
    disconfirm.receivers = {provider};
    disconfirm.performative = Performative::Disconfirm;
    disconfirm.payload = resource;
    disconfirm.conversation_id =
        conversation_.empty() ? platform.next_conversation_id(id_) : conversation_;
    platform.send(disconfirm);
}

void ConsumerAgent::begin_contract(Platform& platform, LedgerClient& ledger) {
    const Money deposit = outcome_.selected->resource.price.times(config_.lease_time_hours);
    if (ledger.ledger().balance_of(wallet_) < deposit) {
        finish(false, "insufficient-funds");
        return;
    }
    auto wallet_it = config_.wallet_directory.find(outcome_.selected->provider);
    if (wallet_it == config_.wallet_directory.end())
        throw ProtocolError("no wallet known for provider " + outcome_.selected->provider);

    Message request;
    request.sender = id_;
    request.receivers = {config_.registrar};
    request.performative = Performative::Request;
    request.payload = ContractInit{wallet_it->second, wallet_, config_.deadline_offset_blocks};
    request.conversation_id = conversation_;
    platform.send(request);
    phase_ = TradePhase::AwaitingConfirm;
}

void ConsumerAgent::finish(bool completed, std::string failure) {
    outcome_.completed = completed;
    outcome_.failure = std::move(failure);
    phase_ = TradePhase::Done;
}

}  // namespace smartson
