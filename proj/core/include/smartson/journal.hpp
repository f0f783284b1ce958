#pragma once

#include <cstdint>
#include <mutex>
#include <string>
#include <vector>

#include "smartson/escrow.hpp"
#include "smartson/message.hpp"

namespace smartson {

/// One delivered message copy: a broadcast to five receivers journals as
/// five consecutive records.
struct MessageRecord {
    std::uint64_t seq = 0;
    std::string conversation;
    std::string sender;
    std::string receiver;
    Performative performative = Performative::Inform;
    Payload payload;
};

/// One mined ledger transaction issued by an agent.
struct TxRecord {
    std::uint64_t seq = 0;
    std::string actor;  // agent name
    std::string kind;   // deploy, initialize, deposit, approve, cancel, end, timeout_refund, transfer
    std::uint64_t block = 0;
    std::string tx_hash;
    bool reverted = false;
    std::string revert_reason;
    std::vector<EscrowEvent> events;
};

/// Serialized record of everything observable in one run: message deliveries
/// and mined transactions share one sequence counter assigned at append, so
/// their interleaving is reconstructible. Appends are serialized, making the
/// journal usable from concurrent agent tasks; deterministic runs produce
/// identical journals.
class EventJournal {
public:
    EventJournal() = default;
    EventJournal(EventJournal&& other) noexcept;
    EventJournal& operator=(EventJournal&& other) noexcept;

    /// Stores the record with the next sequence number; returns it as stored.
    MessageRecord record_message(MessageRecord record);
    TxRecord record_tx(TxRecord record);
    void note(std::string text);

    const std::vector<MessageRecord>& messages() const { return messages_; }
    const std::vector<TxRecord>& transactions() const { return transactions_; }
    const std::vector<std::string>& notes() const { return notes_; }

    /// JSON-lines rendering of the message records, one message per line,
    /// fields in fixed order.
    std::string messages_jsonl() const;

private:
    mutable std::mutex mutex_;
    std::uint64_t seq_ = 0;
    std::vector<MessageRecord> messages_;
    std::vector<TxRecord> transactions_;
    std::vector<std::string> notes_;
};

/// Parses and validates a message log produced by messages_jsonl: field
/// order, payload kind per performative, strictly increasing seq. Throws
/// ParseError or ProtocolError.
std::vector<MessageRecord> validate_message_log(const std::string& jsonl_text);

}  // namespace smartson
