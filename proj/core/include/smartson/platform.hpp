#pragma once

#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <initializer_list>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "smartson/journal.hpp"
#include "smartson/message.hpp"

namespace smartson {

struct ServiceRecord {
    AgentId agent;
    std::string service_type;
};

/// Messaging substrate: per-agent mailboxes, agent lifecycle, and a service
/// directory. Delivery is per-pair FIFO and, in a single-threaded run, the
/// global delivery order is the global send order. All operations are
/// guarded by one mutex so concurrent agent tasks may share the platform.
class Platform {
public:
    explicit Platform(EventJournal* journal = nullptr) : journal_(journal) {}

    AgentId register_agent(const std::string& name);  // DuplicateNameError
    void deregister_agent(const AgentId& agent);      // UnknownAgentError; purges DF records

    /// Enqueues one copy per receiver and journals each delivery. All
    /// receivers must be registered; otherwise nothing is delivered.
    /// Payload kind must match the performative (ProtocolError).
    void send(const Message& message);

    /// Oldest queued message whose performative is in the filter (any
    /// performative when the filter is empty). Non-matching messages keep
    /// their place. nullopt when nothing matches.
    std::optional<Message> receive(const AgentId& agent,
                                   std::initializer_list<Performative> filter = {});
    std::optional<Message> receive(const AgentId& agent, const std::vector<Performative>& filter);

    /// Blocking variant for concurrent mode; nullopt on timeout.
    std::optional<Message> receive_blocking(const AgentId& agent,
                                            const std::vector<Performative>& filter,
                                            std::chrono::milliseconds timeout);

    void df_register(const AgentId& agent, const std::string& service_type);
    std::vector<AgentId> df_find_all(const std::string& service_type) const;

    /// Deterministic correlation token for a new conversation.
    std::string next_conversation_id(const AgentId& initiator);

    bool is_registered(const AgentId& agent) const;
    std::size_t mailbox_size(const AgentId& agent) const;

private:
    std::optional<Message> take_matching(const AgentId& agent,
                                         const std::vector<Performative>& filter);

    mutable std::mutex mutex_;
    std::condition_variable delivered_;
    std::map<std::string, std::deque<Message>> mailboxes_;
    std::vector<ServiceRecord> directory_;  // registration order
    EventJournal* journal_;
    std::uint64_t conversations_started_ = 0;
};

}  // namespace smartson
