#include "smartson/platform.hpp"

#include <algorithm>

#include "smartson/errors.hpp"

namespace smartson {

AgentId Platform::register_agent(const std::string& name) {
    std::lock_guard lock(mutex_);
    auto [it, inserted] = mailboxes_.try_emplace(name);
    if (!inserted) throw DuplicateNameError("agent name already registered: " + name);
    return AgentId{name};
}

void Platform::deregister_agent(const AgentId& agent) {
    std::lock_guard lock(mutex_);
    if (mailboxes_.erase(agent.name) == 0)
        throw UnknownAgentError("agent not registered: " + agent.name);
    std::erase_if(directory_, [&](const ServiceRecord& r) { return r.agent == agent; });
}

void Platform::send(const Message& message) {
    if (!payload_matches(message.performative, message.payload))
        throw ProtocolError("payload kind does not match performative " +
                            to_string(message.performative));

    std::lock_guard lock(mutex_);
    for (const auto& receiver : message.receivers) {
        if (!mailboxes_.contains(receiver.name))
            throw UnknownAgentError("receiver not registered: " + receiver.name);
    }
    // All receivers verified; deliver to each in listed order.
    for (const auto& receiver : message.receivers) {
        mailboxes_[receiver.name].push_back(message);
        if (journal_) {
            journal_->record_message(MessageRecord{0, message.conversation_id,
                                                   message.sender.name, receiver.name,
                                                   message.performative, message.payload});
        }
    }
    delivered_.notify_all();
}

std::optional<Message> Platform::take_matching(const AgentId& agent,
                                               const std::vector<Performative>& filter) {
    auto it = mailboxes_.find(agent.name);
    if (it == mailboxes_.end()) throw UnknownAgentError("agent not registered: " + agent.name);
    auto& queue = it->second;
    for (auto msg = queue.begin(); msg != queue.end(); ++msg) {
        if (filter.empty() ||
            std::find(filter.begin(), filter.end(), msg->performative) != filter.end()) {
            Message taken = std::move(*msg);
            queue.erase(msg);
            return taken;
        }
    }
    return std::nullopt;
}

std::optional<Message> Platform::receive(const AgentId& agent,
                                         std::initializer_list<Performative> filter) {
    return receive(agent, std::vector<Performative>(filter));
}

std::optional<Message> Platform::receive(const AgentId& agent,
                                         const std::vector<Performative>& filter) {
    std::lock_guard lock(mutex_);
    return take_matching(agent, filter);
}

std::optional<Message> Platform::receive_blocking(const AgentId& agent,
                                                  const std::vector<Performative>& filter,
                                                  std::chrono::milliseconds timeout) {
    std::unique_lock lock(mutex_);
    const auto deadline = std::chrono::steady_clock::now() + timeout;
    while (true) {
        if (auto msg = take_matching(agent, filter)) return msg;
        if (delivered_.wait_until(lock, deadline) == std::cv_status::timeout)
            return take_matching(agent, filter);
    }
}

void Platform::df_register(const AgentId& agent, const std::string& service_type) {
    std::lock_guard lock(mutex_);
    if (!mailboxes_.contains(agent.name))
        throw UnknownAgentError("agent not registered: " + agent.name);
    directory_.push_back(ServiceRecord{agent, service_type});
}

std::vector<AgentId> Platform::df_find_all(const std::string& service_type) const {
    std::lock_guard lock(mutex_);
    std::vector<AgentId> found;
    for (const auto& record : directory_)
        if (record.service_type == service_type) found.push_back(record.agent);
    return found;
}

std::string Platform::next_conversation_id(const AgentId& initiator) {
    std::lock_guard lock(mutex_);
    return initiator.name + "#" + std::to_string(conversations_started_++);
}

bool Platform::is_registered(const AgentId& agent) const {
    std::lock_guard lock(mutex_);
    return mailboxes_.contains(agent.name);
}

std::size_t Platform::mailbox_size(const AgentId& agent) const {
    std::lock_guard lock(mutex_);
    auto it = mailboxes_.find(agent.name);
    if (it == mailboxes_.end()) throw UnknownAgentError("agent not registered: " + agent.name);
    return it->second.size();
}

}  // namespace smartson
