#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "smartson/account.hpp"
#include "smartson/resource.hpp"

namespace smartson {

/// Platform-unique agent name.
struct AgentId {
    std::string name;
    auto operator<=>(const AgentId&) const = default;
};

/// The ten speech acts the trading protocol uses. Closed set.
enum class Performative {
    Request,
    Confirm,
    Cancel,
    Cfp,
    Propose,
    Refuse,
    AcceptProposal,
    Inform,
    Failure,
    Disconfirm,
};

std::string to_string(Performative p);
Performative performative_from_string(const std::string& name);

// Payload kinds, one per performative (CFP and DISCONFIRM both carry a bare
// resource). See payload_matches for the pairing.
struct EmptyPayload {
    bool operator==(const EmptyPayload&) const = default;
};
struct ContractInit {  // REQUEST
    AccountId provider_address;
    AccountId consumer_address;
    std::uint64_t deadline = 0;  // block offset
    bool operator==(const ContractInit&) const = default;
};
struct ContractAddress {  // CONFIRM
    AccountId address;
    bool operator==(const ContractAddress&) const = default;
};
struct Proposal {  // PROPOSE
    double match_score = 0;
    ResourceSpec resource;
    bool operator==(const Proposal&) const = default;
};
struct Refusal {  // REFUSE
    std::string reason;
    bool operator==(const Refusal&) const = default;
};
struct LeaseOrder {  // ACCEPT_PROPOSAL
    ResourceSpec resource;
    AccountId contract_address;
    std::uint64_t lease_time = 0;  // hours
    bool operator==(const LeaseOrder&) const = default;
};
struct InterfaceDetails {  // INFORM
    std::string details;
    bool operator==(const InterfaceDetails&) const = default;
};
struct FailureReason {  // FAILURE
    std::string reason;
    bool operator==(const FailureReason&) const = default;
};

using Payload = std::variant<EmptyPayload, ResourceSpec, ContractInit, ContractAddress, Proposal,
                             Refusal, LeaseOrder, InterfaceDetails, FailureReason>;

/// True when the payload alternative is the one the protocol table assigns
/// to the performative.
bool payload_matches(Performative performative, const Payload& payload);

struct Message {
    AgentId sender;
    std::vector<AgentId> receivers;
    Performative performative = Performative::Inform;
    Payload payload;
    std::string conversation_id;

    /// Reply skeleton: addressed back to the sender, keeps the conversation.
    Message reply_from(const AgentId& self, Performative p, Payload content) const;
};

}  // namespace smartson
