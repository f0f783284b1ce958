#include "smartson/message.hpp"

#include <stdexcept>

namespace smartson {

std::string to_string(Performative p) {
    switch (p) {
        case Performative::Request: return "REQUEST";
        case Performative::Confirm: return "CONFIRM";
        case Performative::Cancel: return "CANCEL";
        case Performative::Cfp: return "CFP";
        case Performative::Propose: return "PROPOSE";
        case Performative::Refuse: return "REFUSE";
        case Performative::AcceptProposal: return "ACCEPT_PROPOSAL";
        case Performative::Inform: return "INFORM";
        case Performative::Failure: return "FAILURE";
        case Performative::Disconfirm: return "DISCONFIRM";
    }
    return "?";
}

Performative performative_from_string(const std::string& name) {
    if (name == "REQUEST") return Performative::Request;
    if (name == "CONFIRM") return Performative::Confirm;
    if (name == "CANCEL") return Performative::Cancel;
    if (name == "CFP") return Performative::Cfp;
    if (name == "PROPOSE") return Performative::Propose;
    if (name == "REFUSE") return Performative::Refuse;
    if (name == "ACCEPT_PROPOSAL") return Performative::AcceptProposal;
    if (name == "INFORM") return Performative::Inform;
    if (name == "FAILURE") return Performative::Failure;
    if (name == "DISCONFIRM") return Performative::Disconfirm;
    throw std::invalid_argument("unknown performative: " + name);
}

bool payload_matches(Performative performative, const Payload& payload) {
    switch (performative) {
        case Performative::Request: return std::holds_alternative<ContractInit>(payload);
        case Performative::Confirm: return std::holds_alternative<ContractAddress>(payload);
        case Performative::Cancel: return std::holds_alternative<EmptyPayload>(payload);
        case Performative::Cfp: return std::holds_alternative<ResourceSpec>(payload);
        case Performative::Propose: return std::holds_alternative<Proposal>(payload);
        case Performative::Refuse: return std::holds_alternative<Refusal>(payload);
        case Performative::AcceptProposal: return std::holds_alternative<LeaseOrder>(payload);
        case Performative::Inform: return std::holds_alternative<InterfaceDetails>(payload);
        case Performative::Failure: return std::holds_alternative<FailureReason>(payload);
        case Performative::Disconfirm: return std::holds_alternative<ResourceSpec>(payload);
    }
    return false;
}

Message Message::reply_from(const AgentId& self, Performative p, Payload content) const {
    Message out;
    out.sender = self;
    out.receivers = {sender};
    out.performative = p;
    out.payload = std::move(content);
    out.conversation_id = conversation_id;
    return out;
}

}  // namespace smartson
