#include "smartson/journal.hpp"

#include <sstream>

#include <json.hpp>

#include "smartson/errors.hpp"

namespace smartson {

namespace {

using Json = nlohmann::ordered_json;

Json resource_to_json(const ResourceSpec& r) {
    Json j;
    j["title"] = r.title;
    j["wei_per_hr"] = r.price.to_decimal();
    j["mips"] = r.mips;
    j["usd_per_gb"] = r.storage_price;
    j["ram_gb"] = r.ram_gb;
    j["bw_mbps"] = r.bandwidth_mbps;
    j["cpu_cores"] = r.cpu_cores;
    return j;
}

ResourceSpec resource_from_json(const Json& j) {
    ResourceSpec r;
    r.title = j.at("title").get<std::string>();
    r.price = Money::parse(j.at("wei_per_hr").get<std::string>());
    r.mips = j.at("mips").get<double>();
    r.storage_price = j.at("usd_per_gb").get<double>();
    r.ram_gb = j.at("ram_gb").get<double>();
    r.bandwidth_mbps = j.at("bw_mbps").get<double>();
    r.cpu_cores = j.at("cpu_cores").get<double>();
    return r;
}

Json payload_to_json(const Payload& payload) {
    return std::visit(
        [](const auto& p) -> Json {
            using T = std::decay_t<decltype(p)>;
            Json j;
            if constexpr (std::is_same_v<T, EmptyPayload>) {
                j = Json::object();
            } else if constexpr (std::is_same_v<T, ResourceSpec>) {
                j["resource"] = resource_to_json(p);
            } else if constexpr (std::is_same_v<T, ContractInit>) {
                j["provider_address"] = p.provider_address.to_hex();
                j["consumer_address"] = p.consumer_address.to_hex();
                j["deadline"] = p.deadline;
            } else if constexpr (std::is_same_v<T, ContractAddress>) {
                j["contract_address"] = p.address.to_hex();
            } else if constexpr (std::is_same_v<T, Proposal>) {
                j["match_score"] = p.match_score;
                j["resource"] = resource_to_json(p.resource);
            } else if constexpr (std::is_same_v<T, Refusal>) {
                j["reason"] = p.reason;
            } else if constexpr (std::is_same_v<T, LeaseOrder>) {
                j["resource"] = resource_to_json(p.resource);
                j["contract_address"] = p.contract_address.to_hex();
                j["lease_time"] = p.lease_time;
            } else if constexpr (std::is_same_v<T, InterfaceDetails>) {
                j["details"] = p.details;
            } else if constexpr (std::is_same_v<T, FailureReason>) {
                j["reason"] = p.reason;
            }
            return j;
        },
        payload);
}

Payload payload_from_json(Performative performative, const Json& j) {
    switch (performative) {
        case Performative::Request:
            return ContractInit{AccountId::from_hex(j.at("provider_address").get<std::string>()),
                                AccountId::from_hex(j.at("consumer_address").get<std::string>()),
                                j.at("deadline").get<std::uint64_t>()};
        case Performative::Confirm:
            return ContractAddress{AccountId::from_hex(j.at("contract_address").get<std::string>())};
        case Performative::Cancel:
            return EmptyPayload{};
        case Performative::Cfp:
        case Performative::Disconfirm:
            return resource_from_json(j.at("resource"));
        case Performative::Propose:
            return Proposal{j.at("match_score").get<double>(),
                            resource_from_json(j.at("resource"))};
        case Performative::Refuse:
            return Refusal{j.at("reason").get<std::string>()};
        case Performative::AcceptProposal:
            return LeaseOrder{resource_from_json(j.at("resource")),
                              AccountId::from_hex(j.at("contract_address").get<std::string>()),
                              j.at("lease_time").get<std::uint64_t>()};
        case Performative::Inform:
            return InterfaceDetails{j.at("details").get<std::string>()};
        case Performative::Failure:
            return FailureReason{j.at("reason").get<std::string>()};
    }
    throw ProtocolError("unhandled performative");
}

constexpr const char* kMessageFields[] = {"seq",      "conversation", "sender",
                                          "receiver", "performative", "payload"};

}  // namespace

EventJournal::EventJournal(EventJournal&& other) noexcept {
    std::lock_guard lock(other.mutex_);
    seq_ = other.seq_;
    messages_ = std::move(other.messages_);
    transactions_ = std::move(other.transactions_);
    notes_ = std::move(other.notes_);
}

EventJournal& EventJournal::operator=(EventJournal&& other) noexcept {
    if (this != &other) {
        std::scoped_lock lock(mutex_, other.mutex_);
        seq_ = other.seq_;
        messages_ = std::move(other.messages_);
        transactions_ = std::move(other.transactions_);
        notes_ = std::move(other.notes_);
    }
    return *this;
}

MessageRecord EventJournal::record_message(MessageRecord record) {
    std::lock_guard lock(mutex_);
    record.seq = seq_++;
    messages_.push_back(record);
    return record;
}

TxRecord EventJournal::record_tx(TxRecord record) {
    std::lock_guard lock(mutex_);
    record.seq = seq_++;
    transactions_.push_back(record);
    return record;
}

void EventJournal::note(std::string text) {
    std::lock_guard lock(mutex_);
    notes_.push_back(std::move(text));
}

std::string EventJournal::messages_jsonl() const {
    std::lock_guard lock(mutex_);
    std::ostringstream out;
    for (const auto& m : messages_) {
        Json j;
        j["seq"] = m.seq;
        j["conversation"] = m.conversation;
        j["sender"] = m.sender;
        j["receiver"] = m.receiver;
        j["performative"] = to_string(m.performative);
        j["payload"] = payload_to_json(m.payload);
        out << j.dump() << "\n";
    }
    return out.str();
}

std::vector<MessageRecord> validate_message_log(const std::string& jsonl_text) {
    std::vector<MessageRecord> records;
    std::istringstream in(jsonl_text);
    std::string line;
    std::size_t line_no = 0;
    std::optional<std::uint64_t> last_seq;

    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;

        Json j;
        try {
            j = Json::parse(line);
        } catch (const std::exception& e) {
            throw ParseError(std::string("bad JSON: ") + e.what(), line_no);
        }

        // Field names and their order are part of the log format.
        if (!j.is_object() || j.size() != std::size(kMessageFields))
            throw ParseError("message record must have exactly 6 fields", line_no);
        std::size_t index = 0;
        for (auto it = j.begin(); it != j.end(); ++it, ++index) {
            if (it.key() != kMessageFields[index])
                throw ParseError("unexpected field '" + it.key() + "' at position " +
                                     std::to_string(index),
                                 line_no);
        }

        MessageRecord record;
        try {
            record.seq = j.at("seq").get<std::uint64_t>();
            record.conversation = j.at("conversation").get<std::string>();
            record.sender = j.at("sender").get<std::string>();
            record.receiver = j.at("receiver").get<std::string>();
            record.performative = performative_from_string(j.at("performative").get<std::string>());
            record.payload = payload_from_json(record.performative, j.at("payload"));
        } catch (const ParseError&) {
            throw;
        } catch (const std::exception& e) {
            throw ParseError(std::string("bad message record: ") + e.what(), line_no);
        }

        if (!payload_matches(record.performative, record.payload))
            throw ProtocolError("payload kind does not match performative at line " +
                                std::to_string(line_no));
        if (last_seq && record.seq <= *last_seq)
            throw ProtocolError("sequence numbers not strictly increasing at line " +
                                std::to_string(line_no));
        last_seq = record.seq;
        records.push_back(std::move(record));
    }
    return records;
}

}  // namespace smartson
