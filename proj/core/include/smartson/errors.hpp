#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace smartson {

/// Guard that failed inside a contract call. Reverted calls are mined but
/// leave contract and account state untouched.
enum class RevertReason {
    NotAuthority,
    PartyIsAuthority,
    WrongState,
    NotConsumer,
    NotParty,
    DeadlinePassed,
    DeadlineNotReached,
    ExtensionDisabled,
    NotAContract,
    ValueNotAccepted,
    FallbackRejected,
};

std::string to_string(RevertReason reason);

struct MoneyRangeError : std::runtime_error {
    explicit MoneyRangeError(const std::string& what) : std::runtime_error(what) {}
};

struct MoneyParseError : std::runtime_error {
    explicit MoneyParseError(const std::string& what) : std::runtime_error(what) {}
};

struct UnknownAccountError : std::runtime_error {
    explicit UnknownAccountError(const std::string& what) : std::runtime_error(what) {}
};

struct InsufficientFundsError : std::runtime_error {
    explicit InsufficientFundsError(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown by Ledger::submit when the called contract reverts. The transaction
/// is mined (the block advances) but every balance and contract field is
/// restored to the pre-transaction snapshot.
struct ContractRevertError : std::runtime_error {
    ContractRevertError(RevertReason r, std::uint64_t mined_block)
        : std::runtime_error("contract revert: " + to_string(r)),
          reason(r),
          block_no(mined_block) {}

    RevertReason reason;
    std::uint64_t block_no;
};

struct ZeroVectorError : std::runtime_error {
    ZeroVectorError() : std::runtime_error("cosine similarity of a zero vector") {}
};

struct ParseError : std::runtime_error {
    ParseError(const std::string& what, std::size_t line)
        : std::runtime_error(what + " (line " + std::to_string(line) + ")"), line_no(line) {}

    std::size_t line_no;
};

struct UnknownAgentError : std::runtime_error {
    explicit UnknownAgentError(const std::string& what) : std::runtime_error(what) {}
};

struct DuplicateNameError : std::runtime_error {
    explicit DuplicateNameError(const std::string& what) : std::runtime_error(what) {}
};

struct ProtocolError : std::runtime_error {
    explicit ProtocolError(const std::string& what) : std::runtime_error(what) {}
};

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace smartson
