#pragma once

// Randomized escrow workout against an independently written model of the
// contract semantics. For every operation the model predicts whether the
// transaction is rejected (not mined), reverted (mined, state preserved) or
// mined, plus the resulting status and all five balances; the real ledger
// must agree exactly. Used by the unit suite (small N) and the acceptance
// suite (10k sequences).

#include <cstdint>
#include <map>
#include <string>

#include "smartson/errors.hpp"
#include "smartson/ledger.hpp"
#include "smartson/rng.hpp"

namespace smartson::test {

struct FuzzStats {
    std::uint64_t sequences = 0;
    std::uint64_t operations = 0;
    std::uint64_t mined = 0;
    std::uint64_t reverted = 0;
    std::uint64_t rejected = 0;
    std::uint64_t payouts = 0;
    std::uint64_t refunds = 0;
};

namespace fuzz_detail {

enum class Outcome { Mined, Reverted, Rejected };

struct Model {
    // roles: 0 authority, 1 provider, 2 consumer, 3 outsider
    std::array<Money, 4> balances;
    Money contract_balance;
    bool contract_exists = true;
    bool parties_set = false;
    EscrowState status = EscrowState::UnInitialized;
    bool provider_approval = false, consumer_approval = false;
    bool provider_cancel = false, consumer_cancel = false;
    Money charge;
    unsigned fee_percent = 0;
    std::uint64_t deadline = 0;
    bool extension = false;
    std::uint64_t block = 0;

    Money total() const {
        Money t = contract_exists ? contract_balance : Money{};
        for (const auto& b : balances) t = t + b;
        return t;
    }
};

inline void check(bool ok, const std::string& what, std::uint64_t seq, std::uint64_t op) {
    if (!ok)
        throw std::runtime_error("escrow fuzz violation: " + what + " (sequence " +
                                 std::to_string(seq) + ", op " + std::to_string(op) + ")");
}

}  // namespace fuzz_detail

inline FuzzStats run_escrow_fuzz(std::uint64_t sequences, std::uint64_t base_seed) {
    using fuzz_detail::Model;
    using fuzz_detail::Outcome;
    using fuzz_detail::check;

    FuzzStats stats;

    for (std::uint64_t sequence = 0; sequence < sequences; ++sequence) {
        SplitMix64 rng(base_seed + sequence);
        Ledger ledger;

        Model model;
        model.extension = rng.below(2) == 0;
        model.fee_percent = static_cast<unsigned>(rng.below(101));  // 0..100
        for (auto& b : model.balances) b = Money::from_base_units(rng.below(1'000'000));

        std::array<AccountId, 4> who;
        for (std::size_t i = 0; i < who.size(); ++i)
            who[i] = ledger.create_account(model.balances[i]);

        const auto deployed = ledger.submit(
            Transaction{who[0], std::nullopt, Money{}, DeployEscrow{model.extension}});
        const AccountId contract = *deployed.created_contract;
        model.block += 1;

        // Action weights favor the operations that drive the machine deep
        // (initialize, deposit, approve) over background noise.
        static constexpr std::uint64_t kActionByWeight[16] = {0, 0, 1, 1, 1, 2, 2, 2,
                                                              2, 3, 3, 4, 5, 6, 7, 7};
        const std::uint64_t ops = 8 + rng.below(16);
        for (std::uint64_t op = 0; op < ops; ++op) {
            ++stats.operations;
            const std::uint64_t action = kActionByWeight[rng.below(16)];
            // Lean toward the caller the protocol expects so deep paths
            // (payout, refund, destruction) are reached often; keep a
            // uniform share for adversarial callers.
            std::size_t caller = rng.below(4);
            if (rng.below(10) < 7) {
                switch (action) {
                    case 0: caller = 0; break;                      // initialize: authority
                    case 1: caller = 2; break;                      // deposit: consumer
                    case 2: caller = 1 + rng.below(2); break;       // approve: a party
                    case 3: caller = 1 + rng.below(2); break;       // cancel: a party
                    case 4: caller = 0; break;                      // end: authority
                    case 5: caller = 2; break;                      // timeout refund: consumer
                    default: break;
                }
            }
            const Money value = Money::from_base_units(rng.below(200'000));

            // Independent prediction.
            Outcome expect = Outcome::Mined;
            Model next = model;
            const bool caller_is_consumer = model.parties_set && caller == 2;
            const bool caller_is_party = model.parties_set && (caller == 1 || caller == 2);
            const bool before_deadline = model.block < model.deadline;

            Transaction tx{who[caller], contract, Money{}, Transfer{}};
            switch (action) {
                case 0: {  // initialize, sometimes naming the authority as a party
                    const bool bad_party = rng.below(4) == 0;
                    tx.call = InitializeEscrow{bad_party ? who[0] : who[1], who[2],
                                               model.fee_percent, model.block + 3 + rng.below(12)};
                    if (!model.contract_exists) expect = Outcome::Rejected;
                    else if (caller != 0 || bad_party || model.status != EscrowState::UnInitialized)
                        expect = Outcome::Reverted;
                    else {
                        next.parties_set = true;
                        next.status = EscrowState::Initialized;
                        next.deadline = std::get<InitializeEscrow>(tx.call).deadline_block;
                    }
                    break;
                }
                case 1: {  // deposit
                    tx.call = DepositToEscrow{};
                    tx.value = value;
                    if (!model.contract_exists || model.balances[caller] < value)
                        expect = Outcome::Rejected;
                    else if (!caller_is_consumer || !before_deadline ||
                             (model.status != EscrowState::Initialized &&
                              model.status != EscrowState::ConsumerDeposited))
                        expect = Outcome::Reverted;
                    else {
                        next.balances[caller] = next.balances[caller] - value;
                        next.contract_balance = next.contract_balance + value;
                        next.charge = next.charge + value;
                        next.status = EscrowState::ConsumerDeposited;
                    }
                    break;
                }
                case 2: {  // approve
                    tx.call = ApproveEscrow{};
                    if (!model.contract_exists) expect = Outcome::Rejected;
                    else if (!caller_is_party || model.status != EscrowState::ConsumerDeposited)
                        expect = Outcome::Reverted;
                    else {
                        if (caller == 1) next.provider_approval = true;
                        if (caller == 2) next.consumer_approval = true;
                        if (next.provider_approval && next.consumer_approval) {
                            const Money fee = next.contract_balance.percent_floor(model.fee_percent);
                            next.balances[0] = next.balances[0] + fee;
                            next.balances[1] =
                                next.balances[1] + (next.contract_balance - fee);
                            next.contract_balance = Money{};
                            next.status = EscrowState::EscrowComplete;
                            ++stats.payouts;
                        }
                    }
                    break;
                }
                case 3: {  // cancel
                    tx.call = CancelEscrow{};
                    if (!model.contract_exists) expect = Outcome::Rejected;
                    else if (!caller_is_party || !before_deadline ||
                             model.status != EscrowState::ConsumerDeposited)
                        expect = Outcome::Reverted;
                    else {
                        if (caller == 1) next.provider_cancel = true;
                        if (caller == 2) next.consumer_cancel = true;
                        if (next.provider_cancel && next.consumer_cancel) {
                            next.balances[2] = next.balances[2] + next.contract_balance;
                            next.contract_balance = Money{};
                            next.status = EscrowState::EscrowCancelled;
                            ++stats.refunds;
                        }
                    }
                    break;
                }
                case 4: {  // end
                    tx.call = EndEscrow{};
                    if (!model.contract_exists) expect = Outcome::Rejected;
                    else if (caller != 0 || (model.status != EscrowState::ServiceApproved &&
                                             model.status != EscrowState::EscrowComplete &&
                                             model.status != EscrowState::EscrowCancelled))
                        expect = Outcome::Reverted;
                    else {
                        next.balances[0] = next.balances[0] + next.contract_balance;
                        next.contract_balance = Money{};
                        next.contract_exists = false;
                    }
                    break;
                }
                case 5: {  // timeout refund
                    tx.call = TimeoutRefundEscrow{};
                    if (!model.contract_exists) expect = Outcome::Rejected;
                    else if (!model.extension || !caller_is_consumer ||
                             model.status != EscrowState::ConsumerDeposited || before_deadline)
                        expect = Outcome::Reverted;
                    else {
                        const Money fee = next.contract_balance.percent_floor(model.fee_percent);
                        next.balances[0] = next.balances[0] + fee;
                        next.balances[2] = next.balances[2] + (next.contract_balance - fee);
                        next.contract_balance = Money{};
                        next.status = EscrowState::EscrowCancelled;
                        ++stats.refunds;
                    }
                    break;
                }
                case 6: {  // plain transfer to the contract account
                    tx.call = Transfer{};
                    tx.value = value;
                    if (!model.contract_exists) expect = Outcome::Rejected;
                    else if (model.balances[caller] < value) expect = Outcome::Rejected;
                    else expect = Outcome::Reverted;  // fallback rejects it
                    break;
                }
                default: {  // transfer between user accounts
                    const std::size_t to = rng.below(4);
                    tx.call = Transfer{};
                    tx.target = who[to];
                    tx.value = value;
                    if (model.balances[caller] < value) expect = Outcome::Rejected;
                    else if (to != caller) {
                        next.balances[caller] = next.balances[caller] - value;
                        next.balances[to] = next.balances[to] + value;
                    }
                    break;
                }
            }

            // A non-payable contract call carrying value reverts before any
            // guard; fold that into the prediction.
            if ((action == 0 || (action >= 2 && action <= 5)) && rng.below(8) == 0) {
                tx.value = Money::from_base_units(1 + rng.below(1000));
                if (model.contract_exists && model.balances[caller] >= tx.value) {
                    expect = Outcome::Reverted;
                    next = model;
                } else {
                    expect = Outcome::Rejected;
                    next = model;
                }
            }

            const std::string pre_dump = ledger.dump_json();
            const Money pre_total = ledger.total_balance();

            Outcome got;
            try {
                ledger.submit(tx);
                got = Outcome::Mined;
                next.block = model.block + 1;
            } catch (const ContractRevertError&) {
                got = Outcome::Reverted;
                next = model;
                next.block = model.block + 1;
            } catch (const InsufficientFundsError&) {
                got = Outcome::Rejected;
                next = model;
            } catch (const UnknownAccountError&) {
                got = Outcome::Rejected;
                next = model;
            }

            check(got == expect,
                  "outcome mismatch: expected " + std::to_string(int(expect)) + " got " +
                      std::to_string(int(got)) + " for action " + std::to_string(action),
                  sequence, op);

            stats.mined += got == Outcome::Mined;
            stats.reverted += got == Outcome::Reverted;
            stats.rejected += got == Outcome::Rejected;

            // Reverted and rejected transactions preserve every balance and
            // contract field bit for bit.
            if (got != Outcome::Mined) {
                std::string post = ledger.dump_json();
                if (got == Outcome::Reverted) {
                    // Only the block counter may differ.
                    const auto cut = [](const std::string& dump) {
                        return dump.substr(0, dump.rfind("\"current_block\""));
                    };
                    check(cut(post) == cut(pre_dump), "revert altered state", sequence, op);
                } else {
                    check(post == pre_dump, "rejected transaction altered state", sequence, op);
                }
            }

            check(ledger.total_balance() == pre_total, "conservation broken", sequence, op);
            check(ledger.current_block() == next.block, "block counter mismatch", sequence, op);
            for (std::size_t i = 0; i < who.size(); ++i)
                check(ledger.balance_of(who[i]) == next.balances[i], "balance mismatch", sequence,
                      op);
            check(ledger.contract_exists(contract) == next.contract_exists,
                  "contract existence mismatch", sequence, op);
            if (next.contract_exists) {
                const auto& real = ledger.contract_at(contract);
                check(real.status() == next.status, "status mismatch", sequence, op);
                check(ledger.balance_of(contract) == next.contract_balance,
                      "contract balance mismatch", sequence, op);
                check(real.escrow_charge() == next.charge, "escrow charge mismatch", sequence, op);
                if (next.status == EscrowState::EscrowComplete) {
                    check(real.fee_amount() + real.provider_amount() == real.escrow_charge(),
                          "payout does not split the charge", sequence, op);
                    check(real.fee_amount() ==
                              real.escrow_charge().percent_floor(real.fee_percent()),
                          "fee is not the floored percentage", sequence, op);
                }
            }

            model = next;
        }
        ++stats.sequences;
    }
    return stats;
}

}  // namespace smartson::test
