// Acceptance suite: one check per release criterion, each printed as a
// single PASS/FAIL line with its runtime. Exits non-zero if anything fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "smartson/matching.hpp"
#include "smartson/rng.hpp"
#include "smartson/scenario.hpp"
#include "support/escrow_fuzz.hpp"
#include "support/paths.hpp"
#include "support/table_data.hpp"

using namespace smartson;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int criterion, const std::string& name, bool ok, double elapsed_s,
            const std::string& detail = "") {
    std::printf("[%s] criterion %d: %s (%.2fs)%s\n", ok ? "PASS" : "FAIL", criterion,
                name.c_str(), elapsed_s, detail.empty() ? "" : ("  -- " + detail).c_str());
    if (!ok) ++failures;
}

void run(int criterion, const std::string& name, double budget_s,
         const std::function<std::string()>& body) {
    const auto start = Clock::now();
    std::string detail;
    bool ok = true;
    try {
        detail = body();
    } catch (const std::exception& e) {
        ok = false;
        detail = e.what();
    }
    const double elapsed = std::chrono::duration<double>(Clock::now() - start).count();
    if (ok && budget_s > 0 && elapsed > budget_s) {
        ok = false;
        detail = "runtime budget exceeded (" + std::to_string(budget_s) + "s)";
    }
    report(criterion, name, ok, elapsed, detail);
}

void require(bool condition, const std::string& what) {
    if (!condition) throw std::runtime_error(what);
}

ScenarioConfig fixture(const std::string& name) {
    return ScenarioConfig::from_json_file(smartson::test::fixture_path(name));
}

// --------------------------------------------------------------------------

std::string check_cosine_scores() {
    const auto report = run_scenario(fixture("table3.json"));
    require(report.records.size() == 1, "expected one epoch record");
    const auto& scores = report.records.front().scores;
    const auto& pools = smartson::test::provider_pools();
    const auto& expected = smartson::test::t3a_small_scores();

    require(scores.size() == 5, "expected five provider score rows");
    int checked = 0;
    for (std::size_t p = 0; p < 5; ++p) {
        require(scores[p].entries.size() == 5, "expected five scores per provider");
        for (std::size_t i = 0; i < 5; ++i) {
            require(scores[p].entries[i].first == pools[p][i], "catalogue order mismatch");
            const double got = scores[p].entries[i].second;
            const double want = expected[p][i];
            require(std::abs(got - want) <= 1e-12 * want,
                    "score off for " + pools[p][i] + ": got " + std::to_string(got));
            ++checked;
        }
    }
    return std::to_string(checked) + " scores within 1e-12 relative";
}

std::string check_fee_arithmetic() {
    const auto report = run_scenario(fixture("table4.json"));
    const auto& rows = smartson::test::ten_epoch_trace();
    require(report.records.size() == rows.size(), "expected ten epoch records");

    for (std::size_t e = 0; e < rows.size(); ++e) {
        const auto& record = report.records[e];
        require(record.amount == Money::parse(rows[e].wei),
                "epoch " + std::to_string(e + 1) + " amount mismatch");
        require(record.contract_fee == record.amount.percent_floor(2),
                "epoch " + std::to_string(e + 1) + " fee is not exactly 2%");
        require(record.contract_fee == Money::parse(rows[e].fee),
                "epoch " + std::to_string(e + 1) + " fee mismatch");
    }
    require(report.total_amount == Money::parse(smartson::test::kTenEpochTotalWei),
            "total amount must be exactly 1.1119");
    require(report.total_fee == Money::parse(smartson::test::kTenEpochTotalFee),
            "total fee must be exactly 0.022238");
    return "10 epochs exact in base units; totals 1.1119 / 0.022238";
}

std::string check_balance_evolution() {
    const auto report = run_scenario(fixture("table4.json"));
    const auto series = balance_series(report);
    require(series.size() == 5, "expected five provider series");

    Money gains;
    for (const auto& [name, balances] : series) {
        require(balances.front() == Money::parse("0.05"), "initial balance must be 0.05");
        gains = gains + (balances.back() - balances.front());
    }
    require(gains == Money::parse("1.089662"), "provider gains must sum to 1.089662");
    return "sum of provider gains = 1.089662 exactly";
}

std::string check_escrow_properties() {
    const auto stats = smartson::test::run_escrow_fuzz(10000, 20260809);
    require(stats.sequences == 10000, "must run 10000 sequences");
    require(stats.payouts > 100 && stats.refunds > 100 && stats.reverted > 1000,
            "generator failed to reach interesting paths");
    std::ostringstream out;
    out << stats.operations << " ops, " << stats.mined << " mined, " << stats.reverted
        << " reverted, " << stats.rejected << " rejected, " << stats.payouts << " payouts";
    return out.str();
}

std::string check_protocol_round_trip() {
    const auto report = run_scenario(fixture("table3.json"));

    // The log itself must satisfy the schema.
    const auto messages = validate_message_log(report.journal.messages_jsonl());

    // Merge message and transaction events into the one deterministic order.
    struct Event {
        std::uint64_t seq;
        std::string token;
    };
    std::vector<Event> events;
    for (const auto& m : messages) events.push_back({m.seq, to_string(m.performative)});
    for (const auto& t : report.journal.transactions())
        events.push_back({t.seq, "tx:" + t.kind});
    std::sort(events.begin(), events.end(),
              [](const Event& a, const Event& b) { return a.seq < b.seq; });

    std::vector<std::string> got;
    for (const auto& e : events) got.push_back(e.token);

    std::vector<std::string> expected = {"CFP", "CFP", "CFP", "CFP", "CFP"};
    for (int i = 0; i < 5; ++i) expected.push_back("reply");  // PROPOSE or REFUSE
    const std::vector<std::string> tail = {"REQUEST", "tx:deploy", "tx:initialize", "CONFIRM",
                                           "tx:deposit", "ACCEPT_PROPOSAL", "tx:approve",
                                           "INFORM", "tx:approve", "DISCONFIRM", "DISCONFIRM"};
    expected.insert(expected.end(), tail.begin(), tail.end());

    require(got.size() == expected.size(),
            "expected " + std::to_string(expected.size()) + " events, saw " +
                std::to_string(got.size()));
    for (std::size_t i = 0; i < expected.size(); ++i) {
        if (expected[i] == "reply")
            require(got[i] == "PROPOSE" || got[i] == "REFUSE",
                    "event " + std::to_string(i) + " should be PROPOSE or REFUSE, saw " + got[i]);
        else
            require(got[i] == expected[i], "event " + std::to_string(i) + " should be " +
                                               expected[i] + ", saw " + got[i]);
    }
    return "exact sequence over " + std::to_string(got.size()) + " events";
}

std::string check_determinism() {
    for (const char* name : {"table3.json", "table4.json"}) {
        const auto first = run_scenario(fixture(name));
        const auto second = run_scenario(fixture(name));
        require(first.to_json() == second.to_json(),
                std::string(name) + ": report bytes differ between runs");
        require(first.journal.messages_jsonl() == second.journal.messages_jsonl(),
                std::string(name) + ": message logs differ between runs");
    }
    return "both bundled fixtures byte-identical across runs";
}

// Independent scorer for the argmax cross-check.
double brute_score(const ResourceSpec& a, const ResourceSpec& b) {
    const auto va = a.vector();
    const auto vb = b.vector();
    double dot = 0, na = 0, nb = 0;
    for (int i = 5; i >= 0; --i) {
        dot += va[std::size_t(i)] * vb[std::size_t(i)];
        na += va[std::size_t(i)] * va[std::size_t(i)];
        nb += vb[std::size_t(i)] * vb[std::size_t(i)];
    }
    double s = dot / (std::sqrt(na) * std::sqrt(nb));
    if (s > 1.0) s = 1.0;
    if (s < 0.0) s = 0.0;
    return s;
}

std::string check_brute_force_oracle() {
    SplitMix64 rng(424242);
    auto random_resource = [&rng](int index) {
        ResourceSpec r;
        r.title = "r" + std::to_string(index);
        r.price = Money::from_base_units(1 + rng.below(300'000'000'000'000'000ULL));
        r.mips = double(1 + rng.below(400'000));
        r.storage_price = double(rng.below(500)) / 1000.0;
        r.ram_gb = double(1 + rng.below(64));
        r.bandwidth_mbps = double(1 + rng.below(120));
        r.cpu_cores = double(1 + rng.below(8));
        return r;
    };

    for (int instance = 0; instance < 1000; ++instance) {
        const auto request = random_resource(-1);
        std::vector<ResourceSpec> entries;
        const auto size = 1 + rng.below(10);
        for (std::size_t i = 0; i < size; ++i) {
            if (!entries.empty() && rng.below(5) == 0)
                entries.push_back(entries[rng.below(entries.size())]);
            else
                entries.push_back(random_resource(int(i)));
        }

        // First-wins argmax over independently computed scores.
        std::size_t want = 0;
        double want_score = -1;
        for (std::size_t i = 0; i < entries.size(); ++i) {
            const double s = brute_score(request, entries[i]);
            if (s > want_score) {
                want_score = s;
                want = i;
            }
        }

        const auto got = best_match(request, Catalogue(entries));
        require(got.has_value(), "non-empty catalogue must match");
        require(got->resource == entries[want],
                "argmax disagreement at instance " + std::to_string(instance));
        require(got->score == want_score, "score disagreement at instance " +
                                              std::to_string(instance));
    }
    return "1000 instances, exact argmax agreement";
}

}  // namespace

int main() {
    std::printf("smartson acceptance suite\n");
    run(1, "cosine score reproduction (25 reference scores)", 1.0, check_cosine_scores);
    run(2, "fee arithmetic over the ten-epoch scenario", 5.0, check_fee_arithmetic);
    run(3, "provider balance evolution", 0, check_balance_evolution);
    run(4, "escrow state machine properties, 10000 random sequences", 30.0,
        check_escrow_properties);
    run(5, "protocol round-trip performative sequence", 0, check_protocol_round_trip);
    run(6, "byte-identical reports under equal seeds", 0, check_determinism);
    run(7, "best_match vs brute-force oracle, 1000 instances", 0, check_brute_force_oracle);

    if (failures == 0) std::printf("all criteria passed\n");
    else std::printf("%d criterion(s) FAILED\n", failures);
    return failures == 0 ? 0 : 1;
}
