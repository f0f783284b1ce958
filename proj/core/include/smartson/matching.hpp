#pragma once

#include <optional>
#include <string>
#include <vector>

#include "smartson/resource.hpp"

namespace smartson {

/// Cosine similarity of two resource vectors, clamped into [0, 1] (the
/// components are non-negative, so values above 1 are rounding artifacts).
/// Throws ZeroVectorError if either vector is all zero.
double cosine_similarity(const ResourceSpec& a, const ResourceSpec& b);

struct Match {
    ResourceSpec resource;
    double score = 0;
};

/// Best catalogue entry for the request under strict-greater comparison, so
/// ties keep the earliest entry in catalogue order. Empty catalogue -> nullopt.
std::optional<Match> best_match(const ResourceSpec& request, const Catalogue& catalogue);

struct ProposalEntry {
    std::string provider;  // agent name
    double score = 0;
    ResourceSpec resource;
};

struct SelectedProposal {
    std::string provider;
    double score = 0;
    ResourceSpec resource;
};

/// Maximizer over collected proposals with the same strict-greater rule:
/// score ties keep the first proposal in arrival order. Empty list -> nullopt.
std::optional<SelectedProposal> select_best_proposal(const std::vector<ProposalEntry>& proposals);

}  // namespace smartson
