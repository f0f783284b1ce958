#include "smartson/matching.hpp"

#include <algorithm>
#include <cmath>

#include "smartson/errors.hpp"

namespace smartson {

double cosine_similarity(const ResourceSpec& a, const ResourceSpec& b) {
    const auto va = a.vector();
    const auto vb = b.vector();

    double dot = 0, norm_a = 0, norm_b = 0;
    for (std::size_t i = 0; i < va.size(); ++i) {
        dot += va[i] * vb[i];
        norm_a += va[i] * va[i];
        norm_b += vb[i] * vb[i];
    }
    if (norm_a == 0 || norm_b == 0) throw ZeroVectorError();

    const double score = dot / (std::sqrt(norm_a) * std::sqrt(norm_b));
    return std::clamp(score, 0.0, 1.0);
}

std::optional<Match> best_match(const ResourceSpec& request, const Catalogue& catalogue) {
    std::optional<Match> best;
    for (const auto& entry : catalogue.entries()) {
        const double score = cosine_similarity(request, entry);
        if (!best || score > best->score) best = Match{entry, score};
    }
    return best;
}

std::optional<SelectedProposal> select_best_proposal(const std::vector<ProposalEntry>& proposals) {
    std::optional<SelectedProposal> best;
    for (const auto& proposal : proposals) {
        if (!best || proposal.score > best->score)
            best = SelectedProposal{proposal.provider, proposal.score, proposal.resource};
    }
    return best;
}

}  // namespace smartson
