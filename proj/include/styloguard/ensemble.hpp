#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace styloguard {

struct Vote {
    std::string voter;  // "nb", "style_knn", "lstm"
    std::string label;
};

struct EnsemblePrediction {
    std::array<Vote, 3> votes;
    std::string final_label;
    bool tie_break_applied = false;
};

// Simple majority over exactly three voters. A three-way disagreement
// defers to the naive bayes vote.
inline EnsemblePrediction majority_vote(const std::array<Vote, 3>& votes) {
    EnsemblePrediction out;
    out.votes = votes;
    for (size_t i = 0; i < 3; ++i) {
        size_t agree = 0;
        for (size_t j = 0; j < 3; ++j) agree += votes[j].label == votes[i].label;
        if (agree >= 2) {
            out.final_label = votes[i].label;
            return out;
        }
    }
    out.tie_break_applied = true;
    for (const Vote& v : votes)
        if (v.voter == "nb") { out.final_label = v.label; return out; }
    throw std::runtime_error("majority_vote: three-way tie without a naive bayes voter");
}

}  // namespace styloguard
