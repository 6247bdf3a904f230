#include "electctl/election.hpp"

#include <algorithm>
#include <set>

namespace electctl {

std::string Rule::name() const {
    switch (kind) {
        case Kind::Plurality: return "plurality";
        case Kind::KApproval: return std::to_string(approval_k) + "-approval";
        case Kind::Approval: return "approval";
        case Kind::Condorcet: return "condorcet";
        case Kind::Maximin: return "maximin";
    }
    return "?";
}

std::optional<CandidateId> Election::find(const std::string& name) const {
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return static_cast<CandidateId>(i);
    return std::nullopt;
}

std::vector<char> mask_of(const std::vector<CandidateId>& ids, std::size_t universe) {
    std::vector<char> mask(universe, 0);
    for (CandidateId c : ids) mask.at(c) = 1;
    return mask;
}

std::vector<const Ballot*> ballot_pointers(const std::vector<Ballot>& ballots) {
    std::vector<const Ballot*> out;
    out.reserve(ballots.size());
    for (const Ballot& b : ballots) out.push_back(&b);
    return out;
}

namespace {

void validate_ballot(const Election& e, const Ballot& b, const char* which) {
    const std::size_t u = e.universe_size();
    if (e.kind == BallotKind::Ordinal) {
        if (b.items.size() != u)
            throw IncompatibleError(std::string(which) + ": ordinal ballot must rank the full universe");
        std::vector<char> seen(u, 0);
        for (CandidateId c : b.items) {
            if (c >= u || seen[c])
                throw IncompatibleError(std::string(which) + ": ballot is not a permutation");
            seen[c] = 1;
        }
    } else {
        std::vector<char> seen(u, 0);
        for (CandidateId c : b.items) {
            if (c >= u || seen[c])
                throw IncompatibleError(std::string(which) + ": approval ballot has an invalid entry");
            seen[c] = 1;
        }
        if (!std::is_sorted(b.items.begin(), b.items.end()))
            throw IncompatibleError(std::string(which) + ": approval ballot not sorted");
    }
}

}  // namespace

void validate_election(const Election& e) {
    const std::size_t u = e.universe_size();
    std::set<std::string> distinct(e.names.begin(), e.names.end());
    if (distinct.size() != u) throw IncompatibleError("duplicate candidate name");
    for (const std::string& n : e.names)
        if (n.empty()) throw IncompatibleError("empty candidate name");

    std::vector<char> covered(u, 0);
    for (CandidateId c : e.candidates) {
        if (c >= u || covered[c]) throw IncompatibleError("registered candidate list invalid");
        covered[c] = 1;
    }
    for (CandidateId c : e.unregistered_candidates) {
        if (c >= u || covered[c]) throw IncompatibleError("unregistered candidate list invalid");
        covered[c] = 1;
    }
    if (std::count(covered.begin(), covered.end(), 1) != static_cast<long>(u))
        throw IncompatibleError("candidate lists do not cover the universe");

    for (const Ballot& b : e.registered) validate_ballot(e, b, "registered");
    for (const Ballot& b : e.unregistered) validate_ballot(e, b, "unregistered");

    if (e.axis) {
        if (e.axis->size() != u) throw IncompatibleError("axis does not cover the universe");
        std::vector<char> seen(u, 0);
        for (CandidateId c : *e.axis) {
            if (c >= u || seen[c]) throw IncompatibleError("axis is not a permutation");
            seen[c] = 1;
        }
    }
}

Ballot restrict_ballot(const Ballot& ballot, BallotKind kind, const std::vector<char>& active) {
    if (std::find(active.begin(), active.end(), 1) == active.end())
        throw IncompatibleError("empty candidate set");
    (void)kind;  // ordinal keeps relative order, approval intersects; both are a filter
    Ballot out;
    for (CandidateId c : ballot.items)
        if (active[c]) out.items.push_back(c);
    return out;
}

MajorityGraph majority_graph(const Election& e, const std::vector<char>& active,
                             const std::vector<const Ballot*>& voters) {
    if (e.kind != BallotKind::Ordinal) throw IncompatibleError("ordinal profile required");
    const std::size_t u = e.universe_size();
    MajorityGraph g(u);
    std::vector<int> pos(u, 0);
    for (const Ballot* b : voters) {
        for (std::size_t i = 0; i < b->items.size(); ++i) pos[b->items[i]] = static_cast<int>(i);
        for (CandidateId a = 0; a < u; ++a) {
            if (!active[a]) continue;
            for (CandidateId c = 0; c < u; ++c) {
                if (!active[c] || a == c) continue;
                if (pos[a] < pos[c]) g.at(a, c) += 1;
            }
        }
    }
    return g;
}

namespace {

std::vector<long long> top_k_scores(const Election& e, int k, const std::vector<char>& active,
                                    const std::vector<const Ballot*>& voters) {
    std::vector<long long> score(e.universe_size(), 0);
    for (const Ballot* b : voters) {
        int given = 0;
        for (CandidateId c : b->items) {
            if (!active[c]) continue;
            score[c] += 1;
            if (++given == k) break;
        }
    }
    return score;
}

}  // namespace

std::vector<long long> rule_scores(const Election& e, const Rule& rule,
                                   const std::vector<char>& active,
                                   const std::vector<const Ballot*>& voters) {
    const std::size_t u = e.universe_size();
    switch (rule.kind) {
        case Rule::Kind::Plurality:
        case Rule::Kind::KApproval: {
            if (e.kind != BallotKind::Ordinal) throw IncompatibleError("ordinal profile required");
            return top_k_scores(e, rule.top_count(), active, voters);
        }
        case Rule::Kind::Approval: {
            if (e.kind != BallotKind::Approval)
                throw IncompatibleError("approval profile required");
            std::vector<long long> score(u, 0);
            for (const Ballot* b : voters)
                for (CandidateId c : b->items)
                    if (active[c]) score[c] += 1;
            return score;
        }
        case Rule::Kind::Maximin: {
            MajorityGraph g = majority_graph(e, active, voters);
            std::vector<long long> score(u, 0);
            for (CandidateId c = 0; c < u; ++c) {
                if (!active[c]) continue;
                long long best = -1;
                for (CandidateId d = 0; d < u; ++d) {
                    if (!active[d] || d == c) continue;
                    long long n = g.at(c, d);
                    if (best < 0 || n < best) best = n;
                }
                score[c] = best < 0 ? 0 : best;  // sole candidate: no rivals
            }
            return score;
        }
        case Rule::Kind::Condorcet:
            throw IncompatibleError("not a scoring rule");
    }
    throw IncompatibleError("unknown rule");
}

std::optional<CandidateId> unique_winner(const Election& e, const Rule& rule,
                                         const std::vector<char>& active,
                                         const std::vector<const Ballot*>& voters) {
    const std::size_t u = e.universe_size();
    std::vector<CandidateId> act;
    for (CandidateId c = 0; c < u; ++c)
        if (active[c]) act.push_back(c);
    if (act.empty()) throw IncompatibleError("empty candidate set");
    if (act.size() == 1) return act[0];

    if (rule.is_scoring() || rule.kind == Rule::Kind::Maximin) {
        std::vector<long long> score = rule_scores(e, rule, active, voters);
        CandidateId best = act[0];
        bool tie = false;
        for (std::size_t i = 1; i < act.size(); ++i) {
            if (score[act[i]] > score[best]) {
                best = act[i];
                tie = false;
            } else if (score[act[i]] == score[best]) {
                tie = true;
            }
        }
        if (tie) return std::nullopt;
        return best;
    }

    // Condorcet: a candidate beating every rival by strict majority.
    MajorityGraph g = majority_graph(e, active, voters);
    for (CandidateId c : act) {
        bool beats_all = true;
        for (CandidateId d : act) {
            if (d == c) continue;
            if (g.at(c, d) <= g.at(d, c)) {
                beats_all = false;
                break;
            }
        }
        if (beats_all) return c;
    }
    return std::nullopt;
}

std::optional<CandidateId> unique_winner(const Election& e, const Rule& rule) {
    return unique_winner(e, rule, mask_of(e.candidates, e.universe_size()),
                         ballot_pointers(e.registered));
}

Election restricted_to_registered(const Election& e) {
    Election out;
    std::vector<CandidateId> remap(e.universe_size(), 0);
    std::vector<char> keep = mask_of(e.candidates, e.universe_size());
    for (CandidateId c : e.candidates) {
        remap[c] = static_cast<CandidateId>(out.names.size());
        out.candidates.push_back(remap[c]);
        out.names.push_back(e.names[c]);
    }
    out.kind = e.kind;
    auto convert = [&](const Ballot& b) {
        Ballot r;
        for (CandidateId c : b.items)
            if (keep[c]) r.items.push_back(remap[c]);
        if (e.kind == BallotKind::Approval) std::sort(r.items.begin(), r.items.end());
        return r;
    };
    for (const Ballot& b : e.registered) out.registered.push_back(convert(b));
    for (const Ballot& b : e.unregistered) out.unregistered.push_back(convert(b));
    if (e.axis) {
        SocietalAxis axis;
        for (CandidateId c : *e.axis)
            if (keep[c]) axis.push_back(remap[c]);
        out.axis = axis;
    }
    return out;
}

}  // namespace electctl
