#pragma once

#include <optional>
#include <string>
#include <vector>

#include "electctl/types.hpp"

namespace electctl {

enum class BallotKind { Ordinal, Approval };

// Ordinal ballots list the full candidate universe, most preferred first.
// Approval ballots list the approved candidates, sorted by id.
struct Ballot {
    std::vector<CandidateId> items;

    bool operator==(const Ballot&) const = default;
};

struct Rule {
    enum class Kind { Plurality, KApproval, Approval, Condorcet, Maximin };

    Kind kind = Kind::Plurality;
    int approval_k = 1;  // only meaningful for KApproval

    static Rule plurality() { return {Kind::Plurality, 1}; }
    static Rule k_approval(int k) { return {Kind::KApproval, k}; }
    static Rule approval() { return {Kind::Approval, 1}; }
    static Rule condorcet() { return {Kind::Condorcet, 1}; }
    static Rule maximin() { return {Kind::Maximin, 1}; }

    bool needs_ordinal() const { return kind != Kind::Approval; }
    bool is_scoring() const {
        return kind == Kind::Plurality || kind == Kind::KApproval || kind == Kind::Approval;
    }
    // Plurality is a nickname for 1-Approval.
    int top_count() const { return kind == Kind::KApproval ? approval_k : 1; }
    bool plurality_like() const {
        return kind == Kind::Plurality || (kind == Kind::KApproval && approval_k == 1);
    }
    std::string name() const;

    bool operator==(const Rule&) const = default;
};

using SocietalAxis = std::vector<CandidateId>;

// The candidate universe is names[0..U-1]; `candidates` (C) and
// `unregistered_candidates` (A) partition it. Ordinal ballots rank the whole
// universe; an axis, when present, orders the whole universe.
struct Election {
    std::vector<std::string> names;
    std::vector<CandidateId> candidates;
    std::vector<CandidateId> unregistered_candidates;
    BallotKind kind = BallotKind::Ordinal;
    std::vector<Ballot> registered;    // V
    std::vector<Ballot> unregistered;  // W
    std::optional<SocietalAxis> axis;

    std::size_t universe_size() const { return names.size(); }
    const std::string& name_of(CandidateId c) const { return names.at(c); }
    std::optional<CandidateId> find(const std::string& name) const;

    bool operator==(const Election&) const = default;
};

// Throws IncompatibleError when a structural invariant is violated.
void validate_election(const Election& e);

std::vector<char> mask_of(const std::vector<CandidateId>& ids, std::size_t universe);

Ballot restrict_ballot(const Ballot& ballot, BallotKind kind, const std::vector<char>& active);

// Weighted majority graph N(c,c') = number of active voters preferring c to c'.
class MajorityGraph {
  public:
    explicit MajorityGraph(std::size_t dim) : dim_(dim), n_(dim * dim, 0) {}
    long long at(CandidateId a, CandidateId b) const { return n_[a * dim_ + b]; }
    long long& at(CandidateId a, CandidateId b) { return n_[a * dim_ + b]; }
    std::size_t dim() const { return dim_; }

  private:
    std::size_t dim_;
    std::vector<long long> n_;
};

MajorityGraph majority_graph(const Election& e, const std::vector<char>& active,
                             const std::vector<const Ballot*>& voters);

// Scores for Plurality / k-Approval / Approval / Maximin over the active set.
// Condorcet is not score based and is rejected here.
std::vector<long long> rule_scores(const Election& e, const Rule& rule,
                                   const std::vector<char>& active,
                                   const std::vector<const Ballot*>& voters);

std::optional<CandidateId> unique_winner(const Election& e, const Rule& rule,
                                         const std::vector<char>& active,
                                         const std::vector<const Ballot*>& voters);

// Status quo: registered candidates, registered voters.
std::optional<CandidateId> unique_winner(const Election& e, const Rule& rule);

std::vector<const Ballot*> ballot_pointers(const std::vector<Ballot>& ballots);

// Copy without the unregistered candidate pool; ballots, axis and ids are
// remapped onto the registered candidates.
Election restricted_to_registered(const Election& e);

}  // namespace electctl
