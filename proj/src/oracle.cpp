#include "electctl/oracle.hpp"

#include <algorithm>

namespace electctl {

namespace {

// Evaluates "does this pool subset meet the goal" without rebuilding the
// election per subset. Scores are additive over voters and pairwise tallies
// are restriction-invariant, which gives each (action, rule) pair a cheap
// incremental path.
class Evaluator {
  public:
    explicit Evaluator(const ControlInstance& inst)
        : inst_(inst),
          e_(inst.election),
          universe_(inst.election.universe_size()),
          registered_mask_(mask_of(inst.election.candidates, universe_)) {
        voter_action_ = inst_.action == ControlAction::AddVoters ||
                        inst_.action == ControlAction::DeleteVoters;
        switch (inst_.action) {
            case ControlAction::AddVoters:
                for (const Ballot& b : e_.unregistered) pool_ballots_.push_back(&b);
                break;
            case ControlAction::DeleteVoters:
                for (const Ballot& b : e_.registered) pool_ballots_.push_back(&b);
                break;
            case ControlAction::AddCandidates:
                pool_candidates_ = e_.unregistered_candidates;
                break;
            case ControlAction::DeleteCandidates:
                for (CandidateId c : e_.candidates)
                    if (c != inst_.designated) pool_candidates_.push_back(c);
                break;
        }
        if (voter_action_) prepare_voter_action();
    }

    long long pool() const {
        return voter_action_ ? static_cast<long long>(pool_ballots_.size())
                             : static_cast<long long>(pool_candidates_.size());
    }

    bool satisfies(const std::vector<int>& subset) {
        bool winner = voter_action_ ? eval_voter_action(subset) : eval_candidate_action(subset);
        return inst_.mode == ControlMode::Constructive ? winner : !winner;
    }

  private:
    using ScoreVec = std::vector<long long>;

    void prepare_voter_action() {
        // AV starts from V and adds; DV starts from V and subtracts.
        if (inst_.rule.is_scoring()) {
            base_scores_.assign(universe_, 0);
            for (const Ballot& b : e_.registered) add_score(base_scores_, b, 1);
            pool_approved_.reserve(pool_ballots_.size());
            for (const Ballot* b : pool_ballots_) pool_approved_.push_back(approved_set(*b));
        } else {
            base_pairs_.assign(universe_ * universe_, 0);
            for (const Ballot& b : e_.registered) add_pairs(base_pairs_, b, 1);
            pool_positions_.reserve(pool_ballots_.size());
            for (const Ballot* b : pool_ballots_) pool_positions_.push_back(positions(*b));
        }
    }

    std::vector<CandidateId> approved_set(const Ballot& b) const {
        std::vector<CandidateId> out;
        if (e_.kind == BallotKind::Ordinal) {
            int k = inst_.rule.top_count();
            int given = 0;
            for (CandidateId c : b.items) {
                if (!registered_mask_[c]) continue;
                out.push_back(c);
                if (++given == k) break;
            }
        } else {
            for (CandidateId c : b.items)
                if (registered_mask_[c]) out.push_back(c);
        }
        return out;
    }

    void add_score(ScoreVec& score, const Ballot& b, long long sign) const {
        for (CandidateId c : approved_set(b)) score[c] += sign;
    }

    std::vector<int> positions(const Ballot& b) const {
        std::vector<int> pos(universe_, 0);
        for (std::size_t i = 0; i < b.items.size(); ++i) pos[b.items[i]] = static_cast<int>(i);
        return pos;
    }

    void add_pairs(std::vector<long long>& pairs, const Ballot& b, long long sign) const {
        std::vector<int> pos = positions(b);
        apply_positions(pairs, pos, sign);
    }

    void apply_positions(std::vector<long long>& pairs, const std::vector<int>& pos,
                         long long sign) const {
        for (CandidateId a : e_.candidates)
            for (CandidateId c : e_.candidates)
                if (a != c && pos[a] < pos[c]) pairs[a * universe_ + c] += sign;
    }

    bool eval_voter_action(const std::vector<int>& subset) {
        const bool adding = inst_.action == ControlAction::AddVoters;
        const long long sign = adding ? 1 : -1;
        if (inst_.rule.is_scoring()) {
            scratch_scores_ = base_scores_;
            for (int idx : subset)
                for (CandidateId c : pool_approved_[idx]) scratch_scores_[c] += sign;
            return designated_unique_max(scratch_scores_, registered_mask_, e_.candidates);
        }
        scratch_pairs_ = base_pairs_;
        for (int idx : subset) apply_positions(scratch_pairs_, pool_positions_[idx], sign);
        if (inst_.rule.kind == Rule::Kind::Condorcet)
            return designated_beats_all(scratch_pairs_, e_.candidates);
        return designated_unique_maximin(scratch_pairs_, e_.candidates);
    }

    bool eval_candidate_action(const std::vector<int>& subset) {
        scratch_mask_ = registered_mask_;
        active_.assign(e_.candidates.begin(), e_.candidates.end());
        if (inst_.action == ControlAction::AddCandidates) {
            for (int idx : subset) {
                scratch_mask_[pool_candidates_[idx]] = 1;
                active_.push_back(pool_candidates_[idx]);
            }
        } else {
            for (int idx : subset) scratch_mask_[pool_candidates_[idx]] = 0;
            active_.clear();
            for (CandidateId c : e_.candidates)
                if (scratch_mask_[c]) active_.push_back(c);
        }
        if (active_.size() == 1) return active_[0] == inst_.designated;

        const Rule& rule = inst_.rule;
        if (rule.kind == Rule::Kind::Approval) {
            ensure_approval_scores();
            return designated_unique_max(approval_scores_, scratch_mask_, active_);
        }
        if (rule.kind == Rule::Kind::Plurality || rule.kind == Rule::Kind::KApproval) {
            scratch_scores_.assign(universe_, 0);
            int k = rule.top_count();
            for (const Ballot& b : e_.registered) {
                int given = 0;
                for (CandidateId c : b.items) {
                    if (!scratch_mask_[c]) continue;
                    scratch_scores_[c] += 1;
                    if (++given == k) break;
                }
            }
            return designated_unique_max(scratch_scores_, scratch_mask_, active_);
        }
        ensure_full_pairs();
        if (rule.kind == Rule::Kind::Condorcet) {
            for (CandidateId d : active_) {
                if (d == inst_.designated) continue;
                if (full_pairs_[inst_.designated * universe_ + d] <=
                    full_pairs_[d * universe_ + inst_.designated])
                    return false;
            }
            return true;
        }
        // Maximin over the active set.
        long long best_other = -1;
        long long p_score = -1;
        for (CandidateId c : active_) {
            long long mini = -1;
            for (CandidateId d : active_) {
                if (d == c) continue;
                long long n = full_pairs_[c * universe_ + d];
                if (mini < 0 || n < mini) mini = n;
            }
            if (c == inst_.designated)
                p_score = mini;
            else
                best_other = std::max(best_other, mini);
        }
        return p_score > best_other;
    }

    void ensure_approval_scores() {
        if (!approval_scores_.empty()) return;
        approval_scores_.assign(universe_, 0);
        for (const Ballot& b : e_.registered)
            for (CandidateId c : b.items) approval_scores_[c] += 1;
    }

    void ensure_full_pairs() {
        if (!full_pairs_.empty()) return;
        full_pairs_.assign(universe_ * universe_, 0);
        for (const Ballot& b : e_.registered) {
            std::vector<int> pos = positions(b);
            for (CandidateId a = 0; a < universe_; ++a)
                for (CandidateId c = 0; c < universe_; ++c)
                    if (a != c && pos[a] < pos[c]) full_pairs_[a * universe_ + c] += 1;
        }
    }

    bool designated_unique_max(const ScoreVec& score, const std::vector<char>& active,
                               const std::vector<CandidateId>& ids) const {
        long long p = score[inst_.designated];
        for (CandidateId c : ids) {
            if (c == inst_.designated || !active[c]) continue;
            if (score[c] >= p) return false;
        }
        return true;
    }

    bool designated_beats_all(const std::vector<long long>& pairs,
                              const std::vector<CandidateId>& ids) const {
        for (CandidateId d : ids) {
            if (d == inst_.designated) continue;
            if (pairs[inst_.designated * universe_ + d] <= pairs[d * universe_ + inst_.designated])
                return false;
        }
        return true;
    }

    bool designated_unique_maximin(const std::vector<long long>& pairs,
                                   const std::vector<CandidateId>& ids) const {
        if (ids.size() == 1) return ids[0] == inst_.designated;
        long long p_score = -1;
        long long best_other = -1;
        for (CandidateId c : ids) {
            long long mini = -1;
            for (CandidateId d : ids) {
                if (d == c) continue;
                long long n = pairs[c * universe_ + d];
                if (mini < 0 || n < mini) mini = n;
            }
            if (c == inst_.designated)
                p_score = mini;
            else
                best_other = std::max(best_other, mini);
        }
        return p_score > best_other;
    }

    const ControlInstance& inst_;
    const Election& e_;
    std::size_t universe_;
    std::vector<char> registered_mask_;
    bool voter_action_ = false;

    std::vector<const Ballot*> pool_ballots_;
    std::vector<CandidateId> pool_candidates_;

    ScoreVec base_scores_;
    std::vector<std::vector<CandidateId>> pool_approved_;
    std::vector<long long> base_pairs_;
    std::vector<std::vector<int>> pool_positions_;
    ScoreVec approval_scores_;
    std::vector<long long> full_pairs_;

    ScoreVec scratch_scores_;
    std::vector<long long> scratch_pairs_;
    std::vector<char> scratch_mask_;
    std::vector<CandidateId> active_;
};

// Visits r-combinations of {0..n-1} in lexicographic order.
template <typename F>
void for_each_combination(long long n, long long r, F&& visit) {
    std::vector<int> idx(static_cast<std::size_t>(r));
    for (long long i = 0; i < r; ++i) idx[static_cast<std::size_t>(i)] = static_cast<int>(i);
    if (r > n) return;
    while (true) {
        visit(idx);
        long long i = r - 1;
        while (i >= 0 && idx[static_cast<std::size_t>(i)] == i + n - r) --i;
        if (i < 0) break;
        ++idx[static_cast<std::size_t>(i)];
        for (long long j = i + 1; j < r; ++j)
            idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
}

void check_cap(const Count& subsets, const OracleOptions& opts) {
    if (subsets > Count(static_cast<unsigned long>(opts.max_subsets)))
        throw CapExceededError("instance too large for oracle (" + subsets.get_str() +
                               " subsets exceed cap " + std::to_string(opts.max_subsets) + ")");
}

}  // namespace

Count count_by_enumeration(const ControlInstance& inst, const OracleOptions& opts) {
    validate_instance(inst);
    Evaluator ev(inst);
    const long long pool = ev.pool();
    const long long kmax = std::min(inst.budget, pool);
    check_cap(subsets_up_to(pool, kmax), opts);

    Count total = 0;
    for (long long r = 0; r <= kmax; ++r) {
        for_each_combination(pool, r, [&](const std::vector<int>& subset) {
            if (ev.satisfies(subset)) total += 1;
        });
    }
    return total;
}

Count count_exact_size(const ControlInstance& inst, long long size, const OracleOptions& opts) {
    validate_instance(inst);
    if (size < 0) return 0;
    Evaluator ev(inst);
    const long long pool = ev.pool();
    if (size > pool || size > inst.budget) return 0;
    check_cap(binomial(pool, size), opts);

    Count total = 0;
    for_each_combination(pool, size, [&](const std::vector<int>& subset) {
        if (ev.satisfies(subset)) total += 1;
    });
    return total;
}

}  // namespace electctl
