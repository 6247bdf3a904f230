#include "electctl/counters.hpp"

#include <algorithm>
#include <map>

#include "electctl/single_peaked.hpp"

namespace electctl {

const char* to_string(AlgorithmTag tag) {
    switch (tag) {
        case AlgorithmTag::Oracle: return "oracle";
        case AlgorithmTag::Thm1Complement: return "thm1-complement";
        case AlgorithmTag::Thm2AddCombinator: return "thm2-add-combinator";
        case AlgorithmTag::PluralityAvDp: return "plurality-av-dp";
        case AlgorithmTag::KApprovalSpAcDp: return "kapproval-sp-ac-dp";
        case AlgorithmTag::KApprovalSpAvDp: return "kapproval-sp-av-dp";
        case AlgorithmTag::CondorcetSpAv: return "condorcet-sp-av";
        case AlgorithmTag::ApprovalCcdcClosed: return "approval-ccdc-closed";
        case AlgorithmTag::CondorcetCcdcClosed: return "condorcet-ccdc-closed";
        case AlgorithmTag::ApprovalDcac: return "approval-dcac";
        case AlgorithmTag::CondorcetDcac: return "condorcet-dcac";
        case AlgorithmTag::CondorcetConsistentSpMap: return "condorcet-consistent-sp-map";
    }
    return "?";
}

Count total_actions(const ControlInstance& inst) {
    return subsets_up_to(pool_size(inst), inst.budget);
}

CountResult complement_mode(const ControlInstance& inst, const InstanceCounter& opposite_counter) {
    ControlMode flipped = inst.mode == ControlMode::Constructive ? ControlMode::Destructive
                                                                 : ControlMode::Constructive;
    CountResult opposite = opposite_counter(with_mode(inst, flipped));
    return {total_actions(inst) - opposite.count, AlgorithmTag::Thm1Complement, false};
}

namespace {

CandidateId first_active(const Ballot& b, const std::vector<char>& active) {
    for (CandidateId c : b.items)
        if (active[c]) return c;
    throw IncompatibleError("empty candidate set");
}

}  // namespace

CountResult delete_via_add(const ControlInstance& inst, const InstanceCounter& add_counter) {
    if (inst.action == ControlAction::DeleteVoters) {
        const long long n = static_cast<long long>(inst.election.registered.size());
        ControlInstance add = inst;
        add.action = ControlAction::AddVoters;
        add.election.unregistered = inst.election.registered;
        add.election.registered.clear();

        Count high = add_counter(with_budget(add, n)).count;
        if (inst.budget >= n) return {high, AlgorithmTag::Thm2AddCombinator, false};
        Count low = add_counter(with_budget(add, n - inst.budget - 1)).count;
        return {high - low, AlgorithmTag::Thm2AddCombinator, false};
    }
    if (inst.action == ControlAction::DeleteCandidates) {
        ControlInstance add = inst;
        add.action = ControlAction::AddCandidates;
        add.election = restricted_to_registered(inst.election);
        CandidateId p = 0;
        for (CandidateId c : add.election.candidates)
            if (add.election.names[c] == inst.election.names[inst.designated]) p = c;
        add.designated = p;
        add.election.unregistered_candidates.clear();
        std::vector<CandidateId> regs{p};
        for (CandidateId c : add.election.candidates)
            if (c != p) add.election.unregistered_candidates.push_back(c);
        add.election.candidates = regs;

        const long long m1 = static_cast<long long>(inst.election.candidates.size()) - 1;
        Count high = add_counter(with_budget(add, m1)).count;
        if (inst.budget >= m1) return {high, AlgorithmTag::Thm2AddCombinator, false};
        Count low = add_counter(with_budget(add, m1 - inst.budget - 1)).count;
        return {high - low, AlgorithmTag::Thm2AddCombinator, false};
    }
    throw IncompatibleError("delete_via_add requires a deleting action");
}

Count count_plurality_ccav(const ControlInstance& inst) {
    if (!inst.rule.plurality_like() || inst.action != ControlAction::AddVoters ||
        inst.mode != ControlMode::Constructive)
        throw IncompatibleError("plurality-av-dp handles constructive plurality AV only");
    validate_instance(inst);

    const Election& e = inst.election;
    const std::vector<char> active = mask_of(e.candidates, e.universe_size());
    const std::vector<long long> base =
        rule_scores(e, Rule::plurality(), active, ballot_pointers(e.registered));
    const CandidateId p = inst.designated;

    // Pool voters grouped by the candidate they rank first.
    std::vector<long long> backers(e.universe_size(), 0);
    for (const Ballot& b : e.unregistered) backers[first_active(b, active)] += 1;

    std::vector<CandidateId> rivals;
    for (CandidateId c : e.candidates)
        if (c != p) rivals.push_back(c);

    long long k0 = 0;
    if (!goal_holds_status_quo(with_mode(inst, ControlMode::Constructive))) {
        for (CandidateId c : rivals) k0 = std::max(k0, base[c] - base[p] + 1);
    }

    long long rival_backers = 0;
    for (CandidateId c : rivals) rival_backers += backers[c];

    const long long k = inst.budget;
    const long long cap_j = std::min(k, backers[p]);
    Count answer = 0;
    for (long long j = k0; j <= cap_j; ++j) {
        // Sets adding exactly j backers of p and at most k-j other voters so
        // that every rival stays at or below base[p] + j - 1.
        const long long tmax = std::min(k - j, rival_backers);
        std::vector<Count> ways{Count(1)};  // ways[t]: t voters among rivals seen so far
        bool feasible = true;
        for (CandidateId c : rivals) {
            long long cap_c = std::min(backers[c], j + base[p] - base[c] - 1);
            if (cap_c < 0) {
                feasible = false;
                break;
            }
            std::vector<Count> next(static_cast<std::size_t>(tmax) + 1, Count(0));
            for (long long t = 0; t <= tmax && t < static_cast<long long>(ways.size()); ++t) {
                if (ways[static_cast<std::size_t>(t)] == 0) continue;
                for (long long s = 0; s <= cap_c && t + s <= tmax; ++s)
                    next[static_cast<std::size_t>(t + s)] +=
                        ways[static_cast<std::size_t>(t)] * binomial(backers[c], s);
            }
            ways.swap(next);
        }
        if (!feasible) continue;
        Count count_j = 0;
        for (const Count& w : ways) count_j += w;
        answer += binomial(backers[p], j) * count_j;
    }
    return answer;
}

Count count_condorcet_sp_ccav(const ControlInstance& inst) {
    if (inst.rule.kind != Rule::Kind::Condorcet || inst.action != ControlAction::AddVoters ||
        inst.mode != ControlMode::Constructive)
        throw IncompatibleError("condorcet-sp-av handles constructive Condorcet AV only");
    validate_instance(inst);
    if (!verify_profile_over_registered(inst.election))
        throw IncompatibleError("profile is not single-peaked with respect to the axis");

    const Election& e = inst.election;
    const std::vector<char> active = mask_of(e.candidates, e.universe_size());
    const long long w_total = static_cast<long long>(e.unregistered.size());
    const long long budget = std::min(inst.budget, w_total);

    if (e.candidates.size() == 1) return subsets_up_to(w_total, budget);

    SocietalAxis axis = axis_restricted_to(*e.axis, active);
    std::vector<int> side(e.universe_size(), 0);  // -1 before p, 0 at p, +1 after p
    {
        int rel = -1;
        for (CandidateId c : axis) {
            if (c == inst.designated) {
                side[c] = 0;
                rel = 1;
            } else {
                side[c] = rel;
            }
        }
    }

    long long v_a = 0, v_b = 0;
    for (const Ballot& b : e.registered) {
        int s = side[first_active(b, active)];
        if (s < 0) ++v_a;
        if (s > 0) ++v_b;
    }
    long long w_a = 0, w_b = 0, w_m = 0;
    for (const Ballot& b : e.unregistered) {
        int s = side[first_active(b, active)];
        if (s < 0)
            ++w_a;
        else if (s > 0)
            ++w_b;
        else
            ++w_m;
    }

    const long long v_n = static_cast<long long>(e.registered.size());
    Count answer = 0;
    for (long long l = 0; l <= budget; ++l) {
        for (long long la = 0; la <= l; ++la) {
            for (long long lb = 0; la + lb <= l; ++lb) {
                long long lm = l - la - lb;
                bool gamma = 2 * (v_a + la) < v_n + l && 2 * (v_b + lb) < v_n + l;
                if (!gamma) continue;
                answer += binomial(w_a, la) * binomial(w_b, lb) * binomial(w_m, lm);
            }
        }
    }
    return answer;
}

Count count_approval_or_condorcet_ccdc(const ControlInstance& inst) {
    if ((inst.rule.kind != Rule::Kind::Approval && inst.rule.kind != Rule::Kind::Condorcet) ||
        inst.action != ControlAction::DeleteCandidates || inst.mode != ControlMode::Constructive)
        throw IncompatibleError("closed form handles constructive Approval/Condorcet DC only");
    validate_instance(inst);

    const Election& e = inst.election;
    const std::vector<char> active = mask_of(e.candidates, e.universe_size());
    const auto voters = ballot_pointers(e.registered);
    const CandidateId p = inst.designated;

    long long k0 = 0;
    if (inst.rule.kind == Rule::Kind::Approval) {
        std::vector<long long> score = rule_scores(e, inst.rule, active, voters);
        for (CandidateId c : e.candidates)
            if (c != p && score[c] >= score[p]) ++k0;
    } else {
        MajorityGraph g = majority_graph(e, active, voters);
        for (CandidateId c : e.candidates)
            if (c != p && g.at(p, c) <= g.at(c, p)) ++k0;
    }

    if (k0 > inst.budget) return 0;
    const long long free_pool = static_cast<long long>(e.candidates.size()) - k0 - 1;
    Count answer = 0;
    for (long long i = 0; i <= inst.budget - k0 && i <= free_pool; ++i)
        answer += binomial(free_pool, i);
    return answer;
}

Count count_approval_or_condorcet_dcac(const ControlInstance& inst) {
    if ((inst.rule.kind != Rule::Kind::Approval && inst.rule.kind != Rule::Kind::Condorcet) ||
        inst.action != ControlAction::AddCandidates || inst.mode != ControlMode::Destructive)
        throw IncompatibleError("closed form handles destructive Approval/Condorcet AC only");
    validate_instance(inst);

    const Election& e = inst.election;
    const long long a_total = static_cast<long long>(e.unregistered_candidates.size());
    const long long budget = std::min(inst.budget, a_total);
    const CandidateId p = inst.designated;

    auto winner = unique_winner(e, inst.rule);
    if (!winner || *winner != p) return subsets_up_to(a_total, budget);

    // Scores / pairwise tallies over the full universe decide which joiners
    // dethrone p.
    std::vector<char> everyone(e.universe_size(), 1);
    const auto voters = ballot_pointers(e.registered);
    long long a0 = 0;
    if (inst.rule.kind == Rule::Kind::Approval) {
        std::vector<long long> score = rule_scores(e, inst.rule, everyone, voters);
        for (CandidateId a : e.unregistered_candidates)
            if (score[a] >= score[p]) ++a0;
    } else {
        MajorityGraph g = majority_graph(e, everyone, voters);
        for (CandidateId a : e.unregistered_candidates)
            if (g.at(p, a) <= g.at(a, p)) ++a0;
    }

    Count answer = 0;
    for (long long j = 1; j <= budget; ++j)
        for (long long i = 1; i <= std::min(a0, j); ++i)
            answer += binomial(a0, i) * binomial(a_total - a0, j - i);
    return answer;
}

namespace {

bool sp_for_action(const ControlInstance& inst) {
    const Election& e = inst.election;
    if (!e.axis || e.kind != BallotKind::Ordinal) return false;
    bool candidate_action = inst.action == ControlAction::AddCandidates ||
                            inst.action == ControlAction::DeleteCandidates;
    return candidate_action ? verify_profile(e) : verify_profile_over_registered(e);
}

bool is_immune_cell(const Rule& rule, ControlAction action, ControlMode mode) {
    if (rule.kind != Rule::Kind::Approval && rule.kind != Rule::Kind::Condorcet) return false;
    return (action == ControlAction::AddCandidates && mode == ControlMode::Constructive) ||
           (action == ControlAction::DeleteCandidates && mode == ControlMode::Destructive);
}

std::optional<CountResult> try_polynomial(const ControlInstance& inst,
                                          const DispatchOptions& opts);

InstanceCounter poly_counter(const DispatchOptions& opts) {
    return [opts](const ControlInstance& sub) {
        auto res = try_polynomial(sub, opts);
        if (!res) throw IncompatibleError("no polynomial algorithm for subproblem");
        return *res;
    };
}

std::optional<CountResult> try_polynomial(const ControlInstance& inst,
                                          const DispatchOptions& opts) {
    const Rule& rule = inst.rule;
    const ControlAction action = inst.action;
    const ControlMode mode = inst.mode;
    const bool constructive = mode == ControlMode::Constructive;

    // Single-peaked Maximin behaves exactly like Condorcet in the unique
    // winner model, as does any Condorcet-consistent rule.
    if (rule.kind == Rule::Kind::Maximin) {
        if (!sp_for_action(inst)) return std::nullopt;
        ControlInstance mapped = inst;
        mapped.rule = Rule::condorcet();
        auto inner = try_polynomial(mapped, opts);
        if (!inner) return std::nullopt;
        return CountResult{inner->count, AlgorithmTag::CondorcetConsistentSpMap,
                           inner->immune_cell};
    }

    if (rule.kind == Rule::Kind::Approval || rule.kind == Rule::Kind::Condorcet) {
        const bool is_approval = rule.kind == Rule::Kind::Approval;
        if (action == ControlAction::DeleteCandidates && constructive)
            return CountResult{count_approval_or_condorcet_ccdc(inst),
                               is_approval ? AlgorithmTag::ApprovalCcdcClosed
                                           : AlgorithmTag::CondorcetCcdcClosed,
                               false};
        if (action == ControlAction::AddCandidates && !constructive)
            return CountResult{count_approval_or_condorcet_dcac(inst),
                               is_approval ? AlgorithmTag::ApprovalDcac
                                           : AlgorithmTag::CondorcetDcac,
                               false};
        // The immune cells still have well-defined literal counts: the empty
        // action can already meet the goal. Count them by complement.
        if (action == ControlAction::AddCandidates && constructive) {
            CountResult r = complement_mode(inst, poly_counter(opts));
            r.immune_cell = true;
            return r;
        }
        if (action == ControlAction::DeleteCandidates && !constructive) {
            CountResult r = complement_mode(inst, poly_counter(opts));
            r.immune_cell = true;
            return r;
        }
    }

    // Plurality voter control is polynomial even unrestricted.
    if (rule.plurality_like()) {
        if (action == ControlAction::AddVoters) {
            if (constructive)
                return CountResult{count_plurality_ccav(inst), AlgorithmTag::PluralityAvDp, false};
            return complement_mode(inst, poly_counter(opts));
        }
        if (action == ControlAction::DeleteVoters) return delete_via_add(inst, poly_counter(opts));
    }

    // Single-peaked dynamic programs.
    if (rule.kind == Rule::Kind::Plurality || rule.kind == Rule::Kind::KApproval) {
        if (!sp_for_action(inst)) return std::nullopt;
        switch (action) {
            case ControlAction::AddCandidates:
                if (constructive)
                    return CountResult{count_kapproval_sp_ccac(inst, opts.oracle),
                                       AlgorithmTag::KApprovalSpAcDp, false};
                return complement_mode(inst, poly_counter(opts));
            case ControlAction::DeleteCandidates:
                return delete_via_add(inst, poly_counter(opts));
            case ControlAction::AddVoters:
                if (constructive)
                    return CountResult{count_kapproval_sp_ccav(inst),
                                       AlgorithmTag::KApprovalSpAvDp, false};
                return complement_mode(inst, poly_counter(opts));
            case ControlAction::DeleteVoters:
                return delete_via_add(inst, poly_counter(opts));
        }
    }

    if (rule.kind == Rule::Kind::Condorcet &&
        (action == ControlAction::AddVoters || action == ControlAction::DeleteVoters)) {
        if (!sp_for_action(inst)) return std::nullopt;
        if (action == ControlAction::AddVoters) {
            if (constructive)
                return CountResult{count_condorcet_sp_ccav(inst), AlgorithmTag::CondorcetSpAv,
                                   false};
            return complement_mode(inst, poly_counter(opts));
        }
        return delete_via_add(inst, poly_counter(opts));
    }

    return std::nullopt;
}

}  // namespace

CountResult dispatch(const ControlInstance& inst, const DispatchOptions& opts) {
    ControlInstance work = inst;
    if (opts.axis_hint) work.election.axis = *opts.axis_hint;
    validate_instance(work);

    const bool immune = is_immune_cell(work.rule, work.action, work.mode);

    if (opts.strategy == Strategy::ForceOracle) {
        return {count_by_enumeration(work, opts.oracle), AlgorithmTag::Oracle, immune};
    }

    if (auto poly = try_polynomial(work, opts)) {
        poly->immune_cell = poly->immune_cell || immune;
        return *poly;
    }

    std::string cell = work.rule.name() + " #" + problem_code(work.mode, work.action);
    if (opts.strategy == Strategy::ForceDp)
        throw IncompatibleError("no polynomial algorithm for " + cell);

    try {
        return {count_by_enumeration(work, opts.oracle), AlgorithmTag::Oracle, immune};
    } catch (const CapExceededError& ex) {
        throw CapExceededError(cell + " has no polynomial counter and " + ex.what() +
                               "; rerun with --algorithm oracle and a larger cap");
    }
}

Count dispatch_exact_size(const ControlInstance& inst, long long size, const DispatchOptions& opts,
                          std::vector<AlgorithmTag>* tags_used) {
    if (size < 0 || size > pool_size(inst)) return 0;
    auto note = [&](AlgorithmTag tag) {
        if (!tags_used) return;
        if (std::find(tags_used->begin(), tags_used->end(), tag) == tags_used->end())
            tags_used->push_back(tag);
    };
    CountResult high = dispatch(with_budget(inst, size), opts);
    note(high.algorithm);
    if (size == 0) return high.count;
    CountResult low = dispatch(with_budget(inst, size - 1), opts);
    note(low.algorithm);
    return high.count - low.count;
}

}  // namespace electctl
