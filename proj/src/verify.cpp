#include "electctl/verify.hpp"

#include <algorithm>
#include <ostream>

#include "electctl/single_peaked.hpp"

namespace electctl::verify {

long long Rng::uniform(long long lo, long long hi) {
    if (hi <= lo) return lo;
    return lo + static_cast<long long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
}

bool Rng::chance(double p) {
    return static_cast<double>(next() % (1u << 20)) < p * (1u << 20);
}

Ballot random_ordinal_ballot(Rng& rng, std::size_t universe) {
    Ballot b;
    for (std::size_t i = 0; i < universe; ++i) b.items.push_back(static_cast<CandidateId>(i));
    rng.shuffle(b.items);
    return b;
}

Ballot random_sp_ballot(Rng& rng, const SocietalAxis& axis) {
    const int m = static_cast<int>(axis.size());
    int peak = static_cast<int>(rng.uniform(0, m - 1));
    int lo = peak, hi = peak;
    Ballot b;
    b.items.push_back(axis[static_cast<std::size_t>(peak)]);
    while (static_cast<int>(b.items.size()) < m) {
        bool can_left = lo > 0;
        bool can_right = hi < m - 1;
        bool go_left = can_left && (!can_right || rng.chance(0.5));
        if (go_left)
            b.items.push_back(axis[static_cast<std::size_t>(--lo)]);
        else
            b.items.push_back(axis[static_cast<std::size_t>(++hi)]);
    }
    return b;
}

Ballot random_approval_ballot(Rng& rng, std::size_t universe) {
    Ballot b;
    for (std::size_t i = 0; i < universe; ++i)
        if (rng.chance(0.5)) b.items.push_back(static_cast<CandidateId>(i));
    return b;
}

Election random_election(Rng& rng, const ElectionShape& shape) {
    Election e;
    e.kind = shape.kind;

    const int total_c = static_cast<int>(
        rng.uniform(shape.with_unregistered_candidates ? 2 : 1, std::max(shape.max_candidates, 1)));
    const int reg_c = shape.with_unregistered_candidates
                          ? static_cast<int>(rng.uniform(1, total_c))
                          : total_c;
    for (int i = 0; i < total_c; ++i) {
        e.names.push_back("c" + std::to_string(i));
        if (i < reg_c)
            e.candidates.push_back(static_cast<CandidateId>(i));
        else
            e.unregistered_candidates.push_back(static_cast<CandidateId>(i));
    }

    if (shape.single_peaked) {
        SocietalAxis axis;
        for (int i = 0; i < total_c; ++i) axis.push_back(static_cast<CandidateId>(i));
        rng.shuffle(axis);
        e.axis = axis;
    }

    const int total_v = static_cast<int>(rng.uniform(0, std::max(shape.max_voters, 0)));
    const int w_count =
        shape.with_unregistered_voters ? static_cast<int>(rng.uniform(0, total_v)) : 0;
    auto make_ballot = [&]() {
        if (shape.kind == BallotKind::Approval)
            return random_approval_ballot(rng, e.names.size());
        if (shape.single_peaked) return random_sp_ballot(rng, *e.axis);
        return random_ordinal_ballot(rng, e.names.size());
    };
    for (int i = 0; i < total_v - w_count; ++i) e.registered.push_back(make_ballot());
    for (int i = 0; i < w_count; ++i) e.unregistered.push_back(make_ballot());
    return e;
}

ControlInstance random_instance(Rng& rng, const Rule& rule, ControlAction action,
                                ControlMode mode, const ElectionShape& shape, long long budget) {
    ElectionShape s = shape;
    s.kind = rule.kind == Rule::Kind::Approval ? BallotKind::Approval : BallotKind::Ordinal;
    s.with_unregistered_voters =
        shape.with_unregistered_voters || action == ControlAction::AddVoters;
    s.with_unregistered_candidates =
        shape.with_unregistered_candidates || action == ControlAction::AddCandidates;

    ControlInstance inst;
    inst.election = random_election(rng, s);
    inst.rule = rule;
    inst.action = action;
    inst.mode = mode;
    inst.budget = budget;
    const auto& regs = inst.election.candidates;
    inst.designated =
        regs[static_cast<std::size_t>(rng.uniform(0, static_cast<long long>(regs.size()) - 1))];
    return inst;
}

namespace {

struct Suite {
    std::ostream& out;
    std::uint64_t seed;
    int checks = 0;
    int failures = 0;

    void record(bool ok, const std::string& what) {
        ++checks;
        if (!ok) {
            ++failures;
            out << "FAIL (seed " << seed << "): " << what << "\n";
        }
    }
};

std::string describe(const ControlInstance& inst) {
    return inst.rule.name() + " #" + problem_code(inst.mode, inst.action) + " budget " +
           std::to_string(inst.budget) + " |C|=" +
           std::to_string(inst.election.candidates.size()) + " |A|=" +
           std::to_string(inst.election.unregistered_candidates.size()) + " |V|=" +
           std::to_string(inst.election.registered.size()) + " |W|=" +
           std::to_string(inst.election.unregistered.size());
}

}  // namespace

VerifyOutcome run_verification(const VerifyConfig& config, std::ostream& out) {
    Rng rng(config.seed);
    Suite suite{out, config.seed};
    ElectionShape shape;
    shape.max_candidates = config.max_candidates;
    shape.max_voters = config.max_voters;
    const DispatchOptions dispatch_opts;

    auto per_budget = [&](ControlInstance inst, auto&& counter, const std::string& label) {
        const long long pool = pool_size(inst);
        for (long long b = 0; b <= pool; ++b) {
            inst.budget = b;
            Count expected = count_by_enumeration(inst);
            Count actual = counter(inst);
            suite.record(actual == expected,
                         label + ": " + describe(inst) + " got " + actual.get_str() +
                             " expected " + expected.get_str());
        }
    };

    out << "verify: seed " << config.seed << ", " << config.trials << " trials per counter\n";

    for (int t = 0; t < config.trials; ++t) {
        // Plurality #CCAV dynamic program, unrestricted profiles.
        {
            ElectionShape s = shape;
            auto inst = random_instance(rng, Rule::plurality(), ControlAction::AddVoters,
                                        ControlMode::Constructive, s, 0);
            per_budget(inst, [](const ControlInstance& i) { return count_plurality_ccav(i); },
                       "plurality-av-dp");
        }

        // Single-peaked k-Approval candidate and voter control, k in {1,2}.
        for (int k = 1; k <= 2; ++k) {
            ElectionShape s = shape;
            s.single_peaked = true;
            auto ac = random_instance(rng, Rule::k_approval(k), ControlAction::AddCandidates,
                                      ControlMode::Constructive, s, 0);
            per_budget(ac, [](const ControlInstance& i) { return count_kapproval_sp_ccac(i); },
                       "kapproval-sp-ac-dp");
            auto av = random_instance(rng, Rule::k_approval(k), ControlAction::AddVoters,
                                      ControlMode::Constructive, s, 0);
            per_budget(av, [](const ControlInstance& i) { return count_kapproval_sp_ccav(i); },
                       "kapproval-sp-av-dp");
        }

        // Single-peaked Condorcet voter control and the Maximin mapping.
        {
            ElectionShape s = shape;
            s.single_peaked = true;
            auto av = random_instance(rng, Rule::condorcet(), ControlAction::AddVoters,
                                      ControlMode::Constructive, s, 0);
            per_budget(av, [](const ControlInstance& i) { return count_condorcet_sp_ccav(i); },
                       "condorcet-sp-av");
            auto mm = random_instance(rng, Rule::maximin(), ControlAction::AddVoters,
                                      ControlMode::Constructive, s, 0);
            per_budget(mm,
                       [&](const ControlInstance& i) { return dispatch(i, dispatch_opts).count; },
                       "condorcet-consistent-sp-map");
        }

        // Closed forms.
        for (Rule rule : {Rule::approval(), Rule::condorcet()}) {
            auto ccdc = random_instance(rng, rule, ControlAction::DeleteCandidates,
                                        ControlMode::Constructive, shape, 0);
            per_budget(ccdc,
                       [](const ControlInstance& i) { return count_approval_or_condorcet_ccdc(i); },
                       rule.name() + "-ccdc-closed");
            auto dcac = random_instance(rng, rule, ControlAction::AddCandidates,
                                        ControlMode::Destructive, shape, 0);
            per_budget(dcac,
                       [](const ControlInstance& i) { return count_approval_or_condorcet_dcac(i); },
                       rule.name() + "-dcac-closed");
        }

        // Deleting-variant combinator over polynomial adding-side counters.
        {
            auto dv = random_instance(rng, Rule::plurality(), ControlAction::DeleteVoters,
                                      ControlMode::Constructive, shape, 0);
            per_budget(dv,
                       [&](const ControlInstance& i) { return dispatch(i, dispatch_opts).count; },
                       "thm2 plurality-ccdv");
            ElectionShape s = shape;
            s.single_peaked = true;
            auto dc = random_instance(rng, Rule::k_approval(2), ControlAction::DeleteCandidates,
                                      ControlMode::Constructive, s, 0);
            per_budget(dc,
                       [&](const ControlInstance& i) { return dispatch(i, dispatch_opts).count; },
                       "thm2 kapproval-sp-ccdc");
        }

        // Mode complement identity across all four actions, random cells.
        for (ControlAction action :
             {ControlAction::AddVoters, ControlAction::DeleteVoters, ControlAction::AddCandidates,
              ControlAction::DeleteCandidates}) {
            Rule rule = rng.chance(0.5) ? Rule::plurality() : Rule::condorcet();
            ElectionShape s = shape;
            auto inst = random_instance(rng, rule, action, ControlMode::Constructive, s,
                                        rng.uniform(0, shape.max_candidates));
            Count constructive = count_by_enumeration(inst);
            Count destructive = count_by_enumeration(with_mode(inst, ControlMode::Destructive));
            suite.record(constructive + destructive == total_actions(inst),
                         "thm1 identity: " + describe(inst));
        }

        // Exact-size decomposition.
        {
            auto inst = random_instance(rng, Rule::k_approval(2), ControlAction::AddVoters,
                                        ControlMode::Constructive, shape, 0);
            const long long pool = pool_size(inst);
            inst.budget = pool;
            Count sum = 0;
            for (long long i = 0; i <= pool; ++i) sum += count_exact_size(inst, i);
            suite.record(sum == count_by_enumeration(inst),
                         "exact-size decomposition: " + describe(inst));
        }
    }

    out << "verify: " << suite.checks << " checks, " << suite.failures << " failures\n";
    return {suite.checks, suite.failures};
}

}  // namespace electctl::verify
