#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_support.hpp"

using namespace electctl;
using test_support::make_instance;
using test_support::two_candidate_election;

TEST_CASE("total_actions clamps the budget at the pool") {
    auto inst = make_instance(two_candidate_election(), Rule::plurality(),
                              ControlAction::AddVoters, ControlMode::Constructive, "p", 2);
    CHECK(total_actions(inst) == 4);
    inst.budget = 5;
    CHECK(total_actions(inst) == 4);
    inst.election.unregistered.clear();
    CHECK(total_actions(inst) == 1);
}

TEST_CASE("complement_mode flips constructive and destructive counts") {
    auto inst = make_instance(two_candidate_election(), Rule::plurality(),
                              ControlAction::AddVoters, ControlMode::Destructive, "p", 2);
    auto oracle_counter = [](const ControlInstance& i) {
        return CountResult{count_by_enumeration(i), AlgorithmTag::Oracle, false};
    };
    CountResult dcav = complement_mode(inst, oracle_counter);
    CHECK(dcav.count == 3);
    CHECK(dcav.algorithm == AlgorithmTag::Thm1Complement);
    CHECK(dcav.count == count_by_enumeration(inst));
}

TEST_CASE("delete_via_add matches direct enumeration on the worked example") {
    // C = {p, a}, V = [a>p, p>a, p>a], k = 1.
    Election e = parse_election(
        "candidates = p, a\n"
        "ballot_type = ordinal\n"
        "[registered]\n"
        "1: a > p\n"
        "2: p > a\n");
    auto inst = make_instance(e, Rule::plurality(), ControlAction::DeleteVoters,
                              ControlMode::Constructive, "p", 1);
    auto oracle_counter = [](const ControlInstance& i) {
        return CountResult{count_by_enumeration(i), AlgorithmTag::Oracle, false};
    };
    CountResult viaAdd = delete_via_add(inst, oracle_counter);
    CHECK(viaAdd.count == 2);
    CHECK(viaAdd.count == count_by_enumeration(inst));

    inst.budget = 10;  // k >= |V|
    CHECK(delete_via_add(inst, oracle_counter).count == count_by_enumeration(inst));
}

TEST_CASE("plurality ccav dp on the worked example and trivial cases") {
    auto inst = make_instance(two_candidate_election(), Rule::plurality(),
                              ControlAction::AddVoters, ControlMode::Constructive, "p", 2);
    CHECK(count_plurality_ccav(inst) == 1);

    Election no_pool = two_candidate_election();
    no_pool.unregistered.clear();
    auto lost = make_instance(no_pool, Rule::plurality(), ControlAction::AddVoters,
                              ControlMode::Constructive, "p", 3);
    CHECK(count_plurality_ccav(lost) == 0);
    auto won = make_instance(no_pool, Rule::plurality(), ControlAction::AddVoters,
                             ControlMode::Constructive, "c1", 3);
    CHECK(count_plurality_ccav(won) == 1);
}

TEST_CASE("condorcet sp ccav on the worked example") {
    Election e = parse_election(
        "candidates = a, p, b\n"
        "axis = a < p < b\n"
        "ballot_type = ordinal\n"
        "[registered]\n"
        "1: a > p > b\n"
        "[unregistered_voters]\n"
        "2: p > a > b\n");
    auto inst = make_instance(e, Rule::condorcet(), ControlAction::AddVoters,
                              ControlMode::Constructive, "p", 2);
    CHECK(count_condorcet_sp_ccav(inst) == 1);

    Election won = parse_election(
        "candidates = a, p, b\n"
        "axis = a < p < b\n"
        "ballot_type = ordinal\n"
        "[registered]\n"
        "1: p > a > b\n");
    auto k0 = make_instance(won, Rule::condorcet(), ControlAction::AddVoters,
                            ControlMode::Constructive, "p", 0);
    CHECK(count_condorcet_sp_ccav(k0) == 1);

    // All pool voters peak on the far side of a currently winning rival.
    Election hopeless = parse_election(
        "candidates = a, p\n"
        "axis = a < p\n"
        "ballot_type = ordinal\n"
        "[registered]\n"
        "3: a > p\n"
        "[unregistered_voters]\n"
        "2: a > p\n");
    auto inst2 = make_instance(hopeless, Rule::condorcet(), ControlAction::AddVoters,
                               ControlMode::Constructive, "p", 2);
    CHECK(count_condorcet_sp_ccav(inst2) == 0);
}

TEST_CASE("kapproval sp ccav on the worked example") {
    Election e = parse_election(
        "candidates = a, p, b, c\n"
        "axis = a < p < b < c\n"
        "ballot_type = ordinal\n"
        "[registered]\n"
        "1: a > p > b > c\n"
        "[unregistered_voters]\n"
        "1: b > p > a > c\n");
    auto inst = make_instance(e, Rule::k_approval(2), ControlAction::AddVoters,
                              ControlMode::Constructive, "p", 1);
    CHECK(count_kapproval_sp_ccav(inst) == 1);
    CHECK(count_by_enumeration(inst) == 1);

    Election won = e;
    won.unregistered.clear();
    auto trivial = make_instance(won, Rule::k_approval(2), ControlAction::AddVoters,
                                 ControlMode::Constructive, "p", 1);
    CHECK(count_kapproval_sp_ccav(trivial) == count_by_enumeration(trivial));
}

TEST_CASE("approval/condorcet ccdc closed form") {
    // Approval scores p=2, a=3, b=1.
    Election e = parse_election(
        "candidates = p, a, b\n"
        "ballot_type = approval\n"
        "[registered]\n"
        "1: {p, a}\n"
        "1: {p, a, b}\n"
        "1: {a}\n");
    auto inst = make_instance(e, Rule::approval(), ControlAction::DeleteCandidates,
                              ControlMode::Constructive, "p", 2);
    CHECK(count_approval_or_condorcet_ccdc(inst) == 2);
    CHECK(count_by_enumeration(inst) == 2);

    inst.budget = 0;  // k0 = 1 > 0
    CHECK(count_approval_or_condorcet_ccdc(inst) == 0);

    Election already = parse_election(
        "candidates = p, a\n"
        "ballot_type = approval\n"
        "[registered]\n"
        "1: {p}\n");
    auto k0 = make_instance(already, Rule::approval(), ControlAction::DeleteCandidates,
                            ControlMode::Constructive, "p", 0);
    CHECK(count_approval_or_condorcet_ccdc(k0) == 1);
}

TEST_CASE("approval/condorcet dcac closed form") {
    // C = {p, a}, A = {x, y}; approval scores p=2, a=1, x=2, y=0.
    Election e = parse_election(
        "candidates = p, a\n"
        "ballot_type = approval\n"
        "[unregistered_candidates]\n"
        "x, y\n"
        "[registered]\n"
        "1: {p, a, x}\n"
        "1: {p, x}\n");
    auto inst = make_instance(e, Rule::approval(), ControlAction::AddCandidates,
                              ControlMode::Destructive, "p", 2);
    CHECK(count_approval_or_condorcet_dcac(inst) == 2);
    CHECK(count_by_enumeration(inst) == 2);

    // p already loses: every subset qualifies.
    Election losing = parse_election(
        "candidates = p, a\n"
        "ballot_type = approval\n"
        "[unregistered_candidates]\n"
        "x, y, z\n"
        "[registered]\n"
        "1: {a}\n");
    auto all = make_instance(losing, Rule::approval(), ControlAction::AddCandidates,
                             ControlMode::Destructive, "p", 1);
    CHECK(count_approval_or_condorcet_dcac(all) == 4);

    // No rival in the pool can catch p.
    Election safe = parse_election(
        "candidates = p\n"
        "ballot_type = approval\n"
        "[unregistered_candidates]\n"
        "x\n"
        "[registered]\n"
        "2: {p}\n");
    auto none = make_instance(safe, Rule::approval(), ControlAction::AddCandidates,
                              ControlMode::Destructive, "p", 1);
    CHECK(count_approval_or_condorcet_dcac(none) == 0);
}

TEST_CASE("dispatch picks the expected algorithms") {
    auto plu = make_instance(two_candidate_election(), Rule::plurality(),
                             ControlAction::AddVoters, ControlMode::Constructive, "p", 2);
    CountResult r1 = dispatch(plu);
    CHECK(r1.algorithm == AlgorithmTag::PluralityAvDp);
    CHECK(r1.count == 1);

    // Unrestricted 2-approval voter deletion is a hard cell.
    Election e2 = parse_election(
        "candidates = p, a, b\n"
        "ballot_type = ordinal\n"
        "[registered]\n"
        "2: p > a > b\n"
        "1: a > b > p\n");
    auto hard = make_instance(e2, Rule::k_approval(2), ControlAction::DeleteVoters,
                              ControlMode::Constructive, "p", 1);
    CHECK(dispatch(hard).algorithm == AlgorithmTag::Oracle);

    // Single-peaked Maximin voter control routes through the Condorcet map.
    Election sp = parse_election(
        "candidates = a, p, b\n"
        "axis = a < p < b\n"
        "ballot_type = ordinal\n"
        "[registered]\n"
        "1: a > p > b\n"
        "[unregistered_voters]\n"
        "2: p > a > b\n");
    auto mm = make_instance(sp, Rule::maximin(), ControlAction::AddVoters,
                            ControlMode::Constructive, "p", 2);
    CountResult r3 = dispatch(mm);
    CHECK(r3.algorithm == AlgorithmTag::CondorcetConsistentSpMap);
    CHECK(r3.count == count_by_enumeration(mm));

    // Force-dp on a hard cell is an error; force-oracle always enumerates.
    DispatchOptions force_dp;
    force_dp.strategy = Strategy::ForceDp;
    CHECK_THROWS_AS(dispatch(hard, force_dp), IncompatibleError);
    DispatchOptions force_oracle;
    force_oracle.strategy = Strategy::ForceOracle;
    CHECK(dispatch(plu, force_oracle).algorithm == AlgorithmTag::Oracle);
}

TEST_CASE("immune cells report literal counts with the divergence flag") {
    Election e = parse_election(
        "candidates = p, a\n"
        "ballot_type = approval\n"
        "[unregistered_candidates]\n"
        "x, y\n"
        "[registered]\n"
        "1: {p, a, x}\n"
        "1: {p, x}\n");
    auto ccac = make_instance(e, Rule::approval(), ControlAction::AddCandidates,
                              ControlMode::Constructive, "p", 2);
    CountResult r = dispatch(ccac);
    CHECK(r.immune_cell);
    CHECK(r.count == count_by_enumeration(ccac));
    CHECK(r.count == total_actions(ccac) - count_by_enumeration(with_mode(ccac, ControlMode::Destructive)));
}

// Randomized oracle equivalence; the full-depth version lives in the
// acceptance suite.
TEST_CASE("sampled oracle equivalence across every routed cell") {
    verify::Rng rng(777);
    verify::ElectionShape shape;
    shape.max_candidates = 5;
    shape.max_voters = 6;

    for (int t = 0; t < 25; ++t) {
        for (Rule rule : {Rule::plurality(), Rule::k_approval(2), Rule::approval(),
                          Rule::condorcet(), Rule::maximin()}) {
            for (ControlAction action :
                 {ControlAction::AddVoters, ControlAction::DeleteVoters,
                  ControlAction::AddCandidates, ControlAction::DeleteCandidates}) {
                for (ControlMode mode : {ControlMode::Constructive, ControlMode::Destructive}) {
                    verify::ElectionShape s = shape;
                    s.single_peaked = rule.needs_ordinal() && rng.chance(0.5);
                    auto inst = verify::random_instance(rng, rule, action, mode, s,
                                                        rng.uniform(0, 5));
                    CAPTURE(rule.name());
                    CAPTURE(problem_code(mode, action));
                    CAPTURE(inst.budget);
                    CHECK(dispatch(inst).count == count_by_enumeration(inst));
                }
            }
        }
    }
}

TEST_CASE("kapproval sp ccac dp beyond the enumeration threshold") {
    // k = 2 with a universe larger than 4k exercises the windowed dynamic
    // program rather than the fallback.
    verify::Rng rng(909090);
    int dp_runs = 0;
    while (dp_runs < 30) {
        verify::ElectionShape shape;
        shape.max_candidates = 11;
        shape.max_voters = 5;
        shape.single_peaked = true;
        auto inst = verify::random_instance(rng, Rule::k_approval(2),
                                            ControlAction::AddCandidates,
                                            ControlMode::Constructive, shape, 0);
        if (inst.election.universe_size() <= 8) continue;
        ++dp_runs;
        for (long long b = 0; b <= pool_size(inst); ++b) {
            inst.budget = b;
            CAPTURE(dp_runs);
            CAPTURE(b);
            CHECK(count_kapproval_sp_ccac(inst) == count_by_enumeration(inst));
        }
    }
}

TEST_CASE("tie-break permutations never change the sp voter-control count") {
    verify::Rng rng(13);
    for (int t = 0; t < 30; ++t) {
        verify::ElectionShape shape;
        shape.max_candidates = 6;
        shape.max_voters = 7;
        shape.single_peaked = true;
        auto inst = verify::random_instance(rng, Rule::k_approval(2), ControlAction::AddVoters,
                                            ControlMode::Constructive, shape,
                                            rng.uniform(0, 4));
        Count baseline = count_kapproval_sp_ccav(inst);
        std::size_t n = inst.election.registered.size() + inst.election.unregistered.size();
        std::vector<std::size_t> perm(n);
        for (std::size_t i = 0; i < n; ++i) perm[i] = i;
        for (int round = 0; round < 5; ++round) {
            rng.shuffle(perm);
            CHECK(count_kapproval_sp_ccav(inst, &perm) == baseline);
        }
    }
}

TEST_CASE("axis hints substitute for a missing election axis") {
    Election e = parse_election(
        "candidates = a, p, b\n"
        "ballot_type = ordinal\n"
        "[registered]\n"
        "1: a > p > b\n"
        "[unregistered_voters]\n"
        "2: p > a > b\n");
    auto inst = test_support::make_instance(e, Rule::condorcet(), ControlAction::AddVoters,
                                            ControlMode::Constructive, "p", 2);
    CHECK(dispatch(inst).algorithm == AlgorithmTag::Oracle);

    DispatchOptions opts;
    opts.axis_hint = SocietalAxis{*e.find("a"), *e.find("p"), *e.find("b")};
    CountResult hinted = dispatch(inst, opts);
    CHECK(hinted.algorithm == AlgorithmTag::CondorcetSpAv);
    CHECK(hinted.count == count_by_enumeration(inst));
}

TEST_CASE("single-peaked approval voter control stays on the oracle") {
    Election e = parse_election(
        "candidates = p, a\n"
        "ballot_type = approval\n"
        "[registered]\n"
        "1: {a}\n"
        "[unregistered_voters]\n"
        "2: {p}\n");
    e.axis = SocietalAxis{*e.find("p"), *e.find("a")};
    auto inst = test_support::make_instance(e, Rule::approval(), ControlAction::AddVoters,
                                            ControlMode::Constructive, "p", 2);
    CountResult r = dispatch(inst);
    CHECK(r.algorithm == AlgorithmTag::Oracle);
    CHECK(r.count == 1);
}

TEST_CASE("3-approval sp voter control matches the oracle") {
    verify::Rng rng(31415);
    for (int t = 0; t < 40; ++t) {
        verify::ElectionShape shape;
        shape.max_candidates = 6;
        shape.max_voters = 6;
        shape.single_peaked = true;
        auto inst = verify::random_instance(rng, Rule::k_approval(3), ControlAction::AddVoters,
                                            ControlMode::Constructive, shape,
                                            rng.uniform(0, 4));
        CHECK(count_kapproval_sp_ccav(inst) == count_by_enumeration(inst));
    }
}

TEST_CASE("a deleting instance may carry an unused unregistered pool") {
    Election e = parse_election(
        "candidates = a, p, b\n"
        "ballot_type = ordinal\n"
        "[unregistered_candidates]\n"
        "x\n"
        "[registered]\n"
        "2: p > b > a > x\n"
        "1: a > p > b > x\n"
        "1: b > p > a > x\n");
    e.axis = SocietalAxis{*e.find("a"), *e.find("p"), *e.find("b"), *e.find("x")};
    auto inst = test_support::make_instance(e, Rule::k_approval(2),
                                            ControlAction::DeleteCandidates,
                                            ControlMode::Constructive, "p", 1);
    CountResult r = dispatch(inst);
    CHECK(r.algorithm == AlgorithmTag::Thm2AddCombinator);
    CHECK(r.count == count_by_enumeration(inst));
}

TEST_CASE("sp candidate-addition with a sole registered candidate") {
    // The padded DP must still count the empty addition correctly.
    verify::Rng rng(271828);
    for (int k = 1; k <= 2; ++k) {
        for (int trial = 0; trial < 12; ++trial) {
            const int pool = 4 * k + 1 + static_cast<int>(rng.uniform(0, 2));
            Election e;
            e.kind = BallotKind::Ordinal;
            e.names.push_back("p");
            e.candidates = {0};
            for (int i = 0; i < pool; ++i) {
                e.names.push_back("a" + std::to_string(i));
                e.unregistered_candidates.push_back(static_cast<CandidateId>(i + 1));
            }
            SocietalAxis axis;
            for (std::size_t i = 0; i < e.names.size(); ++i)
                axis.push_back(static_cast<CandidateId>(i));
            rng.shuffle(axis);
            e.axis = axis;
            const int voters = trial % 3;  // covers the zero-voter edge
            for (int v = 0; v < voters; ++v)
                e.registered.push_back(verify::random_sp_ballot(rng, axis));

            ControlInstance inst{e, Rule::k_approval(k), ControlAction::AddCandidates,
                                 ControlMode::Constructive, 0, 0};
            for (long long b = 0; b <= pool; ++b) {
                inst.budget = b;
                CAPTURE(k);
                CAPTURE(b);
                CAPTURE(voters);
                CHECK(count_kapproval_sp_ccac(inst) == count_by_enumeration(inst));
            }
        }
    }
}

TEST_CASE("dispatcher exact sizes telescope to the cumulative count") {
    verify::Rng rng(161803);
    for (int t = 0; t < 20; ++t) {
        verify::ElectionShape shape;
        shape.max_candidates = 5;
        shape.max_voters = 6;
        shape.single_peaked = t % 2 == 0;
        Rule rule = t % 2 == 0 ? Rule::k_approval(2) : Rule::plurality();
        auto inst = verify::random_instance(rng, rule, ControlAction::AddVoters,
                                            ControlMode::Constructive, shape, 0);
        const long long pool = pool_size(inst);
        Count sum = 0;
        DispatchOptions opts;
        for (long long i = 0; i <= pool; ++i)
            sum += dispatch_exact_size(with_budget(inst, i), i, opts);
        CHECK(sum == dispatch(with_budget(inst, pool), opts).count);
    }
}

TEST_CASE("condorcet immune cells also report literal counts") {
    Election e = parse_election(
        "candidates = p, a\n"
        "ballot_type = ordinal\n"
        "[unregistered_candidates]\n"
        "x, y\n"
        "[registered]\n"
        "2: p > a > x > y\n"
        "1: x > a > p > y\n");
    auto ccac = test_support::make_instance(e, Rule::condorcet(), ControlAction::AddCandidates,
                                            ControlMode::Constructive, "p", 2);
    CountResult r = dispatch(ccac);
    CHECK(r.immune_cell);
    CHECK(r.algorithm == AlgorithmTag::Thm1Complement);
    CHECK(r.count == count_by_enumeration(ccac));

    auto dcdc = test_support::make_instance(e, Rule::condorcet(), ControlAction::DeleteCandidates,
                                            ControlMode::Destructive, "p", 1);
    CountResult r2 = dispatch(dcdc);
    CHECK(r2.immune_cell);
    CHECK(r2.count == count_by_enumeration(dcdc));
}

TEST_CASE("sp candidate addition with bystander unregistered voters") {
    // Candidate control ignores W, but the instance may still carry it.
    verify::Rng rng(424243);
    int produced = 0;
    while (produced < 15) {
        verify::ElectionShape shape;
        shape.max_candidates = 7;
        shape.max_voters = 6;
        shape.single_peaked = true;
        shape.with_unregistered_candidates = true;
        shape.with_unregistered_voters = true;
        auto inst = verify::random_instance(rng, Rule::k_approval(1), ControlAction::AddCandidates,
                                            ControlMode::Constructive, shape, 0);
        if (inst.election.unregistered.empty()) continue;
        ++produced;
        for (long long b = 0; b <= pool_size(inst); ++b) {
            inst.budget = b;
            CHECK(count_kapproval_sp_ccac(inst) == count_by_enumeration(inst));
        }
    }
}

TEST_CASE("4-approval sp voter control matches the oracle") {
    verify::Rng rng(8675309);
    int produced = 0;
    while (produced < 25) {
        verify::ElectionShape shape;
        shape.max_candidates = 7;
        shape.max_voters = 7;
        shape.single_peaked = true;
        auto inst = verify::random_instance(rng, Rule::k_approval(4), ControlAction::AddVoters,
                                            ControlMode::Constructive, shape,
                                            rng.uniform(0, 5));
        if (inst.election.candidates.size() < 5) continue;  // keep k below m
        ++produced;
        CHECK(count_kapproval_sp_ccav(inst) == count_by_enumeration(inst));
    }
}
