#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_support.hpp"

using namespace electctl;
using test_support::make_instance;
using test_support::two_candidate_election;

TEST_CASE("plurality ccav example: only adding both unregistered voters works") {
    auto inst = make_instance(two_candidate_election(), Rule::plurality(),
                              ControlAction::AddVoters, ControlMode::Constructive, "p", 2);
    CHECK(count_by_enumeration(inst) == 1);
}

TEST_CASE("approval ccac counts literally: a losing candidate gains nothing") {
    Election e = parse_election(
        "candidates = p, a\n"
        "ballot_type = approval\n"
        "[unregistered_candidates]\n"
        "x\n"
        "[registered]\n"
        "1: {a}\n"
        "1: {a, x}\n");
    auto inst = make_instance(e, Rule::approval(), ControlAction::AddCandidates,
                              ControlMode::Constructive, "p", 1);
    CHECK(count_by_enumeration(inst) == 0);
}

TEST_CASE("budget zero counts the status quo only") {
    auto won = make_instance(two_candidate_election(), Rule::plurality(),
                             ControlAction::AddVoters, ControlMode::Constructive, "c1", 0);
    CHECK(count_by_enumeration(won) == 1);
    auto lost = make_instance(two_candidate_election(), Rule::plurality(),
                              ControlAction::AddVoters, ControlMode::Constructive, "p", 0);
    CHECK(count_by_enumeration(lost) == 0);
}

TEST_CASE("exact-size counts") {
    auto inst = make_instance(two_candidate_election(), Rule::plurality(),
                              ControlAction::AddVoters, ControlMode::Constructive, "p", 2);
    CHECK(count_exact_size(inst, 2) == 1);
    CHECK(count_exact_size(inst, 1) == 0);
    CHECK(count_exact_size(inst, 5) == 0);
    auto won = make_instance(two_candidate_election(), Rule::plurality(),
                             ControlAction::AddVoters, ControlMode::Constructive, "c1", 2);
    CHECK(count_exact_size(won, 0) == 1);
}

TEST_CASE("enumeration cap is an error, not an approximation") {
    verify::Rng rng(11);
    verify::ElectionShape shape;
    shape.max_candidates = 3;
    shape.max_voters = 8;
    shape.with_unregistered_voters = true;
    auto inst = verify::random_instance(rng, Rule::plurality(), ControlAction::AddVoters,
                                        ControlMode::Constructive, shape, 8);
    OracleOptions opts;
    opts.max_subsets = 1;
    if (pool_size(inst) >= 1) CHECK_THROWS_AS(count_by_enumeration(inst, opts), CapExceededError);
}

TEST_CASE("cumulative monotonicity and the mode complement identity") {
    verify::Rng rng(2025);
    verify::ElectionShape shape;
    shape.max_candidates = 5;
    shape.max_voters = 6;
    for (int t = 0; t < 60; ++t) {
        for (ControlAction action :
             {ControlAction::AddVoters, ControlAction::DeleteVoters, ControlAction::AddCandidates,
              ControlAction::DeleteCandidates}) {
            Rule rule = t % 2 ? Rule::k_approval(2) : Rule::maximin();
            auto inst = verify::random_instance(rng, rule, action, ControlMode::Constructive,
                                                shape, 0);
            Count previous = -1;
            for (long long b = 0; b <= pool_size(inst); ++b) {
                inst.budget = b;
                Count constructive = count_by_enumeration(inst);
                CHECK(constructive >= previous);
                previous = constructive;
                Count destructive =
                    count_by_enumeration(with_mode(inst, ControlMode::Destructive));
                CHECK(constructive + destructive == total_actions(inst));
            }
        }
    }
}

TEST_CASE("exact sizes sum to the cumulative count") {
    verify::Rng rng(99);
    verify::ElectionShape shape;
    shape.max_candidates = 5;
    shape.max_voters = 6;
    for (int t = 0; t < 40; ++t) {
        auto inst = verify::random_instance(rng, Rule::k_approval(2), ControlAction::DeleteVoters,
                                            ControlMode::Constructive, shape, 0);
        const long long pool = pool_size(inst);
        inst.budget = pool;
        Count sum = 0;
        for (long long i = 0; i <= pool; ++i) sum += count_exact_size(inst, i);
        CHECK(sum == count_by_enumeration(inst));
    }
}

TEST_CASE("exact size equals the difference of consecutive cumulative counts") {
    verify::Rng rng(555);
    verify::ElectionShape shape;
    shape.max_candidates = 5;
    shape.max_voters = 6;
    for (int t = 0; t < 30; ++t) {
        auto inst = verify::random_instance(rng, Rule::condorcet(), ControlAction::AddVoters,
                                            ControlMode::Constructive, shape, 0);
        for (long long i = 0; i <= pool_size(inst); ++i) {
            Count high = count_by_enumeration(with_budget(inst, i));
            Count low = i == 0 ? Count(0) : count_by_enumeration(with_budget(inst, i - 1));
            CHECK(count_exact_size(with_budget(inst, i), i) == high - low);
        }
    }
}
