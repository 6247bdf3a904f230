#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "electctl/prediction.hpp"
#include "test_support.hpp"

using namespace electctl;
using test_support::two_candidate_election;

namespace {

// Exhaustive weighted expectation, independent of the dispatcher/oracle
// exact-size path: Pr[S] = P(|S|) / C(pool, |S|), summed over subsets where
// the candidate is the unique winner.
Rational brute_force_probability(const Election& e, const Rule& rule, CandidateId candidate,
                                 const std::vector<Rational>& table, UncertainSide side) {
    const bool voters = side == UncertainSide::Voters;
    const std::size_t pool = voters ? e.unregistered.size() : e.unregistered_candidates.size();
    Rational total = 0;
    for (std::size_t mask = 0; mask < (std::size_t(1) << pool); ++mask) {
        std::size_t size = static_cast<std::size_t>(__builtin_popcountll(mask));
        Election sub = e;
        if (voters) {
            for (std::size_t i = 0; i < pool; ++i)
                if (mask & (std::size_t(1) << i)) sub.registered.push_back(e.unregistered[i]);
            sub.unregistered.clear();
        } else {
            for (std::size_t i = 0; i < pool; ++i)
                if (mask & (std::size_t(1) << i))
                    sub.candidates.push_back(e.unregistered_candidates[i]);
            sub.unregistered_candidates.clear();
            for (std::size_t i = 0; i < pool; ++i)
                if (!(mask & (std::size_t(1) << i)))
                    sub.unregistered_candidates.push_back(e.unregistered_candidates[i]);
        }
        auto winner = unique_winner(sub, rule);
        if (!winner || *winner != candidate) continue;
        Rational weight = table[size] / Rational(binomial(static_cast<long long>(pool),
                                                          static_cast<long long>(size)));
        weight.canonicalize();
        total += weight;
    }
    total.canonicalize();
    return total;
}

}  // namespace

TEST_CASE("binomial turnout tables") {
    std::vector<Rational> t = binomial_table(2, Rational(1, 2));
    REQUIRE(t.size() == 3);
    CHECK(t[0] == Rational(1, 4));
    CHECK(t[1] == Rational(1, 2));
    CHECK(t[2] == Rational(1, 4));

    std::vector<Rational> zero = binomial_table(3, 0);
    CHECK(zero[0] == 1);
    CHECK(zero[1] == 0);
    CHECK(zero[3] == 0);

    std::vector<Rational> one = binomial_table(3, 1);
    CHECK(one[3] == 1);
    CHECK(one[0] == 0);

    CHECK_THROWS_AS(binomial_table(2, Rational(3, 2)), IncompatibleError);

    // Tables are exact distributions.
    for (int n = 0; n <= 7; ++n) {
        Rational sum = 0;
        for (const Rational& p : binomial_table(n, Rational(2, 7))) sum += p;
        CHECK(sum == 1);
    }
}

TEST_CASE("turnout model validation") {
    CHECK_THROWS_AS(TurnoutModel::explicit_table({Rational(1, 2), Rational(1, 3)}),
                    IncompatibleError);
    CHECK_THROWS_AS(TurnoutModel::explicit_table({Rational(3, 2), Rational(-1, 2)}),
                    IncompatibleError);
    TurnoutModel ok = TurnoutModel::explicit_table({Rational(1, 2), Rational(1, 2)});
    CHECK_THROWS_AS(ok.table_for_pool(5), IncompatibleError);
}

TEST_CASE("worked example: p wins with probability exactly 1/4") {
    Election e = two_candidate_election();
    TurnoutModel model = TurnoutModel::bernoulli(Rational(1, 2));
    Rational p = victory_probability(e, Rule::plurality(), *e.find("p"), model,
                                     UncertainSide::Voters);
    CHECK(p == Rational(1, 4));
    CHECK(decimal_string(p) == "0.250000");
}

TEST_CASE("a concentrated model reproduces the status quo") {
    Election e = two_candidate_election();
    TurnoutModel model = TurnoutModel::explicit_table({Rational(1), Rational(0), Rational(0)});
    CHECK(victory_probability(e, Rule::plurality(), *e.find("p"), model,
                              UncertainSide::Voters) == 0);
    CHECK(victory_probability(e, Rule::plurality(), *e.find("c1"), model,
                              UncertainSide::Voters) == 1);
}

TEST_CASE("single candidate always wins") {
    Election e = parse_election(
        "candidates = p\n"
        "ballot_type = ordinal\n"
        "[registered]\n"
        "[unregistered_voters]\n"
        "2: p\n");
    TurnoutModel model = TurnoutModel::bernoulli(Rational(1, 3));
    VictoryReport report = full_report(e, Rule::plurality(), model, UncertainSide::Voters);
    REQUIRE(report.entries.size() == 1);
    CHECK(report.entries[0].probability == 1);
}

TEST_CASE("mirrored two-candidate election is symmetric") {
    Election e = parse_election(
        "candidates = p, q\n"
        "ballot_type = ordinal\n"
        "[registered]\n"
        "[unregistered_voters]\n"
        "1: p > q\n"
        "1: q > p\n");
    TurnoutModel model = TurnoutModel::bernoulli(Rational(1, 2));
    VictoryReport report = full_report(e, Rule::plurality(), model, UncertainSide::Voters);
    REQUIRE(report.entries.size() == 2);
    CHECK(report.entries[0].probability == report.entries[1].probability);
}

TEST_CASE("victory probabilities equal the exhaustive expectation exactly") {
    verify::Rng rng(60601);
    for (int t = 0; t < 60; ++t) {
        const bool voters = t % 2 == 0;
        verify::ElectionShape shape;
        shape.max_candidates = 5;
        shape.max_voters = 6;
        shape.with_unregistered_voters = voters;
        shape.with_unregistered_candidates = !voters;
        Rule rule = t % 4 < 2 ? Rule::plurality() : Rule::condorcet();
        Election e = verify::random_election(rng, shape);
        const long long pool = voters ? static_cast<long long>(e.unregistered.size())
                                      : static_cast<long long>(e.unregistered_candidates.size());

        std::vector<Rational> table;
        if (t % 3 == 0) {
            table = binomial_table(pool, Rational(1, 3));
        } else {
            // Random exact distribution over sizes.
            std::vector<long long> weights;
            long long sum = 0;
            for (long long i = 0; i <= pool; ++i) {
                weights.push_back(rng.uniform(0, 5));
                sum += weights.back();
            }
            if (sum == 0) {
                weights[0] = 1;
                sum = 1;
            }
            for (long long w : weights) {
                Count num(static_cast<long>(w)), den(static_cast<long>(sum));
                Rational r(num, den);
                r.canonicalize();
                table.push_back(r);
            }
        }
        TurnoutModel model = TurnoutModel::explicit_table(table);
        UncertainSide side = voters ? UncertainSide::Voters : UncertainSide::Candidates;

        Rational sum_over_candidates = 0;
        for (CandidateId c : e.candidates) {
            Rational fast = victory_probability(e, rule, c, model, side);
            Rational slow = brute_force_probability(e, rule, c, table, side);
            CHECK(fast == slow);
            sum_over_candidates += fast;
        }
        CHECK(sum_over_candidates <= 1);
    }
}

TEST_CASE("binomial model equals per-voter independent participation") {
    verify::Rng rng(8080);
    for (int t = 0; t < 25; ++t) {
        verify::ElectionShape shape;
        shape.max_candidates = 4;
        shape.max_voters = 6;
        shape.with_unregistered_voters = true;
        Election e = verify::random_election(rng, shape);
        const std::size_t pool = e.unregistered.size();
        const Rational q(2, 5);

        CandidateId c = e.candidates[0];
        // Per-voter independence: each subset S has probability
        // q^|S| (1-q)^(pool-|S|).
        Rational direct = 0;
        for (std::size_t mask = 0; mask < (std::size_t(1) << pool); ++mask) {
            Election sub = e;
            sub.unregistered.clear();
            std::size_t size = 0;
            for (std::size_t i = 0; i < pool; ++i)
                if (mask & (std::size_t(1) << i)) {
                    sub.registered.push_back(e.unregistered[i]);
                    ++size;
                }
            auto winner = unique_winner(sub, Rule::plurality());
            if (!winner || *winner != c) continue;
            Rational w = 1;
            for (std::size_t i = 0; i < size; ++i) w *= q;
            for (std::size_t i = size; i < pool; ++i) w *= (Rational(1) - q);
            direct += w;
        }
        direct.canonicalize();

        Rational viaModel = victory_probability(e, Rule::plurality(), c,
                                                TurnoutModel::bernoulli(q),
                                                UncertainSide::Voters);
        CHECK(viaModel == direct);
    }
}
