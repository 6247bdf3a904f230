#pragma once

#include "electctl/counters.hpp"

namespace electctl {

// Distribution over how many pool members participate. Probabilities are
// exact rationals; an explicit table has one entry per size 0..pool.
struct TurnoutModel {
    enum class Kind { ExplicitTable, Bernoulli };

    Kind kind = Kind::ExplicitTable;
    std::vector<Rational> table;
    Rational bernoulli_q = 0;

    static TurnoutModel explicit_table(std::vector<Rational> table);
    static TurnoutModel bernoulli(const Rational& q);

    // P(i) = C(n,i) q^i (1-q)^(n-i), exactly.
    std::vector<Rational> table_for_pool(long long pool) const;
};

std::vector<Rational> binomial_table(long long n, const Rational& q);

enum class UncertainSide { Voters, Candidates };

struct VictoryEntry {
    CandidateId candidate = 0;
    Rational probability;
    std::vector<AlgorithmTag> algorithms;
};

struct VictoryReport {
    std::vector<VictoryEntry> entries;
};

// P(0)Q(0) + ... + P(pool)Q(pool) where Q(i) is the exact-size-i constructive
// control count divided by C(pool, i).
Rational victory_probability(const Election& e, const Rule& rule, CandidateId candidate,
                             const TurnoutModel& model, UncertainSide side,
                             const DispatchOptions& opts = {},
                             std::vector<AlgorithmTag>* tags_used = nullptr);

// Victory probability of every registered candidate.
VictoryReport full_report(const Election& e, const Rule& rule, const TurnoutModel& model,
                          UncertainSide side, const DispatchOptions& opts = {});

}  // namespace electctl
