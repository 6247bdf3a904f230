#include "electctl/prediction.hpp"

#include <algorithm>

namespace electctl {

TurnoutModel TurnoutModel::explicit_table(std::vector<Rational> table) {
    TurnoutModel m;
    m.kind = Kind::ExplicitTable;
    m.table = std::move(table);
    Rational sum = 0;
    for (const Rational& p : m.table) {
        if (p < 0) throw IncompatibleError("turnout probabilities must be nonnegative");
        sum += p;
    }
    if (sum != 1) throw IncompatibleError("turnout probabilities must sum to exactly 1");
    return m;
}

TurnoutModel TurnoutModel::bernoulli(const Rational& q) {
    if (q < 0 || q > 1) throw IncompatibleError("participation probability must lie in [0,1]");
    TurnoutModel m;
    m.kind = Kind::Bernoulli;
    m.bernoulli_q = q;
    return m;
}

std::vector<Rational> binomial_table(long long n, const Rational& q) {
    if (q < 0 || q > 1) throw IncompatibleError("participation probability must lie in [0,1]");
    std::vector<Rational> table(static_cast<std::size_t>(n) + 1);
    const Rational complement = Rational(1) - q;
    // q^i (1-q)^(n-i), built incrementally.
    std::vector<Rational> q_pow(static_cast<std::size_t>(n) + 1), c_pow(static_cast<std::size_t>(n) + 1);
    q_pow[0] = 1;
    c_pow[0] = 1;
    for (long long i = 1; i <= n; ++i) {
        q_pow[static_cast<std::size_t>(i)] = q_pow[static_cast<std::size_t>(i - 1)] * q;
        c_pow[static_cast<std::size_t>(i)] = c_pow[static_cast<std::size_t>(i - 1)] * complement;
    }
    for (long long i = 0; i <= n; ++i) {
        table[static_cast<std::size_t>(i)] = Rational(binomial(n, i)) *
                                             q_pow[static_cast<std::size_t>(i)] *
                                             c_pow[static_cast<std::size_t>(n - i)];
        table[static_cast<std::size_t>(i)].canonicalize();
    }
    return table;
}

std::vector<Rational> TurnoutModel::table_for_pool(long long pool) const {
    if (kind == Kind::Bernoulli) return binomial_table(pool, bernoulli_q);
    if (static_cast<long long>(table.size()) != pool + 1)
        throw IncompatibleError("turnout table must have one entry per size 0..pool");
    return table;
}

Rational victory_probability(const Election& e, const Rule& rule, CandidateId candidate,
                             const TurnoutModel& model, UncertainSide side,
                             const DispatchOptions& opts, std::vector<AlgorithmTag>* tags_used) {
    validate_election(e);
    ControlInstance inst;
    inst.election = e;
    inst.rule = rule;
    inst.mode = ControlMode::Constructive;
    inst.designated = candidate;
    inst.action = side == UncertainSide::Voters ? ControlAction::AddVoters
                                                : ControlAction::AddCandidates;

    const long long pool = pool_size(inst);
    std::vector<Rational> turnout = model.table_for_pool(pool);

    Rational total = 0;
    for (long long i = 0; i <= pool; ++i) {
        const Rational& p_i = turnout[static_cast<std::size_t>(i)];
        if (p_i == 0) continue;
        Count ways = dispatch_exact_size(with_budget(inst, i), i, opts, tags_used);
        if (ways == 0) continue;
        Rational q_i(ways, binomial(pool, i));
        q_i.canonicalize();
        total += p_i * q_i;
    }
    total.canonicalize();
    return total;
}

VictoryReport full_report(const Election& e, const Rule& rule, const TurnoutModel& model,
                          UncertainSide side, const DispatchOptions& opts) {
    VictoryReport report;
    for (CandidateId c : e.candidates) {
        VictoryEntry entry;
        entry.candidate = c;
        entry.probability = victory_probability(e, rule, c, model, side, opts, &entry.algorithms);
        report.entries.push_back(std::move(entry));
    }
    return report;
}

}  // namespace electctl
