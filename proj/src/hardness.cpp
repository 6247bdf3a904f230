#include "electctl/hardness.hpp"

#include <algorithm>
#include <set>

#include "electctl/oracle.hpp"

namespace electctl {

void validate_x3c(const X3CInstance& src) {
    if (src.ground.empty() || src.ground.size() % 3 != 0)
        throw IncompatibleError("ground set size must be a positive multiple of 3");
    std::set<std::string> names(src.ground.begin(), src.ground.end());
    if (names.size() != src.ground.size()) throw IncompatibleError("duplicate ground element");
    for (const auto& s : src.sets) {
        std::set<int> distinct(s.begin(), s.end());
        if (distinct.size() != 3) throw IncompatibleError("sets must have exactly 3 distinct members");
        for (int idx : s)
            if (idx < 0 || idx >= static_cast<int>(src.ground.size()))
                throw IncompatibleError("set member outside the ground set");
    }
}

Count count_x3c(const X3CInstance& src, std::uint64_t cap) {
    validate_x3c(src);
    const long long n = static_cast<long long>(src.sets.size());
    const long long k = src.cover_size();
    if (binomial(n, k) > Count(static_cast<unsigned long>(cap)))
        throw CapExceededError("instance too large for exact cover enumeration");

    const std::size_t b = src.ground.size();
    Count covers = 0;
    std::vector<int> idx;
    std::vector<int> hits(b, 0);
    std::function<void(long long, long long, std::size_t)> rec = [&](long long from, long long left,
                                                                     std::size_t covered) {
        if (left == 0) {
            if (covered == b) covers += 1;
            return;
        }
        for (long long j = from; j + left <= n; ++j) {
            std::size_t now = covered;
            for (int m : src.sets[static_cast<std::size_t>(j)])
                if (hits[static_cast<std::size_t>(m)]++ == 0) ++now;
            rec(j + 1, left - 1, now);
            for (int m : src.sets[static_cast<std::size_t>(j)]) --hits[static_cast<std::size_t>(m)];
        }
    };
    rec(0, k, 0);
    return covers;
}

int BipartiteGraph::max_degree() const {
    std::vector<int> deg(left.size() + right.size(), 0);
    int best = 0;
    for (const auto& [x, y] : edges) {
        best = std::max(best, ++deg[static_cast<std::size_t>(x)]);
        best = std::max(best, ++deg[left.size() + static_cast<std::size_t>(y)]);
    }
    return best;
}

void validate_graph(const BipartiteGraph& g) {
    if (g.left.empty() || g.left.size() != g.right.size())
        throw IncompatibleError("graph sides must be nonempty and equal sized");
    std::set<std::string> names(g.left.begin(), g.left.end());
    names.insert(g.right.begin(), g.right.end());
    if (names.size() != g.left.size() + g.right.size())
        throw IncompatibleError("duplicate vertex name");
    std::set<std::pair<int, int>> seen;
    for (const auto& [x, y] : g.edges) {
        if (x < 0 || x >= static_cast<int>(g.left.size()) || y < 0 ||
            y >= static_cast<int>(g.right.size()))
            throw IncompatibleError("edge endpoint outside the vertex sets");
        if (!seen.insert({x, y}).second) throw IncompatibleError("duplicate edge");
    }
}

std::vector<Count> count_matchings_by_size(const BipartiteGraph& g, std::uint64_t cap) {
    validate_graph(g);
    const std::size_t m = g.edges.size();
    Count leaves = 1;
    leaves <<= m;
    if (leaves > Count(static_cast<unsigned long>(cap)))
        throw CapExceededError("instance too large for matching enumeration");

    const long long n = g.side();
    std::vector<Count> by_size(static_cast<std::size_t>(n) + 1, Count(0));
    std::vector<char> used_left(g.left.size(), 0), used_right(g.right.size(), 0);
    std::function<void(std::size_t, long long)> rec = [&](std::size_t i, long long size) {
        if (i == m) {
            by_size[static_cast<std::size_t>(size)] += 1;
            return;
        }
        rec(i + 1, size);
        auto [x, y] = g.edges[i];
        if (!used_left[static_cast<std::size_t>(x)] && !used_right[static_cast<std::size_t>(y)]) {
            used_left[static_cast<std::size_t>(x)] = used_right[static_cast<std::size_t>(y)] = 1;
            rec(i + 1, size + 1);
            used_left[static_cast<std::size_t>(x)] = used_right[static_cast<std::size_t>(y)] = 0;
        }
    };
    rec(0, 0);
    return by_size;
}

namespace {

// Candidate-name helper that keeps generated names clear of user names.
class NamePool {
  public:
    explicit NamePool(std::vector<std::string> taken) : names_(std::move(taken)) {
        used_.insert(names_.begin(), names_.end());
    }

    CandidateId add(std::string base) {
        std::string name = base;
        while (used_.count(name)) name = "_" + name;
        used_.insert(name);
        names_.push_back(name);
        return static_cast<CandidateId>(names_.size() - 1);
    }

    std::vector<std::string> take() { return std::move(names_); }

  private:
    std::vector<std::string> names_;
    std::set<std::string> used_;
};

Ballot ranking_with_rest(const std::vector<CandidateId>& head, std::size_t universe) {
    Ballot b;
    std::vector<char> placed(universe, 0);
    for (CandidateId c : head) {
        b.items.push_back(c);
        placed[c] = 1;
    }
    for (CandidateId c = 0; c < universe; ++c)
        if (!placed[c]) b.items.push_back(c);
    return b;
}

std::vector<CandidateId> all_ids(std::size_t universe) {
    std::vector<CandidateId> ids(universe);
    for (std::size_t i = 0; i < universe; ++i) ids[i] = static_cast<CandidateId>(i);
    return ids;
}

}  // namespace

ReductionArtifact x3c_to_condorcet_ccav(const X3CInstance& src) {
    validate_x3c(src);
    const long long k = src.cover_size();
    if (k < 3) throw IncompatibleError("construction requires a cover size of at least 3");

    NamePool pool(src.ground);
    CandidateId p = pool.add("p");

    Election e;
    e.names = pool.take();
    e.candidates = all_ids(e.names.size());
    e.kind = BallotKind::Ordinal;

    std::vector<CandidateId> ground_order;
    for (std::size_t i = 0; i < src.ground.size(); ++i)
        ground_order.push_back(static_cast<CandidateId>(i));

    Ballot registered_ballot = ranking_with_rest(ground_order, e.names.size());
    for (long long i = 0; i < k - 3; ++i) e.registered.push_back(registered_ballot);

    for (const auto& s : src.sets) {
        std::array<int, 3> t = s;
        std::sort(t.begin(), t.end());
        e.unregistered.push_back(ranking_with_rest(
            {static_cast<CandidateId>(t[0]), static_cast<CandidateId>(t[1]),
             static_cast<CandidateId>(t[2]), p},
            e.names.size()));
    }

    ReductionArtifact art;
    art.instances.push_back(
        {e, Rule::condorcet(), ControlAction::AddVoters, ControlMode::Constructive, p, k});
    art.source = src;
    art.relationship = ReductionKind::Parsimonious;
    art.target = "condorcet-ccav";
    return art;
}

ReductionArtifact matching_to_2approval_ccav(const BipartiteGraph& g) {
    validate_graph(g);
    const long long n = g.side();

    std::vector<std::string> vertex_names = g.left;
    vertex_names.insert(vertex_names.end(), g.right.begin(), g.right.end());
    NamePool pool(vertex_names);
    CandidateId p = pool.add("p");
    CandidateId b1 = pool.add("b1");
    CandidateId b2 = pool.add("b2");

    Election e;
    e.names = pool.take();
    e.candidates = all_ids(e.names.size());
    e.kind = BallotKind::Ordinal;
    e.registered.push_back(ranking_with_rest({p, b1}, e.names.size()));
    e.registered.push_back(ranking_with_rest({p, b2}, e.names.size()));
    for (const auto& [x, y] : g.edges) {
        CandidateId cx = static_cast<CandidateId>(x);
        CandidateId cy = static_cast<CandidateId>(g.left.size() + static_cast<std::size_t>(y));
        e.unregistered.push_back(ranking_with_rest({cx, cy}, e.names.size()));
    }

    ReductionArtifact art;
    ControlInstance inst{e, Rule::k_approval(2), ControlAction::AddVoters,
                         ControlMode::Constructive, p, n};
    art.instances.push_back(inst);
    art.instances.push_back(with_budget(inst, n - 1));
    art.source = g;
    art.relationship = ReductionKind::DifferenceOfTwo;
    art.target = "2approval-ccav";
    return art;
}

ReductionArtifact matching_to_2approval_ccdv(const BipartiteGraph& g) {
    validate_graph(g);
    const long long n = g.side();
    const int d_max = g.max_degree();
    if (d_max < 2)
        throw IncompatibleError(
            "construction requires maximum degree at least 2; pad the graph statement rejected");

    std::vector<int> degree(g.left.size() + g.right.size(), 0);
    for (const auto& [x, y] : g.edges) {
        ++degree[static_cast<std::size_t>(x)];
        ++degree[g.left.size() + static_cast<std::size_t>(y)];
    }
    long long t_total = 0;
    for (int d : degree) t_total += d_max - d;

    std::vector<std::string> vertex_names = g.left;
    vertex_names.insert(vertex_names.end(), g.right.begin(), g.right.end());
    NamePool pool(vertex_names);
    CandidateId p = pool.add("p");
    std::vector<CandidateId> fillers;
    for (long long t = 0; t < t_total + d_max; ++t)
        fillers.push_back(pool.add("b" + std::to_string(t + 1)));

    Election e;
    e.names = pool.take();
    e.candidates = all_ids(e.names.size());
    e.kind = BallotKind::Ordinal;

    for (const auto& [x, y] : g.edges) {
        CandidateId cx = static_cast<CandidateId>(x);
        CandidateId cy = static_cast<CandidateId>(g.left.size() + static_cast<std::size_t>(y));
        e.registered.push_back(ranking_with_rest({cx, cy}, e.names.size()));
    }
    std::size_t filler_cursor = 0;
    for (std::size_t v = 0; v < degree.size(); ++v) {
        for (int r = 0; r < d_max - degree[v]; ++r)
            e.registered.push_back(ranking_with_rest(
                {static_cast<CandidateId>(v), fillers[filler_cursor++]}, e.names.size()));
    }
    for (int r = 0; r < d_max; ++r)
        e.registered.push_back(ranking_with_rest({p, fillers[filler_cursor++]}, e.names.size()));

    ReductionArtifact art;
    art.instances.push_back({e, Rule::k_approval(2), ControlAction::DeleteVoters,
                             ControlMode::Constructive, p, n});
    art.source = g;
    art.relationship = ReductionKind::Parsimonious;
    art.target = "2approval-ccdv";
    return art;
}

ReductionArtifact matching_to_3approval_ccav(const BipartiteGraph& g) {
    validate_graph(g);
    const long long n = g.side();
    // Target registered scores: p at delta, d at n-1+delta, every vertex at
    // n-2+delta, each filler approved at most once. The offset keeps the
    // vertex target nonnegative when n = 1.
    const long long delta = std::max(0LL, 2 - n);

    std::vector<std::string> vertex_names = g.left;
    vertex_names.insert(vertex_names.end(), g.right.begin(), g.right.end());
    NamePool pool(vertex_names);
    CandidateId p = pool.add("p");
    CandidateId d = pool.add("d");

    const long long ballots = delta + (n - 1 + delta) + 2 * n * (n - 2 + delta);
    std::vector<CandidateId> fillers;
    for (long long i = 0; i < 2 * ballots; ++i)
        fillers.push_back(pool.add("f" + std::to_string(i + 1)));

    Election e;
    e.names = pool.take();
    e.candidates = all_ids(e.names.size());
    e.kind = BallotKind::Ordinal;

    std::size_t cursor = 0;
    auto push_booster = [&](CandidateId target, long long copies) {
        for (long long i = 0; i < copies; ++i) {
            CandidateId f1 = fillers[cursor++];
            CandidateId f2 = fillers[cursor++];
            e.registered.push_back(ranking_with_rest({target, f1, f2}, e.names.size()));
        }
    };
    push_booster(p, delta);
    push_booster(d, n - 1 + delta);
    for (std::size_t v = 0; v < g.left.size() + g.right.size(); ++v)
        push_booster(static_cast<CandidateId>(v), n - 2 + delta);

    for (const auto& [x, y] : g.edges) {
        CandidateId cx = static_cast<CandidateId>(x);
        CandidateId cy = static_cast<CandidateId>(g.left.size() + static_cast<std::size_t>(y));
        e.unregistered.push_back(ranking_with_rest({p, cx, cy}, e.names.size()));
    }

    ReductionArtifact art;
    art.instances.push_back({e, Rule::k_approval(3), ControlAction::AddVoters,
                             ControlMode::Constructive, p, n});
    art.source = g;
    art.relationship = ReductionKind::Parsimonious;
    art.target = "3approval-ccav";
    return art;
}

ReductionArtifact matching_to_maximin_ccdc(const BipartiteGraph& g) {
    validate_graph(g);
    const long long n = g.side();
    const long long m = static_cast<long long>(g.edges.size());

    NamePool pool({});
    std::vector<CandidateId> edge_cand;
    for (long long i = 0; i < m; ++i) edge_cand.push_back(pool.add("e" + std::to_string(i + 1)));
    // The guard cycle must have length at least 3: with two guards the two
    // pair directions cancel and the guards outscore p before any deletion.
    const long long s_count = std::max(n + 1, 3LL);
    std::vector<CandidateId> s_cand;
    for (long long i = 0; i < s_count; ++i) s_cand.push_back(pool.add("s" + std::to_string(i)));

    auto share_vertex = [&](long long i, long long j) {
        return g.edges[static_cast<std::size_t>(i)].first == g.edges[static_cast<std::size_t>(j)].first ||
               g.edges[static_cast<std::size_t>(i)].second == g.edges[static_cast<std::size_t>(j)].second;
    };
    struct Blocker {
        CandidateId id;
        long long i, j;
    };
    std::vector<Blocker> blockers;
    for (long long i = 0; i < m; ++i)
        for (long long j = i + 1; j < m; ++j)
            if (share_vertex(i, j))
                for (long long l = 0; l <= n; ++l)
                    blockers.push_back({pool.add("b" + std::to_string(i + 1) + "_" +
                                                 std::to_string(j + 1) + "_" + std::to_string(l)),
                                        i, j});
    CandidateId p = pool.add("p");

    Election e;
    e.names = pool.take();
    e.candidates = all_ids(e.names.size());
    e.kind = BallotKind::Ordinal;

    const std::size_t universe = e.names.size();
    auto add_pair = [&](CandidateId a, CandidateId b) {
        e.registered.push_back(ranking_with_rest({a, b}, universe));
        // Reverse order of the remaining candidates, then a, then b: the pair
        // nets +2 on (a,b) and is balanced on every other ordered pair.
        Ballot rev;
        for (CandidateId c = static_cast<CandidateId>(universe); c-- > 0;)
            if (c != a && c != b) rev.items.push_back(c);
        rev.items.push_back(a);
        rev.items.push_back(b);
        e.registered.push_back(rev);
    };

    for (long long i = 0; i < s_count; ++i) add_pair(s_cand[static_cast<std::size_t>(i)], p);
    for (long long i = 0; i < s_count; ++i) {
        CandidateId next = s_cand[static_cast<std::size_t>((i + 1) % s_count)];
        add_pair(s_cand[static_cast<std::size_t>(i)], next);
        add_pair(s_cand[static_cast<std::size_t>(i)], next);
    }
    for (long long i = 0; i < s_count; ++i)
        for (long long t = 0; t < m; ++t) {
            add_pair(s_cand[static_cast<std::size_t>(i)], edge_cand[static_cast<std::size_t>(t)]);
            add_pair(s_cand[static_cast<std::size_t>(i)], edge_cand[static_cast<std::size_t>(t)]);
        }
    for (const Blocker& b : blockers) {
        add_pair(edge_cand[static_cast<std::size_t>(b.i)], b.id);
        add_pair(edge_cand[static_cast<std::size_t>(b.i)], b.id);
        add_pair(edge_cand[static_cast<std::size_t>(b.j)], b.id);
        add_pair(edge_cand[static_cast<std::size_t>(b.j)], b.id);
    }

    ReductionArtifact art;
    for (long long k = 0; k <= n; ++k)
        art.instances.push_back({e, Rule::maximin(), ControlAction::DeleteCandidates,
                                 ControlMode::Constructive, p, k});
    art.source = g;
    art.relationship = ReductionKind::TuringProfile;
    art.target = "maximin-ccdc";
    art.blocker_count = static_cast<long long>(blockers.size());
    return art;
}

std::vector<Count> recover_matching_profile(const std::vector<Count>& f, long long blocker_count) {
    if (f.empty()) throw IncompatibleError("inconsistent profile: empty input");
    if (f[0] != 1)
        throw IncompatibleError("inconsistent profile: f(0) must be 1 (p wins untouched)");
    std::vector<Count> g(f.size());
    g[0] = f[0];
    for (std::size_t k = 1; k < f.size(); ++k) {
        Count value = f[k];
        for (std::size_t j = 1; j <= k; ++j)
            value -= binomial(blocker_count, static_cast<long long>(j)) * g[k - j];
        if (value < 0) throw IncompatibleError("inconsistent profile: negative matching count");
        g[k] = value;
    }
    return g;
}

namespace {

bool check_maximin_structure(const ReductionArtifact& art, std::string& detail) {
    const ControlInstance& inst = art.instances.front();
    const Election& e = inst.election;
    const long long pairs = static_cast<long long>(e.registered.size()) / 2;
    std::vector<char> active = mask_of(e.candidates, e.universe_size());
    std::vector<long long> score =
        rule_scores(e, Rule::maximin(), active, ballot_pointers(e.registered));
    if (score[inst.designated] != pairs - 1) {
        detail = "designated maximin score is off";
        return false;
    }
    for (CandidateId c : e.candidates) {
        if (c == inst.designated) continue;
        if (score[c] != pairs - 2) {
            detail = "rival maximin score is off for " + e.names[c];
            return false;
        }
    }
    return true;
}

}  // namespace

CertificationReport certify(const ReductionArtifact& artifact, const OracleOptions& opts) {
    CertificationReport report;
    report.target = artifact.target;

    switch (artifact.relationship) {
        case ReductionKind::Parsimonious: {
            Count actual = count_by_enumeration(artifact.instances.front(), opts);
            Count expected;
            if (std::holds_alternative<X3CInstance>(artifact.source)) {
                expected = count_x3c(std::get<X3CInstance>(artifact.source), opts.max_subsets);
            } else {
                const auto& g = std::get<BipartiteGraph>(artifact.source);
                expected = count_matchings_by_size(g, opts.max_subsets)[static_cast<std::size_t>(
                    g.side())];
            }
            report.expected = {expected};
            report.actual = {actual};
            report.pass = expected == actual;
            report.detail = "control count " + actual.get_str() + " vs source count " +
                            expected.get_str();
            return report;
        }
        case ReductionKind::DifferenceOfTwo: {
            Count high = count_by_enumeration(artifact.instances[0], opts);
            Count low = count_by_enumeration(artifact.instances[1], opts);
            const auto& g = std::get<BipartiteGraph>(artifact.source);
            Count expected =
                count_matchings_by_size(g, opts.max_subsets)[static_cast<std::size_t>(g.side())];
            report.expected = {expected};
            report.actual = {high - low};
            report.pass = report.actual[0] == expected;
            report.detail = "count(I) - count(I') = " + report.actual[0].get_str() +
                            " vs perfect matchings " + expected.get_str();
            return report;
        }
        case ReductionKind::TuringProfile: {
            std::string structure;
            if (!check_maximin_structure(artifact, structure)) {
                report.pass = false;
                report.detail = "score precondition violated: " + structure;
                return report;
            }
            std::vector<Count> cumulative;
            for (const ControlInstance& inst : artifact.instances)
                cumulative.push_back(count_by_enumeration(inst, opts));
            std::vector<Count> f(cumulative.size());
            f[0] = cumulative[0];
            for (std::size_t k = 1; k < cumulative.size(); ++k)
                f[k] = cumulative[k] - cumulative[k - 1];
            std::vector<Count> recovered = recover_matching_profile(f, artifact.blocker_count);
            const auto& g = std::get<BipartiteGraph>(artifact.source);
            std::vector<Count> expected = count_matchings_by_size(g, opts.max_subsets);
            report.expected = expected;
            report.actual = recovered;
            report.pass = recovered == expected;
            std::string lhs, rhs;
            for (const Count& c : recovered) lhs += (lhs.empty() ? "" : ",") + c.get_str();
            for (const Count& c : expected) rhs += (rhs.empty() ? "" : ",") + c.get_str();
            report.detail = "recovered profile (" + lhs + ") vs matchings by size (" + rhs + ")";
            return report;
        }
    }
    throw IncompatibleError("unknown reduction relationship");
}

}  // namespace electctl
