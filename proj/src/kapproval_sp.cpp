#include <algorithm>
#include <map>

#include "electctl/counters.hpp"
#include "electctl/single_peaked.hpp"

namespace electctl {

namespace {

bool kapproval_family(const Rule& rule) {
    return rule.kind == Rule::Kind::Plurality || rule.kind == Rule::Kind::KApproval;
}

}  // namespace

// ---------------------------------------------------------------------------
// k-Approval #CCAV on single-peaked profiles.
//
// Voters are ordered by the axis rank of the right end of their approval
// block. The count is assembled over the last voter of the final election: a
// state (voter v, p-score z, added count s, score bound vector) counts the
// ways to pick earlier unregistered voters so that p ends on exactly z while
// every rival stays within the bound.
// ---------------------------------------------------------------------------
Count count_kapproval_sp_ccav(const ControlInstance& inst,
                              const std::vector<std::size_t>* tie_break) {
    if (!kapproval_family(inst.rule) || inst.action != ControlAction::AddVoters ||
        inst.mode != ControlMode::Constructive)
        throw IncompatibleError("kapproval-sp-av-dp handles constructive k-Approval AV only");
    validate_instance(inst);
    if (!verify_profile_over_registered(inst.election))
        throw IncompatibleError("profile is not single-peaked with respect to the axis");

    const Election e = inst.election.unregistered_candidates.empty()
                           ? inst.election
                           : restricted_to_registered(inst.election);
    CandidateId p = inst.designated;
    if (!inst.election.unregistered_candidates.empty())
        p = *e.find(inst.election.names[inst.designated]);

    const int m = static_cast<int>(e.candidates.size());
    const int k = inst.rule.top_count();
    const long long w_total = static_cast<long long>(e.unregistered.size());
    const long long budget = std::min(inst.budget, w_total);

    // k >= m: every voter approves every candidate, so only a sole candidate
    // can be the unique winner.
    if (k >= m) return m == 1 ? subsets_up_to(w_total, budget) : Count(0);

    // Axis rank per candidate, 1-based.
    std::vector<int> rank_of(e.universe_size(), 0);
    for (int i = 0; i < m; ++i) rank_of[(*e.axis)[static_cast<std::size_t>(i)]] = i + 1;
    const int p_rank = rank_of[p];

    struct Voter {
        int block_lo = 0;   // rank of the leftmost approved candidate
        int block_hi = 0;   // rank of the rightmost approved candidate
        bool approves_p = false;
        bool is_w = false;
        std::size_t input_index = 0;
    };
    std::vector<Voter> voters;
    auto add_voter = [&](const Ballot& b, bool is_w, std::size_t idx) {
        Voter v;
        v.is_w = is_w;
        v.input_index = idx;
        int lo = m + 1, hi = 0;
        for (int i = 0; i < k; ++i) {
            int r = rank_of[b.items[static_cast<std::size_t>(i)]];
            lo = std::min(lo, r);
            hi = std::max(hi, r);
            if (r == p_rank) v.approves_p = true;
        }
        v.block_lo = lo;
        v.block_hi = hi;
        voters.push_back(v);
    };
    for (std::size_t i = 0; i < e.registered.size(); ++i) add_voter(e.registered[i], false, i);
    for (std::size_t i = 0; i < e.unregistered.size(); ++i)
        add_voter(e.unregistered[i], true, e.registered.size() + i);

    const int n_total = static_cast<int>(voters.size());
    if (n_total == 0) return m == 1 ? 1 : 0;

    std::vector<int> seq(static_cast<std::size_t>(n_total));
    for (int i = 0; i < n_total; ++i) seq[static_cast<std::size_t>(i)] = i;
    std::stable_sort(seq.begin(), seq.end(), [&](int a, int b) {
        const Voter& va = voters[static_cast<std::size_t>(a)];
        const Voter& vb = voters[static_cast<std::size_t>(b)];
        if (va.block_hi != vb.block_hi) return va.block_hi < vb.block_hi;
        if (tie_break)
            return (*tie_break)[va.input_index] < (*tie_break)[vb.input_index];
        if (va.is_w != vb.is_w) return vb.is_w;  // registered first
        return va.input_index < vb.input_index;
    });

    // Per sequence position: the closest registered predecessor (start of the
    // predecessor set) and the registered-only prefix scores.
    std::vector<int> pred_start(static_cast<std::size_t>(n_total), 0);
    std::vector<std::vector<int>> reg_prefix;  // scores before position i, registered only
    std::vector<int> reg_prefix_p;
    {
        std::vector<int> acc(static_cast<std::size_t>(m) + 1, 0);
        int acc_p = 0;
        int last_reg = -1;
        for (int i = 0; i < n_total; ++i) {
            reg_prefix.push_back(acc);
            reg_prefix_p.push_back(acc_p);
            pred_start[static_cast<std::size_t>(i)] = last_reg < 0 ? 0 : last_reg;
            const Voter& v = voters[static_cast<std::size_t>(seq[static_cast<std::size_t>(i)])];
            if (!v.is_w) {
                for (int r = v.block_lo; r <= v.block_hi; ++r) acc[static_cast<std::size_t>(r)] += 1;
                if (v.approves_p) acc_p += 1;
                last_reg = i;
            }
        }
    }

    int last_registered = -1;
    for (int i = 0; i < n_total; ++i)
        if (!voters[static_cast<std::size_t>(seq[static_cast<std::size_t>(i)])].is_w)
            last_registered = i;

    // Memoized f over (position, z, s, bounds). Bounds are canonical: entries
    // above the voter's block end and the entry at p's rank are zero.
    std::map<std::vector<int>, Count> memo;

    auto canonical = [&](std::vector<int> bounds, int cut_rank) {
        for (int r = cut_rank + 1; r <= m; ++r) bounds[static_cast<std::size_t>(r)] = 0;
        bounds[static_cast<std::size_t>(p_rank)] = 0;
        return bounds;
    };

    std::function<Count(int, int, int, const std::vector<int>&)> f =
        [&](int pos, int z, int s, const std::vector<int>& bounds) -> Count {
        if (z < 0 || s < 0) return 0;
        const Voter& v = voters[static_cast<std::size_t>(seq[static_cast<std::size_t>(pos)])];

        std::vector<int> key;
        key.reserve(bounds.size() + 3);
        key.push_back(pos);
        key.push_back(z);
        key.push_back(s);
        key.insert(key.end(), bounds.begin(), bounds.end());
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;

        Count result = 0;
        if (s == 0) {
            // Election: registered predecessors plus v itself.
            int p_score = reg_prefix_p[static_cast<std::size_t>(pos)] + (v.approves_p ? 1 : 0);
            if (p_score == z) {
                bool ok = true;
                for (int r = 1; r <= m && ok; ++r) {
                    if (r == p_rank) continue;
                    int sc = reg_prefix[static_cast<std::size_t>(pos)][static_cast<std::size_t>(r)];
                    if (r >= v.block_lo && r <= v.block_hi) sc += 1;
                    if (sc > bounds[static_cast<std::size_t>(r)]) ok = false;
                }
                if (ok) result = 1;
            }
        } else {
            // Peel v off: its own ballot leaves the bounds, then any voter in
            // the predecessor window may directly precede it.
            std::vector<int> peeled = bounds;
            bool feasible = true;
            for (int r = v.block_lo; r <= v.block_hi && feasible; ++r) {
                if (r == p_rank) continue;
                if (--peeled[static_cast<std::size_t>(r)] < 0) feasible = false;
            }
            if (feasible) {
                int zp = v.approves_p ? 1 : 0;
                for (int j = pred_start[static_cast<std::size_t>(pos)]; j < pos; ++j) {
                    const Voter& w =
                        voters[static_cast<std::size_t>(seq[static_cast<std::size_t>(j)])];
                    int sw = w.is_w ? 1 : 0;
                    if (s - sw < 0) continue;
                    result += f(j, z - zp, s - sw, canonical(peeled, w.block_hi));
                }
            }
        }
        memo.emplace(std::move(key), result);
        return result;
    };

    auto g = [&](int pos, int z, int s) -> Count {
        const Voter& v = voters[static_cast<std::size_t>(seq[static_cast<std::size_t>(pos)])];
        std::vector<int> bounds(static_cast<std::size_t>(m) + 1, z - 1);
        return f(pos, z, s, canonical(std::move(bounds), v.block_hi));
    };

    Count answer = 0;
    if (last_registered < 0) {
        // No registered voters: the empty addition wins only for a sole
        // candidate, which was handled above; every other election ends at
        // some added voter.
        for (int pos = 0; pos < n_total; ++pos)
            for (long long s = 0; s + 1 <= budget; ++s)
                for (int z = 1; z <= n_total; ++z)
                    answer += g(pos, z, static_cast<int>(s));
        return answer;
    }

    for (long long s = 0; s <= budget; ++s)
        for (int z = 1; z <= n_total; ++z) answer += g(last_registered, z, static_cast<int>(s));
    for (int pos = last_registered + 1; pos < n_total; ++pos)
        for (long long s = 0; s + 1 <= budget; ++s)
            for (int z = 1; z <= n_total; ++z) answer += g(pos, z, static_cast<int>(s));
    return answer;
}

// ---------------------------------------------------------------------------
// k-Approval #CCAC on single-peaked profiles.
//
// Fixing the k nearest present candidates on each side of p fixes p's score.
// The outer loop tries every such neighborhood; the inner DP slides a 2k
// window leftward from the right end of the axis, deciding which outside
// candidates join while checking each candidate's score as it becomes the
// window's k-th member. Four groups of k dummies pad the axis ends so the
// window never runs out of candidates.
// ---------------------------------------------------------------------------
Count count_kapproval_sp_ccac(const ControlInstance& inst, const OracleOptions& opts) {
    if (!kapproval_family(inst.rule) || inst.action != ControlAction::AddCandidates ||
        inst.mode != ControlMode::Constructive)
        throw IncompatibleError("kapproval-sp-ac-dp handles constructive k-Approval AC only");
    validate_instance(inst);
    if (!verify_profile(inst.election))
        throw IncompatibleError("profile is not single-peaked with respect to the axis");

    const int k = inst.rule.top_count();
    const Election& orig = inst.election;
    const std::size_t u_orig = orig.universe_size();

    if (orig.unregistered_candidates.empty() || inst.budget == 0)
        return goal_holds_status_quo(with_mode(inst, ControlMode::Constructive)) ? 1 : 0;

    if (static_cast<long long>(u_orig) <= 4LL * k) return count_by_enumeration(inst, opts);

    // Pad: 2k dummies on each axis end, appended below all real candidates in
    // the unique order that stays single-peaked.
    Election e = orig;
    std::vector<CandidateId> left_dummies, right_dummies;  // adjacent-to-real first
    for (int i = 0; i < 2 * k; ++i) {
        left_dummies.push_back(static_cast<CandidateId>(e.names.size()));
        e.names.push_back("__pad_l" + std::to_string(i));
        e.candidates.push_back(left_dummies.back());
        right_dummies.push_back(static_cast<CandidateId>(e.names.size()));
        e.names.push_back("__pad_r" + std::to_string(i));
        e.candidates.push_back(right_dummies.back());
    }
    {
        SocietalAxis axis;
        for (auto it = left_dummies.rbegin(); it != left_dummies.rend(); ++it) axis.push_back(*it);
        for (CandidateId c : *orig.axis) axis.push_back(c);
        for (CandidateId c : right_dummies) axis.push_back(c);
        e.axis = axis;
    }
    for (Ballot& b : e.registered) {
        for (CandidateId c : left_dummies) b.items.push_back(c);
        for (CandidateId c : right_dummies) b.items.push_back(c);
    }
    for (Ballot& b : e.unregistered) {
        for (CandidateId c : left_dummies) b.items.push_back(c);
        for (CandidateId c : right_dummies) b.items.push_back(c);
    }

    const std::size_t u = e.universe_size();
    const int upos = static_cast<int>(u);
    std::vector<int> pos_of(u, 0);
    std::vector<CandidateId> at_pos(u, 0);
    for (std::size_t i = 0; i < u; ++i) {
        pos_of[(*e.axis)[i]] = static_cast<int>(i);
        at_pos[i] = (*e.axis)[i];
    }
    std::vector<char> is_reg(u, 0), is_pool(u, 0);  // by axis position
    for (CandidateId c : e.candidates) is_reg[static_cast<std::size_t>(pos_of[c])] = 1;
    for (CandidateId c : e.unregistered_candidates) is_pool[static_cast<std::size_t>(pos_of[c])] = 1;
    const int p_pos = pos_of[inst.designated];

    // p's k-approval score in the election restricted to `ids`.
    std::vector<char> id_mask(u, 0);
    auto score_in = [&](const std::vector<CandidateId>& ids, CandidateId who) {
        for (CandidateId c : ids) id_mask[c] = 1;
        long long score = 0;
        for (const Ballot& b : e.registered) {
            int given = 0;
            for (CandidateId c : b.items) {
                if (!id_mask[c]) continue;
                if (c == who) {
                    score += 1;
                    break;
                }
                if (++given == k) break;
            }
        }
        for (CandidateId c : ids) id_mask[c] = 0;
        return score;
    };

    // Neighborhood halves: k candidates walking outward from p; pool members
    // may be skipped, registered ones may not.
    std::vector<std::vector<std::vector<int>>> halves(2);
    for (int dir = 0; dir < 2; ++dir) {
        std::vector<int> current;
        std::function<void(int, int)> dfs = [&](int pos, int need) {
            if (need == 0) {
                halves[static_cast<std::size_t>(dir)].push_back(current);
                return;
            }
            if (pos < 0 || pos >= upos) return;
            current.push_back(pos);
            dfs(dir == 0 ? pos - 1 : pos + 1, need - 1);
            current.pop_back();
            if (is_pool[static_cast<std::size_t>(pos)]) dfs(dir == 0 ? pos - 1 : pos + 1, need);
        };
        dfs(dir == 0 ? p_pos - 1 : p_pos + 1, k);
    }

    Count answer = 0;
    for (const std::vector<int>& yl : halves[0]) {
        for (const std::vector<int>& yr : halves[1]) {
            std::vector<int> y_pos;
            for (int q : yl) y_pos.push_back(q);
            y_pos.push_back(p_pos);
            for (int q : yr) y_pos.push_back(q);
            std::sort(y_pos.begin(), y_pos.end());

            long long add_cost = 0;
            for (int q : y_pos)
                if (is_pool[static_cast<std::size_t>(q)]) ++add_cost;
            if (add_cost > inst.budget) continue;

            std::vector<CandidateId> y_ids;
            for (int q : y_pos) y_ids.push_back(at_pos[static_cast<std::size_t>(q)]);
            const long long rho = score_in(y_ids, inst.designated);
            if (rho == 0) continue;
            const long long slack = inst.budget - add_cost;

            // Filtered axis: registered candidates, the chosen neighborhood,
            // and pool candidates strictly outside its span.
            const int span_lo = y_pos.front(), span_hi = y_pos.back();
            std::vector<int> fpos;        // axis position per filtered index
            std::vector<char> addable;    // costs budget when slid into the election
            for (int q = 0; q < upos; ++q) {
                bool in_y = std::binary_search(y_pos.begin(), y_pos.end(), q);
                if (is_reg[static_cast<std::size_t>(q)] || in_y) {
                    fpos.push_back(q);
                    addable.push_back(0);
                } else if (is_pool[static_cast<std::size_t>(q)] && (q < span_lo || q > span_hi)) {
                    fpos.push_back(q);
                    addable.push_back(1);
                }
            }
            const int fsize = static_cast<int>(fpos.size());

            std::map<std::vector<int>, char> delta_memo;
            auto delta = [&](const std::vector<int>& window, int z) {
                // Score of the window's k-th member once `z` becomes its
                // direct left neighbor.
                CandidateId probe = at_pos[static_cast<std::size_t>(
                    fpos[static_cast<std::size_t>(window[static_cast<std::size_t>(k - 1)])])];
                if (probe == inst.designated) return true;
                std::vector<int> key = window;
                key.push_back(z);
                auto it = delta_memo.find(key);
                if (it != delta_memo.end()) return it->second != 0;
                std::vector<CandidateId> ids;
                ids.push_back(at_pos[static_cast<std::size_t>(fpos[static_cast<std::size_t>(z)])]);
                for (int w : window)
                    ids.push_back(at_pos[static_cast<std::size_t>(fpos[static_cast<std::size_t>(w)])]);
                bool ok = score_in(ids, probe) < rho;
                delta_memo.emplace(std::move(key), ok ? 1 : 0);
                return ok;
            };

            std::map<std::vector<int>, Count> memo;
            std::function<Count(const std::vector<int>&, long long)> count_left =
                [&](const std::vector<int>& window, long long s) -> Count {
                int prev_fixed = -1;
                for (int q = window.front() - 1; q >= 0; --q) {
                    if (!addable[static_cast<std::size_t>(q)]) {
                        prev_fixed = q;
                        break;
                    }
                }
                if (prev_fixed < 0) return 1;  // window sits on the left dummies

                std::vector<int> key = window;
                key.push_back(static_cast<int>(s));
                auto it = memo.find(key);
                if (it != memo.end()) return it->second;

                Count total = 0;
                for (int z = prev_fixed; z < window.front(); ++z) {
                    long long cost = addable[static_cast<std::size_t>(z)] ? 1 : 0;
                    if (s - cost < 0) continue;
                    if (!delta(window, z)) continue;
                    std::vector<int> next;
                    next.push_back(z);
                    next.insert(next.end(), window.begin(), window.end() - 1);
                    total += count_left(next, s - cost);
                }
                memo.emplace(std::move(key), total);
                return total;
            };

            std::vector<int> initial;
            for (int i = fsize - 2 * k; i < fsize; ++i) initial.push_back(i);
            answer += count_left(initial, slack);
        }
    }

    // Padding misreads exactly one degenerate subset: with p alone registered
    // the empty addition always wins, but a padded election only shows it for
    // k = 1 with at least one voter.
    if (orig.candidates.size() == 1 &&
        !(k == 1 && !orig.registered.empty()))
        answer += 1;

    return answer;
}

}  // namespace electctl
