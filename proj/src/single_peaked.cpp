#include "electctl/single_peaked.hpp"

#include <algorithm>

namespace electctl {

bool is_single_peaked_wrt(const Ballot& ballot, const SocietalAxis& axis) {
    if (ballot.items.size() != axis.size())
        throw IncompatibleError("ballot and axis cover different universes");
    CandidateId max_id = 0;
    for (CandidateId c : axis) max_id = std::max(max_id, c);
    std::vector<int> axis_pos(max_id + 1, -1);
    for (std::size_t i = 0; i < axis.size(); ++i) axis_pos[axis[i]] = static_cast<int>(i);
    for (CandidateId c : ballot.items)
        if (c > max_id || axis_pos[c] < 0)
            throw IncompatibleError("ballot and axis cover different universes");
    // Each ballot prefix must be a contiguous axis interval, so every new
    // candidate extends the interval by exactly one position.
    int lo = axis_pos[ballot.items[0]];
    int hi = lo;
    for (std::size_t i = 1; i < ballot.items.size(); ++i) {
        int p = axis_pos[ballot.items[i]];
        if (p == lo - 1)
            lo = p;
        else if (p == hi + 1)
            hi = p;
        else
            return false;
    }
    return true;
}

bool verify_profile(const Election& e) {
    if (!e.axis) throw IncompatibleError("axis required");
    if (e.kind != BallotKind::Ordinal) throw IncompatibleError("ordinal profile required");
    for (const Ballot& b : e.registered)
        if (!is_single_peaked_wrt(b, *e.axis)) return false;
    for (const Ballot& b : e.unregistered)
        if (!is_single_peaked_wrt(b, *e.axis)) return false;
    return true;
}

SocietalAxis axis_restricted_to(const SocietalAxis& axis, const std::vector<char>& active) {
    SocietalAxis out;
    for (CandidateId c : axis)
        if (active[c]) out.push_back(c);
    return out;
}

bool verify_profile_over_registered(const Election& e) {
    if (!e.axis) throw IncompatibleError("axis required");
    if (e.kind != BallotKind::Ordinal) throw IncompatibleError("ordinal profile required");
    if (e.unregistered_candidates.empty()) return verify_profile(e);

    std::vector<char> active = mask_of(e.candidates, e.universe_size());
    SocietalAxis axis = axis_restricted_to(*e.axis, active);
    auto check = [&](const Ballot& b) {
        return is_single_peaked_wrt(restrict_ballot(b, e.kind, active), axis);
    };
    for (const Ballot& b : e.registered)
        if (!check(b)) return false;
    for (const Ballot& b : e.unregistered)
        if (!check(b)) return false;
    return true;
}

}  // namespace electctl
