#pragma once

#include "electctl/election.hpp"

namespace electctl {

// True iff every ballot prefix is a contiguous interval of the axis.
// Equivalent to the triple condition (a L b L c or c L b L a) => (a > b => b > c).
bool is_single_peaked_wrt(const Ballot& ballot, const SocietalAxis& axis);

// All registered and unregistered ballots, over the full universe.
// Throws when the election has no axis or non-ordinal ballots.
bool verify_profile(const Election& e);

// Variant used by voter-control algorithms: ballots and axis restricted to
// the registered candidate set.
bool verify_profile_over_registered(const Election& e);

SocietalAxis axis_restricted_to(const SocietalAxis& axis, const std::vector<char>& active);

}  // namespace electctl
