#pragma once

#include <cstdint>
#include <iosfwd>
#include <random>

#include "electctl/counters.hpp"

namespace electctl::verify {

// Thin wrapper so generated instances do not depend on the standard
// library's distribution internals.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}
    std::uint64_t next() { return eng_(); }
    // Uniform in [lo, hi], inclusive.
    long long uniform(long long lo, long long hi);
    bool chance(double p);
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i)
            std::swap(v[i - 1], v[static_cast<std::size_t>(uniform(0, static_cast<long long>(i) - 1))]);
    }

  private:
    std::mt19937_64 eng_;
};

struct ElectionShape {
    int max_candidates = 7;   // |C u A|
    int max_voters = 8;       // |V| + |W|
    bool single_peaked = false;
    bool with_unregistered_voters = false;
    bool with_unregistered_candidates = false;
    BallotKind kind = BallotKind::Ordinal;
};

Ballot random_ordinal_ballot(Rng& rng, std::size_t universe);
Ballot random_sp_ballot(Rng& rng, const SocietalAxis& axis);
Ballot random_approval_ballot(Rng& rng, std::size_t universe);

Election random_election(Rng& rng, const ElectionShape& shape);

// Random instance for a given cell; designated candidate chosen uniformly.
ControlInstance random_instance(Rng& rng, const Rule& rule, ControlAction action,
                                ControlMode mode, const ElectionShape& shape, long long budget);

struct VerifyConfig {
    std::uint64_t seed = 1;
    int trials = 100;
    int max_candidates = 6;
    int max_voters = 7;
};

struct VerifyOutcome {
    int checks = 0;
    int failures = 0;
    bool ok() const { return failures == 0; }
};

// Oracle-equivalence and identity suites over seeded random instances.
// Progress and failure reports (with the seed) go to `out`.
VerifyOutcome run_verification(const VerifyConfig& config, std::ostream& out);

}  // namespace electctl::verify
