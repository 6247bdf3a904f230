#pragma once

#include <array>
#include <string>
#include <variant>
#include <vector>

#include "electctl/counters.hpp"

namespace electctl {

// Exact cover by 3-sets over a ground set of size 3k.
struct X3CInstance {
    std::vector<std::string> ground;            // b_1..b_3k
    std::vector<std::array<int, 3>> sets;       // indices into ground

    long long cover_size() const { return static_cast<long long>(ground.size()) / 3; }
};

void validate_x3c(const X3CInstance& src);

// Number of cover_size()-subsets of the family whose union is the ground set.
Count count_x3c(const X3CInstance& src, std::uint64_t cap = std::uint64_t(1) << 24);

struct BipartiteGraph {
    std::vector<std::string> left;               // x_1..x_n
    std::vector<std::string> right;              // y_1..y_n
    std::vector<std::pair<int, int>> edges;      // (left index, right index)

    long long side() const { return static_cast<long long>(left.size()); }
    int max_degree() const;
};

void validate_graph(const BipartiteGraph& g);

// g[j] = number of matchings with exactly j edges; g[0] = 1 and g[n] is the
// number of perfect matchings.
std::vector<Count> count_matchings_by_size(const BipartiteGraph& g,
                                           std::uint64_t cap = std::uint64_t(1) << 24);

enum class ReductionKind { Parsimonious, DifferenceOfTwo, TuringProfile };

struct ReductionArtifact {
    std::vector<ControlInstance> instances;  // 1 instance, an (I, I') pair, or I(0..n)
    std::variant<X3CInstance, BipartiteGraph> source;
    ReductionKind relationship = ReductionKind::Parsimonious;
    std::string target;           // e.g. "condorcet-ccav"
    long long blocker_count = 0;  // Maximin profile: number of blocker candidates
};

// Condorcet-#CCAV instance whose solution count equals #X3C(src).
ReductionArtifact x3c_to_condorcet_ccav(const X3CInstance& src);

// Pair (I, I') of 2-Approval-#CCAV instances with count(I) - count(I')
// equal to the number of perfect matchings.
ReductionArtifact matching_to_2approval_ccav(const BipartiteGraph& g);

// 2-Approval-#CCDV instance whose count equals the number of perfect
// matchings; requires maximum degree at least 2.
ReductionArtifact matching_to_2approval_ccdv(const BipartiteGraph& g);

// 3-Approval-#CCAV instance whose count equals the number of perfect
// matchings.
ReductionArtifact matching_to_3approval_ccav(const BipartiteGraph& g);

// Maximin-#CCDC instances I(0..n); the budget-k deltas f(k) encode the
// matching profile through a triangular system over the blocker count.
ReductionArtifact matching_to_maximin_ccdc(const BipartiteGraph& g);

// Solves g(k) = f(k) - sum_{j=1..k} C(blockers, j) g(k-j); g(0) = f(0) must
// be 1 and every g(k) must be nonnegative, otherwise the profile is
// inconsistent.
std::vector<Count> recover_matching_profile(const std::vector<Count>& f, long long blocker_count);

struct CertificationReport {
    bool pass = false;
    std::string target;
    std::string detail;                 // human-readable equation summary
    std::vector<Count> expected;        // source-side counts
    std::vector<Count> actual;          // control-side counts
};

// Re-derives both sides of the artifact's count relationship with the oracle
// and the source counters; exact equality is required.
CertificationReport certify(const ReductionArtifact& artifact, const OracleOptions& opts = {});

}  // namespace electctl
