#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "electctl/oracle.hpp"

namespace electctl {

enum class AlgorithmTag {
    Oracle,
    Thm1Complement,
    Thm2AddCombinator,
    PluralityAvDp,
    KApprovalSpAcDp,
    KApprovalSpAvDp,
    CondorcetSpAv,
    ApprovalCcdcClosed,
    CondorcetCcdcClosed,
    ApprovalDcac,
    CondorcetDcac,
    CondorcetConsistentSpMap,
};

const char* to_string(AlgorithmTag tag);

struct CountResult {
    Count count;
    AlgorithmTag algorithm = AlgorithmTag::Oracle;
    // Set on cells the classical control literature marks immune; the count
    // is still the literal number of qualifying action sets.
    bool immune_cell = false;
};

// Total number of allowed control actions: sum_{i<=min(k,pool)} C(pool, i).
Count total_actions(const ControlInstance& inst);

using InstanceCounter = std::function<CountResult(const ControlInstance&)>;

// Constructive and destructive counts of the same instance sum to
// total_actions, so either one determines the other.
CountResult complement_mode(const ControlInstance& inst, const InstanceCounter& opposite_counter);

// Deleting-variant counts from two adding-variant calls on derived instances.
CountResult delete_via_add(const ControlInstance& inst, const InstanceCounter& add_counter);

// Plurality #CCAV, unrestricted profiles.
Count count_plurality_ccav(const ControlInstance& inst);

// k-Approval #CCAC for single-peaked profiles (fixed k); enumerates directly
// when the universe has at most 4k candidates.
Count count_kapproval_sp_ccac(const ControlInstance& inst, const OracleOptions& opts = {});

// k-Approval #CCAV for single-peaked profiles (fixed k). `tie_break`, when
// given, permutes voters with equal top-block rank; counts are independent of
// it (asserted by tests, not assumed).
Count count_kapproval_sp_ccav(const ControlInstance& inst,
                              const std::vector<std::size_t>* tie_break = nullptr);

// Condorcet #CCAV for single-peaked profiles (median-voter argument).
Count count_condorcet_sp_ccav(const ControlInstance& inst);

// Approval / Condorcet #CCDC closed form.
Count count_approval_or_condorcet_ccdc(const ControlInstance& inst);

// Approval / Condorcet #DCAC closed form.
Count count_approval_or_condorcet_dcac(const ControlInstance& inst);

enum class Strategy { Auto, ForceOracle, ForceDp };

struct DispatchOptions {
    Strategy strategy = Strategy::Auto;
    OracleOptions oracle;
    // Overrides the election's own axis when set.
    std::optional<SocietalAxis> axis_hint;
};

// Picks the best algorithm for the instance's cell: closed forms, then
// single-peaked DPs, then the deleting->adding combinator, then the mode
// complement, then the oracle.
CountResult dispatch(const ControlInstance& inst, const DispatchOptions& opts = {});

// dispatch(budget=i) - dispatch(budget=i-1); reports the tags used.
Count dispatch_exact_size(const ControlInstance& inst, long long size, const DispatchOptions& opts,
                          std::vector<AlgorithmTag>* tags_used = nullptr);

}  // namespace electctl
