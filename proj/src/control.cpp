#include "electctl/control.hpp"

#include <algorithm>

namespace electctl {

std::string to_string(ControlAction a) {
    switch (a) {
        case ControlAction::AddVoters: return "AV";
        case ControlAction::DeleteVoters: return "DV";
        case ControlAction::AddCandidates: return "AC";
        case ControlAction::DeleteCandidates: return "DC";
    }
    return "?";
}

std::string to_string(ControlMode m) {
    return m == ControlMode::Constructive ? "constructive" : "destructive";
}

std::pair<ControlMode, ControlAction> parse_problem_code(const std::string& code) {
    if (code.size() != 4) throw IncompatibleError("unknown problem code: " + code);
    std::string lower = code;
    std::transform(lower.begin(), lower.end(), lower.begin(), ::tolower);
    ControlMode mode;
    if (lower.substr(0, 2) == "cc")
        mode = ControlMode::Constructive;
    else if (lower.substr(0, 2) == "dc")
        mode = ControlMode::Destructive;
    else
        throw IncompatibleError("unknown problem code: " + code);
    ControlAction action;
    std::string act = lower.substr(2);
    if (act == "av")
        action = ControlAction::AddVoters;
    else if (act == "dv")
        action = ControlAction::DeleteVoters;
    else if (act == "ac")
        action = ControlAction::AddCandidates;
    else if (act == "dc")
        action = ControlAction::DeleteCandidates;
    else
        throw IncompatibleError("unknown problem code: " + code);
    return {mode, action};
}

std::string problem_code(ControlMode mode, ControlAction action) {
    std::string s = mode == ControlMode::Constructive ? "cc" : "dc";
    switch (action) {
        case ControlAction::AddVoters: return s + "av";
        case ControlAction::DeleteVoters: return s + "dv";
        case ControlAction::AddCandidates: return s + "ac";
        case ControlAction::DeleteCandidates: return s + "dc";
    }
    return s + "??";
}

long long pool_size(const ControlInstance& inst) {
    switch (inst.action) {
        case ControlAction::AddVoters:
            return static_cast<long long>(inst.election.unregistered.size());
        case ControlAction::DeleteVoters:
            return static_cast<long long>(inst.election.registered.size());
        case ControlAction::AddCandidates:
            return static_cast<long long>(inst.election.unregistered_candidates.size());
        case ControlAction::DeleteCandidates:
            return static_cast<long long>(inst.election.candidates.size()) - 1;
    }
    return 0;
}

long long clamped_budget(const ControlInstance& inst) {
    return std::min(inst.budget, pool_size(inst));
}

ControlInstance with_mode(ControlInstance inst, ControlMode mode) {
    inst.mode = mode;
    return inst;
}

ControlInstance with_budget(ControlInstance inst, long long budget) {
    inst.budget = budget;
    return inst;
}

void validate_instance(const ControlInstance& inst) {
    validate_election(inst.election);
    if (inst.budget < 0) throw IncompatibleError("budget must be nonnegative");
    if (inst.rule.kind == Rule::Kind::KApproval && inst.rule.approval_k < 1)
        throw IncompatibleError("k-approval requires k >= 1");
    if (inst.rule.needs_ordinal() && inst.election.kind != BallotKind::Ordinal)
        throw IncompatibleError("ordinal profile required");
    if (!inst.rule.needs_ordinal() && inst.election.kind != BallotKind::Approval)
        throw IncompatibleError("approval profile required");
    const auto& regs = inst.election.candidates;
    if (std::find(regs.begin(), regs.end(), inst.designated) == regs.end())
        throw IncompatibleError("designated candidate is not registered");
}

bool goal_holds_status_quo(const ControlInstance& inst) {
    auto winner = unique_winner(inst.election, inst.rule);
    bool is_winner = winner && *winner == inst.designated;
    return inst.mode == ControlMode::Constructive ? is_winner : !is_winner;
}

}  // namespace electctl
