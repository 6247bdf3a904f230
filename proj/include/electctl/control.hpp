#pragma once

#include <string>

#include "electctl/election.hpp"

namespace electctl {

enum class ControlAction { AddVoters, DeleteVoters, AddCandidates, DeleteCandidates };
enum class ControlMode { Constructive, Destructive };

std::string to_string(ControlAction a);
std::string to_string(ControlMode m);

// Problem code like "ccav" -> (Constructive, AddVoters).
std::pair<ControlMode, ControlAction> parse_problem_code(const std::string& code);
std::string problem_code(ControlMode mode, ControlAction action);

struct ControlInstance {
    Election election;
    Rule rule;
    ControlAction action = ControlAction::AddVoters;
    ControlMode mode = ControlMode::Constructive;
    CandidateId designated = 0;
    long long budget = 0;
};

// AV: |W|, DV: |V|, AC: |A|, DC: |C|-1 (the designated candidate stays).
long long pool_size(const ControlInstance& inst);
long long clamped_budget(const ControlInstance& inst);

ControlInstance with_mode(ControlInstance inst, ControlMode mode);
ControlInstance with_budget(ControlInstance inst, long long budget);

// Structural checks: designated registered, rule/ballot compatibility,
// nonnegative budget.
void validate_instance(const ControlInstance& inst);

// Whether the designated candidate currently meets the instance's goal.
bool goal_holds_status_quo(const ControlInstance& inst);

}  // namespace electctl
