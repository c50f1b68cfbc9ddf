#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "fsr/controller.hpp"
#include "fsr/gridworld.hpp"

namespace fsr {

// Ordered list of robots; several robots may share one controller.
struct Team {
    std::vector<std::shared_ptr<const Controller>> robots;

    int size() const { return static_cast<int>(robots.size()); }
    const Controller& controller(int i) const { return *robots[static_cast<size_t>(i)]; }
    // h: number of structurally distinct controllers on the team.
    int distinct_controller_count() const;
    int max_states() const;
    int max_radius() const;
};

// Full team-simulation state.
struct Configuration {
    Environment env;
    std::vector<Position> positions;
    std::vector<int> states;
    long long t = 0;
    long long ec = 0;

    uint64_t digest() const;  // over env, positions, states (not t/ec)
    bool same_world(const Configuration& other) const {
        return positions == other.positions && states == other.states && env == other.env;
    }
};

// Builds the t=0 configuration and checks placement validity.
Configuration initial_configuration(const Environment& env, const Team& team,
                                    const std::vector<Position>& p_I);

struct RobotSelector {
    bool any = false;
    int index = 0;  // when !any

    static RobotSelector any_robot() { return {true, 0}; }
    static RobotSelector robot(int i) { return {false, i}; }
    friend bool operator==(const RobotSelector&, const RobotSelector&) = default;
};

// A task's goal: required square types, robot positions, and robot states.
// "any robot" requirements are satisfied by an injective matching.
struct TargetConfiguration {
    std::vector<std::pair<Position, std::string>> square_requirements;
    std::vector<std::pair<RobotSelector, Position>> position_requirements;
    std::vector<std::pair<RobotSelector, std::string>> state_requirements;  // state names

    bool empty() const {
        return square_requirements.empty() && position_requirements.empty() &&
               state_requirements.empty();
    }
};

bool check_target(const Configuration& c, const Team& team, const TargetConfiguration& tgt);

struct FailureReason {
    enum class Kind {
        DeterminismViolation,
        Collision,
        ObstacleEntry,
        ModificationConflict,
        EcBudgetExceeded
    };
    Kind kind;
    int robot = -1;       // DeterminismViolation / ObstacleEntry
    Position square{};    // Collision / ModificationConflict
    long long t = 0;      // timestep at which the step failed
};

const char* to_string(FailureReason::Kind k);

struct StepRecord {
    long long t = 0;
    std::vector<Position> positions;
    std::vector<int> states;
    std::vector<std::pair<Position, std::string>> mods;
    long long ec = 0;
};

struct RunResult {
    enum class Outcome { Success, Failure, StepBudgetExhausted, CycleDetected };
    Outcome outcome = Outcome::StepBudgetExhausted;
    long long success_t = -1;
    std::optional<FailureReason> failure;
    std::vector<StepRecord> trace;
};

const char* to_string(RunResult::Outcome o);

// One synchronous step. Returns the next configuration or the failure that
// terminated the run.
std::variant<Configuration, FailureReason> step(const Configuration& c, const Team& team);

struct RunOptions {
    long long step_budget = 0;
    long long ec_budget = 0;
    bool detect_cycles = false;
    bool record_trace = true;
};

RunResult run(Configuration c0, const Team& team, const TargetConfiguration& tgt,
              const RunOptions& opts);

// c1 * (env_size + maxQ)^c2, saturating at the int64 maximum.
long long steps_bound(long long c1, long long c2, long long env_size, long long maxQ);

std::string render_trace(const RunResult& r, const Team& team);
uint64_t trace_digest(const RunResult& r, const Team& team);

} // namespace fsr
