#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "fsr/simulator.hpp"

namespace fsr {

// Task-completion deadline constants: teams must finish within
// c1 * (|E| + |Q|)^c2 timesteps.
struct Completability {
    long long c1 = 10;
    long long c2 = 3;
};

struct TeamEnvVerInstance {
    Environment env;
    Team team;
    std::vector<Position> p_I;
    long long ec_budget = 0;
    TargetConfiguration task;
};

struct VerifyResult {
    bool yes = false;
    RunResult run;
};

// Bounded verification. The decision is exact for deterministic teams
// whenever the run ends in Success or CycleDetected.
VerifyResult verify_team_env(const TeamEnvVerInstance& inst, long long step_budget,
                             bool detect_cycles);

long long default_verify_budget(const TeamEnvVerInstance& inst);

struct TeamDesLSInstance {
    Environment env;
    int team_size = 1;
    std::vector<std::shared_ptr<const Controller>> library;
    std::vector<Position> initial_region;  // |initial_region| == team_size
    int max_controller_types = 1;          // h
    bool exact_h = false;                  // require exactly h distinct types
    bool try_permutations = false;         // search all robot-to-square placements
    long long ec_budget = 0;
    TargetConfiguration task;
    Completability comp;
};

struct ContDesLSInstance {
    Environment env;
    int team_size = 1;
    std::vector<Position> p_I;
    std::vector<TransitionTemplate> library;
    int radius = 0;
    int max_states = 1;     // |Q|
    int max_out_degree = 1; // d
    int max_controller_types = 1;  // h
    long long ec_budget = 0;
    TargetConfiguration task;
    Completability comp;
};

// Found(solution + witness) or Bot.
struct DesignOutcome {
    bool found = false;
    Team team;                          // the solution team (empty on Bot)
    std::vector<int> library_choice;    // per-robot library index (team design)
    std::vector<Controller> controllers;  // synthesized controllers (controller design)
    std::vector<Position> placement;    // robot i starts at placement[i]
    RunResult witness;

    static DesignOutcome bot() { return {}; }
};

// Robot i is placed on the i-th region square in row-major order
// (south-to-north, then west-to-east).
std::vector<Position> canonical_placement(std::vector<Position> region);

long long design_step_budget(const Environment& env, int maxQ, const Completability& comp);

// Result C: try each library controller as a homogeneous team; polynomial.
DesignOutcome design_team_homogeneous(const TeamDesLSInstance& inst);

// Exhaustive team design over library assignments; first Success in
// lexicographic assignment order wins.
DesignOutcome design_team_ls(const TeamDesLSInstance& inst,
                             long long candidate_cap = 50'000'000);

// Controller design by library selection. For single-robot homogeneous
// instances this runs a complete backtracking synthesis that commits
// transitions at the step where they first fire; otherwise it enumerates
// candidate controllers outright. Both are exact searches.
DesignOutcome design_controllers_ls(const ContDesLSInstance& inst,
                                    long long node_cap = 200'000'000);

} // namespace fsr
