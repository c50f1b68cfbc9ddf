#pragma once

#include <map>
#include <string>
#include <vector>

#include "fsr/problems.hpp"

namespace fsr {

// CNF in DIMACS convention: literal +i / -i for variable i (1-based).
struct Cnf {
    int num_vars = 0;
    std::vector<std::vector<int>> clauses;
};

Cnf parse_dimacs_cnf(const std::string& text);
std::string render_dimacs_cnf(const Cnf& f);

struct Graph {
    int num_vertices = 0;
    std::vector<std::pair<int, int>> edges;  // 1-based endpoints

    // Closed neighborhoods N[v], sorted, 1-based.
    std::vector<std::vector<int>> closed_neighborhoods() const;
};

// DIMACS graph format: "p edge n m" then "e u v" lines.
Graph parse_dimacs_graph(const std::string& text);

// Mapping data that lets a solution of the produced instance be read back
// as a solution of the source problem.
struct ReductionCertificate {
    std::vector<std::string> notes;
    std::map<std::string, std::string> facts;
};

struct ContDesLSReduction {
    ContDesLSInstance instance;
    ReductionCertificate cert;
};

struct TeamEnvVerReduction {
    TeamEnvVerInstance instance;
    ReductionCertificate cert;
};

struct TeamDesLSReduction {
    TeamDesLSInstance instance;
    ReductionCertificate cert;
};

// Dominating-set instance (g, k) to single-robot controller design with a
// library of one east template per vertex plus a default north template.
// The designed controller's east guards name a dominating set of size <= k.
ContDesLSReduction reduce_domset_to_contdesls(const Graph& g, int k);

// Adds a descent staircase west of the base grid that consumes controller
// states, raising the state budget to max_states. Extends the template
// library with per-rung south/east templates and a bridge east template.
ContDesLSReduction extend_with_state_ladder(const ContDesLSReduction& base, int k,
                                            int max_states);

// 3SAT to team/environment verification: a binary counter made of one
// carry robot and one robot per variable, plus an evaluator robot that
// tests each assignment; the goal square is reachable iff f is satisfiable.
TeamEnvVerReduction reduce_3sat_to_teamenvver(const Cnf& f);

// 3SAT to team design by library selection with h = 2: one robot per
// variable chooses the True-lane or False-lane controller; clause-row gates
// let the whole team advance iff every clause is satisfied.
TeamDesLSReduction reduce_3sat_to_teamdesls(const Cnf& f);

// Walled-off square of idle robots cycling through states_per_robot states.
// Inflates team size (and for design instances the library and h) without
// affecting solvability.
void add_holding_area(TeamEnvVerInstance& inst, int extra_robots, int states_per_robot);
void add_holding_area(TeamDesLSInstance& inst, int extra_robots, int states_per_robot);

} // namespace fsr
