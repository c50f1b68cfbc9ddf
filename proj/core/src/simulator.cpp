#include "fsr/simulator.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <unordered_map>

namespace fsr {

int Team::distinct_controller_count() const {
    std::vector<const Controller*> seen;
    for (const auto& c : robots) {
        bool found = false;
        for (const Controller* s : seen)
            if (controller_equal(*s, *c)) {
                found = true;
                break;
            }
        if (!found) seen.push_back(c.get());
    }
    return static_cast<int>(seen.size());
}

int Team::max_states() const {
    int m = 0;
    for (const auto& c : robots) m = std::max(m, c->num_states());
    return m;
}

int Team::max_radius() const {
    int m = 0;
    for (const auto& c : robots) m = std::max(m, c->radius);
    return m;
}

uint64_t Configuration::digest() const {
    uint64_t h = env.digest();
    auto mix = [&h](uint64_t v) {
        h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    };
    for (const auto& p : positions) {
        mix(static_cast<uint64_t>(p.col));
        mix(static_cast<uint64_t>(p.row));
    }
    for (int s : states) mix(static_cast<uint64_t>(s));
    return h;
}

Configuration initial_configuration(const Environment& env, const Team& team,
                                    const std::vector<Position>& p_I) {
    if (static_cast<int>(p_I.size()) != team.size())
        throw ModelError("positioning size does not match team size");
    Configuration c;
    c.env = env;
    c.positions = p_I;
    for (size_t i = 0; i < p_I.size(); ++i) {
        if (!env.in_bounds(p_I[i])) throw ModelError("initial position out of bounds");
        if (env.is_obstacle(p_I[i])) throw ModelError("initial position on an obstacle");
        for (size_t j = i + 1; j < p_I.size(); ++j)
            if (p_I[i] == p_I[j]) throw ModelError("two robots share an initial position");
    }
    for (int i = 0; i < team.size(); ++i) c.states.push_back(team.controller(i).initial);
    return c;
}

namespace {

// Kuhn's augmenting-path bipartite matching: requirement -> robot.
bool try_match(int req, const std::vector<std::vector<int>>& candidates,
               std::vector<int>& req_to_robot, std::vector<int>& robot_to_req,
               std::vector<bool>& visited) {
    for (int robot : candidates[static_cast<size_t>(req)]) {
        if (visited[static_cast<size_t>(robot)]) continue;
        visited[static_cast<size_t>(robot)] = true;
        if (robot_to_req[static_cast<size_t>(robot)] < 0 ||
            try_match(robot_to_req[static_cast<size_t>(robot)], candidates, req_to_robot,
                      robot_to_req, visited)) {
            req_to_robot[static_cast<size_t>(req)] = robot;
            robot_to_req[static_cast<size_t>(robot)] = req;
            return true;
        }
    }
    return false;
}

} // namespace

bool check_target(const Configuration& c, const Team& team, const TargetConfiguration& tgt) {
    for (const auto& [pos, type] : tgt.square_requirements) {
        if (!c.env.in_bounds(pos)) return false;
        if (c.env.square_at(pos) != type) return false;
    }

    auto robot_state_name = [&](int i) -> const std::string& {
        return team.controller(i)
            .state_names[static_cast<size_t>(c.states[static_cast<size_t>(i)])];
    };

    // Fixed-index requirements first.
    std::vector<std::vector<int>> candidates;  // per "any" requirement
    for (const auto& [sel, pos] : tgt.position_requirements) {
        if (!sel.any) {
            if (sel.index < 0 || sel.index >= team.size()) return false;
            if (c.positions[static_cast<size_t>(sel.index)] != pos) return false;
        } else {
            std::vector<int> cand;
            for (int i = 0; i < team.size(); ++i)
                if (c.positions[static_cast<size_t>(i)] == pos) cand.push_back(i);
            candidates.push_back(std::move(cand));
        }
    }
    for (const auto& [sel, state] : tgt.state_requirements) {
        if (!sel.any) {
            if (sel.index < 0 || sel.index >= team.size()) return false;
            if (robot_state_name(sel.index) != state) return false;
        } else {
            std::vector<int> cand;
            for (int i = 0; i < team.size(); ++i)
                if (robot_state_name(i) == state) cand.push_back(i);
            candidates.push_back(std::move(cand));
        }
    }

    // Injective matching of "any" requirements to robots.
    std::vector<int> req_to_robot(candidates.size(), -1);
    std::vector<int> robot_to_req(static_cast<size_t>(team.size()), -1);
    for (size_t r = 0; r < candidates.size(); ++r) {
        std::vector<bool> visited(static_cast<size_t>(team.size()), false);
        if (!try_match(static_cast<int>(r), candidates, req_to_robot, robot_to_req, visited))
            return false;
    }
    return true;
}

const char* to_string(FailureReason::Kind k) {
    switch (k) {
        case FailureReason::Kind::DeterminismViolation: return "DeterminismViolation";
        case FailureReason::Kind::Collision: return "Collision";
        case FailureReason::Kind::ObstacleEntry: return "ObstacleEntry";
        case FailureReason::Kind::ModificationConflict: return "ModificationConflict";
        case FailureReason::Kind::EcBudgetExceeded: return "EcBudgetExceeded";
    }
    return "?";
}

const char* to_string(RunResult::Outcome o) {
    switch (o) {
        case RunResult::Outcome::Success: return "Success";
        case RunResult::Outcome::Failure: return "Failure";
        case RunResult::Outcome::StepBudgetExhausted: return "StepBudgetExhausted";
        case RunResult::Outcome::CycleDetected: return "CycleDetected";
    }
    return "?";
}

namespace {

Offset direction_delta(Direction d) {
    switch (d) {
        case Direction::North: return {0, 1};
        case Direction::South: return {0, -1};
        case Direction::East: return {1, 0};
        case Direction::West: return {-1, 0};
        case Direction::Stay: return {0, 0};
    }
    return {0, 0};
}

struct ChosenAction {
    ModSpec mod;
    Direction dir = Direction::Stay;
    int next_state = 0;
};

// Applies one synchronous step to `c` in place; returns the failure, if any.
std::optional<FailureReason> step_inplace(Configuration& c, const Team& team,
                                          std::vector<std::pair<Position, std::string>>* mods_out) {
    const int n = team.size();
    std::vector<ChosenAction> actions(static_cast<size_t>(n));

    for (int i = 0; i < n; ++i) {
        const Controller& ctrl = team.controller(i);
        Percept p = percept_of(c.env, c.positions, c.positions[static_cast<size_t>(i)],
                               ctrl.radius);
        auto enabled = enabled_transitions(ctrl, c.states[static_cast<size_t>(i)], p);
        if (enabled.empty()) {
            actions[static_cast<size_t>(i)] =
                ChosenAction{ModSpec::none(), Direction::Stay, c.states[static_cast<size_t>(i)]};
            continue;
        }
        const Transition* first = enabled.front();
        for (const Transition* t : enabled) {
            if (!(t->mod == first->mod) || t->dir != first->dir || t->to != first->to)
                return FailureReason{FailureReason::Kind::DeterminismViolation, i, {}, c.t};
        }
        actions[static_cast<size_t>(i)] = ChosenAction{first->mod, first->dir, first->to};
    }

    // Joint movement validation. Off-grid squares behave like obstacles.
    std::vector<Position> dests(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        Offset d = direction_delta(actions[static_cast<size_t>(i)].dir);
        Position from = c.positions[static_cast<size_t>(i)];
        Position to{from.col + d.dx, from.row + d.dy};
        if (!c.env.in_bounds(to) || c.env.is_obstacle(to))
            return FailureReason{FailureReason::Kind::ObstacleEntry, i, to, c.t};
        dests[static_cast<size_t>(i)] = to;
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (dests[static_cast<size_t>(i)] == dests[static_cast<size_t>(j)])
                return FailureReason{FailureReason::Kind::Collision, j,
                                     dests[static_cast<size_t>(i)], c.t};

    // Modification validation.
    std::vector<std::pair<int, Position>> mods;  // robot, target square
    for (int i = 0; i < n; ++i) {
        const ModSpec& m = actions[static_cast<size_t>(i)].mod;
        if (m.star) continue;
        Position from = c.positions[static_cast<size_t>(i)];
        Position at{from.col + m.off.dx, from.row + m.off.dy};
        if (!c.env.in_bounds(at) || c.env.is_obstacle(at))
            return FailureReason{FailureReason::Kind::ModificationConflict, i, at, c.t};
        if (c.env.type_id(m.type) < 0)
            throw ModelError("modification writes type '" + m.type + "' not in legend");
        mods.emplace_back(i, at);
    }
    for (size_t a = 0; a < mods.size(); ++a) {
        for (size_t b = a + 1; b < mods.size(); ++b)
            if (mods[a].second == mods[b].second)
                return FailureReason{FailureReason::Kind::ModificationConflict,
                                     mods[b].first, mods[a].second, c.t};
        for (int j = 0; j < n; ++j)
            if (j != mods[a].first && dests[static_cast<size_t>(j)] == mods[a].second)
                return FailureReason{FailureReason::Kind::ModificationConflict,
                                     mods[a].first, mods[a].second, c.t};
    }

    // Apply modifications, then moves.
    for (const auto& [robot, at] : mods) {
        const ModSpec& m = actions[static_cast<size_t>(robot)].mod;
        c.env.set_square(at, m.type);
        if (mods_out) mods_out->emplace_back(at, m.type);
    }
    for (int i = 0; i < n; ++i) {
        c.positions[static_cast<size_t>(i)] = dests[static_cast<size_t>(i)];
        c.states[static_cast<size_t>(i)] = actions[static_cast<size_t>(i)].next_state;
    }
    c.t += 1;
    c.ec += static_cast<long long>(mods.size());
    return std::nullopt;
}

} // namespace

std::variant<Configuration, FailureReason> step(const Configuration& c, const Team& team) {
    Configuration next = c;
    if (auto fail = step_inplace(next, team, nullptr)) return *fail;
    return next;
}

RunResult run(Configuration c0, const Team& team, const TargetConfiguration& tgt,
              const RunOptions& opts) {
    RunResult result;
    Configuration c = std::move(c0);

    if (check_target(c, team, tgt)) {
        result.outcome = RunResult::Outcome::Success;
        result.success_t = c.t;
        return result;
    }

    std::unordered_map<uint64_t, std::vector<Configuration>> seen;
    if (opts.detect_cycles) seen[c.digest()].push_back(c);

    for (long long s = 0; s < opts.step_budget; ++s) {
        std::vector<std::pair<Position, std::string>> mods;
        auto fail = step_inplace(c, team, opts.record_trace ? &mods : nullptr);
        if (fail) {
            result.outcome = RunResult::Outcome::Failure;
            result.failure = *fail;
            return result;
        }
        if (opts.record_trace)
            result.trace.push_back(StepRecord{c.t, c.positions, c.states, std::move(mods), c.ec});
        if (c.ec > opts.ec_budget) {
            result.outcome = RunResult::Outcome::Failure;
            result.failure = FailureReason{FailureReason::Kind::EcBudgetExceeded, -1, {}, c.t};
            return result;
        }
        if (check_target(c, team, tgt)) {
            result.outcome = RunResult::Outcome::Success;
            result.success_t = c.t;
            return result;
        }
        if (opts.detect_cycles) {
            auto& bucket = seen[c.digest()];
            for (const Configuration& prev : bucket) {
                if (c.same_world(prev)) {
                    result.outcome = RunResult::Outcome::CycleDetected;
                    return result;
                }
            }
            bucket.push_back(c);
        }
    }
    result.outcome = RunResult::Outcome::StepBudgetExhausted;
    return result;
}

long long steps_bound(long long c1, long long c2, long long env_size, long long maxQ) {
    if (c1 < 1 || c2 < 1 || env_size < 0 || maxQ < 0)
        throw ModelError("steps_bound: arguments out of range");
    const long long cap = std::numeric_limits<long long>::max();
    __int128 base = static_cast<__int128>(env_size) + maxQ;
    __int128 acc = c1;
    for (long long i = 0; i < c2; ++i) {
        acc *= base;
        if (acc > static_cast<__int128>(cap)) return cap;  // saturate
    }
    return static_cast<long long>(acc);
}

std::string render_trace(const RunResult& r, const Team& team) {
    std::ostringstream out;
    for (const auto& rec : r.trace) {
        out << "t=" << rec.t << " pos=<";
        for (size_t i = 0; i < rec.positions.size(); ++i) {
            if (i) out << ' ';
            out << i << ":(" << rec.positions[i].col << ',' << rec.positions[i].row << ')';
        }
        out << "> state=<";
        for (size_t i = 0; i < rec.states.size(); ++i) {
            if (i) out << ' ';
            out << i << ':'
                << team.controller(static_cast<int>(i))
                       .state_names[static_cast<size_t>(rec.states[i])];
        }
        out << "> mods=<";
        for (size_t i = 0; i < rec.mods.size(); ++i) {
            if (i) out << ' ';
            out << '(' << rec.mods[i].first.col << ',' << rec.mods[i].first.row
                << "):" << rec.mods[i].second;
        }
        out << "> ec=" << rec.ec << '\n';
    }
    return out.str();
}

uint64_t trace_digest(const RunResult& r, const Team& team) {
    std::string text = render_trace(r, team);
    uint64_t h = 1469598103934665603ull;
    for (char ch : text) {
        h ^= static_cast<uint8_t>(ch);
        h *= 1099511628211ull;
    }
    return h;
}

} // namespace fsr
