#include "fsr/problems.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>
#include <unordered_set>

namespace fsr {

VerifyResult verify_team_env(const TeamEnvVerInstance& inst, long long step_budget,
                             bool detect_cycles) {
    Configuration c0 = initial_configuration(inst.env, inst.team, inst.p_I);
    RunOptions opts;
    opts.step_budget = step_budget;
    opts.ec_budget = inst.ec_budget;
    opts.detect_cycles = detect_cycles;
    VerifyResult r;
    r.run = run(std::move(c0), inst.team, inst.task, opts);
    r.yes = r.run.outcome == RunResult::Outcome::Success;
    return r;
}

long long default_verify_budget(const TeamEnvVerInstance& inst) {
    return steps_bound(10, 3, inst.env.size(), std::max(1, inst.team.max_states()));
}

std::vector<Position> canonical_placement(std::vector<Position> region) {
    std::sort(region.begin(), region.end(), [](Position a, Position b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    return region;
}

long long design_step_budget(const Environment& env, int maxQ, const Completability& comp) {
    return steps_bound(comp.c1, comp.c2, env.size(), maxQ);
}

namespace {

// Runs one candidate team from a fixed placement; Success means the witness
// re-run (with trace) is returned through `witness`.
bool try_candidate_team(const TeamDesLSInstance& inst, const Team& team,
                        const std::vector<Position>& placement, RunResult* witness) {
    RunOptions opts;
    opts.step_budget = design_step_budget(inst.env, std::max(1, team.max_states()), inst.comp);
    opts.ec_budget = inst.ec_budget;
    opts.detect_cycles = true;
    opts.record_trace = false;
    Configuration c0 = initial_configuration(inst.env, team, placement);
    RunResult probe = run(c0, team, inst.task, opts);
    if (probe.outcome != RunResult::Outcome::Success) return false;
    // Self-check with trace recording; must reproduce the success.
    opts.record_trace = true;
    RunResult full = run(std::move(c0), team, inst.task, opts);
    if (full.outcome != RunResult::Outcome::Success || full.success_t != probe.success_t)
        throw ModelError("design self-check failed to reproduce witness");
    *witness = std::move(full);
    return true;
}

std::vector<std::vector<Position>> placements_for(const TeamDesLSInstance& inst) {
    std::vector<std::vector<Position>> out;
    std::vector<Position> base = canonical_placement(inst.initial_region);
    if (!inst.try_permutations) {
        out.push_back(std::move(base));
        return out;
    }
    std::sort(base.begin(), base.end());
    do {
        out.push_back(base);
    } while (std::next_permutation(base.begin(), base.end()));
    return out;
}

} // namespace

DesignOutcome design_team_homogeneous(const TeamDesLSInstance& inst) {
    if (inst.max_controller_types != 1)
        throw ModelError("design_team_homogeneous requires h = 1");
    auto placements = placements_for(inst);
    for (size_t li = 0; li < inst.library.size(); ++li) {
        Team team;
        team.robots.assign(static_cast<size_t>(inst.team_size), inst.library[li]);
        for (const auto& placement : placements) {
            RunResult witness;
            if (try_candidate_team(inst, team, placement, &witness)) {
                DesignOutcome out;
                out.found = true;
                out.team = team;
                out.library_choice.assign(static_cast<size_t>(inst.team_size),
                                          static_cast<int>(li));
                out.placement = placement;
                out.witness = std::move(witness);
                return out;
            }
        }
    }
    return DesignOutcome::bot();
}

DesignOutcome design_team_ls(const TeamDesLSInstance& inst, long long candidate_cap) {
    if (inst.library.empty()) return DesignOutcome::bot();
    const int n = inst.team_size;
    const int L = static_cast<int>(inst.library.size());
    auto placements = placements_for(inst);

    std::vector<int> choice(static_cast<size_t>(n), 0);
    long long candidates = 0;
    while (true) {
        int distinct = 0;
        {
            std::vector<bool> used(static_cast<size_t>(L), false);
            for (int c : choice)
                if (!used[static_cast<size_t>(c)]) {
                    used[static_cast<size_t>(c)] = true;
                    ++distinct;
                }
        }
        bool admissible = inst.exact_h ? distinct == inst.max_controller_types
                                       : distinct <= inst.max_controller_types;
        if (admissible) {
            if (++candidates > candidate_cap)
                throw CapExceeded("design_team_ls: candidate cap exceeded");
            Team team;
            for (int c : choice) team.robots.push_back(inst.library[static_cast<size_t>(c)]);
            for (const auto& placement : placements) {
                RunResult witness;
                if (try_candidate_team(inst, team, placement, &witness)) {
                    DesignOutcome out;
                    out.found = true;
                    out.team = std::move(team);
                    out.library_choice = choice;
                    out.placement = placement;
                    out.witness = std::move(witness);
                    return out;
                }
            }
        }
        // Next assignment in lexicographic order.
        int i = n - 1;
        while (i >= 0 && choice[static_cast<size_t>(i)] == L - 1) {
            choice[static_cast<size_t>(i)] = 0;
            --i;
        }
        if (i < 0) break;
        ++choice[static_cast<size_t>(i)];
    }
    return DesignOutcome::bot();
}

// ---------------------------------------------------------------------------
// Controller design

namespace {

std::string percept_key(const Percept& p) {
    std::ostringstream out;
    for (const auto& c : p.cells)
        out << c.off.dx << ',' << c.off.dy << ':' << c.type_id << (c.obstacle ? 'o' : '.')
            << (c.robot ? 'r' : '.') << ';';
    return out.str();
}

Offset dir_delta(Direction d) {
    switch (d) {
        case Direction::North: return {0, 1};
        case Direction::South: return {0, -1};
        case Direction::East: return {1, 0};
        case Direction::West: return {-1, 0};
        case Direction::Stay: return {0, 0};
    }
    return {0, 0};
}

// Complete backtracking synthesis for single-robot, h = 1 instances.
// Transitions are committed at the simulation step where they first fire;
// a decision history per state keeps later additions consistent with the
// behavior already exercised.
class SingleRobotSynthesis {
public:
    SingleRobotSynthesis(const ContDesLSInstance& inst, long long node_cap)
        : inst_(inst), node_cap_(node_cap) {
        trans_.resize(static_cast<size_t>(inst.max_states));
        history_.resize(static_cast<size_t>(inst.max_states));
    }

    bool search() {
        Configuration c0;
        c0.env = inst_.env;
        c0.positions = inst_.p_I;
        c0.states = {0};
        long long budget = design_step_budget(inst_.env, inst_.max_states, inst_.comp);
        return dfs(c0, budget);
    }

    Controller build_controller() const {
        Controller c;
        for (int q = 0; q < inst_.max_states; ++q)
            c.state_names.push_back("s" + std::to_string(q));
        c.initial = 0;
        c.radius = inst_.radius;
        for (int q = 0; q < inst_.max_states; ++q)
            for (const auto& [tmpl, target] : trans_[static_cast<size_t>(q)])
                c.transitions.push_back(instantiate_template(
                    inst_.library[static_cast<size_t>(tmpl)], q, target));
        return c;
    }

private:
    struct Action {
        ModSpec mod;
        Direction dir;
        int to;
        bool star;
        bool operator==(const Action&) const = default;
    };

    struct HistoryEntry {
        Percept percept;
        Action action;
    };

    Action template_action(int tmpl, int target) const {
        const auto& t = inst_.library[static_cast<size_t>(tmpl)];
        return Action{t.mod, t.dir, target, t.trigger->kind == Formula::Kind::Star};
    }

    // Applies an action; returns false when the step is infeasible
    // (off-grid / obstacle move, bad modification, ec budget).
    bool apply(Configuration& c, const Action& a) const {
        Position from = c.positions[0];
        Offset d = dir_delta(a.dir);
        Position to{from.col + d.dx, from.row + d.dy};
        if (!c.env.in_bounds(to) || c.env.is_obstacle(to)) return false;
        if (!a.mod.star) {
            Position at{from.col + a.mod.off.dx, from.row + a.mod.off.dy};
            if (!c.env.in_bounds(at) || c.env.is_obstacle(at)) return false;
            if (c.env.type_id(a.mod.type) < 0) return false;
            c.env.set_square(at, a.mod.type);
            c.ec += 1;
            if (c.ec > inst_.ec_budget) return false;
        }
        c.positions[0] = to;
        c.states[0] = a.to;
        c.t += 1;
        return true;
    }

    // A newly added transition must not change any decision already taken
    // in state q. Enabledness of a non-Star is its trigger value; a Star is
    // enabled where no committed non-Star fires.
    bool consistent_addition(int q, int tmpl, int target) const {
        const auto& t = inst_.library[static_cast<size_t>(tmpl)];
        bool is_star = t.trigger->kind == Formula::Kind::Star;
        Action a = template_action(tmpl, target);
        for (const auto& [key, entry] : history_[static_cast<size_t>(q)]) {
            bool fires;
            if (is_star)
                fires = !any_nonstar_enabled(q, entry.percept);
            else
                fires = eval_trigger(t.trigger, entry.percept);
            if (fires && !(entry.action == a)) return false;
        }
        return true;
    }

    bool any_nonstar_enabled(int q, const Percept& p) const {
        for (const auto& [tmpl, target] : trans_[static_cast<size_t>(q)]) {
            const auto& t = inst_.library[static_cast<size_t>(tmpl)];
            if (t.trigger->kind != Formula::Kind::Star && eval_trigger(t.trigger, p))
                return true;
        }
        return false;
    }

    bool dfs(const Configuration& c, long long steps_left) {
        if (check_target_single(c)) return true;
        if (steps_left <= 0) return false;
        uint64_t dg = c.digest();
        if (on_path_.count(dg)) return false;  // deterministic loop; dead branch
        on_path_.insert(dg);
        bool found = dfs_inner(c, steps_left);
        if (!found) on_path_.erase(dg);
        return found;
    }

    bool dfs_inner(const Configuration& c, long long steps_left) {
        int q = c.states[0];
        Percept p = percept_of(c.env, c.positions, c.positions[0], inst_.radius);
        std::string key = percept_key(p);

        // Committed behavior first.
        std::vector<Action> enabled;
        std::vector<Action> stars;
        for (const auto& [tmpl, target] : trans_[static_cast<size_t>(q)]) {
            const auto& t = inst_.library[static_cast<size_t>(tmpl)];
            if (t.trigger->kind == Formula::Kind::Star)
                stars.push_back(template_action(tmpl, target));
            else if (eval_trigger(t.trigger, p))
                enabled.push_back(template_action(tmpl, target));
        }
        if (!enabled.empty()) {
            // A further addition co-enabled here would have to repeat this
            // exact action, so committed non-Star behavior is final.
            for (const auto& a : enabled)
                if (!(a == enabled.front())) return false;  // determinism violation
            return follow(c, steps_left, q, key, p, enabled.front(), false);
        }

        // Star fallback stays optional: a later non-Star addition may shadow
        // it, so both courses are branches. A robot with no action here keeps
        // the same percept and noops forever, so there is no noop branch.
        if (++nodes_ > node_cap_)
            throw CapExceeded("design_controllers_ls: synthesis node cap exceeded");
        if (!stars.empty()) {
            bool agree = true;
            for (const auto& a : stars)
                if (!(a == stars.front())) agree = false;
            if (agree && follow(c, steps_left, q, key, p, stars.front(), false)) return true;
        }
        if (static_cast<int>(trans_[static_cast<size_t>(q)].size()) >= inst_.max_out_degree)
            return false;
        for (int tmpl = 0; tmpl < static_cast<int>(inst_.library.size()); ++tmpl) {
            const auto& t = inst_.library[static_cast<size_t>(tmpl)];
            bool is_star = t.trigger->kind == Formula::Kind::Star;
            if (is_star && !stars.empty()) continue;  // would have to mirror them
            if (!is_star && !eval_trigger(t.trigger, p)) continue;
            for (int target = 0; target < inst_.max_states; ++target) {
                if (!consistent_addition(q, tmpl, target)) continue;
                Action a = template_action(tmpl, target);
                trans_[static_cast<size_t>(q)].emplace_back(tmpl, target);
                if (follow(c, steps_left, q, key, p, a, true)) return true;
                trans_[static_cast<size_t>(q)].pop_back();
            }
        }
        return false;
    }

    // Takes one step with action `a` from state q and recurses. The decision
    // is recorded against the percept so later additions stay consistent.
    bool follow(const Configuration& c, long long steps_left, int q, const std::string& key,
                const Percept& p, const Action& a, bool force_record) {
        Configuration next = c;
        if (!apply(next, a)) return false;
        auto& hist = history_[static_cast<size_t>(q)];
        bool inserted = false;
        if (force_record || !hist.count(key)) {
            hist.insert_or_assign(key, HistoryEntry{p, a});
            inserted = true;
        }
        bool found = dfs(next, steps_left - 1);
        if (!found && inserted) hist.erase(key);
        return found;
    }

    bool check_target_single(const Configuration& c) const {
        Team probe;
        auto ctrl = std::make_shared<Controller>();
        for (int q = 0; q < inst_.max_states; ++q)
            ctrl->state_names.push_back("s" + std::to_string(q));
        ctrl->radius = inst_.radius;
        probe.robots.push_back(ctrl);
        return check_target(c, probe, inst_.task);
    }

    const ContDesLSInstance& inst_;
    long long node_cap_;
    long long nodes_ = 0;
    std::vector<std::vector<std::pair<int, int>>> trans_;  // per state: (template, target)
    std::vector<std::map<std::string, HistoryEntry>> history_;
    std::unordered_set<uint64_t> on_path_;
};

// Plain enumeration for multi-robot / heterogeneous instances (desk scale).
DesignOutcome design_controllers_enumerate(const ContDesLSInstance& inst, long long cap) {
    const int Q = inst.max_states;
    const int d = inst.max_out_degree;
    const int L = static_cast<int>(inst.library.size());
    const int options = L * Q;  // instantiated transitions per state

    // All per-state transition sets of size <= d, lexicographic.
    std::vector<std::vector<std::pair<int, int>>> state_sets;
    std::vector<int> pick;
    auto emit = [&]() {
        std::vector<std::pair<int, int>> set;
        for (int idx : pick) set.emplace_back(idx / Q, idx % Q);
        state_sets.push_back(std::move(set));
    };
    std::function<void(int)> gen = [&](int start) {
        emit();
        if (static_cast<int>(pick.size()) == d) return;
        for (int idx = start; idx < options; ++idx) {
            pick.push_back(idx);
            gen(idx + 1);
            pick.pop_back();
        }
    };
    gen(0);

    // Candidate controllers: one state set per state.
    long long tried = 0;
    std::vector<size_t> sel(static_cast<size_t>(Q), 0);
    std::vector<std::vector<size_t>> controllers_sel;
    while (true) {
        controllers_sel.push_back(sel);
        if (++tried > cap)
            throw CapExceeded("design_controllers_ls: controller enumeration cap exceeded");
        int i = Q - 1;
        while (i >= 0 && sel[static_cast<size_t>(i)] == state_sets.size() - 1) {
            sel[static_cast<size_t>(i)] = 0;
            --i;
        }
        if (i < 0) break;
        ++sel[static_cast<size_t>(i)];
    }

    auto build = [&](const std::vector<size_t>& s) {
        auto c = std::make_shared<Controller>();
        for (int q = 0; q < Q; ++q) c->state_names.push_back("s" + std::to_string(q));
        c->initial = 0;
        c->radius = inst.radius;
        for (int q = 0; q < Q; ++q)
            for (const auto& [tmpl, target] : state_sets[s[static_cast<size_t>(q)]])
                c->transitions.push_back(
                    instantiate_template(inst.library[static_cast<size_t>(tmpl)], q, target));
        return c;
    };

    // Teams: per-robot assignment over candidate controllers, <= h distinct.
    const int n = inst.team_size;
    std::vector<size_t> choice(static_cast<size_t>(n), 0);
    long long candidates = 0;
    while (true) {
        std::vector<size_t> used;
        for (size_t c : choice)
            if (std::find(used.begin(), used.end(), c) == used.end()) used.push_back(c);
        if (static_cast<int>(used.size()) <= inst.max_controller_types) {
            if (++candidates > cap)
                throw CapExceeded("design_controllers_ls: team enumeration cap exceeded");
            Team team;
            for (size_t c : choice) team.robots.push_back(build(controllers_sel[c]));
            RunOptions opts;
            opts.step_budget = design_step_budget(inst.env, Q, inst.comp);
            opts.ec_budget = inst.ec_budget;
            opts.detect_cycles = true;
            opts.record_trace = false;
            Configuration c0 = initial_configuration(inst.env, team, inst.p_I);
            RunResult probe = run(c0, team, inst.task, opts);
            if (probe.outcome == RunResult::Outcome::Success) {
                opts.record_trace = true;
                RunResult full = run(std::move(c0), team, inst.task, opts);
                DesignOutcome out;
                out.found = true;
                out.team = team;
                for (const auto& r : team.robots) out.controllers.push_back(*r);
                out.placement = inst.p_I;
                out.witness = std::move(full);
                return out;
            }
        }
        int i = n - 1;
        while (i >= 0 && choice[static_cast<size_t>(i)] == controllers_sel.size() - 1) {
            choice[static_cast<size_t>(i)] = 0;
            --i;
        }
        if (i < 0) break;
        ++choice[static_cast<size_t>(i)];
    }
    return DesignOutcome::bot();
}

} // namespace

DesignOutcome design_controllers_ls(const ContDesLSInstance& inst, long long node_cap) {
    for (const auto& t : inst.library) {
        if (formula_max_offset_norm(t.trigger) > inst.radius)
            throw ModelError("template trigger offset exceeds instance radius");
        if (!t.mod.star && std::abs(t.mod.off.dx) + std::abs(t.mod.off.dy) > 1)
            throw ModelError("template modification offset exceeds distance one");
    }
    if (inst.team_size == 1 && inst.max_controller_types == 1) {
        SingleRobotSynthesis synth(inst, node_cap);
        if (!synth.search()) return DesignOutcome::bot();
        Controller c = synth.build_controller();
        validate_controller(c);
        auto shared = std::make_shared<Controller>(c);
        Team team;
        team.robots.push_back(shared);
        // Self-check: the synthesized controller must verify.
        RunOptions opts;
        opts.step_budget = design_step_budget(inst.env, inst.max_states, inst.comp);
        opts.ec_budget = inst.ec_budget;
        opts.detect_cycles = true;
        Configuration c0 = initial_configuration(inst.env, team, inst.p_I);
        RunResult witness = run(std::move(c0), team, inst.task, opts);
        if (witness.outcome != RunResult::Outcome::Success)
            throw ModelError("design self-check failed: synthesized controller does not verify");
        DesignOutcome out;
        out.found = true;
        out.team = std::move(team);
        out.controllers.push_back(std::move(c));
        out.placement = inst.p_I;
        out.witness = std::move(witness);
        return out;
    }
    return design_controllers_enumerate(inst, node_cap);
}

} // namespace fsr
