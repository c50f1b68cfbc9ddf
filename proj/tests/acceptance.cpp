// End-to-end acceptance gate. Each criterion prints exactly one pass/fail
// line; the process exits nonzero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <memory>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fsr/bundle.hpp"
#include "fsr/oracles.hpp"
#include "helpers.hpp"

using namespace fsr;

namespace {

int failures = 0;

void report(int index, const std::string& label, bool ok, const std::string& detail,
            double seconds) {
    std::ostringstream line;
    line << "criterion " << index << " (" << label << "): " << (ok ? "pass" : "FAIL");
    if (!ok && !detail.empty()) line << " [" << detail << "]";
    char buf[32];
    std::snprintf(buf, sizeof(buf), " (%.1fs)", seconds);
    line << buf;
    std::cout << line.str() << std::endl;
    if (!ok) ++failures;
}

template <typename F>
void criterion(int index, const std::string& label, F body) {
    auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                      .count();
    report(index, label, ok, detail, secs);
}

// Every 3-CNF over at most `max_vars` variables with at most `max_clauses`
// clauses, treated as a set of literal-multiset clauses. Formulas are keyed
// to the largest variable they mention so each clause-set appears once.
std::vector<Cnf> exhaustive_3cnfs(int max_vars, int max_clauses) {
    std::vector<Cnf> out;
    for (int n = 1; n <= max_vars; ++n) {
        std::vector<int> literals;
        for (int v = 1; v <= n; ++v) {
            literals.push_back(v);
            literals.push_back(-v);
        }
        std::vector<std::vector<int>> triples;
        for (size_t a = 0; a < literals.size(); ++a)
            for (size_t b = a; b < literals.size(); ++b)
                for (size_t c = b; c < literals.size(); ++c)
                    triples.push_back({literals[a], literals[b], literals[c]});
        auto mentions_n = [n](const std::vector<std::vector<int>>& clauses) {
            for (const auto& cl : clauses)
                for (int lit : cl)
                    if (std::abs(lit) == n) return true;
            return false;
        };
        size_t t = triples.size();
        for (size_t a = 0; a < t; ++a) {
            if (max_clauses >= 1 && mentions_n({triples[a]}))
                out.push_back(Cnf{n, {triples[a]}});
            for (size_t b = a + 1; b < t && max_clauses >= 2; ++b) {
                if (mentions_n({triples[a], triples[b]}))
                    out.push_back(Cnf{n, {triples[a], triples[b]}});
                for (size_t c = b + 1; c < t && max_clauses >= 3; ++c)
                    if (mentions_n({triples[a], triples[b], triples[c]}))
                        out.push_back(Cnf{n, {triples[a], triples[b], triples[c]}});
            }
        }
    }
    return out;
}

Cnf random_3cnf(std::mt19937& rng, int max_vars, int max_clauses) {
    Cnf f;
    f.num_vars = testgen::pick(rng, 1, max_vars);
    int m = testgen::pick(rng, 1, max_clauses);
    for (int i = 0; i < m; ++i) {
        std::vector<int> clause;
        for (int j = 0; j < 3; ++j) {
            int v = testgen::pick(rng, 1, f.num_vars);
            clause.push_back(rng() % 2 ? v : -v);
        }
        f.clauses.push_back(std::move(clause));
    }
    return f;
}

std::vector<Graph> all_graphs_up_to(int max_vertices) {
    std::vector<Graph> out;
    for (int n = 1; n <= max_vertices; ++n) {
        std::vector<std::pair<int, int>> all_edges;
        for (int u = 1; u <= n; ++u)
            for (int v = u + 1; v <= n; ++v) all_edges.push_back({u, v});
        for (unsigned mask = 0; mask < (1u << all_edges.size()); ++mask) {
            Graph g;
            g.num_vertices = n;
            for (size_t e = 0; e < all_edges.size(); ++e)
                if (mask & (1u << e)) g.edges.push_back(all_edges[e]);
            out.push_back(std::move(g));
        }
    }
    return out;
}

bool teamenvver_verdict(const TeamEnvVerInstance& inst) {
    return verify_team_env(inst, default_verify_budget(inst), true).yes;
}

TeamDesLSInstance random_team_design_instance(std::mt19937& rng) {
    for (;;) {
        Environment env = testgen::random_environment(rng, 10);
        if (env.size() > 100) continue;
        auto region = testgen::random_free_positions(rng, env, testgen::pick(rng, 1, 2));
        if (region.empty()) continue;
        TeamDesLSInstance inst;
        inst.env = env;
        inst.team_size = static_cast<int>(region.size());
        int lib = testgen::pick(rng, 1, 4);
        for (int i = 0; i < lib; ++i)
            inst.library.push_back(std::make_shared<const Controller>(
                testgen::random_controller(rng, env.legend())));
        inst.initial_region = region;
        inst.max_controller_types = 1;
        inst.ec_budget = 25;
        inst.comp = {1, 2};
        auto goal = testgen::random_free_positions(rng, env, 1);
        inst.task.position_requirements.push_back({RobotSelector::any_robot(), goal[0]});
        return inst;
    }
}

struct RandomRun {
    Environment env;
    Team team;
    std::vector<Position> p_I;
    RunOptions opts;
    RunResult result;
};

RandomRun random_simulation(std::mt19937& rng) {
    for (;;) {
        Environment env = testgen::random_environment(rng, 7);
        int robots = testgen::pick(rng, 1, 3);
        auto cells = testgen::random_free_positions(rng, env, robots);
        if (static_cast<int>(cells.size()) < robots) continue;
        RandomRun rr;
        rr.env = env;
        auto shared = std::make_shared<const Controller>(
            testgen::random_controller(rng, env.legend()));
        for (int i = 0; i < robots; ++i) {
            if (rng() % 2) {
                rr.team.robots.push_back(shared);
            } else {
                rr.team.robots.push_back(std::make_shared<const Controller>(
                    testgen::random_controller(rng, env.legend())));
            }
        }
        rr.p_I = cells;
        rr.opts.step_budget = 200;
        rr.opts.ec_budget = 1000000;
        rr.opts.detect_cycles = true;
        rr.opts.record_trace = true;
        TargetConfiguration tgt;  // unreachable marker type keeps runs going
        tgt.square_requirements.push_back({{1, 1}, "e_never"});
        rr.env.add_type("e_never");
        Configuration c0 = initial_configuration(rr.env, rr.team, rr.p_I);
        rr.result = run(c0, rr.team, tgt, rr.opts);
        return rr;
    }
}

bool criterion_1(std::string& detail) {
    std::vector<Cnf> formulas = exhaustive_3cnfs(3, 3);
    int checked = 0;
    for (const auto& f : formulas) {
        bool expect = sat_oracle(f);
        bool got = teamenvver_verdict(reduce_3sat_to_teamenvver(f).instance);
        if (expect != got) {
            detail = "disagreement on " + render_dimacs_cnf(f);
            return false;
        }
        ++checked;
    }
    if (checked < 10000) {
        detail = "corpus unexpectedly small: " + std::to_string(checked);
        return false;
    }
    return true;
}

std::vector<RunResult> criterion2_witnesses;
std::vector<int> criterion2_sizes;

bool criterion_2(std::string& detail) {
    criterion2_witnesses.clear();
    criterion2_sizes.clear();
    for (const Graph& g : all_graphs_up_to(4)) {
        for (int k = 1; k <= 2 && k <= g.num_vertices; ++k) {
            bool expect = domset_oracle(g, k).has_value();
            DesignOutcome d = design_controllers_ls(reduce_domset_to_contdesls(g, k).instance);
            if (expect != d.found) {
                detail = "disagreement at |V|=" + std::to_string(g.num_vertices) +
                         " |E|=" + std::to_string(g.edges.size()) + " k=" + std::to_string(k);
                return false;
            }
            if (d.found) {
                criterion2_witnesses.push_back(d.witness);
                criterion2_sizes.push_back(g.num_vertices);
            }
        }
    }
    return !criterion2_witnesses.empty();
}

bool criterion_3(std::string& detail) {
    if (criterion2_witnesses.empty()) {
        detail = "no witnesses carried over from criterion 2";
        return false;
    }
    for (size_t i = 0; i < criterion2_witnesses.size(); ++i) {
        long long n = criterion2_sizes[i];
        long long bound = (n + 1) + (n * n + 1);
        if (static_cast<long long>(criterion2_witnesses[i].trace.size()) > bound) {
            detail = "witness length " + std::to_string(criterion2_witnesses[i].trace.size()) +
                     " exceeds " + std::to_string(bound);
            return false;
        }
    }
    return true;
}

bool criterion_4(std::string& detail) {
    std::mt19937 rng(20250823);
    for (int i = 0; i < 200; ++i) {
        Cnf f = random_3cnf(rng, 4, 4);
        TeamDesLSInstance inst = reduce_3sat_to_teamdesls(f).instance;
        if (inst.library.size() != 2) {
            detail = "library size " + std::to_string(inst.library.size());
            return false;
        }
        for (const auto& c : inst.library)
            if (c->num_states() != 1) {
                detail = "library controller with " + std::to_string(c->num_states()) +
                         " states";
                return false;
            }
        if (inst.ec_budget != 0) {
            detail = "nonzero ec budget";
            return false;
        }
        bool expect = sat_oracle(f);
        if (design_team_ls(inst).found != expect) {
            detail = "disagreement on " + render_dimacs_cnf(f);
            return false;
        }
    }
    return true;
}

bool criterion_5(std::string& detail) {
    std::mt19937 rng(777001);
    for (int i = 0; i < 50; ++i) {
        TeamDesLSInstance inst = random_team_design_instance(rng);
        DesignOutcome fast = design_team_homogeneous(inst);
        DesignOutcome slow = design_team_oracle(inst);
        if (fast.found != slow.found) {
            detail = "instance " + std::to_string(i) + ": homogeneous=" +
                     (fast.found ? "found" : "bot") + " oracle=" +
                     (slow.found ? "found" : "bot");
            return false;
        }
        if (fast.found) {
            long long bound = steps_bound(inst.comp.c1, inst.comp.c2, inst.env.size(),
                                          fast.team.max_states());
            if (static_cast<long long>(fast.witness.trace.size()) > bound) {
                detail = "witness exceeds the completability bound";
                return false;
            }
        }
    }
    return true;
}

bool criterion_6(std::string& detail) {
    Graph p3{3, {{1, 2}, {2, 3}}};
    ContDesLSReduction base = reduce_domset_to_contdesls(p3, 1);
    for (int max_q = 2; max_q <= 3; ++max_q) {
        ContDesLSInstance inst = extend_with_state_ladder(base, 1, max_q).instance;
        DesignOutcome full = design_controllers_ls(inst);
        if (!full.found) {
            detail = "no solution at the full state budget " + std::to_string(max_q);
            return false;
        }
        if (full.controllers[0].num_states() < max_q) {
            detail = "solution uses fewer than " + std::to_string(max_q) + " states";
            return false;
        }
        ContDesLSInstance tight = inst;
        tight.max_states = max_q - 1;
        if (design_controllers_ls(tight).found) {
            detail = "unexpected solution with " + std::to_string(max_q - 1) + " states";
            return false;
        }
    }
    return true;
}

bool criterion_7(std::string& detail) {
    std::mt19937 rng(420042);
    // Ten verification instances and ten design instances, half of each
    // drawn to include unsatisfiable formulas.
    std::vector<Cnf> formulas;
    while (formulas.size() < 8) formulas.push_back(random_3cnf(rng, 3, 3));
    formulas.push_back(Cnf{1, {{1, 1, 1}, {-1, -1, -1}}});
    formulas.push_back(Cnf{2, {{1, 2, 2}, {-1, -1, -2}, {1, -2, -2}, {-1, 1, 2}}});
    for (size_t i = 0; i < formulas.size(); ++i) {
        const Cnf& f = formulas[i];
        bool base_ver = teamenvver_verdict(reduce_3sat_to_teamenvver(f).instance);
        bool base_des = design_team_ls(reduce_3sat_to_teamdesls(f).instance).found;
        for (int extra = 1; extra <= 2; ++extra) {
            for (int states = 1; states <= 2; ++states) {
                TeamEnvVerInstance ver = reduce_3sat_to_teamenvver(f).instance;
                add_holding_area(ver, extra, states);
                if (teamenvver_verdict(ver) != base_ver) {
                    detail = "verification verdict changed on formula " + std::to_string(i);
                    return false;
                }
                TeamDesLSInstance des = reduce_3sat_to_teamdesls(f).instance;
                add_holding_area(des, extra, states);
                if (design_team_ls(des).found != base_des) {
                    detail = "design verdict changed on formula " + std::to_string(i);
                    return false;
                }
            }
        }
    }
    return true;
}

bool criterion_8(std::string& detail) {
    std::mt19937 rng(111213);
    for (int i = 0; i < 100; ++i) {
        RandomRun rr = random_simulation(rng);
        TargetConfiguration tgt;
        tgt.square_requirements.push_back({{1, 1}, "e_never"});

        // Reproducibility.
        Configuration c0 = initial_configuration(rr.env, rr.team, rr.p_I);
        RunResult again = run(c0, rr.team, tgt, rr.opts);
        if (trace_digest(again, rr.team) != trace_digest(rr.result, rr.team)) {
            detail = "trace digests differ on re-run " + std::to_string(i);
            return false;
        }

        // ec monotonicity, injectivity, and the frame property, replayed
        // step by step.
        Configuration c = initial_configuration(rr.env, rr.team, rr.p_I);
        long long prev_ec = 0;
        for (const StepRecord& rec : rr.result.trace) {
            auto next = step(c, rr.team);
            if (!std::holds_alternative<Configuration>(next)) {
                detail = "trace longer than the replay";
                return false;
            }
            Configuration nc = std::get<Configuration>(next);
            if (rec.ec < prev_ec) {
                detail = "ec decreased";
                return false;
            }
            prev_ec = rec.ec;
            if (nc.ec != rec.ec || nc.positions != rec.positions || nc.states != rec.states) {
                detail = "replay diverged from the recorded trace";
                return false;
            }
            std::set<std::pair<int, int>> seen;
            for (const Position& p : nc.positions)
                if (!seen.insert({p.col, p.row}).second) {
                    detail = "two robots on one square";
                    return false;
                }
            std::set<std::pair<int, int>> modded;
            for (const auto& [pos, type] : rec.mods) {
                modded.insert({pos.col, pos.row});
                if (nc.env.square_at(pos) != type) {
                    detail = "recorded modification not visible";
                    return false;
                }
            }
            for (int row = 1; row <= c.env.height(); ++row)
                for (int col = 1; col <= c.env.width(); ++col)
                    if (!modded.count({col, row}) &&
                        c.env.square_at({col, row}) != nc.env.square_at({col, row})) {
                        detail = "square changed without a recorded modification";
                        return false;
                    }
            c = std::move(nc);
        }

        // Cycle soundness.
        if (rr.result.outcome == RunResult::Outcome::CycleDetected) {
            RunOptions wide = rr.opts;
            wide.step_budget *= 10;
            wide.detect_cycles = false;
            wide.record_trace = false;
            Configuration c1 = initial_configuration(rr.env, rr.team, rr.p_I);
            if (run(c1, rr.team, tgt, wide).outcome == RunResult::Outcome::Success) {
                detail = "cycle-detected run succeeded under a larger budget";
                return false;
            }
        }
    }
    return true;
}

bool criterion_9(std::string& detail) {
    auto make = [](const std::string& text) {
        return std::make_shared<const Controller>(parse_controller(text));
    };
    {
        Environment env(1, 1, "grass");
        Team team;
        team.robots.push_back(make("radius 0\ninitial s0\ns0: * / * / stay -> s0\n"));
        Configuration c0 = initial_configuration(env, team, {{1, 1}});
        auto next = step(c0, team);
        if (!std::holds_alternative<Configuration>(next) ||
            !std::get<Configuration>(next).same_world(c0) ||
            std::get<Configuration>(next).t != 1) {
            detail = "stay step did not preserve the configuration";
            return false;
        }
    }
    {
        Environment env(3, 1, "grass");
        Team team;
        team.robots.push_back(make("radius 0\ninitial s0\ns0: * / * / goEast -> s0\n"));
        team.robots.push_back(make("radius 0\ninitial s0\ns0: * / * / goWest -> s0\n"));
        auto next = step(initial_configuration(env, team, {{1, 1}, {3, 1}}), team);
        if (!std::holds_alternative<FailureReason>(next) ||
            std::get<FailureReason>(next).kind != FailureReason::Kind::Collision) {
            detail = "head-on robots did not collide";
            return false;
        }
    }
    {
        Environment env(1, 1, "grass");
        Team team;
        team.robots.push_back(make(
            "radius 0\ninitial s0\n"
            "s0: enval(grass,0,0) / * / stay -> s0\n"
            "s0: enval(grass,0,0) / * / stay -> s1\n"
            "s1: * / * / stay -> s1\n"));
        auto next = step(initial_configuration(env, team, {{1, 1}}), team);
        if (!std::holds_alternative<FailureReason>(next) ||
            std::get<FailureReason>(next).kind != FailureReason::Kind::DeterminismViolation) {
            detail = "conflicting next states were not flagged";
            return false;
        }
    }
    return true;
}

bool criterion_10(std::string& detail) {
    TeamEnvVerInstance inst;
    inst.env = Environment(50, 50, "e_a");
    const char* bouncer =
        "radius 1\n"
        "initial s0\n"
        "s0: enval(e_a,1,0) & !enval(e_robot,1,0) / * / goEast -> s0\n"
        "s0: * / * / goWest -> s1\n"
        "s1: enval(e_a,-1,0) & !enval(e_robot,-1,0) / * / goWest -> s1\n"
        "s1: * / * / goEast -> s0\n";
    auto ctrl = std::make_shared<const Controller>(parse_controller(bouncer));
    for (int i = 0; i < 10; ++i) {
        inst.team.robots.push_back(ctrl);
        inst.p_I.push_back({i + 1, 5 * (i + 1)});
    }
    inst.task.square_requirements.push_back({{1, 1}, "e_never"});
    inst.env.add_type("e_never");
    auto start = std::chrono::steady_clock::now();
    VerifyResult r = verify_team_env(inst, 100000, false);
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (r.run.outcome != RunResult::Outcome::StepBudgetExhausted) {
        detail = std::string("unexpected outcome ") + to_string(r.run.outcome);
        return false;
    }
    if (secs > 10.0) {
        detail = "took " + std::to_string(secs) + "s";
        return false;
    }
    return true;
}

} // namespace

int main() {
    criterion(1, "verification reduction equivalence", criterion_1);
    criterion(2, "dominating-set reduction equivalence", criterion_2);
    criterion(3, "dominating-set witness length bound", criterion_3);
    criterion(4, "team-design reduction equivalence", criterion_4);
    criterion(5, "homogeneous design vs brute force", criterion_5);
    criterion(6, "state-ladder state forcing", criterion_6);
    criterion(7, "holding-area neutrality", criterion_7);
    criterion(8, "simulator invariant suite", criterion_8);
    criterion(9, "step semantics examples", criterion_9);
    criterion(10, "desk-scale performance", criterion_10);
    if (failures) {
        std::cout << failures << " criterion(s) failed" << std::endl;
        return 1;
    }
    std::cout << "all criteria passed" << std::endl;
    return 0;
}
