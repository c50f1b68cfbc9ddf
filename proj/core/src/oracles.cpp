#include "fsr/oracles.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdlib>
#include <functional>
#include <mutex>
#include <sstream>
#include <thread>

namespace fsr {

namespace {

bool assignment_satisfies(const Cnf& f, uint32_t mask) {
    for (const auto& c : f.clauses) {
        bool sat = false;
        for (int lit : c) {
            bool val = (mask >> (std::abs(lit) - 1)) & 1u;
            if (lit > 0 ? val : !val) {
                sat = true;
                break;
            }
        }
        if (!sat) return false;
    }
    return true;
}

} // namespace

bool sat_oracle(const Cnf& f) { return sat_oracle_witness(f).has_value(); }

std::optional<std::vector<bool>> sat_oracle_witness(const Cnf& f) {
    if (f.num_vars > 25) throw CapExceeded("sat_oracle: too many variables");
    for (uint32_t mask = 0; mask < (1u << f.num_vars); ++mask)
        if (assignment_satisfies(f, mask)) {
            std::vector<bool> w;
            for (int i = 0; i < f.num_vars; ++i) w.push_back((mask >> i) & 1u);
            return w;
        }
    return std::nullopt;
}

std::optional<std::vector<int>> domset_oracle(const Graph& g, int k) {
    if (g.num_vertices > 20) throw CapExceeded("domset_oracle: too many vertices");
    const int n = g.num_vertices;
    auto nb = g.closed_neighborhoods();
    std::vector<uint32_t> cover(static_cast<size_t>(n) + 1, 0);
    for (int v = 1; v <= n; ++v)
        for (int u : nb[static_cast<size_t>(v)]) cover[static_cast<size_t>(v)] |= 1u << (u - 1);
    const uint32_t all = n == 32 ? ~0u : (1u << n) - 1;
    std::optional<std::vector<int>> best;
    for (uint32_t mask = 0; mask < (1u << n); ++mask) {
        int sz = std::popcount(mask);
        if (sz > k || (best && sz >= static_cast<int>(best->size()))) continue;
        uint32_t covered = 0;
        for (int v = 1; v <= n; ++v)
            if ((mask >> (v - 1)) & 1u) covered |= cover[static_cast<size_t>(v)];
        if (covered == all) {
            std::vector<int> set;
            for (int v = 1; v <= n; ++v)
                if ((mask >> (v - 1)) & 1u) set.push_back(v);
            best = std::move(set);
        }
    }
    return best;
}

// ---------------------------------------------------------------------------
// Brute-force design oracles

namespace {

bool oracle_run_team(const TeamDesLSInstance& inst, const Team& team,
                     const std::vector<Position>& placement, RunResult* witness) {
    RunOptions opts;
    opts.step_budget = design_step_budget(inst.env, std::max(1, team.max_states()), inst.comp);
    opts.ec_budget = inst.ec_budget;
    opts.detect_cycles = true;
    opts.record_trace = true;
    Configuration c0 = initial_configuration(inst.env, team, placement);
    RunResult res = run(std::move(c0), team, inst.task, opts);
    if (res.outcome != RunResult::Outcome::Success) return false;
    *witness = std::move(res);
    return true;
}

} // namespace

DesignOutcome design_team_oracle(const TeamDesLSInstance& inst, long long candidate_cap) {
    const int n = inst.team_size;
    const int L = static_cast<int>(inst.library.size());
    if (L == 0) return DesignOutcome::bot();
    std::vector<Position> placement = canonical_placement(inst.initial_region);
    std::vector<int> choice(static_cast<size_t>(n), 0);
    long long tried = 0;
    DesignOutcome result = DesignOutcome::bot();

    std::function<bool(int)> rec = [&](int robot) -> bool {
        if (robot == n) {
            std::vector<int> distinct(choice.begin(), choice.end());
            std::sort(distinct.begin(), distinct.end());
            distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
            int h = static_cast<int>(distinct.size());
            bool ok = inst.exact_h ? h == inst.max_controller_types
                                   : h <= inst.max_controller_types;
            if (!ok) return false;
            if (++tried > candidate_cap)
                throw CapExceeded("design_team_oracle: candidate cap exceeded");
            Team team;
            for (int c : choice) team.robots.push_back(inst.library[static_cast<size_t>(c)]);
            RunResult witness;
            if (!oracle_run_team(inst, team, placement, &witness)) return false;
            result.found = true;
            result.team = std::move(team);
            result.library_choice = choice;
            result.placement = placement;
            result.witness = std::move(witness);
            return true;
        }
        for (int c = 0; c < L; ++c) {
            choice[static_cast<size_t>(robot)] = c;
            if (rec(robot + 1)) return true;
        }
        return false;
    };
    rec(0);
    return result;
}

DesignOutcome design_controllers_oracle(const ContDesLSInstance& inst,
                                        long long candidate_cap) {
    if (inst.team_size != 1 || inst.max_controller_types != 1)
        throw ModelError("design_controllers_oracle handles single-robot instances");
    const int Q = inst.max_states;
    const int d = inst.max_out_degree;
    const int options = static_cast<int>(inst.library.size()) * Q;
    long long tried = 0;
    DesignOutcome result = DesignOutcome::bot();

    std::vector<std::vector<std::pair<int, int>>> per_state(static_cast<size_t>(Q));

    auto attempt = [&]() -> bool {
        if (++tried > candidate_cap)
            throw CapExceeded("design_controllers_oracle: candidate cap exceeded");
        auto ctrl = std::make_shared<Controller>();
        for (int q = 0; q < Q; ++q) ctrl->state_names.push_back("s" + std::to_string(q));
        ctrl->initial = 0;
        ctrl->radius = inst.radius;
        for (int q = 0; q < Q; ++q)
            for (auto [tmpl, target] : per_state[static_cast<size_t>(q)])
                ctrl->transitions.push_back(
                    instantiate_template(inst.library[static_cast<size_t>(tmpl)], q, target));
        Team team;
        team.robots.push_back(ctrl);
        RunOptions opts;
        opts.step_budget = design_step_budget(inst.env, Q, inst.comp);
        opts.ec_budget = inst.ec_budget;
        opts.detect_cycles = true;
        opts.record_trace = true;
        Configuration c0 = initial_configuration(inst.env, team, inst.p_I);
        RunResult res = run(std::move(c0), team, inst.task, opts);
        if (res.outcome != RunResult::Outcome::Success) return false;
        result.found = true;
        result.controllers.push_back(*ctrl);
        result.team = std::move(team);
        result.placement = inst.p_I;
        result.witness = std::move(res);
        return true;
    };

    std::function<bool(int, int)> fill = [&](int q, int start) -> bool {
        if (q == Q) return attempt();
        if (fill(q + 1, 0)) return true;  // current state complete as-is
        if (static_cast<int>(per_state[static_cast<size_t>(q)].size()) == d) return false;
        for (int idx = start; idx < options; ++idx) {
            per_state[static_cast<size_t>(q)].emplace_back(idx / Q, idx % Q);
            bool found = false;
            // extend this state further before moving on
            if (static_cast<int>(per_state[static_cast<size_t>(q)].size()) < d) {
                found = fill(q, idx + 1);
            } else {
                found = fill(q + 1, 0);
            }
            per_state[static_cast<size_t>(q)].pop_back();
            if (found) return true;
        }
        return false;
    };
    fill(0, 0);
    return result;
}

// ---------------------------------------------------------------------------
// Cross-validation harnesses

void CrossValidationReport::merge(const CrossValidationReport& other) {
    total += other.total;
    agreements += other.agreements;
    mismatches.insert(mismatches.end(), other.mismatches.begin(), other.mismatches.end());
}

std::string to_string(const CrossValidationReport& r) {
    std::ostringstream out;
    out << r.agreements << "/" << r.total << " agreements";
    for (const auto& m : r.mismatches) out << "\n  mismatch: " << m;
    return out.str();
}

namespace {

CrossValidationReport parallel_check(int count, int jobs,
                                     const std::function<std::optional<std::string>(int)>& one) {
    CrossValidationReport report;
    std::mutex mu;
    std::atomic<int> next{0};
    jobs = std::max(1, jobs);
    auto worker = [&]() {
        for (;;) {
            int i = next.fetch_add(1);
            if (i >= count) return;
            std::optional<std::string> mismatch = one(i);
            std::lock_guard<std::mutex> lock(mu);
            report.total += 1;
            if (mismatch)
                report.mismatches.push_back(*mismatch);
            else
                report.agreements += 1;
        }
    };
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    std::sort(report.mismatches.begin(), report.mismatches.end());
    return report;
}

} // namespace

CrossValidationReport cross_validate_teamenvver(const std::vector<Cnf>& formulas, int jobs) {
    return parallel_check(static_cast<int>(formulas.size()), jobs,
                          [&](int i) -> std::optional<std::string> {
        const Cnf& f = formulas[static_cast<size_t>(i)];
        bool expect = sat_oracle(f);
        auto red = reduce_3sat_to_teamenvver(f);
        VerifyResult got =
            verify_team_env(red.instance, default_verify_budget(red.instance), true);
        if (got.yes == expect) return std::nullopt;
        std::ostringstream out;
        out << "formula " << i << ": oracle " << (expect ? "sat" : "unsat")
            << ", verification " << (got.yes ? "yes" : "no");
        return out.str();
    });
}

CrossValidationReport cross_validate_teamdesls(const std::vector<Cnf>& formulas, int jobs) {
    return parallel_check(static_cast<int>(formulas.size()), jobs,
                          [&](int i) -> std::optional<std::string> {
        const Cnf& f = formulas[static_cast<size_t>(i)];
        bool expect = sat_oracle(f);
        auto red = reduce_3sat_to_teamdesls(f);
        DesignOutcome got = design_team_ls(red.instance);
        if (got.found == expect) return std::nullopt;
        std::ostringstream out;
        out << "formula " << i << ": oracle " << (expect ? "sat" : "unsat")
            << ", team design " << (got.found ? "found" : "bot");
        return out.str();
    });
}

CrossValidationReport cross_validate_contdesls(
    const std::vector<std::pair<Graph, int>>& cases, int max_states, int jobs) {
    return parallel_check(static_cast<int>(cases.size()), jobs,
                          [&](int i) -> std::optional<std::string> {
        const auto& [g, k] = cases[static_cast<size_t>(i)];
        bool expect = domset_oracle(g, k).has_value();
        auto red = reduce_domset_to_contdesls(g, k);
        if (max_states > 1) red = extend_with_state_ladder(red, k, max_states);
        DesignOutcome got = design_controllers_ls(red.instance);
        if (got.found == expect) return std::nullopt;
        std::ostringstream out;
        out << "graph " << i << " (k=" << k << "): oracle "
            << (expect ? "dominating set exists" : "none") << ", controller design "
            << (got.found ? "found" : "bot");
        return out.str();
    });
}

} // namespace fsr
