// Command line front end for the gridworld robot-team toolkit.
//
// Exit codes: 0 yes/success/found, 1 no/bot, 2 parse error, 3 cap
// exceeded, 4 model error, 10+k simulation failure of kind k.

#include <cstdio>
#include <iostream>

#include "CLI11.hpp"
#include "fsr/bundle.hpp"
#include "fsr/oracles.hpp"

namespace {

constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitParse = 2;
constexpr int kExitCap = 3;
constexpr int kExitModel = 4;
constexpr int kExitFailureBase = 10;

int failure_exit(const fsr::FailureReason& f) {
    return kExitFailureBase + static_cast<int>(f.kind);
}

void print_run(const fsr::RunResult& r, const fsr::Team& team, bool with_trace) {
    std::cout << "outcome: " << fsr::to_string(r.outcome) << "\n";
    if (r.outcome == fsr::RunResult::Outcome::Success)
        std::cout << "success_t: " << r.success_t << "\n";
    if (r.failure) {
        std::cout << "failure: " << fsr::to_string(r.failure->kind) << " at t="
                  << r.failure->t << "\n";
    }
    if (with_trace) std::cout << fsr::render_trace(r, team);
}

int run_exit(const fsr::RunResult& r) {
    switch (r.outcome) {
        case fsr::RunResult::Outcome::Success: return kExitYes;
        case fsr::RunResult::Outcome::Failure: return failure_exit(*r.failure);
        default: return kExitNo;
    }
}

struct SimArgs {
    std::string bundle;
    long long steps = 0;
    bool no_cycles = false;
    std::string trace_out;
};

int do_simulate(const SimArgs& a, bool verify_only) {
    fsr::TeamEnvVerInstance inst = fsr::load_teamenvver_bundle(a.bundle);
    long long budget = a.steps > 0 ? a.steps : fsr::default_verify_budget(inst);
    fsr::RunOptions opts;
    opts.step_budget = budget;
    opts.ec_budget = inst.ec_budget;
    opts.detect_cycles = !a.no_cycles;
    opts.record_trace = !verify_only || !a.trace_out.empty();
    fsr::Configuration c0 = fsr::initial_configuration(inst.env, inst.team, inst.p_I);
    fsr::RunResult r = fsr::run(std::move(c0), inst.team, inst.task, opts);
    if (verify_only) {
        bool yes = r.outcome == fsr::RunResult::Outcome::Success;
        if (yes)
            std::cout << "yes t=" << r.success_t << "\n";
        else
            std::cout << "no reason="
                      << (r.failure ? fsr::to_string(r.failure->kind)
                                    : fsr::to_string(r.outcome))
                      << "\n";
        if (!a.trace_out.empty())
            fsr::write_text_file(a.trace_out, fsr::render_trace(r, inst.team));
        return yes ? kExitYes : kExitNo;
    }
    print_run(r, inst.team, a.trace_out.empty());
    if (!a.trace_out.empty())
        fsr::write_text_file(a.trace_out, fsr::render_trace(r, inst.team));
    return run_exit(r);
}

void write_design_outcome(const std::string& out_dir, const fsr::DesignOutcome& d) {
    if (out_dir.empty()) return;
    std::filesystem::create_directories(out_dir);
    std::string blocks;
    for (int i = 0; i < d.team.size(); ++i) {
        if (i) blocks += "---\n";
        blocks += fsr::render_controller(d.team.controller(i));
    }
    fsr::write_text_file(std::filesystem::path(out_dir) / "team.txt", blocks);
    fsr::write_text_file(std::filesystem::path(out_dir) / "positions.txt",
                         fsr::render_positions(d.placement));
    fsr::write_text_file(std::filesystem::path(out_dir) / "trace.txt",
                         fsr::render_trace(d.witness, d.team));
    if (!d.library_choice.empty()) {
        std::string sel;
        for (int c : d.library_choice) sel += std::to_string(c) + "\n";
        fsr::write_text_file(std::filesystem::path(out_dir) / "choice.txt", sel);
    }
}

int report_design(const fsr::DesignOutcome& d, const std::string& out_dir) {
    if (!d.found) {
        std::cout << "bot\n";
        return kExitNo;
    }
    std::cout << "found\n";
    std::cout << "success_t: " << d.witness.success_t << "\n";
    for (int i = 0; i < d.team.size(); ++i) {
        if (i) std::cout << "---\n";
        std::cout << fsr::render_controller(d.team.controller(i));
    }
    write_design_outcome(out_dir, d);
    return kExitYes;
}

std::vector<fsr::Cnf> load_cnfs(const std::vector<std::string>& files) {
    std::vector<fsr::Cnf> fs;
    for (const auto& f : files) fs.push_back(fsr::parse_dimacs_cnf(fsr::read_text_file(f)));
    return fs;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"gridworld robot-team verification and design toolkit"};
    app.require_subcommand(1);

    SimArgs sim;
    auto* simulate = app.add_subcommand("simulate", "run a team bundle and print the trace");
    simulate->add_option("bundle", sim.bundle, "instance bundle directory")->required();
    simulate->add_option("--steps", sim.steps, "step budget (default: polynomial bound)");
    simulate->add_flag("--no-cycles", sim.no_cycles, "disable cycle detection");
    simulate->add_option("--trace-out", sim.trace_out, "write the trace to a file");

    SimArgs ver;
    auto* verify = app.add_subcommand("verify", "decide whether a team completes its task");
    verify->add_option("bundle", ver.bundle, "instance bundle directory")->required();
    verify->add_option("--steps", ver.steps, "step budget (default: polynomial bound)");
    verify->add_flag("--no-cycles", ver.no_cycles, "disable cycle detection");
    verify->add_option("--trace-out", ver.trace_out, "write the trace to a file");

    std::string design_mode = "team", design_bundle, design_out;
    long long design_cap = 0;
    auto* design = app.add_subcommand("design", "search for a team or controllers");
    design->add_option("bundle", design_bundle, "instance bundle directory")->required();
    design->add_option("--mode", design_mode, "team | controllers | homogeneous")
        ->check(CLI::IsMember({"team", "controllers", "homogeneous"}));
    design->add_option("--out", design_out, "directory for the solution and witness");
    design->add_option("--cap", design_cap, "search cap override");

    std::string red_kind, red_in, red_out;
    int red_k = 1, red_ladder = 0, red_holding = 0, red_states = 1;
    auto* reduce = app.add_subcommand("reduce", "build an instance from a formula or graph");
    reduce->add_option("--kind", red_kind, "3sat-tev | ds-cdls | 3sat-tdls")
        ->required()
        ->check(CLI::IsMember({"3sat-tev", "ds-cdls", "3sat-tdls"}));
    reduce->add_option("--in", red_in, "DIMACS cnf / edge-list input file")->required();
    reduce->add_option("--out", red_out, "bundle directory to write")->required();
    reduce->add_option("-k", red_k, "dominating set size bound (ds-cdls)");
    reduce->add_option("--ladder", red_ladder, "state budget; adds the descent staircase");
    reduce->add_option("--holding", red_holding, "extra idle robots in a walled annex");
    reduce->add_option("--states", red_states, "states per holding robot");

    std::string cv_kind;
    std::vector<std::string> cv_files;
    int cv_k = 1, cv_ladder = 0, cv_jobs = 1;
    auto* crossvalidate =
        app.add_subcommand("crossvalidate", "compare solver answers with oracles");
    crossvalidate->add_option("--kind", cv_kind, "3sat-tev | ds-cdls | 3sat-tdls")
        ->required()
        ->check(CLI::IsMember({"3sat-tev", "ds-cdls", "3sat-tdls"}));
    crossvalidate->add_option("files", cv_files, "input files")->required();
    crossvalidate->add_option("-k", cv_k, "dominating set size bound (ds-cdls)");
    crossvalidate->add_option("--ladder", cv_ladder, "state budget (ds-cdls)");
    crossvalidate->add_option("--jobs", cv_jobs, "parallel instances");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*simulate) return do_simulate(sim, false);
        if (*verify) return do_simulate(ver, true);
        if (*design) {
            if (design_mode == "controllers") {
                fsr::ContDesLSInstance inst = fsr::load_contdesls_bundle(design_bundle);
                fsr::DesignOutcome d = design_cap > 0
                                           ? fsr::design_controllers_ls(inst, design_cap)
                                           : fsr::design_controllers_ls(inst);
                return report_design(d, design_out);
            }
            fsr::TeamDesLSInstance inst = fsr::load_teamdesls_bundle(design_bundle);
            fsr::DesignOutcome d;
            if (design_mode == "homogeneous") {
                d = fsr::design_team_homogeneous(inst);
            } else {
                d = design_cap > 0 ? fsr::design_team_ls(inst, design_cap)
                                   : fsr::design_team_ls(inst);
            }
            return report_design(d, design_out);
        }
        if (*reduce) {
            if (red_kind == "3sat-tev") {
                auto r = fsr::reduce_3sat_to_teamenvver(
                    fsr::parse_dimacs_cnf(fsr::read_text_file(red_in)));
                if (red_holding > 0)
                    fsr::add_holding_area(r.instance, red_holding, red_states);
                fsr::save_teamenvver_bundle(red_out, r.instance, &r.cert);
            } else if (red_kind == "ds-cdls") {
                auto r = fsr::reduce_domset_to_contdesls(
                    fsr::parse_dimacs_graph(fsr::read_text_file(red_in)), red_k);
                if (red_ladder > 1) r = fsr::extend_with_state_ladder(r, red_k, red_ladder);
                fsr::save_contdesls_bundle(red_out, r.instance, &r.cert);
            } else {
                auto r = fsr::reduce_3sat_to_teamdesls(
                    fsr::parse_dimacs_cnf(fsr::read_text_file(red_in)));
                if (red_holding > 0)
                    fsr::add_holding_area(r.instance, red_holding, red_states);
                fsr::save_teamdesls_bundle(red_out, r.instance, &r.cert);
            }
            std::cout << "wrote " << red_out << "\n";
            return kExitYes;
        }
        if (*crossvalidate) {
            fsr::CrossValidationReport report;
            if (cv_kind == "3sat-tev") {
                report = fsr::cross_validate_teamenvver(load_cnfs(cv_files), cv_jobs);
            } else if (cv_kind == "3sat-tdls") {
                report = fsr::cross_validate_teamdesls(load_cnfs(cv_files), cv_jobs);
            } else {
                std::vector<std::pair<fsr::Graph, int>> cases;
                for (const auto& f : cv_files)
                    cases.push_back({fsr::parse_dimacs_graph(fsr::read_text_file(f)), cv_k});
                report = fsr::cross_validate_contdesls(cases, std::max(1, cv_ladder), cv_jobs);
            }
            std::cout << fsr::to_string(report) << "\n";
            return report.ok() ? kExitYes : kExitNo;
        }
    } catch (const fsr::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const fsr::CapExceeded& e) {
        std::cerr << "cap exceeded: " << e.what() << "\n";
        return kExitCap;
    } catch (const fsr::ModelError& e) {
        std::cerr << "model error: " << e.what() << "\n";
        return kExitModel;
    }
    return kExitNo;
}
