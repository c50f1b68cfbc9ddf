#include <benchmark/benchmark.h>

#include <memory>

#include "fsr/oracles.hpp"
#include "fsr/problems.hpp"

using namespace fsr;

namespace {

std::shared_ptr<const Controller> bouncer() {
    static auto c = std::make_shared<const Controller>(parse_controller(
        "radius 1\n"
        "initial s0\n"
        "s0: enval(e_a,1,0) & !enval(e_robot,1,0) / * / goEast -> s0\n"
        "s0: * / * / goWest -> s1\n"
        "s1: enval(e_a,-1,0) & !enval(e_robot,-1,0) / * / goWest -> s1\n"
        "s1: * / * / goEast -> s0\n"));
    return c;
}

TeamEnvVerInstance patrol_instance(int side, int robots) {
    TeamEnvVerInstance inst;
    inst.env = Environment(side, side, "e_a");
    for (int i = 0; i < robots; ++i) {
        inst.team.robots.push_back(bouncer());
        inst.p_I.push_back({1 + i % side, 1 + (i * 4) % side});
    }
    inst.env.add_type("e_never");
    inst.task.square_requirements.push_back({{1, 1}, "e_never"});
    return inst;
}

void BM_step(benchmark::State& state) {
    TeamEnvVerInstance inst =
        patrol_instance(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
    Configuration c = initial_configuration(inst.env, inst.team, inst.p_I);
    for (auto _ : state) {
        auto next = step(c, inst.team);
        c = std::move(std::get<Configuration>(next));
        benchmark::DoNotOptimize(c.t);
    }
    state.SetItemsProcessed(state.iterations() * inst.team.size());
}
BENCHMARK(BM_step)->Args({20, 4})->Args({50, 10});

void BM_verify_100k(benchmark::State& state) {
    TeamEnvVerInstance inst = patrol_instance(50, 10);
    for (auto _ : state) {
        VerifyResult r = verify_team_env(inst, 100000, false);
        benchmark::DoNotOptimize(r.run.outcome);
    }
}
BENCHMARK(BM_verify_100k)->Unit(benchmark::kMillisecond)->Iterations(1);

void BM_cycle_detection(benchmark::State& state) {
    TeamEnvVerInstance inst = patrol_instance(20, 4);
    for (auto _ : state) {
        VerifyResult r = verify_team_env(inst, 100000, true);
        benchmark::DoNotOptimize(r.run.outcome);
    }
}
BENCHMARK(BM_cycle_detection)->Unit(benchmark::kMillisecond);

void BM_verification_reduction(benchmark::State& state) {
    Cnf f{3, {{1, -2, 3}, {-1, 2, 2}, {3, 3, -1}}};
    for (auto _ : state) {
        TeamEnvVerInstance inst = reduce_3sat_to_teamenvver(f).instance;
        VerifyResult r = verify_team_env(inst, default_verify_budget(inst), true);
        benchmark::DoNotOptimize(r.yes);
    }
}
BENCHMARK(BM_verification_reduction)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
