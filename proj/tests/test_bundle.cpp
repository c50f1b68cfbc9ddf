#include <cstdio>
#include <filesystem>
#include <unistd.h>
#include <memory>

#include "doctest.h"
#include "fsr/bundle.hpp"

using namespace fsr;

namespace {

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("fsr-test-" + std::to_string(::getpid()) + "-" +
                std::to_string(counter()++));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    static int& counter() {
        static int c = 0;
        return c;
    }
};

std::shared_ptr<const Controller> make_controller(const std::string& text) {
    return std::make_shared<Controller>(parse_controller(text));
}

} // namespace

TEST_CASE("limits files round trip") {
    std::map<std::string, std::string> kv = {{"ec", "3"}, {"team_size", "2"}, {"h", "1"}};
    CHECK(parse_limits(render_limits(kv)) == kv);
    CHECK_THROWS_AS(parse_limits("no equals sign\n"), ParseError);
}

TEST_CASE("task files round trip") {
    TargetConfiguration t;
    t.square_requirements.push_back({{2, 3}, "e_Goal"});
    t.position_requirements.push_back({RobotSelector::any_robot(), {1, 1}});
    t.position_requirements.push_back({RobotSelector::robot(2), {4, 4}});
    t.state_requirements.push_back({RobotSelector::any_robot(), "s1"});
    TargetConfiguration back = parse_task(render_task(t));
    CHECK(back.square_requirements == t.square_requirements);
    CHECK(back.position_requirements == t.position_requirements);
    CHECK(back.state_requirements == t.state_requirements);
    CHECK_THROWS_AS(parse_task("pos x 1 1\n"), ParseError);
}

TEST_CASE("position files round trip") {
    std::vector<Position> ps = {{1, 1}, {3, 2}};
    CHECK(parse_positions(render_positions(ps)) == ps);
}

TEST_CASE("verification bundles round trip through a directory") {
    TempDir dir;
    TeamEnvVerInstance inst;
    inst.env = Environment(3, 2, "e_a");
    inst.env.add_type("e_b");
    inst.env.set_square({2, 1}, "e_b");
    inst.team.robots.push_back(
        make_controller("radius 1\ninitial s0\ns0: enval(e_b,1,0) / * / goEast -> s0\n"));
    inst.team.robots.push_back(inst.team.robots[0]);
    inst.p_I = {{1, 1}, {3, 2}};
    inst.ec_budget = 4;
    inst.task.position_requirements.push_back({RobotSelector::any_robot(), {3, 1}});

    save_teamenvver_bundle(dir.path, inst);
    TeamEnvVerInstance back = load_teamenvver_bundle(dir.path);
    CHECK(back.env == inst.env);
    CHECK(back.p_I == inst.p_I);
    CHECK(back.ec_budget == 4);
    CHECK(back.team.size() == 2);
    CHECK(controller_equal(back.team.controller(0), inst.team.controller(0)));
    // Identical controller blocks are deduplicated back into one shared value.
    CHECK(back.team.distinct_controller_count() == 1);
    CHECK(back.task.position_requirements == inst.task.position_requirements);
}

TEST_CASE("team-design bundles round trip") {
    TempDir dir;
    TeamDesLSInstance inst;
    inst.env = Environment(2, 2, "e_a");
    inst.team_size = 2;
    inst.library = {make_controller("radius 0\ninitial s0\ns0: * / * / stay -> s0\n"),
                    make_controller("radius 0\ninitial s0\ns0: * / * / goNorth -> s0\n")};
    inst.initial_region = {{1, 1}, {2, 1}};
    inst.max_controller_types = 2;
    inst.exact_h = true;
    inst.try_permutations = true;
    inst.ec_budget = 7;
    inst.comp = {3, 2};
    inst.task.state_requirements.push_back({RobotSelector::robot(0), "s0"});

    save_teamdesls_bundle(dir.path, inst);
    TeamDesLSInstance back = load_teamdesls_bundle(dir.path);
    CHECK(back.env == inst.env);
    CHECK(back.team_size == 2);
    CHECK(back.library.size() == 2);
    CHECK(controller_equal(*back.library[1], *inst.library[1]));
    CHECK(back.initial_region == inst.initial_region);
    CHECK(back.max_controller_types == 2);
    CHECK(back.exact_h);
    CHECK(back.try_permutations);
    CHECK(back.ec_budget == 7);
    CHECK(back.comp.c1 == 3);
    CHECK(back.comp.c2 == 2);
    CHECK(back.task.state_requirements == inst.task.state_requirements);
}

TEST_CASE("controller-design bundles round trip") {
    TempDir dir;
    ContDesLSInstance inst;
    inst.env = Environment(2, 1, "e_a");
    inst.team_size = 1;
    inst.p_I = {{1, 1}};
    inst.library.push_back({Formula::pred("e_a", {0, 0}), ModSpec::none(), Direction::East});
    inst.library.push_back({Formula::star(), ModSpec::write("e_a", {0, 0}), Direction::Stay});
    inst.radius = 1;
    inst.max_states = 2;
    inst.max_out_degree = 3;
    inst.max_controller_types = 1;
    inst.ec_budget = 1;
    inst.comp = {2, 2};
    inst.task.position_requirements.push_back({RobotSelector::robot(0), {2, 1}});

    save_contdesls_bundle(dir.path, inst);
    ContDesLSInstance back = load_contdesls_bundle(dir.path);
    CHECK(back.env == inst.env);
    CHECK(back.p_I == inst.p_I);
    REQUIRE(back.library.size() == 2);
    CHECK(formula_equal(back.library[0].trigger, inst.library[0].trigger));
    CHECK(back.library[1].mod == inst.library[1].mod);
    CHECK(back.radius == 1);
    CHECK(back.max_states == 2);
    CHECK(back.max_out_degree == 3);
    CHECK(back.ec_budget == 1);
    CHECK(back.comp.c1 == 2);
    CHECK(back.task.position_requirements == inst.task.position_requirements);
}

TEST_CASE("certificates render notes and facts") {
    ReductionCertificate cert;
    cert.notes.push_back("reading the east guards yields the chosen set");
    cert.facts["construction"] = "sg2-domset";
    cert.facts["k"] = "2";
    std::string text = render_certificate(cert);
    CHECK(text.find("# reading the east guards") != std::string::npos);
    CHECK(text.find("construction = sg2-domset") != std::string::npos);
    CHECK(text.find("k = 2") != std::string::npos);
}

TEST_CASE("missing bundle files raise parse errors") {
    TempDir dir;
    CHECK_THROWS(load_teamenvver_bundle(dir.path));
}
