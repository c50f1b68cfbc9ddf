#include <random>

#include "doctest.h"
#include "fsr/gridworld.hpp"
#include "helpers.hpp"

using namespace fsr;

TEST_CASE("parse_environment transcribes a 2x1 grid") {
    Environment env = parse_environment(
        "legend . freespace\n"
        "legend # wall obstacle\n"
        "\n"
        ".#\n");
    CHECK(env.width() == 2);
    CHECK(env.height() == 1);
    CHECK(env.square_at({1, 1}) == "freespace");
    CHECK_FALSE(env.is_obstacle({1, 1}));
    CHECK(env.square_at({2, 1}) == "wall");
    CHECK(env.is_obstacle({2, 1}));
}

TEST_CASE("parse_environment rejects an empty body") {
    CHECK_THROWS_AS(parse_environment("legend . freespace\n\n"), ParseError);
}

TEST_CASE("parse_environment rejects ragged rows and unknown symbols") {
    CHECK_THROWS_AS(parse_environment("legend . f\n\n..\n.\n"), ParseError);
    CHECK_THROWS_AS(parse_environment("legend . f\n\n.x\n"), ParseError);
    CHECK_THROWS_AS(parse_environment("legend . e_robot\n\n.\n"), ParseError);
}

TEST_CASE("environment text round trip on 100 random grids") {
    std::mt19937 rng(20240901);
    for (int i = 0; i < 100; ++i) {
        Environment env = testgen::random_environment(rng);
        Environment back = parse_environment(render_environment(env));
        CHECK(back == env);
    }
}

TEST_CASE("square_at reads the stored type and checks bounds") {
    Environment env(1, 1, "grass");
    CHECK(env.square_at({1, 1}) == "grass");
    CHECK_THROWS_AS(env.square_at({0, 1}), ModelError);
    CHECK_THROWS_AS(env.square_at({1, 2}), ModelError);
}

TEST_CASE("set_square changes exactly one square") {
    Environment env(3, 2, "grass");
    env.add_type("gravel");
    Environment before = env;
    env.set_square({2, 1}, "gravel");
    CHECK(env.square_at({2, 1}) == "gravel");
    for (int r = 1; r <= 2; ++r)
        for (int c = 1; c <= 3; ++c)
            if (!(c == 2 && r == 1)) {
                CHECK(env.square_at({c, r}) == before.square_at({c, r}));
                CHECK(env.is_obstacle({c, r}) == before.is_obstacle({c, r}));
            }
    env.set_square({2, 1}, "gravel");  // rewriting the same type is a no-op
    CHECK(env.square_at({2, 1}) == "gravel");
}

TEST_CASE("set_square rejects unknown types and obstacles") {
    Environment env(2, 1, "grass");
    env.add_type("wall", true);
    env.put_cell({2, 1}, "wall", true);
    CHECK_THROWS_AS(env.set_square({1, 1}, "gravel"), ModelError);
    CHECK_THROWS_AS(env.set_square({2, 1}, "grass"), ModelError);
}

TEST_CASE("legend refuses the reserved robot type") {
    Environment env(1, 1, "grass");
    CHECK_THROWS_AS(env.add_type(kRobotType), ModelError);
}

TEST_CASE("manhattan_distance examples") {
    CHECK(manhattan_distance({1, 1}, {1, 1}) == 0);
    CHECK(manhattan_distance({1, 1}, {3, 4}) == 5);
}

TEST_CASE("manhattan_distance identity, symmetry, triangle inequality") {
    std::mt19937 rng(7);
    for (int i = 0; i < 200; ++i) {
        Position a{testgen::pick(rng, -9, 9), testgen::pick(rng, -9, 9)};
        Position b{testgen::pick(rng, -9, 9), testgen::pick(rng, -9, 9)};
        Position c{testgen::pick(rng, -9, 9), testgen::pick(rng, -9, 9)};
        CHECK(manhattan_distance(a, a) == 0);
        CHECK(manhattan_distance(a, b) == manhattan_distance(b, a));
        CHECK(manhattan_distance(a, c) <=
              manhattan_distance(a, b) + manhattan_distance(b, c));
    }
}

TEST_CASE("digest distinguishes square edits") {
    Environment env(2, 2, "grass");
    env.add_type("gravel");
    uint64_t before = env.digest();
    env.set_square({1, 2}, "gravel");
    CHECK(env.digest() != before);
}
