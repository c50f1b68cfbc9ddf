// Shared random generators for the test suite. All randomness flows through
// an explicitly seeded std::mt19937 so every test run sees identical inputs.
#pragma once

#include <algorithm>
#include <cstdlib>
#include <random>
#include <string>
#include <vector>

#include "fsr/controller.hpp"
#include "fsr/gridworld.hpp"
#include "fsr/simulator.hpp"

namespace testgen {

inline int pick(std::mt19937& rng, int lo, int hi) {
    return lo + static_cast<int>(rng() % static_cast<unsigned>(hi - lo + 1));
}

inline const std::vector<std::string>& free_types() {
    static const std::vector<std::string> t = {"e_a", "e_b", "e_c"};
    return t;
}

// Random environment over e_a/e_b/e_c free squares and e_wall obstacles.
// Per-cell obstacle flags always match the legend defaults so the text
// format can represent the result.
inline fsr::Environment random_environment(std::mt19937& rng, int max_side = 8) {
    int w = pick(rng, 2, max_side);
    int h = pick(rng, 2, max_side);
    fsr::Environment env(w, h, "e_a");
    for (const auto& t : free_types()) env.add_type(t);
    env.add_type("e_wall", true);
    for (int r = 1; r <= h; ++r) {
        for (int c = 1; c <= w; ++c) {
            if (rng() % 5 == 0) {
                env.put_cell({c, r}, "e_wall", true);
            } else {
                env.put_cell({c, r}, free_types()[static_cast<size_t>(
                                         pick(rng, 0, 2))],
                             false);
            }
        }
    }
    env.put_cell({1, 1}, "e_a", false);  // keep at least one free square
    return env;
}

inline std::vector<fsr::Position> free_squares(const fsr::Environment& env) {
    std::vector<fsr::Position> out;
    for (int r = 1; r <= env.height(); ++r)
        for (int c = 1; c <= env.width(); ++c)
            if (!env.is_obstacle({c, r})) out.push_back({c, r});
    return out;
}

inline std::vector<fsr::Position> random_free_positions(std::mt19937& rng,
                                                        const fsr::Environment& env,
                                                        int count) {
    std::vector<fsr::Position> cells = free_squares(env);
    std::shuffle(cells.begin(), cells.end(), rng);
    if (static_cast<int>(cells.size()) > count) cells.resize(static_cast<size_t>(count));
    return cells;
}

inline fsr::Offset random_offset(std::mt19937& rng, int radius) {
    if (radius == 0) return {0, 0};
    int dx = pick(rng, -radius, radius);
    int rest = radius - std::abs(dx);
    int dy = pick(rng, -rest, rest);
    return {dx, dy};
}

inline fsr::FormulaPtr random_formula(std::mt19937& rng,
                                      const std::vector<std::string>& types, int radius,
                                      int depth) {
    if (depth == 0 || rng() % 2 == 0) {
        bool robot = rng() % 5 == 0;
        std::string t = robot ? std::string(fsr::kRobotType)
                              : types[static_cast<size_t>(pick(
                                    rng, 0, static_cast<int>(types.size()) - 1))];
        return fsr::Formula::pred(t, random_offset(rng, radius));
    }
    switch (rng() % 3) {
        case 0: return fsr::Formula::negate(random_formula(rng, types, radius, depth - 1));
        case 1:
            return fsr::Formula::conj(random_formula(rng, types, radius, depth - 1),
                                      random_formula(rng, types, radius, depth - 1));
        default:
            return fsr::Formula::disj(random_formula(rng, types, radius, depth - 1),
                                      random_formula(rng, types, radius, depth - 1));
    }
}

inline fsr::Direction random_direction(std::mt19937& rng) {
    switch (rng() % 5) {
        case 0: return fsr::Direction::North;
        case 1: return fsr::Direction::South;
        case 2: return fsr::Direction::East;
        case 3: return fsr::Direction::West;
        default: return fsr::Direction::Stay;
    }
}

inline fsr::Controller random_controller(std::mt19937& rng,
                                         const std::vector<std::string>& types) {
    fsr::Controller c;
    int n = pick(rng, 1, 3);
    for (int i = 0; i < n; ++i) c.state_names.push_back("s" + std::to_string(i));
    c.initial = 0;
    c.radius = pick(rng, 0, 2);
    int m = pick(rng, 0, 5);
    for (int i = 0; i < m; ++i) {
        fsr::Transition tr;
        tr.from = pick(rng, 0, n - 1);
        tr.to = pick(rng, 0, n - 1);
        tr.trigger = rng() % 5 == 0 ? fsr::Formula::star()
                                    : random_formula(rng, types, c.radius, 2);
        if (rng() % 10 < 3) {
            std::string t = types[static_cast<size_t>(
                pick(rng, 0, static_cast<int>(types.size()) - 1))];
            tr.mod = fsr::ModSpec::write(t, random_offset(rng, 1));
        }
        tr.dir = random_direction(rng);
        c.transitions.push_back(std::move(tr));
    }
    return c;
}

} // namespace testgen
