#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fsr/errors.hpp"

namespace fsr {

// 1-based grid coordinates; (1,1) is the southwest corner.
struct Position {
    int col = 0;
    int row = 0;

    friend bool operator==(const Position&, const Position&) = default;
    friend auto operator<=>(const Position&, const Position&) = default;
};

int manhattan_distance(Position a, Position b);

// The square type sensed when a robot occupies a square. Never part of a legend.
inline constexpr const char* kRobotType = "e_robot";

// Bounded 2D grid of typed squares with per-square obstacle flags.
// Square types are interned against the legend; cells store small ids.
class Environment {
public:
    Environment() = default;
    Environment(int width, int height, const std::string& fill_type);

    int width() const { return width_; }
    int height() const { return height_; }
    int size() const { return width_ * height_; }

    bool in_bounds(Position p) const {
        return p.col >= 1 && p.col <= width_ && p.row >= 1 && p.row <= height_;
    }

    const std::vector<std::string>& legend() const { return legend_; }
    const std::vector<bool>& legend_obstacle_default() const { return legend_obstacle_; }

    // Returns the legend id for a type name, or -1 when absent.
    int type_id(const std::string& name) const;
    // Interns a type name, returning its id. Rejects e_robot.
    int add_type(const std::string& name, bool obstacle_default = false);
    void set_legend_obstacle_default(int id, bool v) {
        legend_obstacle_[static_cast<size_t>(id)] = v;
    }

    const std::string& square_at(Position p) const;
    int type_id_at(Position p) const;
    bool is_obstacle(Position p) const;

    // The modeled square-type change: p must be in bounds, non-obstacle,
    // and t must already be in the legend.
    void set_square(Position p, const std::string& t);

    // Construction-time cell setup; no obstacle restriction.
    void put_cell(Position p, const std::string& t, bool obstacle);
    void set_obstacle(Position p, bool obstacle);

    uint64_t digest() const;

    friend bool operator==(const Environment&, const Environment&) = default;

private:
    int index(Position p) const { return (p.row - 1) * width_ + (p.col - 1); }

    int width_ = 0;
    int height_ = 0;
    std::vector<std::string> legend_;
    std::vector<bool> legend_obstacle_;  // obstacle flag used by the text format
    std::vector<uint16_t> cells_;
    std::vector<uint8_t> obstacle_;
};

// Text format: `legend <char> <type-name> [obstacle]` lines, a blank line,
// then height rows of width characters, first line = northmost row.
Environment parse_environment(const std::string& text);
std::string render_environment(const Environment& env);

} // namespace fsr
