#include "fsr/gridworld.hpp"

#include <cstdlib>
#include <sstream>
#include <unordered_map>

namespace fsr {

int manhattan_distance(Position a, Position b) {
    return std::abs(a.col - b.col) + std::abs(a.row - b.row);
}

Environment::Environment(int width, int height, const std::string& fill_type)
    : width_(width), height_(height) {
    if (width < 1 || height < 1)
        throw ModelError("environment dimensions must be positive");
    int fill = add_type(fill_type);
    cells_.assign(static_cast<size_t>(width) * height, static_cast<uint16_t>(fill));
    obstacle_.assign(cells_.size(), 0);
}

int Environment::type_id(const std::string& name) const {
    for (size_t i = 0; i < legend_.size(); ++i)
        if (legend_[i] == name) return static_cast<int>(i);
    return -1;
}

int Environment::add_type(const std::string& name, bool obstacle_default) {
    if (name == kRobotType)
        throw ModelError("e_robot is reserved and may not appear in a legend");
    if (int id = type_id(name); id >= 0) return id;
    legend_.push_back(name);
    legend_obstacle_.push_back(obstacle_default);
    return static_cast<int>(legend_.size()) - 1;
}

const std::string& Environment::square_at(Position p) const {
    return legend_[static_cast<size_t>(type_id_at(p))];
}

int Environment::type_id_at(Position p) const {
    if (!in_bounds(p))
        throw ModelError("position (" + std::to_string(p.col) + "," + std::to_string(p.row) +
                         ") out of bounds");
    return cells_[static_cast<size_t>(index(p))];
}

bool Environment::is_obstacle(Position p) const {
    if (!in_bounds(p))
        throw ModelError("position out of bounds");
    return obstacle_[static_cast<size_t>(index(p))] != 0;
}

void Environment::set_square(Position p, const std::string& t) {
    if (!in_bounds(p)) throw ModelError("set_square: position out of bounds");
    if (is_obstacle(p)) throw ModelError("set_square: cannot modify an obstacle square");
    int id = type_id(t);
    if (id < 0) throw ModelError("set_square: type '" + t + "' not in legend");
    cells_[static_cast<size_t>(index(p))] = static_cast<uint16_t>(id);
}

void Environment::put_cell(Position p, const std::string& t, bool obstacle) {
    if (!in_bounds(p)) throw ModelError("put_cell: position out of bounds");
    int id = add_type(t, obstacle);
    cells_[static_cast<size_t>(index(p))] = static_cast<uint16_t>(id);
    obstacle_[static_cast<size_t>(index(p))] = obstacle ? 1 : 0;
}

void Environment::set_obstacle(Position p, bool obstacle) {
    if (!in_bounds(p)) throw ModelError("set_obstacle: position out of bounds");
    obstacle_[static_cast<size_t>(index(p))] = obstacle ? 1 : 0;
}

uint64_t Environment::digest() const {
    uint64_t h = 1469598103934665603ull;
    auto mix = [&h](uint64_t v) {
        h ^= v;
        h *= 1099511628211ull;
    };
    mix(static_cast<uint64_t>(width_));
    mix(static_cast<uint64_t>(height_));
    for (const auto& name : legend_)
        for (char c : name) mix(static_cast<uint8_t>(c));
    for (uint16_t c : cells_) mix(c);
    for (uint8_t o : obstacle_) mix(o);
    return h;
}

namespace {

// Symbols assigned to legend entries when rendering, in id order.
const std::string kSymbolAlphabet =
    ".#abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789"
    "!$%&'*+,-/:;<=>?@[]^_`{|}~";

} // namespace

Environment parse_environment(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;

    std::unordered_map<char, int> symbol_to_id;
    std::vector<std::string> names;
    std::vector<bool> obstacle_flags;

    // Legend section.
    bool saw_blank = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) {
            saw_blank = true;
            break;
        }
        std::istringstream ls(line);
        std::string kw, sym, name, flag;
        ls >> kw >> sym >> name;
        if (kw != "legend" || sym.size() != 1 || name.empty())
            throw ParseError("expected 'legend <char> <type-name> [obstacle]'", lineno);
        bool obstacle = false;
        if (ls >> flag) {
            if (flag != "obstacle")
                throw ParseError("unexpected token '" + flag + "' in legend entry", lineno);
            obstacle = true;
        }
        if (name == kRobotType)
            throw ParseError("e_robot may not appear in a legend", lineno);
        if (symbol_to_id.count(sym[0]))
            throw ParseError("duplicate legend symbol '" + sym + "'", lineno);
        for (const auto& n : names)
            if (n == name) throw ParseError("duplicate legend type '" + name + "'", lineno);
        symbol_to_id[sym[0]] = static_cast<int>(names.size());
        names.push_back(name);
        obstacle_flags.push_back(obstacle);
    }
    if (names.empty()) throw ParseError("missing legend section", lineno);
    if (!saw_blank) throw ParseError("missing blank line after legend", lineno);

    // Grid rows, north to south.
    std::vector<std::string> rows;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) break;
        rows.push_back(line);
    }
    if (rows.empty()) throw ParseError("empty grid body", lineno);
    size_t width = rows[0].size();
    for (size_t i = 1; i < rows.size(); ++i)
        if (rows[i].size() != width)
            throw ParseError("ragged row: expected width " + std::to_string(width),
                             lineno - static_cast<int>(rows.size() - 1 - i));

    Environment env(static_cast<int>(width), static_cast<int>(rows.size()), names[0]);
    for (size_t i = 1; i < names.size(); ++i) env.add_type(names[i], obstacle_flags[i]);
    env.set_legend_obstacle_default(0, obstacle_flags[0]);
    int height = env.height();
    for (int r = 0; r < height; ++r) {
        const std::string& rowtext = rows[static_cast<size_t>(r)];
        int grid_row = height - r;  // first file line is the northmost row
        for (int c = 0; c < static_cast<int>(width); ++c) {
            auto it = symbol_to_id.find(rowtext[static_cast<size_t>(c)]);
            if (it == symbol_to_id.end())
                throw ParseError(std::string("unknown legend symbol '") +
                                     rowtext[static_cast<size_t>(c)] + "'",
                                 lineno - (static_cast<int>(rows.size()) - 1 - r));
            env.put_cell({c + 1, grid_row}, names[static_cast<size_t>(it->second)],
                         obstacle_flags[static_cast<size_t>(it->second)]);
        }
    }
    return env;
}

std::string render_environment(const Environment& env) {
    const auto& legend = env.legend();
    if (legend.size() > kSymbolAlphabet.size())
        throw ModelError("legend too large to render");
    std::ostringstream out;
    for (size_t i = 0; i < legend.size(); ++i) {
        out << "legend " << kSymbolAlphabet[i] << ' ' << legend[i];
        if (env.legend_obstacle_default()[i]) out << " obstacle";
        out << '\n';
    }
    out << '\n';
    for (int row = env.height(); row >= 1; --row) {
        for (int col = 1; col <= env.width(); ++col) {
            Position p{col, row};
            int id = env.type_id_at(p);
            if (env.is_obstacle(p) != env.legend_obstacle_default()[static_cast<size_t>(id)])
                throw ModelError("per-square obstacle flag disagrees with legend; not renderable");
            out << kSymbolAlphabet[static_cast<size_t>(id)];
        }
        out << '\n';
    }
    return out.str();
}

} // namespace fsr
