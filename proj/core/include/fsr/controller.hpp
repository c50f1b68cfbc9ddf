#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fsr/gridworld.hpp"

namespace fsr {

enum class Direction { North, South, East, West, Stay };

const char* to_string(Direction d);
std::optional<Direction> direction_from_string(const std::string& s);

// Offset of a sensed or modified square relative to the robot.
struct Offset {
    int dx = 0;
    int dy = 0;
    friend bool operator==(const Offset&, const Offset&) = default;
    friend auto operator<=>(const Offset&, const Offset&) = default;
};

// Trigger formula AST. Star appears only as a whole formula, never below
// a connective; the parser enforces this.
struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
    enum class Kind { Star, Pred, Not, And, Or };
    Kind kind = Kind::Star;
    std::string type;  // Pred: square type or e_robot
    Offset off;        // Pred
    FormulaPtr a, b;   // Not: a; And/Or: a,b

    static FormulaPtr star();
    static FormulaPtr pred(std::string type, Offset off);
    static FormulaPtr negate(FormulaPtr f);
    static FormulaPtr conj(FormulaPtr a, FormulaPtr b);
    static FormulaPtr disj(FormulaPtr a, FormulaPtr b);
};

bool formula_equal(const FormulaPtr& a, const FormulaPtr& b);
int formula_max_offset_norm(const FormulaPtr& f);
std::string render_formula(const FormulaPtr& f);

// Environment modification: Star (none) or write `type` at `off`, |off| <= 1.
struct ModSpec {
    bool star = true;
    std::string type;
    Offset off;

    static ModSpec none() { return ModSpec{}; }
    static ModSpec write(std::string type, Offset off) { return ModSpec{false, std::move(type), off}; }
    friend bool operator==(const ModSpec&, const ModSpec&) = default;
};

struct Transition {
    int from = 0;
    FormulaPtr trigger;
    ModSpec mod;
    Direction dir = Direction::Stay;
    int to = 0;
};

bool transition_equal(const Transition& a, const Transition& b);

// A transition with unbound state endpoints, used by controller design.
struct TransitionTemplate {
    FormulaPtr trigger;
    ModSpec mod;
    Direction dir = Direction::Stay;
};

Transition instantiate_template(const TransitionTemplate& t, int q, int q_next);

struct Controller {
    std::vector<std::string> state_names;  // ids are indices into this list
    int initial = 0;
    int radius = 0;
    std::vector<Transition> transitions;

    int num_states() const { return static_cast<int>(state_names.size()); }
};

bool controller_equal(const Controller& a, const Controller& b);
void validate_controller(const Controller& c);  // throws ModelError

// What a robot senses: every in-bounds offset with Manhattan norm <= r.
struct PerceptCell {
    Offset off;
    int type_id = -1;
    bool obstacle = false;
    bool robot = false;  // any robot, including self at (0,0)
};

struct Percept {
    const Environment* env = nullptr;
    std::vector<PerceptCell> cells;  // sorted by offset
    const PerceptCell* find(Offset o) const;
};

Percept percept_of(const Environment& env, const std::vector<Position>& robot_positions,
                   Position at, int r);

// Evaluates a Star-free formula against a percept. Type predicates at (0,0)
// see the square under the sensing robot itself; elsewhere an occupying robot
// masks the square's type and only e_robot reads true.
bool eval_trigger(const FormulaPtr& f, const Percept& p);

// All transitions from q whose non-Star trigger holds; if none, all Star
// transitions from q. Declaration order is preserved.
std::vector<const Transition*> enabled_transitions(const Controller& c, int q, const Percept& p);

// Controller DSL; see the project README for the grammar.
Controller parse_controller(const std::string& text);
std::string render_controller(const Controller& c);

std::vector<TransitionTemplate> parse_template_library(const std::string& text);
std::string render_template_library(const std::vector<TransitionTemplate>& lib);

} // namespace fsr
