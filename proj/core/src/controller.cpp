#include "fsr/controller.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <sstream>

namespace fsr {

const char* to_string(Direction d) {
    switch (d) {
        case Direction::North: return "goNorth";
        case Direction::South: return "goSouth";
        case Direction::East: return "goEast";
        case Direction::West: return "goWest";
        case Direction::Stay: return "stay";
    }
    return "?";
}

std::optional<Direction> direction_from_string(const std::string& s) {
    if (s == "goNorth") return Direction::North;
    if (s == "goSouth") return Direction::South;
    if (s == "goEast") return Direction::East;
    if (s == "goWest") return Direction::West;
    if (s == "stay") return Direction::Stay;
    return std::nullopt;
}

FormulaPtr Formula::star() {
    auto f = std::make_shared<Formula>();
    f->kind = Kind::Star;
    return f;
}

FormulaPtr Formula::pred(std::string type, Offset off) {
    auto f = std::make_shared<Formula>();
    f->kind = Kind::Pred;
    f->type = std::move(type);
    f->off = off;
    return f;
}

FormulaPtr Formula::negate(FormulaPtr inner) {
    auto f = std::make_shared<Formula>();
    f->kind = Kind::Not;
    f->a = std::move(inner);
    return f;
}

FormulaPtr Formula::conj(FormulaPtr a, FormulaPtr b) {
    auto f = std::make_shared<Formula>();
    f->kind = Kind::And;
    f->a = std::move(a);
    f->b = std::move(b);
    return f;
}

FormulaPtr Formula::disj(FormulaPtr a, FormulaPtr b) {
    auto f = std::make_shared<Formula>();
    f->kind = Kind::Or;
    f->a = std::move(a);
    f->b = std::move(b);
    return f;
}

bool formula_equal(const FormulaPtr& a, const FormulaPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case Formula::Kind::Star: return true;
        case Formula::Kind::Pred: return a->type == b->type && a->off == b->off;
        case Formula::Kind::Not: return formula_equal(a->a, b->a);
        case Formula::Kind::And:
        case Formula::Kind::Or:
            return formula_equal(a->a, b->a) && formula_equal(a->b, b->b);
    }
    return false;
}

int formula_max_offset_norm(const FormulaPtr& f) {
    if (!f) return 0;
    switch (f->kind) {
        case Formula::Kind::Star: return 0;
        case Formula::Kind::Pred: return std::abs(f->off.dx) + std::abs(f->off.dy);
        case Formula::Kind::Not: return formula_max_offset_norm(f->a);
        case Formula::Kind::And:
        case Formula::Kind::Or:
            return std::max(formula_max_offset_norm(f->a), formula_max_offset_norm(f->b));
    }
    return 0;
}

namespace {

void render_formula_rec(const FormulaPtr& f, std::ostream& out) {
    switch (f->kind) {
        case Formula::Kind::Star:
            out << '*';
            break;
        case Formula::Kind::Pred:
            out << "enval(" << f->type << ',' << f->off.dx << ',' << f->off.dy << ')';
            break;
        case Formula::Kind::Not:
            out << '!';
            if (f->a->kind == Formula::Kind::Pred) {
                render_formula_rec(f->a, out);
            } else {
                out << '(';
                render_formula_rec(f->a, out);
                out << ')';
            }
            break;
        case Formula::Kind::And:
        case Formula::Kind::Or: {
            char op = f->kind == Formula::Kind::And ? '&' : '|';
            out << '(';
            render_formula_rec(f->a, out);
            out << ' ' << op << ' ';
            render_formula_rec(f->b, out);
            out << ')';
            break;
        }
    }
}

} // namespace

std::string render_formula(const FormulaPtr& f) {
    std::ostringstream out;
    render_formula_rec(f, out);
    return out.str();
}

bool transition_equal(const Transition& a, const Transition& b) {
    return a.from == b.from && a.to == b.to && a.dir == b.dir && a.mod == b.mod &&
           formula_equal(a.trigger, b.trigger);
}

Transition instantiate_template(const TransitionTemplate& t, int q, int q_next) {
    return Transition{q, t.trigger, t.mod, t.dir, q_next};
}

bool controller_equal(const Controller& a, const Controller& b) {
    if (a.state_names != b.state_names || a.initial != b.initial || a.radius != b.radius)
        return false;
    if (a.transitions.size() != b.transitions.size()) return false;
    for (size_t i = 0; i < a.transitions.size(); ++i)
        if (!transition_equal(a.transitions[i], b.transitions[i])) return false;
    return true;
}

void validate_controller(const Controller& c) {
    if (c.state_names.empty()) throw ModelError("controller needs at least one state");
    if (c.initial < 0 || c.initial >= c.num_states())
        throw ModelError("initial state out of range");
    if (c.radius < 0) throw ModelError("sensing radius must be non-negative");
    for (const auto& t : c.transitions) {
        if (t.from < 0 || t.from >= c.num_states() || t.to < 0 || t.to >= c.num_states())
            throw ModelError("transition references unknown state");
        if (!t.trigger) throw ModelError("transition has no trigger");
        if (formula_max_offset_norm(t.trigger) > c.radius)
            throw ModelError("trigger offset exceeds sensing radius " +
                             std::to_string(c.radius));
        if (!t.mod.star && std::abs(t.mod.off.dx) + std::abs(t.mod.off.dy) > 1)
            throw ModelError("modification offset exceeds Manhattan distance one");
    }
}

const PerceptCell* Percept::find(Offset o) const {
    auto it = std::lower_bound(cells.begin(), cells.end(), o,
                               [](const PerceptCell& c, Offset want) { return c.off < want; });
    if (it != cells.end() && it->off == o) return &*it;
    return nullptr;
}

Percept percept_of(const Environment& env, const std::vector<Position>& robot_positions,
                   Position at, int r) {
    Percept p;
    p.env = &env;
    for (int dx = -r; dx <= r; ++dx) {
        int rem = r - std::abs(dx);
        for (int dy = -rem; dy <= rem; ++dy) {
            Position q{at.col + dx, at.row + dy};
            if (!env.in_bounds(q)) continue;
            PerceptCell cell;
            cell.off = Offset{dx, dy};
            cell.type_id = env.type_id_at(q);
            cell.obstacle = env.is_obstacle(q);
            cell.robot = std::find(robot_positions.begin(), robot_positions.end(), q) !=
                         robot_positions.end();
            p.cells.push_back(cell);
        }
    }
    std::sort(p.cells.begin(), p.cells.end(),
              [](const PerceptCell& a, const PerceptCell& b) { return a.off < b.off; });
    return p;
}

bool eval_trigger(const FormulaPtr& f, const Percept& p) {
    if (!f) throw ModelError("null formula");
    switch (f->kind) {
        case Formula::Kind::Star:
            throw ModelError("Star has no truth value; resolved by enabled_transitions");
        case Formula::Kind::Pred: {
            const PerceptCell* cell = p.find(f->off);
            if (!cell) return false;
            if (f->type == kRobotType) return cell->robot;
            if (cell->type_id < 0 ||
                p.env->legend()[static_cast<size_t>(cell->type_id)] != f->type)
                return false;
            // A robot on the square masks its type, except the sensing
            // robot's own square at (0,0).
            return f->off == Offset{0, 0} || !cell->robot;
        }
        case Formula::Kind::Not:
            return !eval_trigger(f->a, p);
        case Formula::Kind::And:
            return eval_trigger(f->a, p) && eval_trigger(f->b, p);
        case Formula::Kind::Or:
            return eval_trigger(f->a, p) || eval_trigger(f->b, p);
    }
    return false;
}

std::vector<const Transition*> enabled_transitions(const Controller& c, int q, const Percept& p) {
    std::vector<const Transition*> out;
    std::vector<const Transition*> stars;
    for (const auto& t : c.transitions) {
        if (t.from != q) continue;
        if (t.trigger->kind == Formula::Kind::Star)
            stars.push_back(&t);
        else if (eval_trigger(t.trigger, p))
            out.push_back(&t);
    }
    if (out.empty()) return stars;
    return out;
}

// ---------------------------------------------------------------------------
// DSL parsing

namespace {

struct LineParser {
    const std::string& s;
    size_t i = 0;
    int lineno;

    LineParser(const std::string& text, int line) : s(text), lineno(line) {}

    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool eof() {
        skip_ws();
        return i >= s.size();
    }
    char peek() {
        skip_ws();
        return i < s.size() ? s[i] : '\0';
    }
    bool consume(char c) {
        skip_ws();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!consume(c))
            throw ParseError(std::string("expected '") + c + "'", lineno);
    }
    bool consume_word(const std::string& w) {
        skip_ws();
        if (s.compare(i, w.size(), w) == 0) {
            size_t end = i + w.size();
            if (end == s.size() ||
                (!std::isalnum(static_cast<unsigned char>(s[end])) && s[end] != '_')) {
                i = end;
                return true;
            }
        }
        return false;
    }
    std::string ident() {
        skip_ws();
        size_t start = i;
        while (i < s.size() &&
               (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
        if (i == start) throw ParseError("expected identifier", lineno);
        return s.substr(start, i - start);
    }
    int integer() {
        skip_ws();
        size_t start = i;
        if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == start) throw ParseError("expected integer", lineno);
        return std::stoi(s.substr(start, i - start));
    }

    FormulaPtr formula() { return or_expr(); }

    FormulaPtr or_expr() {
        FormulaPtr f = and_expr();
        while (consume('|')) f = Formula::disj(f, and_expr());
        return f;
    }
    FormulaPtr and_expr() {
        FormulaPtr f = unary();
        while (consume('&')) f = Formula::conj(f, unary());
        return f;
    }
    FormulaPtr unary() {
        if (consume('!')) return Formula::negate(unary());
        if (consume('(')) {
            FormulaPtr f = or_expr();
            expect(')');
            return f;
        }
        if (consume_word("enval")) {
            expect('(');
            std::string type = ident();
            expect(',');
            int dx = integer();
            expect(',');
            int dy = integer();
            expect(')');
            return Formula::pred(std::move(type), Offset{dx, dy});
        }
        throw ParseError("expected formula", lineno);
    }

    FormulaPtr trigger() {
        if (peek() == '*') {
            ++i;
            return Formula::star();
        }
        return formula();
    }

    ModSpec mod() {
        if (peek() == '*') {
            ++i;
            return ModSpec::none();
        }
        if (consume_word("enmod")) {
            expect('(');
            std::string type = ident();
            expect(',');
            int dx = integer();
            expect(',');
            int dy = integer();
            expect(')');
            return ModSpec::write(std::move(type), Offset{dx, dy});
        }
        throw ParseError("expected '*' or enmod(...)", lineno);
    }

    Direction direction() {
        std::string w = ident();
        auto d = direction_from_string(w);
        if (!d) throw ParseError("unknown direction '" + w + "'", lineno);
        return *d;
    }
};

std::string render_mod(const ModSpec& m) {
    if (m.star) return "*";
    std::ostringstream out;
    out << "enmod(" << m.type << ',' << m.off.dx << ',' << m.off.dy << ')';
    return out.str();
}

std::string render_trigger(const FormulaPtr& f) {
    if (f->kind == Formula::Kind::Star) return "*";
    return render_formula(f);
}

} // namespace

Controller parse_controller(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;

    Controller c;
    std::vector<std::string>& states = c.state_names;
    auto state_id = [&states](const std::string& name) {
        for (size_t i = 0; i < states.size(); ++i)
            if (states[i] == name) return static_cast<int>(i);
        states.push_back(name);
        return static_cast<int>(states.size()) - 1;
    };

    bool saw_radius = false, saw_initial = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        LineParser lp(line, lineno);
        if (lp.consume_word("radius")) {
            c.radius = lp.integer();
            saw_radius = true;
            continue;
        }
        if (lp.consume_word("initial")) {
            c.initial = state_id(lp.ident());
            saw_initial = true;
            continue;
        }
        if (lp.consume_word("states")) {
            while (!lp.eof()) state_id(lp.ident());
            continue;
        }
        // <from>: <formula> / <mod> / <dir> -> <to>
        std::string from = lp.ident();
        lp.expect(':');
        FormulaPtr trig = lp.trigger();
        lp.expect('/');
        ModSpec m = lp.mod();
        lp.expect('/');
        Direction d = lp.direction();
        lp.expect('-');
        lp.expect('>');
        std::string to = lp.ident();
        if (!lp.eof()) throw ParseError("trailing input after transition", lineno);
        c.transitions.push_back(Transition{state_id(from), trig, m, d, state_id(to)});
    }
    if (!saw_radius) throw ParseError("missing 'radius' header", lineno);
    if (!saw_initial) throw ParseError("missing 'initial' header", lineno);
    validate_controller(c);
    return c;
}

std::string render_controller(const Controller& c) {
    std::ostringstream out;
    out << "radius " << c.radius << '\n';
    out << "states";
    for (const auto& s : c.state_names) out << ' ' << s;
    out << '\n';
    out << "initial " << c.state_names[static_cast<size_t>(c.initial)] << '\n';
    for (const auto& t : c.transitions) {
        out << c.state_names[static_cast<size_t>(t.from)] << ": " << render_trigger(t.trigger)
            << " / " << render_mod(t.mod) << " / " << to_string(t.dir) << " -> "
            << c.state_names[static_cast<size_t>(t.to)] << '\n';
    }
    return out.str();
}

std::vector<TransitionTemplate> parse_template_library(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    std::vector<TransitionTemplate> lib;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        LineParser lp(line, lineno);
        TransitionTemplate t;
        t.trigger = lp.trigger();
        lp.expect('/');
        t.mod = lp.mod();
        lp.expect('/');
        t.dir = lp.direction();
        if (!lp.eof()) throw ParseError("trailing input after template", lineno);
        lib.push_back(std::move(t));
    }
    return lib;
}

std::string render_template_library(const std::vector<TransitionTemplate>& lib) {
    std::ostringstream out;
    for (const auto& t : lib)
        out << render_trigger(t.trigger) << " / " << render_mod(t.mod) << " / "
            << to_string(t.dir) << '\n';
    return out.str();
}

} // namespace fsr
