#include "fsr/reductions.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <sstream>

namespace fsr {

// ---------------------------------------------------------------------------
// Input formats

Cnf parse_dimacs_cnf(const std::string& text) {
    Cnf f;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    bool header = false;
    int expected_clauses = -1;
    std::vector<int> current;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == 'c') continue;
        std::istringstream ls(line);
        if (line[0] == 'p') {
            std::string p, fmt;
            int nv = 0, nc = 0;
            if (!(ls >> p >> fmt >> nv >> nc) || fmt != "cnf" || nv < 0 || nc < 0)
                throw ParseError("bad DIMACS problem line", lineno);
            f.num_vars = nv;
            expected_clauses = nc;
            header = true;
            continue;
        }
        if (!header) throw ParseError("clause before DIMACS problem line", lineno);
        int lit;
        while (ls >> lit) {
            if (lit == 0) {
                f.clauses.push_back(current);
                current.clear();
            } else {
                if (std::abs(lit) > f.num_vars)
                    throw ParseError("literal out of range", lineno);
                current.push_back(lit);
            }
        }
        if (ls.fail() && !ls.eof()) throw ParseError("bad literal", lineno);
    }
    if (!header) throw ParseError("missing DIMACS problem line", lineno);
    if (!current.empty()) f.clauses.push_back(current);
    if (expected_clauses >= 0 && static_cast<int>(f.clauses.size()) != expected_clauses)
        throw ParseError("clause count does not match problem line", lineno);
    return f;
}

std::string render_dimacs_cnf(const Cnf& f) {
    std::ostringstream out;
    out << "p cnf " << f.num_vars << ' ' << f.clauses.size() << '\n';
    for (const auto& c : f.clauses) {
        for (int lit : c) out << lit << ' ';
        out << "0\n";
    }
    return out.str();
}

std::vector<std::vector<int>> Graph::closed_neighborhoods() const {
    std::vector<std::set<int>> nb(static_cast<size_t>(num_vertices) + 1);
    for (int v = 1; v <= num_vertices; ++v) nb[static_cast<size_t>(v)].insert(v);
    for (auto [u, v] : edges) {
        nb[static_cast<size_t>(u)].insert(v);
        nb[static_cast<size_t>(v)].insert(u);
    }
    std::vector<std::vector<int>> out(static_cast<size_t>(num_vertices) + 1);
    for (int v = 1; v <= num_vertices; ++v)
        out[static_cast<size_t>(v)].assign(nb[static_cast<size_t>(v)].begin(),
                                           nb[static_cast<size_t>(v)].end());
    return out;
}

Graph parse_dimacs_graph(const std::string& text) {
    Graph g;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    bool header = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == 'c') continue;
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (tag == "p") {
            std::string fmt;
            int n = 0, m = 0;
            if (!(ls >> fmt >> n >> m) || fmt != "edge" || n < 0)
                throw ParseError("bad DIMACS graph problem line", lineno);
            g.num_vertices = n;
            header = true;
        } else if (tag == "e") {
            if (!header) throw ParseError("edge before problem line", lineno);
            int u = 0, v = 0;
            if (!(ls >> u >> v) || u < 1 || v < 1 || u > g.num_vertices ||
                v > g.num_vertices)
                throw ParseError("bad edge line", lineno);
            g.edges.emplace_back(u, v);
        } else {
            throw ParseError("unrecognized line", lineno);
        }
    }
    if (!header) throw ParseError("missing graph problem line", lineno);
    return g;
}

// ---------------------------------------------------------------------------
// Shared helpers

namespace {

FormulaPtr on_type(const std::string& t) { return Formula::pred(t, {0, 0}); }

FormulaPtr robot_at(int dx, int dy) { return Formula::pred(kRobotType, {dx, dy}); }

FormulaPtr any_robot_at(const std::vector<Offset>& offs) {
    FormulaPtr f;
    for (const Offset& o : offs) {
        FormulaPtr p = Formula::pred(kRobotType, o);
        f = f ? Formula::disj(f, p) : p;
    }
    return f;
}

void add_rule(Controller& c, FormulaPtr trigger, Direction dir) {
    c.transitions.push_back(Transition{0, std::move(trigger), ModSpec::none(), dir, 0});
}

std::string text_digest(const std::string& text) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    std::ostringstream out;
    out << std::hex << h;
    return out.str();
}

std::string graph_digest(const Graph& g) {
    std::ostringstream out;
    out << g.num_vertices << ';';
    auto edges = g.edges;
    for (auto& [u, v] : edges)
        if (u > v) std::swap(u, v);
    std::sort(edges.begin(), edges.end());
    for (auto [u, v] : edges) out << u << '-' << v << ';';
    return text_digest(out.str());
}

std::string env_digest_hex(const Environment& env) {
    std::ostringstream out;
    out << std::hex << env.digest();
    return out.str();
}

} // namespace

// ---------------------------------------------------------------------------
// Dominating set -> controller design

ContDesLSReduction reduce_domset_to_contdesls(const Graph& g, int k) {
    if (g.num_vertices < 1) throw ModelError("graph must have at least one vertex");
    if (k < 0) throw ModelError("k must be nonnegative");
    const int n = g.num_vertices;
    const int W = n + 1;
    const int H = n * n + 1;
    auto nb = g.closed_neighborhoods();

    ContDesLSReduction r;
    Environment env(W, H, "e_N");
    // Column j repeats the closed neighborhood of vertex j as a vertical
    // pattern: row p carries the type of vertex ((p-1) mod n)+1 when that
    // vertex covers v_j. A robot climbing column j leaves east exactly at
    // squares naming a coverer of v_j.
    for (int j = 1; j <= n; ++j) {
        const auto& cover = nb[static_cast<size_t>(j)];
        for (int row = 1; row <= n * n; ++row) {
            int i = (row - 1) % n + 1;
            if (std::binary_search(cover.begin(), cover.end(), i))
                env.put_cell({j, row}, "e_v" + std::to_string(i), false);
        }
    }

    ContDesLSInstance& inst = r.instance;
    inst.env = std::move(env);
    inst.team_size = 1;
    inst.p_I = {{1, 1}};
    for (int i = 1; i <= n; ++i) {
        TransitionTemplate t;
        t.trigger = on_type("e_v" + std::to_string(i));
        t.dir = Direction::East;
        inst.library.push_back(t);
    }
    TransitionTemplate north;
    north.trigger = Formula::star();
    north.dir = Direction::North;
    inst.library.push_back(north);
    inst.radius = 0;
    inst.max_states = 1;
    inst.max_out_degree = k + 1;
    inst.max_controller_types = 1;
    inst.ec_budget = 0;
    inst.task.position_requirements.push_back({RobotSelector::any_robot(), Position{W, H}});
    inst.comp = Completability{1, 1};

    r.cert.notes.push_back("east template i (0-based) selects vertex i+1 into the "
                           "dominating set; the last template is the default north move");
    r.cert.facts["construction"] = "sg2-domset";
    r.cert.facts["source_digest"] = graph_digest(g);
    r.cert.facts["instance_digest"] = env_digest_hex(inst.env);
    r.cert.facts["vertices"] = std::to_string(n);
    r.cert.facts["k"] = std::to_string(k);
    r.cert.facts["Q"] = "1";
    r.cert.facts["h"] = "1";
    r.cert.facts["d"] = std::to_string(k + 1);
    r.cert.facts["r"] = "0";
    r.cert.facts["ec"] = "0";
    r.cert.facts["north_template"] = std::to_string(n);
    return r;
}

ContDesLSReduction extend_with_state_ladder(const ContDesLSReduction& base, int k,
                                            int max_states) {
    if (max_states < 2) throw ModelError("ladder needs max_states >= 2");
    const Environment& old_env = base.instance.env;
    const int m = max_states;
    const int shift = m + 1;  // descent columns plus the bridge column

    // Column j stacks j rungs of one type e_qj, sensed at radius zero, so a
    // robot descending it answers an unchanging percept with south at every
    // rung and east at the last one. A repeated state would repeat its move
    // pattern periodically and never switch to east at the right rung, so
    // the deepest column alone pins down max_states distinct states.
    // bottom of column j = top of column j+1, one row per extra rung.
    std::vector<int> top(static_cast<size_t>(m) + 1);
    top[static_cast<size_t>(m)] = m;
    for (int j = m - 1; j >= 1; --j)
        top[static_cast<size_t>(j)] = top[static_cast<size_t>(j + 1)] + (j - 1);

    const int W = old_env.width() + shift;
    const int H = std::max(old_env.height(), top[1]);
    Environment env(W, H, "e_N");
    for (int x = 1; x <= old_env.width(); ++x)
        for (int y = 1; y <= old_env.height(); ++y) {
            Position src{x, y};
            env.put_cell({x + shift, y}, old_env.square_at(src), old_env.is_obstacle(src));
        }
    for (int j = 1; j <= m; ++j)
        for (int depth = 0; depth < j; ++depth)
            env.put_cell({j, top[static_cast<size_t>(j)] - depth},
                         "e_q" + std::to_string(j), false);
    env.put_cell({m + 1, 1}, "e_E", false);

    ContDesLSReduction r;
    r.instance = base.instance;
    r.instance.env = std::move(env);
    r.instance.p_I = {{1, top[1]}};
    r.instance.max_states = max_states;
    r.instance.max_out_degree = k + 3;
    for (auto& [sel, pos] : r.instance.task.position_requirements) pos.col += shift;
    for (auto& [pos, type] : r.instance.task.square_requirements) pos.col += shift;

    auto add_tmpl = [&](const std::string& type, Direction d) {
        TransitionTemplate t;
        t.trigger = on_type(type);
        t.dir = d;
        r.instance.library.push_back(t);
    };
    for (int j = 1; j <= m; ++j) {
        add_tmpl("e_q" + std::to_string(j), Direction::South);
        add_tmpl("e_q" + std::to_string(j), Direction::East);
    }
    add_tmpl("e_E", Direction::East);

    r.cert = base.cert;
    r.cert.notes.push_back("descent area of " + std::to_string(m) +
                           " columns plus a bridge prepended west of the base grid; "
                           "the deepest column consumes a distinct state per rung");
    r.cert.facts["construction"] = "state-ladder";
    r.cert.facts["instance_digest"] = env_digest_hex(r.instance.env);
    r.cert.facts["shift"] = std::to_string(shift);
    r.cert.facts["Q"] = std::to_string(max_states);
    r.cert.facts["d"] = std::to_string(k + 3);
    return r;
}

// ---------------------------------------------------------------------------
// 3SAT -> team/environment verification

TeamEnvVerReduction reduce_3sat_to_teamenvver(const Cnf& f) {
    const int n = f.num_vars;
    const int m = static_cast<int>(f.clauses.size());
    if (n < 1 || m < 1) throw ModelError("formula needs at least one variable and clause");
    for (const auto& c : f.clauses)
        if (c.size() != 3)
            throw ModelError("clauses must carry exactly three literals");

    const int W = n + 6;
    const int H = 2 * m + 5;
    auto xcol = [](int i) { return 4 + i; };  // variable column

    Environment env(W, H, "e_Wall");
    {
        int wall = env.type_id("e_Wall");
        env.set_legend_obstacle_default(wall, true);
        for (int x = 1; x <= W; ++x)
            for (int y = 1; y <= H; ++y) env.set_obstacle({x, y}, true);
    }
    auto carve = [&env](int x, int y, const std::string& t) {
        env.put_cell({x, y}, t, false);
    };

    Controller ctrl;
    ctrl.state_names = {"s0"};
    ctrl.initial = 0;
    ctrl.radius = 2 * m + 1;
    auto rule = [&ctrl](const std::string& cell, FormulaPtr cond, Direction d) {
        FormulaPtr g = on_type(cell);
        if (cond) g = Formula::conj(g, std::move(cond));
        add_rule(ctrl, std::move(g), d);
    };

    // Carry loop. The carry robot rests at (1,1) while the evaluator tours,
    // then sweeps the counter row incrementing the assignment.
    carve(1, 1, "e_CarTe2");
    rule("e_CarTe2", robot_at(0, 2), Direction::North);
    carve(2, 1, "e_CarTe1");
    rule("e_CarTe1", nullptr, Direction::West);
    for (int x = 3; x <= n + 5; ++x) carve(x, 1, "e_CarRet");
    rule("e_CarRet", nullptr, Direction::West);
    for (int x = 1; x <= 4; ++x) carve(x, 2, "e_CarPad");
    rule("e_CarPad", nullptr, Direction::East);
    for (int i = 1; i <= n; ++i) carve(xcol(i), 2, "e_CarGo");
    rule("e_CarGo", robot_at(0, 2), Direction::East);   // bit set: clear it, carry on
    rule("e_CarGo", robot_at(0, 1), Direction::South);  // bit clear: set it, stop
    carve(n + 5, 2, "e_CarEnd");
    rule("e_CarEnd", nullptr, Direction::South);

    // Variable robots hold one bit each: low square false, high square true.
    for (int i = 1; i <= n; ++i) {
        carve(xcol(i), 3, "e_VarLo");
        carve(xcol(i), 4, "e_VarHi");
    }
    rule("e_VarLo", robot_at(0, -1), Direction::North);
    rule("e_VarHi", robot_at(0, -2), Direction::South);

    // Evaluator launch: leaves home the moment the carry passes (2,1).
    carve(1, 3, "e_EvlHome");
    rule("e_EvlHome", robot_at(1, -2), Direction::North);
    carve(1, 4, "e_EvlUp");
    carve(1, 5, "e_EvlUp");
    rule("e_EvlUp", nullptr, Direction::North);

    // Clause lanes: eastbound scan row per clause; a satisfying literal is
    // detected by sensing the variable robot straight below at its high or
    // low square, and sends the evaluator north to the next clause.
    for (int j = 1; j <= m; ++j) {
        int y = 2 * j + 4;
        carve(1, y, "e_ClE0");
        std::vector<std::vector<Offset>> lit_offsets(static_cast<size_t>(n) + 1);
        for (int lit : f.clauses[static_cast<size_t>(j - 1)]) {
            int v = std::abs(lit);
            Offset o{0, lit > 0 ? -2 * j : -(2 * j + 1)};
            auto& offs = lit_offsets[static_cast<size_t>(v)];
            if (std::find(offs.begin(), offs.end(), o) == offs.end()) offs.push_back(o);
        }
        for (int x = 2; x <= n + 5; ++x) {
            int i = x - 4;
            if (i >= 1 && i <= n && !lit_offsets[static_cast<size_t>(i)].empty()) {
                std::string cell =
                    "e_Lit_" + std::to_string(j) + "_" + std::to_string(i);
                carve(x, y, cell);
                FormulaPtr sat = any_robot_at(lit_offsets[static_cast<size_t>(i)]);
                rule(cell, sat, Direction::North);
                rule(cell, Formula::negate(sat), Direction::East);
            } else {
                carve(x, y, "e_ClPad");
            }
        }
        if (j < m) {
            carve(1, y + 1, "e_ClWTurn");
            for (int x = 2; x <= n + 4; ++x) carve(x, y + 1, "e_ClW");
        }
    }
    rule("e_ClE0", nullptr, Direction::East);
    rule("e_ClPad", nullptr, Direction::East);
    rule("e_ClW", nullptr, Direction::West);
    rule("e_ClWTurn", nullptr, Direction::North);

    // Fail path: an unsatisfied clause scans off its lane's east end, drops
    // down the east wall column, and crawls home.
    for (int y = 6; y <= 2 * m + 4; ++y) carve(n + 6, y, "e_FailS");
    rule("e_FailS", nullptr, Direction::South);
    for (int x = 3; x <= n + 6; ++x) carve(x, 5, "e_FailW");
    rule("e_FailW", nullptr, Direction::West);
    carve(2, 5, "e_FailD");
    carve(2, 4, "e_FailD");
    rule("e_FailD", nullptr, Direction::South);
    carve(2, 3, "e_FailHomeW");
    rule("e_FailHomeW", nullptr, Direction::West);

    // Win row: the last clause's satisfying exit runs west to the goal.
    carve(1, H, "e_Goal");
    for (int x = 2; x <= n + 4; ++x) carve(x, H, "e_WinW");
    rule("e_WinW", nullptr, Direction::West);

    validate_controller(ctrl);

    TeamEnvVerReduction r;
    TeamEnvVerInstance& inst = r.instance;
    inst.env = std::move(env);
    auto shared = std::make_shared<const Controller>(std::move(ctrl));
    for (int i = 0; i < n + 2; ++i) inst.team.robots.push_back(shared);
    for (int i = 1; i <= n; ++i) inst.p_I.push_back({xcol(i), 3});
    inst.p_I.push_back({2, 1});  // carry
    inst.p_I.push_back({1, 3});  // evaluator
    inst.ec_budget = 0;
    inst.task.position_requirements.push_back(
        {RobotSelector::robot(n + 1), Position{1, H}});

    r.cert.notes.push_back("robots 0.." + std::to_string(n - 1) +
                           " hold variable bits, robot " + std::to_string(n) +
                           " is the carry, robot " + std::to_string(n + 1) +
                           " the evaluator; the goal square is reached iff the "
                           "formula is satisfiable");
    r.cert.facts["construction"] = "assignment-counter";
    r.cert.facts["source_digest"] = text_digest(render_dimacs_cnf(f));
    r.cert.facts["instance_digest"] = env_digest_hex(inst.env);
    r.cert.facts["variables"] = std::to_string(n);
    r.cert.facts["clauses"] = std::to_string(m);
    r.cert.facts["h"] = "1";
    r.cert.facts["Q"] = "1";
    r.cert.facts["ec"] = "0";
    r.cert.facts["r"] = std::to_string(2 * m + 1);
    r.cert.facts["goal"] = "(1," + std::to_string(H) + ")";
    return r;
}

// ---------------------------------------------------------------------------
// 3SAT -> team design by library selection

TeamDesLSReduction reduce_3sat_to_teamdesls(const Cnf& f) {
    if (f.num_vars < 1) throw ModelError("formula needs at least one variable");
    for (const auto& c : f.clauses)
        if (c.size() != 3)
            throw ModelError("clauses must carry exactly three literals");

    // Two padding variables pin one robot to each controller, making the
    // distinct-controller count exactly two for every satisfying choice.
    Cnf g = f;
    int uT = ++g.num_vars;
    int uF = ++g.num_vars;
    g.clauses.push_back({uT, uT, uT});
    g.clauses.push_back({-uF, -uF, -uF});

    const int U = g.num_vars;
    const int C = static_cast<int>(g.clauses.size());
    const int W = 3 * U;
    const int H = C + 3;
    auto xF = [](int v) { return 3 * v - 2; };
    auto xC = [](int v) { return 3 * v - 1; };
    auto xT = [](int v) { return 3 * v; };

    Environment env(W, H, "e_Wall");
    {
        int wall = env.type_id("e_Wall");
        env.set_legend_obstacle_default(wall, true);
        for (int x = 1; x <= W; ++x)
            for (int y = 1; y <= H; ++y) env.set_obstacle({x, y}, true);
    }
    auto carve = [&env](int x, int y, const std::string& t) {
        env.put_cell({x, y}, t, false);
    };

    Controller common;
    common.state_names = {"s0"};
    common.initial = 0;
    auto rule = [&common](const std::string& cell, FormulaPtr cond, Direction d) {
        FormulaPtr g2 = on_type(cell);
        if (cond) g2 = Formula::conj(g2, std::move(cond));
        add_rule(common, std::move(g2), d);
    };

    int radius = 1;
    for (int v = 1; v <= U; ++v) {
        carve(xC(v), 1, "e_Start");
        carve(xF(v), 1, "e_Bottom");
        carve(xT(v), 1, "e_Bottom");
        carve(xF(v), H - 1, "e_MergeF");
        carve(xT(v), H - 1, "e_MergeT");
        carve(xC(v), H - 1, "e_Merge");
        carve(xC(v), H, "e_Top");
    }
    rule("e_Bottom", nullptr, Direction::North);
    rule("e_MergeF", nullptr, Direction::East);
    rule("e_MergeT", nullptr, Direction::West);
    rule("e_Merge", nullptr, Direction::North);

    // Gate rows: at row 1+j every robot stands on its chosen lane; the gate
    // opens (all go north) exactly when some lane square of a literal of
    // clause j is occupied. Self-occupancy at offset (0,0) counts.
    for (int j = 1; j <= C; ++j) {
        int y = 1 + j;
        std::vector<int> lit_cols;
        for (int lit : g.clauses[static_cast<size_t>(j - 1)]) {
            int col = lit > 0 ? xT(std::abs(lit)) : xF(std::abs(lit));
            if (std::find(lit_cols.begin(), lit_cols.end(), col) == lit_cols.end())
                lit_cols.push_back(col);
        }
        for (int v = 1; v <= U; ++v) {
            for (int x : {xF(v), xT(v)}) {
                std::string cell = "e_Gate_" + std::to_string(j) + "_" +
                                   std::to_string(x);
                carve(x, y, cell);
                std::vector<Offset> offs;
                for (int col : lit_cols) {
                    offs.push_back({col - x, 0});
                    radius = std::max(radius, std::abs(col - x));
                }
                rule(cell, any_robot_at(offs), Direction::North);
            }
        }
    }

    Controller tctrl = common;
    add_rule(tctrl, on_type("e_Start"), Direction::East);
    Controller fctrl = common;
    add_rule(fctrl, on_type("e_Start"), Direction::West);
    tctrl.radius = radius;
    fctrl.radius = radius;
    validate_controller(tctrl);
    validate_controller(fctrl);

    TeamDesLSReduction r;
    TeamDesLSInstance& inst = r.instance;
    inst.env = std::move(env);
    inst.team_size = U;
    inst.library.push_back(std::make_shared<const Controller>(std::move(tctrl)));
    inst.library.push_back(std::make_shared<const Controller>(std::move(fctrl)));
    for (int v = 1; v <= U; ++v) inst.initial_region.push_back({xC(v), 1});
    inst.max_controller_types = 2;
    inst.exact_h = true;
    inst.ec_budget = 0;
    for (int v = 1; v <= U; ++v)
        inst.task.position_requirements.push_back(
            {RobotSelector::any_robot(), Position{xC(v), H}});
    inst.comp = Completability{1, 1};

    r.cert.notes.push_back("library index 0 = true-lane controller, 1 = false-lane; "
                           "robot v-1 (row-major placement) carries variable v; the "
                           "last two variables are padding pinned to true and false");
    r.cert.facts["construction"] = "lane-gates";
    r.cert.facts["source_digest"] = text_digest(render_dimacs_cnf(f));
    r.cert.facts["instance_digest"] = env_digest_hex(inst.env);
    r.cert.facts["variables"] = std::to_string(f.num_vars);
    r.cert.facts["padded_variables"] = std::to_string(U);
    r.cert.facts["clauses"] = std::to_string(C);
    r.cert.facts["h"] = "2";
    r.cert.facts["Q"] = "1";
    r.cert.facts["ec"] = "0";
    r.cert.facts["r"] = std::to_string(radius);
    return r;
}

// ---------------------------------------------------------------------------
// Holding areas

namespace {

// Walled annex east of the grid holding `extra` robots on e_Hold squares.
std::vector<Position> annex_holding_cells(Environment& env, int extra) {
    Environment old = env;
    const int H = old.height();
    int cols = (extra + H - 1) / H;
    const int W = old.width() + 1 + cols;
    Environment grown(W, H, "e_HoldWall");
    {
        int wall = grown.type_id("e_HoldWall");
        grown.set_legend_obstacle_default(wall, true);
        for (int x = 1; x <= W; ++x)
            for (int y = 1; y <= H; ++y) grown.set_obstacle({x, y}, true);
    }
    for (int x = 1; x <= old.width(); ++x)
        for (int y = 1; y <= H; ++y)
            grown.put_cell({x, y}, old.square_at({x, y}), old.is_obstacle({x, y}));
    std::vector<Position> cells;
    for (int i = 0; i < extra; ++i) {
        Position p{old.width() + 2 + i / H, 1 + i % H};
        grown.put_cell(p, "e_Hold", false);
        cells.push_back(p);
    }
    env = std::move(grown);
    return cells;
}

std::shared_ptr<const Controller> holding_controller(int states_per_robot) {
    Controller c;
    for (int q = 0; q < states_per_robot; ++q)
        c.state_names.push_back("h" + std::to_string(q));
    c.initial = 0;
    c.radius = 0;
    for (int q = 0; q < states_per_robot; ++q)
        c.transitions.push_back(Transition{q, on_type("e_Hold"), ModSpec::none(),
                                           Direction::Stay,
                                           (q + 1) % states_per_robot});
    validate_controller(c);
    return std::make_shared<const Controller>(std::move(c));
}

} // namespace

void add_holding_area(TeamEnvVerInstance& inst, int extra_robots, int states_per_robot) {
    if (extra_robots < 1) return;
    if (states_per_robot < 1) throw ModelError("holding robots need at least one state");
    auto cells = annex_holding_cells(inst.env, extra_robots);
    auto ctrl = holding_controller(states_per_robot);
    for (Position p : cells) {
        inst.team.robots.push_back(ctrl);
        inst.p_I.push_back(p);
    }
}

void add_holding_area(TeamDesLSInstance& inst, int extra_robots, int states_per_robot) {
    if (extra_robots < 1) return;
    if (states_per_robot < 1) throw ModelError("holding robots need at least one state");
    auto cells = annex_holding_cells(inst.env, extra_robots);
    inst.library.push_back(holding_controller(states_per_robot));
    inst.team_size += extra_robots;
    inst.max_controller_types += 1;
    for (Position p : cells) inst.initial_region.push_back(p);
}

} // namespace fsr
