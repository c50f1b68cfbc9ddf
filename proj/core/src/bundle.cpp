#include "fsr/bundle.hpp"

#include <fstream>
#include <sstream>

namespace fsr {

namespace fs = std::filesystem;

std::string read_text_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw ModelError("cannot read " + p.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text_file(const fs::path& p, const std::string& content) {
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary);
    if (!out) throw ModelError("cannot write " + p.string());
    out << content;
}

std::map<std::string, std::string> parse_limits(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError("expected key = value", lineno);
        auto trim = [](std::string s) {
            size_t a = s.find_first_not_of(" \t\r");
            size_t b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (key.empty()) throw ParseError("empty key", lineno);
        kv[key] = val;
    }
    return kv;
}

std::string render_limits(const std::map<std::string, std::string>& kv) {
    std::ostringstream out;
    for (const auto& [k, v] : kv) out << k << " = " << v << "\n";
    return out.str();
}

namespace {

RobotSelector parse_selector(const std::string& tok, int lineno) {
    if (tok == "any") return RobotSelector::any_robot();
    try {
        size_t used = 0;
        int i = std::stoi(tok, &used);
        if (used != tok.size() || i < 0) throw std::invalid_argument("");
        return RobotSelector::robot(i);
    } catch (const std::exception&) {
        throw ParseError("bad robot selector '" + tok + "'", lineno);
    }
}

std::string selector_str(const RobotSelector& s) {
    return s.any ? "any" : std::to_string(s.index);
}

long long get_ll(const std::map<std::string, std::string>& kv, const std::string& key,
                 long long dflt) {
    auto it = kv.find(key);
    if (it == kv.end()) return dflt;
    return std::stoll(it->second);
}

} // namespace

TargetConfiguration parse_task(const std::string& text) {
    TargetConfiguration t;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string kind;
        ls >> kind;
        if (kind == "square") {
            int c, r;
            std::string type;
            if (!(ls >> c >> r >> type)) throw ParseError("bad square requirement", lineno);
            t.square_requirements.push_back({{c, r}, type});
        } else if (kind == "pos") {
            std::string sel;
            int c, r;
            if (!(ls >> sel >> c >> r)) throw ParseError("bad position requirement", lineno);
            t.position_requirements.push_back({parse_selector(sel, lineno), Position{c, r}});
        } else if (kind == "state") {
            std::string sel, name;
            if (!(ls >> sel >> name)) throw ParseError("bad state requirement", lineno);
            t.state_requirements.push_back({parse_selector(sel, lineno), name});
        } else {
            throw ParseError("unknown task line '" + kind + "'", lineno);
        }
    }
    return t;
}

std::string render_task(const TargetConfiguration& t) {
    std::ostringstream out;
    for (const auto& [pos, type] : t.square_requirements)
        out << "square " << pos.col << ' ' << pos.row << ' ' << type << "\n";
    for (const auto& [sel, pos] : t.position_requirements)
        out << "pos " << selector_str(sel) << ' ' << pos.col << ' ' << pos.row << "\n";
    for (const auto& [sel, name] : t.state_requirements)
        out << "state " << selector_str(sel) << ' ' << name << "\n";
    return out.str();
}

std::vector<Position> parse_positions(const std::string& text) {
    std::vector<Position> ps;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        int c, r;
        if (!(ls >> c >> r)) throw ParseError("expected '<col> <row>'", lineno);
        ps.push_back({c, r});
    }
    return ps;
}

std::string render_positions(const std::vector<Position>& ps) {
    std::ostringstream out;
    for (Position p : ps) out << p.col << ' ' << p.row << "\n";
    return out.str();
}

namespace {

// Controller blocks separated by lines containing only "---".
std::vector<std::string> split_blocks(const std::string& text) {
    std::vector<std::string> blocks;
    std::istringstream in(text);
    std::string line, current;
    while (std::getline(in, line)) {
        if (line == "---") {
            blocks.push_back(current);
            current.clear();
        } else {
            current += line;
            current += '\n';
        }
    }
    if (!current.empty()) blocks.push_back(current);
    return blocks;
}

std::vector<std::shared_ptr<const Controller>> load_controller_blocks(const std::string& text) {
    std::vector<std::shared_ptr<const Controller>> out;
    std::vector<std::string> rendered;
    for (const std::string& block : split_blocks(text)) {
        Controller c = parse_controller(block);
        std::string key = render_controller(c);
        bool shared = false;
        for (size_t i = 0; i < rendered.size(); ++i)
            if (rendered[i] == key) {
                out.push_back(out[i]);
                shared = true;
                break;
            }
        if (!shared) {
            out.push_back(std::make_shared<const Controller>(std::move(c)));
            rendered.push_back(std::move(key));
        }
    }
    return out;
}

std::string render_controller_blocks(
    const std::vector<std::shared_ptr<const Controller>>& cs) {
    std::ostringstream out;
    for (size_t i = 0; i < cs.size(); ++i) {
        if (i) out << "---\n";
        out << render_controller(*cs[i]);
    }
    return out.str();
}

} // namespace

std::string render_certificate(const ReductionCertificate& cert) {
    std::ostringstream out;
    for (const auto& n : cert.notes) out << "# " << n << "\n";
    for (const auto& [k, v] : cert.facts) out << k << " = " << v << "\n";
    return out.str();
}

TeamEnvVerInstance load_teamenvver_bundle(const fs::path& dir) {
    TeamEnvVerInstance inst;
    inst.env = parse_environment(read_text_file(dir / "env.txt"));
    inst.team.robots = load_controller_blocks(read_text_file(dir / "team.txt"));
    inst.p_I = parse_positions(read_text_file(dir / "positions.txt"));
    inst.task = parse_task(read_text_file(dir / "task.txt"));
    auto kv = parse_limits(read_text_file(dir / "limits.txt"));
    inst.ec_budget = get_ll(kv, "ec", 0);
    if (inst.team.size() != static_cast<int>(inst.p_I.size()))
        throw ModelError("team.txt and positions.txt disagree on robot count");
    return inst;
}

void save_teamenvver_bundle(const fs::path& dir, const TeamEnvVerInstance& inst,
                            const ReductionCertificate* cert) {
    fs::create_directories(dir);
    write_text_file(dir / "env.txt", render_environment(inst.env));
    write_text_file(dir / "team.txt", render_controller_blocks(inst.team.robots));
    write_text_file(dir / "positions.txt", render_positions(inst.p_I));
    write_text_file(dir / "task.txt", render_task(inst.task));
    write_text_file(dir / "limits.txt",
                    render_limits({{"ec", std::to_string(inst.ec_budget)}}));
    if (cert) write_text_file(dir / "certificate.txt", render_certificate(*cert));
}

TeamDesLSInstance load_teamdesls_bundle(const fs::path& dir) {
    TeamDesLSInstance inst;
    inst.env = parse_environment(read_text_file(dir / "env.txt"));
    inst.library = load_controller_blocks(read_text_file(dir / "library.txt"));
    inst.initial_region = parse_positions(read_text_file(dir / "positions.txt"));
    inst.task = parse_task(read_text_file(dir / "task.txt"));
    auto kv = parse_limits(read_text_file(dir / "limits.txt"));
    inst.team_size = static_cast<int>(get_ll(kv, "team_size",
                                             static_cast<int>(inst.initial_region.size())));
    inst.max_controller_types = static_cast<int>(get_ll(kv, "h", 1));
    inst.exact_h = get_ll(kv, "exact_h", 0) != 0;
    inst.try_permutations = get_ll(kv, "permutations", 0) != 0;
    inst.ec_budget = get_ll(kv, "ec", 0);
    inst.comp.c1 = get_ll(kv, "c1", inst.comp.c1);
    inst.comp.c2 = get_ll(kv, "c2", inst.comp.c2);
    if (inst.team_size != static_cast<int>(inst.initial_region.size()))
        throw ModelError("team_size and positions.txt disagree");
    return inst;
}

void save_teamdesls_bundle(const fs::path& dir, const TeamDesLSInstance& inst,
                           const ReductionCertificate* cert) {
    fs::create_directories(dir);
    write_text_file(dir / "env.txt", render_environment(inst.env));
    write_text_file(dir / "library.txt", render_controller_blocks(inst.library));
    write_text_file(dir / "positions.txt", render_positions(inst.initial_region));
    write_text_file(dir / "task.txt", render_task(inst.task));
    write_text_file(dir / "limits.txt",
                    render_limits({{"team_size", std::to_string(inst.team_size)},
                                   {"h", std::to_string(inst.max_controller_types)},
                                   {"exact_h", inst.exact_h ? "1" : "0"},
                                   {"permutations", inst.try_permutations ? "1" : "0"},
                                   {"ec", std::to_string(inst.ec_budget)},
                                   {"c1", std::to_string(inst.comp.c1)},
                                   {"c2", std::to_string(inst.comp.c2)}}));
    if (cert) write_text_file(dir / "certificate.txt", render_certificate(*cert));
}

ContDesLSInstance load_contdesls_bundle(const fs::path& dir) {
    ContDesLSInstance inst;
    inst.env = parse_environment(read_text_file(dir / "env.txt"));
    inst.library = parse_template_library(read_text_file(dir / "templates.txt"));
    inst.p_I = parse_positions(read_text_file(dir / "positions.txt"));
    inst.task = parse_task(read_text_file(dir / "task.txt"));
    auto kv = parse_limits(read_text_file(dir / "limits.txt"));
    inst.team_size = static_cast<int>(get_ll(kv, "team_size",
                                             static_cast<int>(inst.p_I.size())));
    inst.radius = static_cast<int>(get_ll(kv, "r", 0));
    inst.max_states = static_cast<int>(get_ll(kv, "Q", 1));
    inst.max_out_degree = static_cast<int>(get_ll(kv, "d", 1));
    inst.max_controller_types = static_cast<int>(get_ll(kv, "h", 1));
    inst.ec_budget = get_ll(kv, "ec", 0);
    inst.comp.c1 = get_ll(kv, "c1", inst.comp.c1);
    inst.comp.c2 = get_ll(kv, "c2", inst.comp.c2);
    if (inst.team_size != static_cast<int>(inst.p_I.size()))
        throw ModelError("team_size and positions.txt disagree");
    return inst;
}

void save_contdesls_bundle(const fs::path& dir, const ContDesLSInstance& inst,
                           const ReductionCertificate* cert) {
    fs::create_directories(dir);
    write_text_file(dir / "env.txt", render_environment(inst.env));
    write_text_file(dir / "templates.txt", render_template_library(inst.library));
    write_text_file(dir / "positions.txt", render_positions(inst.p_I));
    write_text_file(dir / "task.txt", render_task(inst.task));
    write_text_file(dir / "limits.txt",
                    render_limits({{"team_size", std::to_string(inst.team_size)},
                                   {"r", std::to_string(inst.radius)},
                                   {"Q", std::to_string(inst.max_states)},
                                   {"d", std::to_string(inst.max_out_degree)},
                                   {"h", std::to_string(inst.max_controller_types)},
                                   {"ec", std::to_string(inst.ec_budget)},
                                   {"c1", std::to_string(inst.comp.c1)},
                                   {"c2", std::to_string(inst.comp.c2)}}));
    if (cert) write_text_file(dir / "certificate.txt", render_certificate(*cert));
}

} // namespace fsr
