#pragma once

#include <filesystem>
#include <map>
#include <string>

#include "fsr/reductions.hpp"

namespace fsr {

// Instance bundles are directories of small text files:
//   env.txt        the environment
//   team.txt       one controller block per robot, separated by "---" lines
//   library.txt    controller blocks (team design)
//   templates.txt  transition template lines (controller design)
//   positions.txt  "<col> <row>" per robot / region square
//   task.txt       "square <col> <row> <type>" / "pos <i|any> <col> <row>"
//                  / "state <i|any> <name>" lines
//   limits.txt     "key = value" lines (ec, h, Q, d, r, team_size, ...)
//   certificate.txt reduction notes, when the bundle came from a reduction

std::string read_text_file(const std::filesystem::path& p);
void write_text_file(const std::filesystem::path& p, const std::string& content);

std::map<std::string, std::string> parse_limits(const std::string& text);
std::string render_limits(const std::map<std::string, std::string>& kv);

TargetConfiguration parse_task(const std::string& text);
std::string render_task(const TargetConfiguration& t);

std::vector<Position> parse_positions(const std::string& text);
std::string render_positions(const std::vector<Position>& ps);

TeamEnvVerInstance load_teamenvver_bundle(const std::filesystem::path& dir);
void save_teamenvver_bundle(const std::filesystem::path& dir, const TeamEnvVerInstance& inst,
                            const ReductionCertificate* cert = nullptr);

TeamDesLSInstance load_teamdesls_bundle(const std::filesystem::path& dir);
void save_teamdesls_bundle(const std::filesystem::path& dir, const TeamDesLSInstance& inst,
                           const ReductionCertificate* cert = nullptr);

ContDesLSInstance load_contdesls_bundle(const std::filesystem::path& dir);
void save_contdesls_bundle(const std::filesystem::path& dir, const ContDesLSInstance& inst,
                           const ReductionCertificate* cert = nullptr);

std::string render_certificate(const ReductionCertificate& cert);

} // namespace fsr
