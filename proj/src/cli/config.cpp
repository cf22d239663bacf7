#include "bjj/cli/config.hpp"

#include "bjj/errors.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <set>

namespace bjj::cli {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

std::vector<std::pair<std::string, std::string>> parse_config(std::istream& in,
                                                              const std::string& origin) {
  std::vector<std::pair<std::string, std::string>> entries;
  std::set<std::string> seen;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = origin + ":" + std::to_string(lineno);
    if (eq == std::string::npos)
      throw ParameterError("config", where + ": expected key=value, got '" + line + "'");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty() || key.starts_with("-"))
      throw ParameterError("config", where + ": invalid key '" + key + "'");
    if (key == "config") throw ParameterError("config", where + ": config files cannot nest");
    if (!seen.insert(key).second)
      throw ParameterError("config", where + ": duplicate key '" + key + "'");
    entries.emplace_back(std::move(key), std::move(value));
  }
  return entries;
}

std::vector<std::string> expand_config(std::vector<std::string> args) {
  std::string path;
  bool found = false;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw ParameterError("config", "--config needs a file path");
      path = args[i + 1];
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i), args.begin() + static_cast<std::ptrdiff_t>(i) + 2);
      found = true;
      break;
    }
    if (args[i].starts_with("--config=")) {
      path = args[i].substr(9);
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
      found = true;
      break;
    }
  }
  if (!found) return args;

  std::ifstream file(path);
  if (!file) throw IoError("cannot read config file '" + path + "'");
  const auto entries = parse_config(file, path);

  std::vector<std::string> injected;
  for (const auto& [k, v] : entries) injected.push_back("--" + k + "=" + v);
  // args[0] is the subcommand; a leading flag means there is none.
  const std::size_t at = (!args.empty() && !args[0].starts_with("-")) ? 1 : 0;
  args.insert(args.begin() + static_cast<std::ptrdiff_t>(at), injected.begin(), injected.end());
  return args;
}

}  // namespace bjj::cli
