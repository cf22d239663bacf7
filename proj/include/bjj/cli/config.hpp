#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace bjj::cli {

/// Flat `key = value` lines; `#` starts a comment. Throws ParameterError on a
/// malformed line or duplicate key.
std::vector<std::pair<std::string, std::string>> parse_config(std::istream& in,
                                                              const std::string& origin);

/// Removes `--config <path>` (or `--config=<path>`) from `args` and splices
/// the file's entries in as `--key=value` right after the subcommand name,
/// ahead of every flag given on the command line. Options keep their last
/// value, so explicit flags override the file. Throws IoError if the file
/// cannot be read.
std::vector<std::string> expand_config(std::vector<std::string> args);

}  // namespace bjj::cli
