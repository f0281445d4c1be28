#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace tidehaz::cli {

/// Runs the tidehaz command line. args excludes the program name. Returns
/// the process exit code; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Lower-case hex SHA-256 of a file's bytes.
std::string sha256_file(const std::filesystem::path& path);

/// Path of the manifest written next to an output file.
std::filesystem::path manifest_path(const std::filesystem::path& output);

} // namespace tidehaz::cli
