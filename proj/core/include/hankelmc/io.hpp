#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace hankelmc {

/// Reads a pinned-values file: one real per line, `#` starts a comment,
/// blank lines are skipped. Parse failures raise std::runtime_error with
/// the path and 1-based line number.
std::vector<double> parse_pinned_file(const std::filesystem::path& path);

/// Writes `key=value` lines, one per entry, values at 17 significant
/// digits.
void write_key_values(
    const std::filesystem::path& path,
    const std::vector<std::pair<std::string, double>>& entries);

/// Formats a double at 17 significant digits (%.17g), enough to
/// round-trip exactly.
std::string format_full(double v);

}  // namespace hankelmc
