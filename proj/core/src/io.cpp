#include <hankelmc/io.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <stdexcept>

namespace hankelmc {

std::string format_full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<double> parse_pinned_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open pinned file: " + path.string());

  std::vector<double> values;
  std::string line;
  for (int lineno = 1; std::getline(in, line); ++lineno) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    const std::string token = line.substr(first, last - first + 1);

    const char* begin = token.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end != begin + token.size())
      throw std::runtime_error(path.string() + ":" + std::to_string(lineno) +
                               ": expected a real number, got '" + token +
                               "'");
    values.push_back(v);
  }
  return values;
}

void write_key_values(
    const std::filesystem::path& path,
    const std::vector<std::pair<std::string, double>>& entries) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw std::runtime_error("cannot write file: " + path.string());
  for (const auto& [key, value] : entries)
    out << key << '=' << format_full(value) << '\n';
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace hankelmc
