#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "zipfit/montecarlo.hpp"
#include "zipfit/sample.hpp"

namespace zipfit {

// Malformed observation file; the message names the location.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed cutoff table file.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Whitespace-separated positive decimal integers, no header.
Sample read_observations(std::istream& in, const std::string& source_name);
Sample parse_observations(const std::filesystem::path& path);

// One value per line.
void write_observations(std::ostream& out, const Sample& sample);

// Column name for a quantile level: 0.9 -> "q90", 0.999 -> "q999".
std::string level_column(double level);

// CSV with header k_support,gamma,n,q90,q95,q99,q999 and `# key=value`
// metadata lines. Values use the shortest round-trip decimal form.
void write_table(std::ostream& out, const CutoffTable& table);
CutoffTable read_table(std::istream& in);
CutoffTable load_table(const std::filesystem::path& path);

// Shortest decimal that parses back to the same double.
std::string format_number(double value);

}  // namespace zipfit
