#include "zipfit/io.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

namespace zipfit {
namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream stream(line);
  while (std::getline(stream, field, ',')) {
    fields.push_back(field);
  }
  if (!line.empty() && line.back() == ',') {
    fields.emplace_back();
  }
  return fields;
}

template <class T>
bool parse_exact(const std::string& text, T& value) {
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  return ec == std::errc{} && ptr == end && !text.empty();
}

double parse_level_column(const std::string& name) {
  if (name.size() < 2 || name[0] != 'q') {
    throw FormatError("bad quantile column '" + name + "'");
  }
  double level = 0.0;
  if (!parse_exact("0." + name.substr(1), level)) {
    throw FormatError("bad quantile column '" + name + "'");
  }
  return level;
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) {
    return {};
  }
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

}  // namespace

Sample read_observations(std::istream& in, const std::string& source_name) {
  std::vector<std::int64_t> values;
  std::string token;
  int line = 1;
  int column = 0;
  int token_line = 1;
  int token_column = 1;

  auto flush = [&] {
    if (token.empty()) {
      return;
    }
    const std::string where = source_name + ":" + std::to_string(token_line) +
                              ":" + std::to_string(token_column) + ": token " +
                              std::to_string(values.size() + 1);
    std::int64_t value = 0;
    const bool digits_only =
        std::all_of(token.begin(), token.end(),
                    [](unsigned char c) { return std::isdigit(c) != 0; });
    if (!digits_only || !parse_exact(token, value)) {
      throw ParseError(where + ": '" + token + "' is not a positive integer");
    }
    if (value == 0) {
      throw ParseError(where + ": 0 not a positive integer");
    }
    values.push_back(value);
    token.clear();
  };

  char c = 0;
  while (in.get(c)) {
    ++column;
    if (std::isspace(static_cast<unsigned char>(c)) != 0) {
      flush();
      if (c == '\n') {
        ++line;
        column = 0;
      }
      continue;
    }
    if (token.empty()) {
      token_line = line;
      token_column = column;
    }
    token.push_back(c);
  }
  flush();
  if (values.empty()) {
    throw ParseError(source_name + ": no observations");
  }
  return Sample(std::move(values));
}

Sample parse_observations(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open " + path.string());
  }
  return read_observations(in, path.string());
}

void write_observations(std::ostream& out, const Sample& sample) {
  for (const std::int64_t v : sample.values()) {
    out << v << '\n';
  }
}

std::string format_number(double value) {
  std::array<char, 64> buffer{};
  const auto [ptr, ec] =
      std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
  return std::string(buffer.data(), ptr);
}

std::string level_column(double level) {
  if (!(level > 0.0 && level < 1.0)) {
    throw std::invalid_argument("quantile level must lie in (0, 1)");
  }
  const std::string text = format_number(level);
  if (text.rfind("0.", 0) != 0) {
    throw std::invalid_argument("cannot name quantile level " + text);
  }
  std::string digits = text.substr(2);
  if (digits.size() < 2) {
    digits.push_back('0');
  }
  return "q" + digits;
}

void write_table(std::ostream& out, const CutoffTable& table) {
  out << "# replicates=" << table.replicates << '\n';
  out << "# repetitions=" << table.repetitions << '\n';
  out << "# seed=" << table.seed << '\n';
  if (table.levels != kStandardLevels) {
    out << "# quantiles=";
    for (std::size_t i = 0; i < table.levels.size(); ++i) {
      out << (i == 0 ? "" : ",") << format_number(table.levels[i]);
    }
    out << '\n';
  }
  out << "k_support,gamma,n";
  for (const double level : table.levels) {
    out << ',' << level_column(level);
  }
  out << '\n';
  const std::string label = table.support.label();
  for (const CutoffRow& row : table.rows) {
    out << label << ',' << format_number(row.gamma) << ',' << row.n;
    for (const double cutoff : row.cutoffs) {
      out << ',' << format_number(cutoff);
    }
    out << '\n';
  }
}

CutoffTable read_table(std::istream& in) {
  CutoffTable table;
  table.rows.clear();
  std::vector<double> declared_levels = kStandardLevels;
  bool have_header = false;
  bool have_support = false;
  std::string line;
  int line_number = 0;

  auto fail = [&](const std::string& what) {
    throw FormatError("line " + std::to_string(line_number) + ": " + what);
  };

  while (std::getline(in, line)) {
    ++line_number;
    line = trim(line);
    if (line.empty()) {
      continue;
    }
    if (line[0] == '#') {
      const std::string body = trim(line.substr(1));
      const auto eq = body.find('=');
      if (eq == std::string::npos) {
        continue;
      }
      const std::string key = trim(body.substr(0, eq));
      const std::string value = trim(body.substr(eq + 1));
      bool ok = true;
      if (key == "replicates") {
        ok = parse_exact(value, table.replicates);
      } else if (key == "repetitions") {
        ok = parse_exact(value, table.repetitions);
      } else if (key == "seed") {
        ok = parse_exact(value, table.seed);
      } else if (key == "quantiles") {
        if (have_header) {
          fail("quantiles must be declared before the header");
        }
        declared_levels.clear();
        for (const std::string& field : split_csv(value)) {
          double level = 0.0;
          if (!parse_exact(trim(field), level)) {
            fail("bad quantile level '" + field + "'");
          }
          declared_levels.push_back(level);
        }
      }
      if (!ok) {
        fail("bad value for " + key);
      }
      continue;
    }

    const std::vector<std::string> fields = split_csv(line);
    if (!have_header) {
      std::string expected = "k_support,gamma,n";
      for (const double level : declared_levels) {
        expected += "," + level_column(level);
      }
      if (line != expected) {
        fail("header mismatch: expected '" + expected + "', got '" + line +
             "'");
      }
      table.levels.clear();
      for (std::size_t i = 3; i < fields.size(); ++i) {
        table.levels.push_back(parse_level_column(fields[i]));
      }
      have_header = true;
      continue;
    }

    if (fields.size() != 3 + table.levels.size()) {
      fail("expected " + std::to_string(3 + table.levels.size()) +
           " fields, got " + std::to_string(fields.size()));
    }
    SupportSpec support = SupportSpec::unbounded();
    try {
      support = parse_support(fields[0]);
    } catch (const std::exception& e) {
      fail(e.what());
    }
    if (have_support && !(support == table.support)) {
      fail("mixed k_support values in one table");
    }
    table.support = support;
    have_support = true;

    CutoffRow row;
    if (!parse_exact(fields[1], row.gamma)) {
      fail("bad gamma '" + fields[1] + "'");
    }
    if (!parse_exact(fields[2], row.n) || row.n < 1) {
      fail("bad n '" + fields[2] + "'");
    }
    for (std::size_t i = 3; i < fields.size(); ++i) {
      double cutoff = 0.0;
      if (!parse_exact(fields[i], cutoff) || !(cutoff >= 0.0 && cutoff <= 1.0)) {
        fail("bad cutoff '" + fields[i] + "'");
      }
      if (!row.cutoffs.empty() && cutoff < row.cutoffs.back()) {
        fail("quantile columns are not monotone");
      }
      row.cutoffs.push_back(cutoff);
    }
    table.rows.push_back(std::move(row));
  }
  if (!have_header) {
    throw FormatError("missing header line");
  }
  if (table.rows.empty()) {
    throw FormatError("table has no rows");
  }
  return table;
}

CutoffTable load_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw FormatError("cannot open " + path.string());
  }
  return read_table(in);
}

}  // namespace zipfit
