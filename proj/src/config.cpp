#include "turan/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace turan::config {

namespace {

struct Line {
  int number;
  std::string key;
  std::vector<double> numbers;
  std::string raw_value;
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<Line> parse_lines(const std::string& text,
                              const std::string& name) {
  std::vector<Line> lines;
  std::istringstream is(text);
  std::string raw;
  int number = 0;
  while (std::getline(is, raw)) {
    ++number;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string t = trim(raw);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw ConfigError(name, number, "expected 'key = value'");
    Line line;
    line.number = number;
    line.key = trim(t.substr(0, eq));
    line.raw_value = trim(t.substr(eq + 1));
    if (line.key.empty())
      throw ConfigError(name, number, "empty key");
    // numbers are whitespace separated
    std::istringstream vs(line.raw_value);
    std::string tok;
    while (vs >> tok) {
      try {
        std::size_t used = 0;
        double v = std::stod(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        line.numbers.push_back(v);
      } catch (...) {
        line.numbers.clear();
        break;  // value is not numeric (e.g. type = box)
      }
    }
    lines.push_back(std::move(line));
  }
  return lines;
}

const Line* find_one(const std::vector<Line>& lines, const std::string& key) {
  const Line* found = nullptr;
  for (const auto& l : lines)
    if (l.key == key) found = &l;
  return found;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError(path, 0, "cannot open file");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

geometry::ConvexBody parse_body(const std::string& text,
                                const std::string& name) {
  auto lines = parse_lines(text, name);
  const Line* type = find_one(lines, "type");
  if (!type) throw ConfigError(name, 0, "missing 'type' field");
  const std::string kind = type->raw_value;

  if (kind == "box") {
    const Line* hw = find_one(lines, "halfwidths");
    if (!hw || hw->numbers.empty())
      throw ConfigError(name, type->number, "box needs 'halfwidths = w1 ... wd'");
    try {
      return geometry::ConvexBody::box(hw->numbers);
    } catch (const std::exception& e) {
      throw ConfigError(name, hw->number, e.what());
    }
  }
  if (kind == "ball") {
    const Line* r = find_one(lines, "radius");
    const Line* d = find_one(lines, "dim");
    if (!r || r->numbers.size() != 1)
      throw ConfigError(name, type->number, "ball needs 'radius = r'");
    if (!d || d->numbers.size() != 1)
      throw ConfigError(name, type->number, "ball needs 'dim = d'");
    try {
      return geometry::ConvexBody::ball(static_cast<int>(d->numbers[0]),
                                        r->numbers[0]);
    } catch (const std::exception& e) {
      throw ConfigError(name, r->number, e.what());
    }
  }
  if (kind == "hpolytope") {
    std::vector<geometry::HalfSpace> rows;
    int dim = -1;
    for (const auto& l : lines) {
      if (l.key != "row") continue;
      if (l.numbers.size() < 2)
        throw ConfigError(name, l.number, "row needs 'a_1 ... a_d b'");
      const int d = static_cast<int>(l.numbers.size()) - 1;
      if (dim >= 0 && d != dim)
        throw ConfigError(name, l.number, "rows have inconsistent dimension");
      dim = d;
      geometry::HalfSpace hs;
      hs.normal.assign(l.numbers.begin(), l.numbers.end() - 1);
      hs.offset = l.numbers.back();
      rows.push_back(std::move(hs));
    }
    if (rows.empty())
      throw ConfigError(name, type->number, "hpolytope needs 'row' lines");
    try {
      return geometry::ConvexBody::hpolytope(dim, std::move(rows));
    } catch (const std::exception& e) {
      throw ConfigError(name, type->number, e.what());
    }
  }
  throw ConfigError(name, type->number,
                    "unknown body type '" + kind +
                        "' (expected box, ball or hpolytope)");
}

geometry::Lattice parse_lattice(const std::string& text,
                                const std::string& name) {
  auto lines = parse_lines(text, name);
  const Line* type = find_one(lines, "type");
  if (!type) throw ConfigError(name, 0, "missing 'type' field");
  if (type->raw_value != "lattice")
    throw ConfigError(name, type->number, "expected 'type = lattice'");

  std::vector<std::vector<double>> cols;
  int dim = -1;
  int first_line = 0;
  for (const auto& l : lines) {
    if (l.key != "col") continue;
    if (l.numbers.empty())
      throw ConfigError(name, l.number, "col needs 'v_1 ... v_d'");
    const int d = static_cast<int>(l.numbers.size());
    if (dim >= 0 && d != dim)
      throw ConfigError(name, l.number, "cols have inconsistent dimension");
    dim = d;
    if (!first_line) first_line = l.number;
    cols.push_back(l.numbers);
  }
  if (dim < 0) throw ConfigError(name, type->number, "lattice needs 'col' lines");
  if (static_cast<int>(cols.size()) != dim)
    throw ConfigError(name, first_line,
                      "lattice needs exactly d columns of dimension d");
  std::vector<double> gen;
  gen.reserve(static_cast<std::size_t>(dim) * dim);
  for (const auto& c : cols) gen.insert(gen.end(), c.begin(), c.end());
  try {
    return geometry::Lattice(std::move(gen), dim);
  } catch (const std::exception& e) {
    throw ConfigError(name, first_line, e.what());
  }
}

geometry::ConvexBody load_body(const std::string& path) {
  return parse_body(read_file(path), path);
}

geometry::Lattice load_lattice(const std::string& path) {
  return parse_lattice(read_file(path), path);
}

}  // namespace turan::config
