#pragma once
// Flat text configuration: one body or lattice per file, "key = value"
// lines, repeated keys for vector lists, '#' comments. Examples:
//
//   type = box                 type = hpolytope          type = lattice
//   halfwidths = 1 1           row = 1 0 1               col = 1 0
//                              row = 0 1 1               col = 0.5 0.866
//
// hpolytope rows are [a_1 ... a_d b]; the mirrored row is implied.

#include <stdexcept>
#include <string>
#include <vector>

#include "turan/geometry.hpp"

namespace turan::config {

struct ConfigError : std::runtime_error {
  ConfigError(const std::string& file, int line, const std::string& what_arg)
      : std::runtime_error(file + ":" + std::to_string(line) + ": " +
                           what_arg),
        line_number(line) {}
  int line_number;
};

geometry::ConvexBody load_body(const std::string& path);
geometry::Lattice load_lattice(const std::string& path);

// Parsed from a string; file name only used in diagnostics.
geometry::ConvexBody parse_body(const std::string& text,
                                const std::string& name = "<body>");
geometry::Lattice parse_lattice(const std::string& text,
                                const std::string& name = "<lattice>");

}  // namespace turan::config
