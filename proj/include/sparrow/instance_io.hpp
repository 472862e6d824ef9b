#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "sparrow/model.hpp"

namespace sparrow {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, int line)
        : std::runtime_error(what + " (line " + std::to_string(line) + ")"), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

/// Canonical instance text format (UTF-8, LF):
///   line 1:   n initial_setup
///   lines 2-7: n values each of b, t, d, e, r, w
///   then n+1 rows of n+1 setup values (row 0 = dummy origin, column 0
///   written as 0 and ignored on read)
/// Values print as plain integers when integral, %.17g otherwise.
Instance read_instance(std::istream& in, std::string label = {});
Instance read_instance(const std::string& path);
void write_instance(const Instance& instance, std::ostream& out);
void write_instance(const Instance& instance, const std::string& path);

/// Canonical number rendering shared by instance files and CSV reports.
std::string format_number(double value);

}  // namespace sparrow
