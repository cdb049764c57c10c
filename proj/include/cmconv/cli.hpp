#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cmconv/semigroups.hpp"
#include "cmconv/transforms.hpp"

namespace cmconv::cli {

/// Runs one command.  `args` excludes the program name.  Returns the process
/// exit code: 0 success, 1 negative verdict (check-id), 2 parse or validation
/// failure, 3 numerical failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// File readers, shared with the tests so fixtures are read the same way.
CircleMeasureSpec read_measure(const std::string& path);
PairDistribution read_pair(const std::string& path, std::size_t order);
/// A field file holds either {"gamma", "tau"} or {"series"}.
FieldSeries read_field(const std::string& path, std::size_t order);

/// %.12e, as used by every emitted number.
std::string format_number(double x);

}  // namespace cmconv::cli
