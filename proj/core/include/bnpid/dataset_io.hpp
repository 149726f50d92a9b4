#pragma once

#include <iosfwd>
#include <string>

#include "bnpid/scenarios.hpp"

namespace bnpid {

/// Shortest "%.12g" rendering; every number the library writes goes through here.
std::string format_number(double value);

/// CSV with a header row of column names and one line per observation.
void write_dataset_csv(std::ostream& out, const Dataset& data);
Dataset read_dataset_csv(std::istream& in);

}  // namespace bnpid
