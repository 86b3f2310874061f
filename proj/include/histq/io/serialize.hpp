#pragma once

#include <string>

#include "histq/scenario/runner.hpp"

namespace histq::io {

/// Fixed 12-significant-digit decimal form used by every machine format,
/// so output is byte-stable across runs.
std::string format_double(double value);
double round12(double value);

/// Machine formats carry no timing fields.
std::string to_json(const scenario::ResultSet& results);
std::string to_csv(const scenario::ResultSet& results);

/// Human-readable rendering; ANSI styling only when `color` is set.
std::string to_table(const scenario::ResultSet& results, bool color);

}  // namespace histq::io
