#pragma once

// Exponent-matrix text format:
//
//   # optional comment lines
//   m n L
//   a11 a12 ... a1n
//   ...
//
// Entries are integers in {-1, ..., L-1}; "-1" or "-" is the zero block. In MET files
// a cell may be a comma-joined shift list such as "1,2,7" (a weight-3 circulant).

#include <string>
#include <string_view>
#include <vector>

#include "qcising/circulant.hpp"

namespace qcising {

/// Throws ParseError with 1-based line/column for malformed text or out-of-range shifts.
ExponentMatrix parse_exponent(std::string_view text);
MetExponentMatrix parse_met_exponent(std::string_view text);

/// Comment lines ("# ..." without the leading "# ") in order of appearance.
std::vector<std::string> exponent_comments(std::string_view text);

std::string format_exponent(const ExponentMatrix& e, const std::vector<std::string>& comments = {});
std::string format_met_exponent(const MetExponentMatrix& e, const std::vector<std::string>& comments = {});

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view text);

}  // namespace qcising
