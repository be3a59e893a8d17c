#pragma once

// MacKay alist format for sparse binary matrices:
//
//   N M                  (columns, rows)
//   max_col_deg max_row_deg
//   col degrees (N values)
//   row degrees (M values)
//   N lines: 1-based row indices of each column, zero padded to max_col_deg
//   M lines: 1-based column indices of each row, zero padded to max_row_deg

#include <string>
#include <string_view>

#include "qcising/binary_matrix.hpp"

namespace qcising {

std::string write_alist(const BinaryMatrix& h);

/// Throws ParseError on malformed input or when the column and row lists disagree.
BinaryMatrix parse_alist(std::string_view text);

}  // namespace qcising
