#pragma once

#include <string>
#include <vector>

#include "pm/kernels/types.hpp"

namespace pm::sampler {

/// One parsed input line: a request, the `go` flush command, or a line to
/// skip (blank / comment).
struct ParsedLine {
  enum class Kind { Request, Go, Skip };
  Kind kind = Kind::Skip;
  pm::kernels::SamplingRequest request;
};

/// Parses one line of the request stream.
///
/// Grammar: whitespace-separated tokens — routine name, then one token per
/// signature argument (single character for discrete codes, decimal integer
/// for sizes / leading dimensions / increments, decimal real for scalars,
/// literal `?` for matrix operands). `go` flushes; blank lines and lines
/// starting with `#` are skipped. Malformed lines raise pm::error naming the
/// column (1-based token position) where applicable; semantic violations are
/// reported via validate_request.
ParsedLine parse_request_line(const std::string& line);

/// Renders a request in the exact input-line grammar (matrices as `?`).
std::string format_request_line(const pm::kernels::SamplingRequest& request);

/// Result line: routine name then one decimal integer per configured
/// counter, in configuration order, space-separated.
std::string format_result_line(const pm::kernels::SamplingRequest& request,
                               const pm::kernels::CounterSet& counters,
                               const std::vector<std::string>& counter_order);

/// Parses a result line against the expected counter order; fills
/// `routine_out` when non-null.
pm::kernels::CounterSet parse_result_line(const std::string& line,
                                          const std::vector<std::string>& counter_order,
                                          std::string* routine_out);

}  // namespace pm::sampler
