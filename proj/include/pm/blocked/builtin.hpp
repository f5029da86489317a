#pragma once

#include <string>
#include <vector>

#include "pm/blocked/blocked.hpp"

namespace pm::blocked {

/// The built-in blocked algorithms:
///  - trinv 1-4: lower-triangular matrix inversion (two lazy and two eager
///    variants, traversing from either corner of the diagonal),
///  - lu 1-3: LU factorization without pivoting (right-looking,
///    left-looking, Crout),
///  - sylv 1-2: triangular Sylvester equation A X + X B = C with A lower
///    and B upper triangular (block-column and block-row substitution).
const BlockedAlgorithm& builtin_algorithm(const std::string& operation, int variant);

/// Lookup by concatenated id, e.g. "trinv3" or "lu1".
const BlockedAlgorithm& algorithm_by_id(const std::string& id);

/// All algorithm ids, grouped by operation.
std::vector<std::string> algorithm_ids();

/// The distinct operation names.
std::vector<std::string> operation_names();

/// All variants of one operation, in variant order.
std::vector<const BlockedAlgorithm*> algorithms_for(const std::string& operation);

}  // namespace pm::blocked
