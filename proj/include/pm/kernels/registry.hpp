#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "pm/kernels/types.hpp"

namespace pm::kernels {

/// Exact per-operation tally recorded by the instrumented reference kernels.
struct FlopTally {
  std::uint64_t adds = 0;
  std::uint64_t muls = 0;
  std::uint64_t divs = 0;
  std::uint64_t total() const { return adds + muls + divs; }
};

/// Reference kernel entry point. `mats` holds one pointer per MatrixData
/// argument, in signature order, resolved to non-overlapping regions by the
/// caller. When `tally` is non-null every floating-point add/mul/div is
/// counted.
using KernelFn = std::function<void(const SamplingRequest&, const RoutineSignature&,
                                    const std::vector<double*>& mats, FlopTally* tally)>;

/// Analytic flop count for one request (exact match to the instrumented
/// kernel by construction).
using FlopFn = std::function<std::uint64_t(const SamplingRequest&, const RoutineSignature&)>;

struct RoutineEntry {
  RoutineSignature signature;
  KernelFn kernel;   // may be empty for synthetic routines that are never run
  FlopFn flops;      // may be empty when no flop model applies
};

/// Immutable-after-initialization routine registry. The built-in instance
/// carries the reference kernels; tests and synthetic backends may assemble
/// their own instances.
class Registry {
public:
  void add(RoutineEntry entry);
  const RoutineEntry* find(std::string_view name) const;
  const RoutineEntry& at(std::string_view name) const;  // throws unknown-routine
  std::vector<std::string> names() const;

  /// Registry preloaded with dgemm, dtrsm, dtrmm, dtrinv_unb, dgetrf_unb and
  /// dsylv_unb.
  static const Registry& builtin();

private:
  std::map<std::string, RoutineEntry, std::less<>> entries_;
};

/// Signature lookup against the built-in registry.
const RoutineSignature& lookup_signature(std::string_view name);

/// Checks kind match, discrete-code membership, leading-dimension bounds and
/// size non-negativity. Returns every violation found, not just the first.
std::vector<std::string> validate_request(const SamplingRequest& req,
                                          const Registry& reg = Registry::builtin());

/// Exact number of floating-point operations the reference kernel performs.
std::uint64_t flop_count(const SamplingRequest& req,
                         const Registry& reg = Registry::builtin());

/// Executes the reference kernel in place on the resolved matrix operands.
void execute_kernel(const SamplingRequest& req, const std::vector<double*>& mats,
                    const Registry& reg = Registry::builtin());

/// Same as execute_kernel but counts every floating-point operation.
FlopTally execute_kernel_instrumented(const SamplingRequest& req,
                                      const std::vector<double*>& mats,
                                      const Registry& reg = Registry::builtin());

/// Number of MatrixData arguments in a signature.
int matrix_arg_count(const RoutineSignature& sig);

} // namespace pm::kernels
