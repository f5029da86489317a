#include "pm/blocked/trace.hpp"

#include "pm/common.hpp"
#include "pm/kernels/registry.hpp"

namespace pm::blocked {

namespace {

using Tag = pm::kernels::ArgKind::Tag;

[[noreturn]] void statement_fail(const BlockedAlgorithm& alg, std::size_t stmt_index,
                                 const std::string& what) {
  fail("algorithm ", alg.id, ", statement ", stmt_index + 1, ": ", what);
}

}  // namespace

std::vector<TraceEntry> generate_trace(const BlockedAlgorithm& alg,
                                       const std::map<std::string, std::int64_t>& sizes,
                                       std::int64_t b) {
  for (const auto& param : alg.size_params)
    if (!sizes.count(param))
      fail("algorithm ", alg.id, ": size parameter '", param, "' not given");
  const std::int64_t ext = alg.extent(sizes);
  std::vector<TraceEntry> trace;

  for (std::int64_t p = 0; p < ext;) {
    const IterationState state = repartition(alg, sizes, p, b);

    for (std::size_t s = 0; s < alg.body.size(); ++s) {
      const UpdateStatement& stmt = alg.body[s];
      const auto& sig = pm::kernels::lookup_signature(stmt.routine);
      if (stmt.args.size() != sig.args.size())
        statement_fail(alg, s, "argument count does not match " + stmt.routine);

      TraceEntry entry;
      entry.request.routine = stmt.routine;
      entry.request.values.resize(sig.args.size());
      bool has_zero_size = false;

      for (std::size_t i = 0; i < sig.args.size(); ++i) {
        const auto& [arg_name, kind] = sig.args[i];
        const TArg& targ = stmt.args[i];
        auto part_of = [&](const TArg& a) -> const PartTable& {
          auto it = state.parts.find(a.operand);
          if (it == state.parts.end())
            statement_fail(alg, s, "unknown operand '" + a.operand + "'");
          return it->second;
        };
        switch (kind.tag) {
          case Tag::Discrete:
            if (targ.kind != TArg::Kind::Code)
              statement_fail(alg, s, "argument '" + arg_name + "' needs a discrete code");
            entry.request.values[i] = targ.code;
            break;
          case Tag::Scalar:
            if (targ.kind != TArg::Kind::Real)
              statement_fail(alg, s, "argument '" + arg_name + "' needs a scalar");
            entry.request.values[i] = targ.real;
            break;
          case Tag::Size: {
            std::int64_t v = 0;
            if (targ.kind == TArg::Kind::DimRows)
              v = part_of(targ).rows.span(targ.part.r0, targ.part.r1);
            else if (targ.kind == TArg::Kind::DimCols)
              v = part_of(targ).cols.span(targ.part.c0, targ.part.c1);
            else
              statement_fail(alg, s, "argument '" + arg_name + "' needs a part dimension");
            entry.request.values[i] = v;
            if (v == 0) has_zero_size = true;
            break;
          }
          case Tag::MatrixData: {
            if (targ.kind != TArg::Kind::Mat)
              statement_fail(alg, s, "argument '" + arg_name + "' needs a matrix part");
            const PartTable& table = part_of(targ);
            entry.request.values[i] = pm::kernels::MatrixPlaceholder{};
            entry.mats.push_back({targ.operand, table.rows.offset(targ.part.r0),
                                  table.cols.offset(targ.part.c0)});
            break;
          }
          case Tag::LeadingDim: {
            if (targ.kind != TArg::Kind::Ld)
              statement_fail(alg, s, "argument '" + arg_name + "' needs a leading dimension");
            // The leading dimension of a partition block is the full row
            // count of the operand it is cut from.
            const int mat_index = sig.index_of(kind.bound_matrix);
            const TArg& mat_arg = stmt.args[static_cast<std::size_t>(mat_index)];
            if (mat_arg.kind != TArg::Kind::Mat)
              statement_fail(alg, s, "leading dimension '" + arg_name +
                                         "' is not preceded by its matrix argument");
            const Traversal& t = alg.traversal(mat_arg.operand);
            entry.request.values[i] = sizes.at(t.rows_var);
            break;
          }
          case Tag::Increment:
            entry.request.values[i] = std::int64_t{1};
            break;
        }
      }

      if (has_zero_size) continue;  // no work: skip the invocation entirely

      auto violations = pm::kernels::validate_request(entry.request);
      if (!violations.empty()) statement_fail(alg, s, violations.front());
      trace.push_back(std::move(entry));
    }
    p += state.b_eff;
  }
  return trace;
}

}  // namespace pm::blocked
