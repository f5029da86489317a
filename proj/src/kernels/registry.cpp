#include "pm/kernels/registry.hpp"

#include <algorithm>
#include <set>

namespace pm::kernels {

namespace detail {
// defined in kernels.cpp / flops.cpp
RoutineEntry make_dgemm();
RoutineEntry make_dtrsm();
RoutineEntry make_dtrmm();
RoutineEntry make_dtrinv_unb();
RoutineEntry make_dgetrf_unb();
RoutineEntry make_dsylv_unb();
} // namespace detail

void Registry::add(RoutineEntry entry) {
  const RoutineSignature& sig = entry.signature;
  if (entries_.count(sig.name))
    fail("registry: routine '", sig.name, "' registered twice");

  // structural invariants of the signature
  std::set<std::string> names;
  for (auto& [arg, kind] : sig.args) {
    if (!names.insert(arg).second)
      fail("routine ", sig.name, ": duplicate argument name '", arg, "'");
    if (kind.tag == ArgKind::Tag::Discrete && kind.allowed.empty())
      fail("routine ", sig.name, ": argument '", arg, "' has an empty code set");
  }
  auto require_size_arg = [&](const std::string& ref, const std::string& arg) {
    int i = sig.index_of(ref);
    if (i < 0 || sig.args[static_cast<size_t>(i)].second.tag != ArgKind::Tag::Size)
      fail("routine ", sig.name, ": dimension of '", arg,
           "' references '", ref, "', which is not a Size argument");
  };
  for (auto& [arg, kind] : sig.args) {
    if (kind.tag == ArgKind::Tag::MatrixData) {
      for (auto& r : kind.rows.referenced_size_args()) require_size_arg(r, arg);
      for (auto& r : kind.cols.referenced_size_args()) require_size_arg(r, arg);
    }
    if (kind.tag == ArgKind::Tag::LeadingDim) {
      int i = sig.index_of(kind.bound_matrix);
      if (i < 0 || sig.args[static_cast<size_t>(i)].second.tag != ArgKind::Tag::MatrixData)
        fail("routine ", sig.name, ": leading dimension '", arg,
             "' is not bound to a MatrixData argument");
    }
  }
  entries_.emplace(sig.name, std::move(entry));
}

const RoutineEntry* Registry::find(std::string_view name) const {
  auto it = entries_.find(name);
  return it == entries_.end() ? nullptr : &it->second;
}

const RoutineEntry& Registry::at(std::string_view name) const {
  const RoutineEntry* e = find(name);
  if (!e) fail("unknown routine '", name, "'");
  return *e;
}

std::vector<std::string> Registry::names() const {
  std::vector<std::string> out;
  for (auto& [n, e] : entries_) out.push_back(n);
  return out;
}

const Registry& Registry::builtin() {
  static const Registry reg = [] {
    Registry r;
    r.add(detail::make_dgemm());
    r.add(detail::make_dtrsm());
    r.add(detail::make_dtrmm());
    r.add(detail::make_dtrinv_unb());
    r.add(detail::make_dgetrf_unb());
    r.add(detail::make_dsylv_unb());
    return r;
  }();
  return reg;
}

const RoutineSignature& lookup_signature(std::string_view name) {
  return Registry::builtin().at(name).signature;
}

std::vector<std::string> validate_request(const SamplingRequest& req, const Registry& reg) {
  std::vector<std::string> violations;
  const RoutineEntry* entry = reg.find(req.routine);
  if (!entry) {
    violations.push_back("unknown routine '" + req.routine + "'");
    return violations;
  }
  const RoutineSignature& sig = entry->signature;
  if (req.values.size() != sig.args.size()) {
    violations.push_back("argument count mismatch: got " +
                         std::to_string(req.values.size()) + ", expected " +
                         std::to_string(sig.args.size()));
    return violations;
  }

  auto kind_ok = [&](size_t i) {
    const ArgKind& k = sig.args[i].second;
    switch (k.tag) {
      case ArgKind::Tag::Discrete: return std::holds_alternative<char>(req.values[i]);
      case ArgKind::Tag::Scalar: return std::holds_alternative<double>(req.values[i]);
      case ArgKind::Tag::MatrixData:
        return std::holds_alternative<MatrixPlaceholder>(req.values[i]);
      default: return std::holds_alternative<std::int64_t>(req.values[i]);
    }
  };

  for (size_t i = 0; i < sig.args.size(); ++i) {
    const auto& [arg, kind] = sig.args[i];
    if (!kind_ok(i)) {
      violations.push_back("argument '" + arg + "' has the wrong value kind");
      continue;
    }
    switch (kind.tag) {
      case ArgKind::Tag::Discrete: {
        char c = std::get<char>(req.values[i]);
        if (kind.allowed.find(c) == std::string::npos) {
          std::string codes;
          for (char a : kind.allowed) {
            if (!codes.empty()) codes += ',';
            codes += a;
          }
          violations.push_back(arg + " not in {" + codes + "}");
        }
        break;
      }
      case ArgKind::Tag::Size: {
        if (std::get<std::int64_t>(req.values[i]) < 0)
          violations.push_back(arg + " is negative");
        break;
      }
      case ArgKind::Tag::Increment: {
        if (std::get<std::int64_t>(req.values[i]) < 1)
          violations.push_back(arg + " must be positive");
        break;
      }
      case ArgKind::Tag::LeadingDim: {
        const std::string& mat = kind.bound_matrix;
        const ArgKind& mk = sig.kind_of(mat);
        // ld >= max(1, rows): the lower bound of 1 holds even when rows(mat)
        // cannot be evaluated because a referenced size is itself invalid
        if (std::get<std::int64_t>(req.values[i]) < 1) {
          violations.push_back(arg + " must be at least 1");
          break;
        }
        // evaluate rows(mat) only if its inputs parsed as the right kinds
        bool deps_ok = true;
        for (auto& r : mk.rows.referenced_size_args()) {
          int ri = sig.index_of(r);
          deps_ok = deps_ok && ri >= 0 && kind_ok(static_cast<size_t>(ri)) &&
                    std::get<std::int64_t>(req.values[static_cast<size_t>(ri)]) >= 0;
        }
        if (!mk.rows.discrete_arg.empty()) {
          int di = sig.index_of(mk.rows.discrete_arg);
          deps_ok = deps_ok && di >= 0 && kind_ok(static_cast<size_t>(di));
        }
        if (deps_ok) {
          std::int64_t rows = mk.rows.eval(req, sig);
          std::int64_t ld = std::get<std::int64_t>(req.values[i]);
          if (ld < rows)
            violations.push_back(arg + " < rows(" + mat + "): " + std::to_string(ld) +
                                 " < " + std::to_string(rows));
        }
        break;
      }
      default: break;
    }
  }
  return violations;
}

std::uint64_t flop_count(const SamplingRequest& req, const Registry& reg) {
  const RoutineEntry& e = reg.at(req.routine);
  if (!e.flops) fail("routine '", req.routine, "' has no flop model");
  return e.flops(req, e.signature);
}

void execute_kernel(const SamplingRequest& req, const std::vector<double*>& mats,
                    const Registry& reg) {
  const RoutineEntry& e = reg.at(req.routine);
  if (!e.kernel) fail("routine '", req.routine, "' has no executable kernel");
  e.kernel(req, e.signature, mats, nullptr);
}

FlopTally execute_kernel_instrumented(const SamplingRequest& req,
                                      const std::vector<double*>& mats,
                                      const Registry& reg) {
  const RoutineEntry& e = reg.at(req.routine);
  if (!e.kernel) fail("routine '", req.routine, "' has no executable kernel");
  FlopTally tally;
  e.kernel(req, e.signature, mats, &tally);
  return tally;
}

int matrix_arg_count(const RoutineSignature& sig) {
  int n = 0;
  for (auto& [name, kind] : sig.args)
    if (kind.tag == ArgKind::Tag::MatrixData) ++n;
  return n;
}

} // namespace pm::kernels
