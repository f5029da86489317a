#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "pm/common.hpp"

namespace pm::kernels {

struct RoutineSignature;
struct SamplingRequest;

/// Dimension of a matrix argument, expressed over the signature's size
/// arguments. Most dimensions are a plain size argument; some depend on a
/// discrete argument (e.g. rows(A) of dgemm is m for transA=N and k for
/// transA=T).
struct DimExpr {
  std::string size_arg;                 // plain form
  std::string discrete_arg;             // conditional form when non-empty:
  char code = 0;                        //   value of discrete_arg selecting...
  std::string then_arg, else_arg;       //   ...then_arg, otherwise else_arg

  static DimExpr of(std::string arg) {
    DimExpr e;
    e.size_arg = std::move(arg);
    return e;
  }
  static DimExpr cond(std::string disc, char code, std::string then_arg,
                      std::string else_arg) {
    DimExpr e;
    e.discrete_arg = std::move(disc);
    e.code = code;
    e.then_arg = std::move(then_arg);
    e.else_arg = std::move(else_arg);
    return e;
  }
  std::int64_t eval(const SamplingRequest& req, const RoutineSignature& sig) const;
  std::vector<std::string> referenced_size_args() const {
    if (discrete_arg.empty()) return {size_arg};
    return {then_arg, else_arg};
  }
};

/// Semantic kind of one routine argument.
struct ArgKind {
  enum class Tag { Discrete, Size, Scalar, MatrixData, LeadingDim, Increment };
  Tag tag = Tag::Size;
  std::string allowed;       // Discrete: the set of allowed single-char codes
  DimExpr rows, cols;        // MatrixData
  std::string bound_matrix;  // LeadingDim: name of the MatrixData argument

  static ArgKind discrete(std::string codes) {
    ArgKind k;
    k.tag = Tag::Discrete;
    k.allowed = std::move(codes);
    return k;
  }
  static ArgKind size() { return ArgKind{}; }
  static ArgKind scalar() {
    ArgKind k;
    k.tag = Tag::Scalar;
    return k;
  }
  static ArgKind matrix(DimExpr rows, DimExpr cols) {
    ArgKind k;
    k.tag = Tag::MatrixData;
    k.rows = std::move(rows);
    k.cols = std::move(cols);
    return k;
  }
  static ArgKind leading_dim(std::string matrix_arg) {
    ArgKind k;
    k.tag = Tag::LeadingDim;
    k.bound_matrix = std::move(matrix_arg);
    return k;
  }
  static ArgKind increment() {
    ArgKind k;
    k.tag = Tag::Increment;
    return k;
  }
};

struct RoutineSignature {
  std::string name;
  std::vector<std::pair<std::string, ArgKind>> args;

  int index_of(std::string_view arg) const {
    for (size_t i = 0; i < args.size(); ++i)
      if (args[i].first == arg) return static_cast<int>(i);
    return -1;
  }
  const ArgKind& kind_of(std::string_view arg) const {
    int i = index_of(arg);
    if (i < 0) fail("routine ", name, ": no argument named '", arg, "'");
    return args[static_cast<size_t>(i)].second;
  }
  std::vector<std::string> size_arg_names() const {
    std::vector<std::string> out;
    for (auto& [n, k] : args)
      if (k.tag == ArgKind::Tag::Size) out.push_back(n);
    return out;
  }
  std::vector<std::string> discrete_arg_names() const {
    std::vector<std::string> out;
    for (auto& [n, k] : args)
      if (k.tag == ArgKind::Tag::Discrete) out.push_back(n);
    return out;
  }
};

/// Placeholder value of a MatrixData argument; concrete placement is chosen
/// by whoever executes the request (the sampler's arena or a trace arena).
struct MatrixPlaceholder {
  bool operator==(const MatrixPlaceholder&) const = default;
};

using ArgValue = std::variant<char, std::int64_t, double, MatrixPlaceholder>;

/// One routine invocation with concrete argument values (matrices symbolic).
struct SamplingRequest {
  std::string routine;
  std::vector<ArgValue> values;

  std::int64_t int_at(size_t i) const { return std::get<std::int64_t>(values.at(i)); }
  double real_at(size_t i) const { return std::get<double>(values.at(i)); }
  char code_at(size_t i) const { return std::get<char>(values.at(i)); }

  std::int64_t size_arg(const RoutineSignature& sig, std::string_view arg) const {
    return int_at(checked_index(sig, arg));
  }
  double scalar_arg(const RoutineSignature& sig, std::string_view arg) const {
    return real_at(checked_index(sig, arg));
  }
  char discrete_arg(const RoutineSignature& sig, std::string_view arg) const {
    return code_at(checked_index(sig, arg));
  }

private:
  size_t checked_index(const RoutineSignature& sig, std::string_view arg) const {
    int i = sig.index_of(arg);
    if (i < 0) fail("routine ", routine, ": no argument named '", arg, "'");
    return static_cast<size_t>(i);
  }
};

inline std::int64_t DimExpr::eval(const SamplingRequest& req,
                                  const RoutineSignature& sig) const {
  if (discrete_arg.empty()) return req.size_arg(sig, size_arg);
  return req.discrete_arg(sig, discrete_arg) == code ? req.size_arg(sig, then_arg)
                                                     : req.size_arg(sig, else_arg);
}

/// Measured counters for one executed request. Contains exactly the counters
/// named in the active configuration.
using CounterSet = std::map<std::string, std::uint64_t>;

} // namespace pm::kernels
