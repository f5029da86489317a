#include "pm/sampler/protocol.hpp"

#include <sstream>

#include "pm/common.hpp"
#include "pm/kernels/registry.hpp"

namespace pm::sampler {

using pm::kernels::ArgKind;
using pm::kernels::ArgValue;
using pm::kernels::CounterSet;
using pm::kernels::MatrixPlaceholder;
using pm::kernels::SamplingRequest;

ParsedLine parse_request_line(const std::string& line) {
  ParsedLine out;
  std::string body = line;
  if (auto hash = body.find('#'); hash == 0) body.clear();
  body = trim(body);
  if (body.empty()) {
    out.kind = ParsedLine::Kind::Skip;
    return out;
  }
  std::vector<std::string> tokens = split_ws(body);
  if (tokens.size() == 1 && tokens[0] == "go") {
    out.kind = ParsedLine::Kind::Go;
    return out;
  }

  const auto& sig = pm::kernels::lookup_signature(tokens[0]);
  if (tokens.size() - 1 != sig.args.size())
    fail("token-count mismatch for ", sig.name, ": got ", tokens.size() - 1,
         " arguments, expected ", sig.args.size());

  SamplingRequest req;
  req.routine = sig.name;
  for (size_t i = 0; i < sig.args.size(); ++i) {
    const std::string& tok = tokens[i + 1];
    const auto& [name, kind] = sig.args[i];
    size_t column = i + 2;  // 1-based token position on the line
    switch (kind.tag) {
      case ArgKind::Tag::Discrete:
        if (tok.size() != 1)
          fail("column ", column, ": '", tok, "' is not a single character code for ",
               name);
        req.values.emplace_back(tok[0]);
        break;
      case ArgKind::Tag::Size:
      case ArgKind::Tag::LeadingDim:
      case ArgKind::Tag::Increment:
        try {
          req.values.emplace_back(parse_int(tok));
        } catch (const pm::error&) {
          fail("column ", column, ": '", tok, "' is not an integer for ", name);
        }
        break;
      case ArgKind::Tag::Scalar:
        try {
          req.values.emplace_back(parse_real(tok));
        } catch (const pm::error&) {
          fail("column ", column, ": '", tok, "' is not a real number for ", name);
        }
        break;
      case ArgKind::Tag::MatrixData:
        if (tok != "?")
          fail("column ", column, ": expected '?' for matrix argument ", name);
        req.values.emplace_back(MatrixPlaceholder{});
        break;
    }
  }

  std::vector<std::string> violations = pm::kernels::validate_request(req);
  if (!violations.empty()) {
    std::string joined;
    for (size_t i = 0; i < violations.size(); ++i)
      joined += (i ? "; " : "") + violations[i];
    fail("invalid request: ", joined);
  }
  out.kind = ParsedLine::Kind::Request;
  out.request = std::move(req);
  return out;
}

std::string format_request_line(const SamplingRequest& request) {
  const auto& sig = pm::kernels::lookup_signature(request.routine);
  std::ostringstream out;
  out << sig.name;
  for (size_t i = 0; i < sig.args.size(); ++i) {
    out << ' ';
    const ArgValue& v = request.values.at(i);
    switch (sig.args[i].second.tag) {
      case ArgKind::Tag::Discrete: out << std::get<char>(v); break;
      case ArgKind::Tag::Size:
      case ArgKind::Tag::LeadingDim:
      case ArgKind::Tag::Increment: out << std::get<std::int64_t>(v); break;
      case ArgKind::Tag::Scalar: out << format_double(std::get<double>(v)); break;
      case ArgKind::Tag::MatrixData: out << '?'; break;
    }
  }
  return out.str();
}

std::string format_result_line(const SamplingRequest& request, const CounterSet& counters,
                               const std::vector<std::string>& counter_order) {
  std::ostringstream out;
  out << request.routine;
  for (const std::string& name : counter_order) {
    auto it = counters.find(name);
    if (it == counters.end()) fail("counter '", name, "' missing from measurement");
    out << ' ' << it->second;
  }
  return out.str();
}

CounterSet parse_result_line(const std::string& line,
                             const std::vector<std::string>& counter_order,
                             std::string* routine_out) {
  std::vector<std::string> tokens = split_ws(trim(line));
  if (tokens.size() != counter_order.size() + 1)
    fail("result line has ", tokens.empty() ? 0 : tokens.size() - 1,
         " counter values, expected ", counter_order.size(), ": '", line, "'");
  if (routine_out) *routine_out = tokens[0];
  CounterSet counters;
  for (size_t i = 0; i < counter_order.size(); ++i) {
    std::int64_t v = parse_int(tokens[i + 1]);
    if (v < 0) fail("negative counter value in result line: '", line, "'");
    counters[counter_order[i]] = static_cast<std::uint64_t>(v);
  }
  return counters;
}

}  // namespace pm::sampler
