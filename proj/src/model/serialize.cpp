#include "pm/model/serialize.hpp"

#include <fstream>
#include <sstream>

#include "pm/common.hpp"

namespace pm::model {

namespace {

constexpr int kFormatVersion = 1;

void write_poly(std::ostringstream& out, const std::string& counter,
                const std::string& statistic, const Polynomial& p) {
  out << "poly " << counter << ' ' << statistic << ' ' << p.terms().size() << '\n';
  for (const auto& [exps, coeff] : p.terms()) {
    for (int e : exps) out << e << ' ';
    out << format_double(coeff) << '\n';
  }
}

/// Line reader that tracks line numbers for error reporting.
class Reader {
 public:
  explicit Reader(const std::string& text) : in_(text) {}

  /// Next non-empty line, split into tokens; fails at end of input.
  std::vector<std::string> next(const std::string& expected) {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      line = trim(line);
      if (!line.empty()) return split_ws(line);
    }
    fail("line ", line_no_, ": unexpected end of model file (expected ", expected, ")");
  }

  /// Next line, which must start with `keyword`; returns remaining tokens.
  std::vector<std::string> expect(const std::string& keyword) {
    std::vector<std::string> tokens = next(keyword);
    if (tokens[0] != keyword)
      fail("line ", line_no_, ": expected '", keyword, "', found '", tokens[0], "'");
    tokens.erase(tokens.begin());
    return tokens;
  }

  int line_no() const { return line_no_; }

  std::int64_t to_int(const std::string& tok) {
    try {
      return parse_int(tok);
    } catch (const pm::error&) {
      fail("line ", line_no_, ": '", tok, "' is not an integer");
    }
  }

  double to_real(const std::string& tok) {
    try {
      return parse_real(tok);
    } catch (const pm::error&) {
      fail("line ", line_no_, ": '", tok, "' is not a number");
    }
  }

 private:
  std::istringstream in_;
  int line_no_ = 0;
};

Box read_box(Reader& r, const std::vector<std::string>& tokens, std::size_t dim,
             bool* warned) {
  bool has_warn = warned && tokens.size() == 2 * dim + 1 && tokens.back() == "warn";
  if (tokens.size() != 2 * dim && !has_warn)
    fail("line ", r.line_no(), ": expected ", 2 * dim, " interval bounds");
  if (warned) *warned = has_warn;
  Box box;
  for (std::size_t d = 0; d < dim; ++d) {
    Interval iv{r.to_int(tokens[2 * d]), r.to_int(tokens[2 * d + 1])};
    if (iv.lo >= iv.hi) fail("line ", r.line_no(), ": empty interval in bounds");
    box.iv.push_back(iv);
  }
  return box;
}

}  // namespace

std::string serialize(const RoutineModel& model) {
  std::ostringstream out;
  out << "pmodel " << kFormatVersion << '\n';
  out << "routine " << model.routine << '\n';
  out << "sizeargs";
  for (const std::string& a : model.size_args) out << ' ' << a;
  out << '\n';
  out << "degree " << model.degree << '\n';
  out << "domain";
  Box domain = model.combos.empty() ? Box{} : model.combos.front().second.domain;
  for (const Interval& iv : domain.iv) out << ' ' << iv.lo << ' ' << iv.hi;
  out << '\n';
  const PiecewiseModel* first = model.combos.empty() ? nullptr : &model.combos.front().second;
  out << "counters";
  if (first)
    for (const std::string& c : first->counters) out << ' ' << c;
  out << '\n';
  out << "statistics";
  if (first)
    for (const std::string& s : first->statistics) out << ' ' << s;
  out << '\n';
  out << "ldpolicy " << model.ld_policy << '\n';
  out << "samples " << model.total_samples << '\n';
  for (const auto& [name, value] : model.fixed) out << "fixed " << name << ' ' << value << '\n';
  out << "combos " << model.combos.size() << '\n';
  for (const auto& [combo, pw] : model.combos) {
    out << "combo";
    if (combo.empty())
      out << " -";
    else
      for (char c : combo) out << ' ' << c;
    out << '\n';
    out << "regions " << pw.regions.size() << '\n';
    for (const Region& region : pw.regions) {
      out << "region";
      for (const Interval& iv : region.bounds.iv) out << ' ' << iv.lo << ' ' << iv.hi;
      if (region.warned) out << " warn";
      out << '\n';
      for (const std::string& counter : pw.counters)
        for (const std::string& stat : pw.statistics)
          write_poly(out, counter, stat, region.poly(counter, stat));
    }
  }
  return out.str();
}

RoutineModel deserialize(const std::string& text) {
  Reader r(text);
  RoutineModel model;

  std::vector<std::string> v = r.expect("pmodel");
  if (v.size() != 1 || r.to_int(v[0]) != kFormatVersion)
    fail("line ", r.line_no(), ": unsupported model format version '",
         v.empty() ? "" : v[0], "'");

  v = r.expect("routine");
  if (v.size() != 1) fail("line ", r.line_no(), ": expected one routine name");
  model.routine = v[0];

  model.size_args = r.expect("sizeargs");
  const std::size_t dim = model.size_args.size();
  if (dim == 0) fail("line ", r.line_no(), ": model needs at least one size argument");

  v = r.expect("degree");
  if (v.size() != 1) fail("line ", r.line_no(), ": expected one degree value");
  model.degree = static_cast<int>(r.to_int(v[0]));

  Box domain = read_box(r, r.expect("domain"), dim, nullptr);
  std::vector<std::string> counters = r.expect("counters");
  std::vector<std::string> statistics = r.expect("statistics");
  if (counters.empty() || statistics.empty())
    fail("line ", r.line_no(), ": counters and statistics must be non-empty");

  v = r.expect("ldpolicy");
  if (v.size() != 1) fail("line ", r.line_no(), ": expected one ldpolicy value");
  model.ld_policy = v[0];

  v = r.expect("samples");
  if (v.size() != 1) fail("line ", r.line_no(), ": expected one samples value");
  model.total_samples = r.to_int(v[0]);

  // zero or more fixed lines, then the combos count
  std::int64_t combo_count = -1;
  while (true) {
    std::vector<std::string> tokens = r.next("'fixed' or 'combos'");
    if (tokens[0] == "fixed") {
      if (tokens.size() != 3)
        fail("line ", r.line_no(), ": expected 'fixed <name> <value>'");
      model.fixed.emplace_back(tokens[1], tokens[2]);
    } else if (tokens[0] == "combos") {
      if (tokens.size() != 2) fail("line ", r.line_no(), ": expected 'combos <count>'");
      combo_count = r.to_int(tokens[1]);
      break;
    } else {
      fail("line ", r.line_no(), ": expected 'fixed' or 'combos', found '", tokens[0],
           "'");
    }
  }

  for (std::int64_t ci = 0; ci < combo_count; ++ci) {
    v = r.expect("combo");
    std::vector<char> combo;
    if (!(v.size() == 1 && v[0] == "-")) {
      for (const std::string& tok : v) {
        if (tok.size() != 1)
          fail("line ", r.line_no(), ": combo codes must be single characters");
        combo.push_back(tok[0]);
      }
    }
    PiecewiseModel pw;
    pw.domain = domain;
    pw.counters = counters;
    pw.statistics = statistics;

    v = r.expect("regions");
    if (v.size() != 1) fail("line ", r.line_no(), ": expected 'regions <count>'");
    std::int64_t region_count = r.to_int(v[0]);

    for (std::int64_t ri = 0; ri < region_count; ++ri) {
      Region region;
      region.bounds = read_box(r, r.expect("region"), dim, &region.warned);
      for (const std::string& counter : counters)
        for (const std::string& stat : statistics) {
          v = r.expect("poly");
          if (v.size() != 3 || v[0] != counter || v[1] != stat)
            fail("line ", r.line_no(), ": expected 'poly ", counter, " ", stat,
                 " <terms>'");
          std::int64_t term_count = r.to_int(v[2]);
          Polynomial p(dim, model.degree);
          for (std::int64_t ti = 0; ti < term_count; ++ti) {
            std::vector<std::string> tokens = r.next("polynomial term");
            if (tokens.size() != dim + 1)
              fail("line ", r.line_no(), ": term needs ", dim,
                   " exponents and a coefficient");
            std::vector<int> exps(dim);
            for (std::size_t d = 0; d < dim; ++d)
              exps[d] = static_cast<int>(r.to_int(tokens[d]));
            p.set_term(exps, r.to_real(tokens[dim]));
          }
          region.polys.emplace(std::make_pair(counter, stat), std::move(p));
        }
      pw.regions.push_back(std::move(region));
    }
    model.combos.emplace_back(std::move(combo), std::move(pw));
  }
  return model;
}

void save_model(const std::string& path, const RoutineModel& model) {
  std::ofstream f(path);
  if (!f) fail("cannot write model file ", path);
  f << serialize(model);
  if (!f.good()) fail("write to model file ", path, " failed");
}

RoutineModel load_model(const std::string& path) {
  std::ifstream f(path);
  if (!f) fail("cannot read model file ", path);
  std::ostringstream buf;
  buf << f.rdbuf();
  try {
    return deserialize(buf.str());
  } catch (const pm::error& e) {
    fail(path, ": ", e.what());
  }
}

}  // namespace pm::model
