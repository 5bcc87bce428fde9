// Command-line front end. Exit codes: 0 ok, 1 numeric/verification
// failure (JSON error object on stdout), 2 usage error.
#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <iterator>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "etatheta/addseq.hpp"
#include "etatheta/bsgs.hpp"
#include "etatheta/error.hpp"
#include "etatheta/evaluator.hpp"
#include "etatheta/modcount.hpp"
#include "etatheta/theorems.hpp"

using namespace etatheta;
using nlohmann::json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Format { Json, Tsv, Plain };

// Name lookups that fail are the caller's typo, not a numeric failure.
template <class F>
auto named(F&& lookup) {
  try {
    return lookup();
  } catch (const error& e) {
    throw UsageError(e.what());
  }
}

Complex parse_pair(const std::vector<std::string>& xy, mpfr_prec_t prec, const char* what) {
  Complex c(prec);
  if (mpfr_set_str(c.re.get(), xy[0].c_str(), 10, MPFR_RNDN) != 0 ||
      mpfr_set_str(c.im.get(), xy[1].c_str(), 10, MPFR_RNDN) != 0) {
    throw UsageError(std::string("cannot parse ") + what + " as two decimal numbers");
  }
  return c;
}

std::string fmt_double(double x) {
  if (std::isnan(x)) return "nan";
  std::ostringstream s;
  s.precision(6);
  s << std::fixed << x;
  return s.str();
}

json num_or_null(double x) { return std::isnan(x) ? json(nullptr) : json(x); }

// -------------------------------------------------------------------- eval

struct EvalArgs {
  std::string func = "eta";
  std::vector<std::string> tau, q;
  long prec = 128;
  std::string method = "auto";
  bool report = false;
  bool no_trick = false;
  u64 crossover = 5000;
  u64 truncation = 0;
};

int run_eval(const EvalArgs& a, Format fmt) {
  if (a.tau.empty() == a.q.empty()) throw UsageError("give exactly one of --tau and --q");
  if (a.prec < 8) throw error(errc::precision_underflow, "precision below 8 bits");
  EvalRequest req;
  req.function = named([&] { return parse_function(a.func); });
  req.method = named([&] { return parse_method(a.method); });
  req.prec = a.prec;
  req.precision_trick = !a.no_trick;
  req.auto_crossover = a.crossover;
  if (a.truncation) req.truncation = a.truncation;
  // Inputs are read at a precision above anything the evaluation uses.
  const mpfr_prec_t in_prec = a.prec + 96;
  if (!a.tau.empty()) req.tau = parse_pair(a.tau, in_prec, "--tau");
  if (!a.q.empty()) req.q = parse_pair(a.q, in_prec, "--q");

  const EvalReport r = eval(req);
  const int digits = static_cast<int>(std::ceil(static_cast<double>(r.prec) * std::log10(2.0))) + 1;
  if (fmt == Format::Json) {
    if (a.report) {
      std::cout << to_json(r) << "\n";
    } else {
      json j = json::parse(to_json(r));
      std::cout << json{{"function", j["function"]}, {"prec", j["prec"]}, {"values", j["values"]}}.dump(2) << "\n";
    }
    return 0;
  }
  const char sep = fmt == Format::Tsv ? '\t' : ' ';
  for (const auto& v : r.values) {
    std::cout << v.name << sep << to_decimal(v.value.re, digits) << sep << to_decimal(v.value.im, digits) << "\n";
  }
  if (a.report) {
    std::cout << "method" << sep << to_string(r.method) << "\nT" << sep << r.T << "\nN" << sep << r.N << "\n";
    if (r.m) std::cout << "m" << sep << r.m << "\n";
    std::cout << "mul" << sep << r.counts.mul << "\nsqr" << sep << r.counts.sqr << "\ncube" << sep << r.counts.cube
              << "\nmodeled_cost" << sep << r.modeled_cost << "\n";
  }
  return 0;
}

// ------------------------------------------------------------------ addseq

struct AddseqArgs {
  std::string kind = "pentagonal";
  u64 terms = 100;
  std::string algo = "optimized";
  std::string cost_model = "fft";
  bool emit = false;
};

int run_addseq(const AddseqArgs& a, Format fmt) {
  const ExponentKind kind = named([&] { return parse_kind(a.kind); });
  if (a.cost_model != "fft" && a.cost_model != "schoolbook") throw UsageError("--cost must be fft or schoolbook");
  const CostModel model = a.cost_model == "fft" ? CostModel::fft() : CostModel::schoolbook();
  const AdditionSequence seq = build_sequence(kind, a.terms, a.algo);
  if (a.emit) {
    if (fmt == Format::Json) {
      std::cout << to_json(seq) << "\n";
    } else {
      write_text(std::cout, seq);
    }
    return 0;
  }
  const StepCounts c = seq.counts();
  const double total = cost(seq, model);
  const double norm = total / (3.0 * static_cast<double>(a.terms));
  if (fmt == Format::Json) {
    json j{{"kind", std::string(to_string(kind))},
           {"terms", a.terms},
           {"algo", a.algo},
           {"cost_model", a.cost_model},
           {"length", seq.steps.size()},
           {"counts", {{"double", c.doubles}, {"add", c.adds}, {"doubleadd", c.doubleadds}, {"triple", c.triples}}},
           {"cost", total},
           {"normalized", norm}};
    std::cout << j.dump(2) << "\n";
  } else {
    const char sep = fmt == Format::Tsv ? '\t' : ' ';
    std::cout << "length" << sep << seq.steps.size() << "\ndouble" << sep << c.doubles << "\nadd" << sep << c.adds
              << "\ndoubleadd" << sep << c.doubleadds << "\ntriple" << sep << c.triples << "\ncost" << sep << total
              << "\nnormalized" << sep << norm << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------- validate

int run_validate(const std::string& path, Format fmt) {
  std::string text;
  if (path == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open " + path);
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  const auto first = text.find_first_not_of(" \t\r\n");
  AdditionSequence seq;
  if (first != std::string::npos && text[first] == '{') {
    seq = from_json(text);
  } else {
    std::istringstream in(text);
    seq = read_text(in);
  }
  const auto problem = validate(seq);
  if (fmt == Format::Json) {
    json j{{"valid", !problem}, {"length", seq.steps.size()}, {"targets", seq.targets.size()}};
    if (problem) j["error"] = *problem;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << (problem ? "invalid: " + *problem : std::string("valid")) << "\n";
  }
  return problem ? 1 : 0;
}

// ------------------------------------------------------------------ minima

int run_minima(const std::string& kind_name, u64 limit, bool compute, Format fmt) {
  const ExponentKind kind = named([&] { return parse_kind(kind_name); });
  if (kind != ExponentKind::Square && kind != ExponentKind::Trigonal && kind != ExponentKind::Pentagonal) {
    throw error(errc::unsupported_kind, "minima tables exist for square, trigonal and pentagonal");
  }
  MinimaTable table;
  const MinimaTable& shipped = default_minima(kind);
  const u64 shipped_limit = shipped.entries.empty() ? 0 : shipped.entries.back().m;
  if (!compute && limit <= shipped_limit) {
    table.kind = kind;
    for (const auto& e : shipped.entries) {
      if (e.m <= limit) table.entries.push_back(e);
    }
  } else {
    table = successive_minima(kind, limit);
  }
  if (fmt == Format::Json) {
    json rows = json::array();
    for (const auto& e : table.entries) rows.push_back({{"m", e.m}, {"count", e.count}, {"ratio", e.ratio()}});
    std::cout << json{{"kind", std::string(to_string(kind))}, {"limit", limit}, {"entries", rows}}.dump(2) << "\n";
  } else if (fmt == Format::Tsv) {
    write_tsv(std::cout, table);
  } else {
    for (const auto& e : table.entries) std::cout << e.m << " " << e.count << "\n";
  }
  return 0;
}

// ------------------------------------------------------------------ verify

int run_verify(const std::string& id, u64 limit, Format fmt) {
  const auto ids = statement_ids();
  if (std::find(ids.begin(), ids.end(), id) == ids.end()) throw UsageError("unknown statement '" + id + "'");
  const VerificationReport r = verify_statement(id, limit);
  if (fmt == Format::Json) {
    std::cout << to_json(r) << "\n";
  } else {
    std::cout << r.statement << (r.pass() ? " PASS" : " FAIL") << " checked=" << r.checked
              << " counterexamples=" << r.counterexamples.size() << "\n";
  }
  return r.pass() ? 0 : 1;
}

// ------------------------------------------------------------------- bench

std::vector<u64> default_curve_ns(u64 max_n) {
  std::vector<u64> ns;
  for (u64 decade = 10; decade <= max_n; decade *= 10) {
    for (u64 k : {1u, 2u, 5u}) {
      if (k * decade <= max_n) ns.push_back(k * decade);
    }
  }
  return ns;
}

int run_curve(const std::string& kind_name, u64 max_n, Format fmt) {
  const ExponentKind kind = named([&] { return parse_kind(kind_name); });
  const auto ns = default_curve_ns(max_n);
  const auto rows = cost_curve(kind, ns);
  if (fmt == Format::Json) {
    json arr = json::array();
    for (const auto& r : rows) {
      arr.push_back({{"N", r.N}, {"T", r.T}, {"m", r.m}, {"classical", r.classical}, {"optimized", r.optimized},
                     {"generic", num_or_null(r.generic)}, {"bsgs", r.bsgs}});
    }
    std::cout << json{{"kind", std::string(to_string(kind))}, {"rows", arr}}.dump(2) << "\n";
    return 0;
  }
  const char sep = fmt == Format::Tsv ? '\t' : ' ';
  std::cout << "N" << sep << "T" << sep << "m" << sep << "classical" << sep << "optimized" << sep << "generic" << sep
            << "bsgs\n";
  for (const auto& r : rows) {
    std::cout << r.N << sep << r.T << sep << r.m << sep << fmt_double(r.classical) << sep << fmt_double(r.optimized)
              << sep << fmt_double(r.generic) << sep << fmt_double(r.bsgs) << "\n";
  }
  return 0;
}

Complex benchmark_tau(mpfr_prec_t p) {
  Complex t(p);
  mpfr_set_si(t.re.get(), -1523, MPFR_RNDN);
  mpfr_div_ui(t.re.get(), t.re.get(), 2610, MPFR_RNDN);
  mpfr_sqrt_ui(t.im.get(), 6961631, MPFR_RNDN);
  mpfr_div_ui(t.im.get(), t.im.get(), 2610, MPFR_RNDN);
  return t;
}

struct TableRow {
  std::string table;
  long bits;
  u64 T;
  EvalReport as, bsgs;
};

int run_tables(long max_bits, Format fmt) {
  std::vector<TableRow> rows;
  struct Spec {
    const char* name;
    Function f;
    bool generic;
  };
  const Spec specs[] = {{"eta", Function::Eta, false},
                        {"theta-simultaneous", Function::ThetaAll, false},
                        {"theta-single", Function::Theta0, true}};
  for (const Spec& s : specs) {
    for (long bits = 100; bits <= max_bits; bits *= 10) {
      EvalRequest req;
      req.function = s.f;
      req.tau = benchmark_tau(bits + 96);
      req.prec = bits;
      req.generic_as = s.generic;
      req.method = Method::OptimizedAS;
      EvalReport as = eval(req);
      req.method = Method::BSGS;
      EvalReport bs = eval(req);
      rows.push_back({s.name, bits, bs.T, std::move(as), std::move(bs)});
    }
  }
  if (fmt == Format::Json) {
    json arr = json::array();
    for (const auto& r : rows) {
      auto counts = [](const EvalReport& e) {
        return json{{"mul", e.counts.mul}, {"sqr", e.counts.sqr}, {"cube", e.counts.cube}, {"modeled", e.modeled_cost}};
      };
      arr.push_back({{"table", r.table},
                     {"bits", r.bits},
                     {"T", r.T},
                     {"m", r.bsgs.m},
                     {"as", counts(r.as)},
                     {"bsgs", counts(r.bsgs)},
                     {"theory", r.as.modeled_cost / r.bsgs.modeled_cost}});
    }
    std::cout << json{{"rows", arr}}.dump(2) << "\n";
    return 0;
  }
  const char sep = fmt == Format::Tsv ? '\t' : ' ';
  std::cout << "table" << sep << "bits" << sep << "T" << sep << "m" << sep << "as_mul" << sep << "as_sqr" << sep
            << "bsgs_mul" << sep << "bsgs_sqr" << sep << "as_cost" << sep << "bsgs_cost" << sep << "theory\n";
  for (const auto& r : rows) {
    std::cout << r.table << sep << r.bits << sep << r.T << sep << r.bsgs.m << sep << r.as.counts.mul << sep
              << r.as.counts.sqr << sep << r.bsgs.counts.mul << sep << r.bsgs.counts.sqr << sep
              << fmt_double(r.as.modeled_cost) << sep << fmt_double(r.bsgs.modeled_cost) << sep
              << fmt_double(r.as.modeled_cost / r.bsgs.modeled_cost) << "\n";
  }
  return 0;
}

void print_error(const std::string& code, const std::string& message) {
  std::cout << json{{"error", {{"code", code}, {"message", message}}}}.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Eta and theta evaluation by addition sequences and baby-step giant-step"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "json";
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "tsv", "plain"}));

  EvalArgs ea;
  auto* ev = app.add_subcommand("eval", "Evaluate eta or theta constants");
  ev->add_option("--func", ea.func, "eta|theta0|theta1|theta2|theta-all")->required();
  auto* tau_opt = ev->add_option("--tau", ea.tau, "tau as RE IM")->expected(2);
  auto* q_opt = ev->add_option("--q", ea.q, "q as RE IM")->expected(2);
  tau_opt->excludes(q_opt);
  ev->add_option("--prec", ea.prec, "Precision in bits")->required();
  ev->add_option("--method", ea.method, "classical|optimized|bsgs|auto");
  ev->add_flag("--report", ea.report, "Include T, N, m and operation counts");
  ev->add_flag("--no-precision-trick", ea.no_trick, "Evaluate every term at full precision");
  ev->add_option("--crossover", ea.crossover, "Auto switches to BSGS from this T");
  ev->add_option("--truncation", ea.truncation, "Sum exponents up to this T instead of the error bound");

  AddseqArgs aa;
  auto* as = app.add_subcommand("addseq", "Build an addition sequence");
  as->add_option("--kind", aa.kind, "Exponent kind")->required();
  as->add_option("--terms", aa.terms, "Number of terms")->required()->check(CLI::PositiveNumber);
  as->add_option("--algo", aa.algo, "classical|generic|optimized")
      ->check(CLI::IsMember({"classical", "generic", "optimized"}));
  as->add_option("--cost", aa.cost_model, "fft|schoolbook");
  as->add_flag("--emit", aa.emit, "Print the steps instead of a summary");

  std::string val_path = "-";
  auto* va = app.add_subcommand("validate", "Check an addition sequence (text or JSON)");
  va->add_option("file", val_path, "Input file, - for stdin");

  std::string mkind = "square";
  u64 mlimit = 10000;
  bool mcompute = false;
  auto* mi = app.add_subcommand("minima", "Successive minima of count(m)/m");
  mi->add_option("--kind", mkind, "square|trigonal|pentagonal")->required();
  mi->add_option("--limit", mlimit, "Largest modulus")->required()->check(CLI::PositiveNumber);
  mi->add_flag("--compute", mcompute, "Run the sieve even when the shipped table covers the limit");

  std::string vid;
  u64 vlimit = 100000;
  bool vlist = false;
  auto* ve = app.add_subcommand("verify", "Exhaustively check a statement");
  auto* vid_opt = ve->add_option("--statement", vid, "Statement id");
  ve->add_option("--limit", vlimit, "Upper end of the range");
  ve->add_flag("--list", vlist, "List statement ids");

  bool curve = false, tables = false;
  std::string bkind = "pentagonal";
  u64 max_n = 1000000;
  long max_bits = 100000;
  auto* be = app.add_subcommand("bench", "Cost-model data");
  auto* curve_flag = be->add_flag("--curve", curve, "Normalized cost per term against N");
  auto* tables_flag = be->add_flag("--tables", tables, "Operation counts and modeled speed-ups at the CM point");
  curve_flag->excludes(tables_flag);
  be->add_option("--kind", bkind, "Kind for --curve");
  be->add_option("--max-n", max_n, "Largest N for --curve")->check(CLI::PositiveNumber);
  be->add_option("--max-bits", max_bits, "Largest precision for --tables")->check(CLI::Range(100L, 10000000L));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  const Format fmt = format == "tsv" ? Format::Tsv : format == "plain" ? Format::Plain : Format::Json;
  try {
    if (*ev) return run_eval(ea, fmt);
    if (*as) return run_addseq(aa, fmt);
    if (*va) return run_validate(val_path, fmt);
    if (*mi) return run_minima(mkind, mlimit, mcompute, fmt);
    if (*ve) {
      if (vlist) {
        for (const auto& id : statement_ids()) std::cout << id << "\n";
        return 0;
      }
      if (vid_opt->count() == 0) throw UsageError("--statement is required");
      return run_verify(vid, vlimit, fmt);
    }
    if (*be) {
      if (curve == tables) throw UsageError("give one of --curve and --tables");
      return curve ? run_curve(bkind, max_n, fmt) : run_tables(max_bits, fmt);
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const error& e) {
    print_error(std::string(to_string(e.code())), e.what());
    return 1;
  } catch (const std::exception& e) {
    print_error("internal", e.what());
    return 1;
  }
  return 2;
}
