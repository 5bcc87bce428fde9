#include "etatheta/addseq.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <queue>
#include <set>
#include <array>
#include <string>
#include <unordered_map>

#include "etatheta/error.hpp"
#include "json.hpp"

namespace etatheta {

namespace {

// Incrementally grows a sequence, keeping a value -> step index map and a
// sorted list of the positive values present.
class Builder {
 public:
  explicit Builder(std::vector<u64> targets) { seq_.targets = std::move(targets); }

  bool has(u64 v) const { return index_.count(v) != 0; }
  std::size_t at(u64 v) const { return index_.at(v); }
  const std::vector<u64>& sorted() const {
    if (!pending_.empty()) {
      std::sort(pending_.begin(), pending_.end());
      const auto mid = static_cast<std::ptrdiff_t>(sorted_.size());
      sorted_.insert(sorted_.end(), pending_.begin(), pending_.end());
      std::inplace_merge(sorted_.begin(), sorted_.begin() + mid, sorted_.end());
      pending_.clear();
    }
    return sorted_;
  }

  std::size_t leaf() {
    if (has(1)) return at(1);
    return push({1, StepOp::Leaf});
  }

  std::size_t emit(const Decomposition& d) {
    AdditionStep s{0, d.op, at(d.a)};
    switch (d.op) {
      case StepOp::Double:
        s.target = 2 * d.a;
        break;
      case StepOp::Add:
        s.target = d.a + d.b;
        s.b = at(d.b);
        break;
      case StepOp::DoubleAdd:
        s.target = 2 * d.a + d.b;
        s.b = at(d.b);
        break;
      case StepOp::Triple:
        s.target = 3 * d.a;
        break;
      case StepOp::Leaf:
        return leaf();
    }
    if (has(s.target)) return at(s.target);
    return push(s);
  }

  // a + b as Double when the operands coincide.
  std::size_t sum(u64 a, u64 b) {
    if (a == b) return emit({StepOp::Double, a});
    return emit({StepOp::Add, std::max(a, b), std::min(a, b)});
  }

  AdditionSequence finish() && { return std::move(seq_); }

 private:
  std::size_t push(const AdditionStep& s) {
    const std::size_t idx = seq_.steps.size();
    seq_.steps.push_back(s);
    index_.emplace(s.target, idx);
    if (pending_.empty() && (sorted_.empty() || s.target > sorted_.back())) {
      sorted_.push_back(s.target);
    } else {
      pending_.push_back(s.target);
    }
    return idx;
  }

  AdditionSequence seq_;
  std::unordered_map<u64, std::size_t> index_;
  mutable std::vector<u64> sorted_;
  mutable std::vector<u64> pending_;  // out-of-order values, merged on demand
};

bool contains(std::span<const u64> v, u64 x) { return std::binary_search(v.begin(), v.end(), x); }

std::optional<Decomposition> try_decompose(u64 c, std::span<const u64> avail) {
  if (c % 2 == 0 && contains(avail, c / 2)) return Decomposition{StepOp::Double, c / 2};
  // a + b, a > b; the a == b case is the Double above.
  const auto below = std::lower_bound(avail.begin(), avail.end(), c);
  for (auto it = below; it != avail.begin();) {
    const u64 a = *--it;
    if (2 * a <= c) break;
    if (contains(avail, c - a)) return Decomposition{StepOp::Add, a, c - a};
  }
  // 2a + b with b > 0.
  for (auto it = std::lower_bound(avail.begin(), avail.end(), (c + 1) / 2); it != avail.begin();) {
    const u64 a = *--it;
    if (2 * a >= c) continue;
    if (contains(avail, c - 2 * a)) return Decomposition{StepOp::DoubleAdd, a, c - 2 * a};
  }
  return std::nullopt;
}

// c = a + b + d with a >= b >= d > 0, a descending.
std::optional<std::array<u64, 3>> try_three_split(u64 c, std::span<const u64> avail) {
  const auto below = std::lower_bound(avail.begin(), avail.end(), c);
  for (auto ia = below; ia != avail.begin();) {
    const u64 a = *--ia;
    if (3 * a < c) break;
    for (auto ib = ia + 1; ib != avail.begin();) {
      const u64 b = *--ib;
      if (a + b >= c) continue;
      const u64 d = c - a - b;
      if (d > b) break;
      if (contains(avail, d)) return std::array<u64, 3>{a, b, d};
    }
  }
  return std::nullopt;
}

// Makes v available, falling back to Algorithm 1 style halving.
void ensure(Builder& bld, u64 v) {
  if (bld.has(v)) return;
  if (v == 1) {
    bld.leaf();
    return;
  }
  if (auto d = try_decompose(v, bld.sorted())) {
    bld.emit(*d);
    return;
  }
  ensure(bld, v / 2);
  ensure(bld, v - v / 2);
  bld.sum(v - v / 2, v / 2);
}

std::vector<u64> nonzero(std::span<const u64> v) {
  std::vector<u64> out;
  for (u64 x : v) {
    if (x != 0) out.push_back(x);
  }
  return out;
}

u64 quarter_square(long long i) {
  if (i < 0) return 0;  // t(-1) = 0; only -1 and -2 occur
  const u64 n = static_cast<u64>(i) + 1;
  return (n * n) / 4;
}

u64 a182568_f(long long n) {
  const u64 a = static_cast<u64>(n < 0 ? -n : n);
  return 2 * ((a * a) / 8);
}

}  // namespace

std::string_view to_string(StepOp op) noexcept {
  switch (op) {
    case StepOp::Leaf:
      return "leaf";
    case StepOp::Double:
      return "double";
    case StepOp::Add:
      return "add";
    case StepOp::DoubleAdd:
      return "doubleadd";
    case StepOp::Triple:
      return "triple";
  }
  return "unknown";
}

StepOp parse_step_op(std::string_view name) {
  for (auto op : {StepOp::Leaf, StepOp::Double, StepOp::Add, StepOp::DoubleAdd, StepOp::Triple}) {
    if (to_string(op) == name) return op;
  }
  throw error(errc::parse_error, "unknown step kind '" + std::string(name) + "'");
}

StepCounts AdditionSequence::counts() const noexcept {
  StepCounts c;
  for (const auto& s : steps) {
    switch (s.op) {
      case StepOp::Double:
        ++c.doubles;
        break;
      case StepOp::Add:
        ++c.adds;
        break;
      case StepOp::DoubleAdd:
        ++c.doubleadds;
        break;
      case StepOp::Triple:
        ++c.triples;
        break;
      case StepOp::Leaf:
        break;
    }
  }
  return c;
}

std::optional<std::size_t> AdditionSequence::find(u64 v) const {
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (steps[i].target == v) return i;
  }
  return std::nullopt;
}

double CostModel::step(StepOp op) const noexcept {
  switch (op) {
    case StepOp::Leaf:
      return 0;
    case StepOp::Double:
      return 2 * S + M;
    case StepOp::Add:
      return 3 * M;
    case StepOp::Triple:
      return 2 * S + 2 * M;
    case StepOp::DoubleAdd:
      return 2 * S + 4 * M;
  }
  return 0;
}

AdditionSequence build_classical(ExponentKind kind, u64 N) {
  if (N == 0) throw error(errc::invalid_argument, "need at least one term");
  auto targets = first_exponents(kind, N);
  const u64 last = targets.back();
  Builder bld(targets);
  bld.leaf();

  // One branch f2(n+1) = f2(n) + f1(n), f1(n) = f1(n-1) + f0.
  struct Branch {
    u64 f2, f1;
  };
  auto run = [&](std::vector<Branch> branches, u64 f0) {
    if (last >= 2) bld.sum(1, 1);
    if (f0 == 3 && last >= 3) bld.sum(2, 1);
    for (bool active = true; active;) {
      active = false;
      for (auto& br : branches) {
        const u64 f1 = br.f1 + f0;
        if (br.f2 + f1 > last) continue;
        active = true;
        bld.sum(br.f1, f0);
        if (br.f2 != 0) bld.sum(br.f2, f1);
        br.f2 += f1;
        br.f1 = f1;
      }
    }
  };

  switch (kind) {
    case ExponentKind::Square:
      // n^2: f1(n) = 2n+1 from f1(0) = 1.
      run({{1, 1}}, 2);
      break;
    case ExponentKind::AlmostSquare:
      // n^2 - 1 from n = 1, same differences as the squares.
      run({{0, 1}}, 2);
      break;
    case ExponentKind::Trigonal:
      // n(n+1): f1(n) = 2n+2; start at n = 1 with f2 = f1 = 2.
      if (last >= 2) bld.sum(1, 1);
      run({{2, 2}}, 2);
      break;
    case ExponentKind::Pentagonal:
      // n(3n-1)/2 with f1 = 3n+1, and n(3n+1)/2 with f1 = 3n+2.
      run({{1, 1}, {2, 2}}, 3);
      break;
    default:
      throw error(errc::unsupported_kind, "no classical sequence for " + std::string(to_string(kind)));
  }
  return std::move(bld).finish();
}

AdditionSequence complete_generic(std::span<const u64> E) {
  for (std::size_t i = 0; i < E.size(); ++i) {
    if (E[i] == 0 || (i > 0 && E[i] <= E[i - 1])) {
      throw error(errc::invalid_argument, "complete_generic needs a positive strictly increasing list");
    }
  }
  std::vector<u64> targets(E.begin(), E.end());
  if (E.empty()) return AdditionSequence{{}, targets};

  const u64 top = E.back();
  std::vector<bool> present(top + 1, false);
  std::set<u64> values;
  std::unordered_map<u64, std::pair<u64, u64>> how;
  std::priority_queue<u64> work;
  auto insert = [&](u64 v) {
    if (!present[v]) {
      present[v] = true;
      values.insert(v);
      work.push(v);
    }
  };
  for (u64 e : E) insert(e);

  // Largest first, so every insertion is still to be processed.
  while (!work.empty()) {
    const u64 c = work.top();
    work.pop();
    if (c == 1) continue;
    bool found = false;
    if (c % 2 == 0 && present[c / 2]) {
      how[c] = {c / 2, c / 2};
      found = true;
    }
    for (auto it = values.begin(); !found && it != values.end() && 2 * *it < c; ++it) {
      if (present[c - *it]) {
        how[c] = {c - *it, *it};
        found = true;
      }
    }
    if (!found) {
      insert(c / 2);
      insert(c - c / 2);
      how[c] = {c - c / 2, c / 2};
    }
  }

  Builder bld(std::move(targets));
  for (u64 v : values) {
    if (v == 1) {
      bld.leaf();
    } else {
      const auto [a, b] = how.at(v);
      bld.sum(a, b);
    }
  }
  return std::move(bld).finish();
}

Decomposition decompose_step(ExponentKind kind, u64 c, std::span<const u64> available) {
  if (!is_member(kind, c)) {
    throw error(errc::not_a_member, std::to_string(c) + " is not " + std::string(to_string(kind)));
  }
  const auto avail = nonzero(available);
  if (auto d = try_decompose(c, avail)) return *d;
  throw error(errc::no_decomposition,
              std::to_string(c) + " is not 2a, a+b or 2a+b over the given " + std::string(to_string(kind)) +
                  " elements");
}

AdditionSequence build_optimized(ExponentKind kind, u64 N) {
  switch (kind) {
    case ExponentKind::Pentagonal:
    case ExponentKind::Trigonal:
    case ExponentKind::AlmostSquare:
    case ExponentKind::Square:
      break;
    case ExponentKind::QuarterSquare:
      return build_quarter_square(N);
    case ExponentKind::A182568:
      return build_a182568(N);
  }
  if (N == 0) throw error(errc::invalid_argument, "need at least one term");
  const auto targets = first_exponents(kind, N);
  Builder bld(targets);
  bld.leaf();
  // Below the theorem thresholds: almost-squares start 0, 3, 8 and need 2.
  if (kind == ExponentKind::AlmostSquare && N >= 2) bld.sum(1, 1);
  for (u64 c : targets) {
    if (c <= 1 || bld.has(c)) continue;
    if (auto d = try_decompose(c, bld.sorted())) {
      bld.emit(*d);
    } else if (auto t = try_three_split(c, bld.sorted())) {
      const auto [a, b, d3] = *t;
      bld.sum(a, b);
      bld.sum(a + b, d3);
    } else {
      ensure(bld, c);
    }
  }
  return std::move(bld).finish();
}

namespace {

void emit_checked(Builder& bld, u64 c, const Decomposition& d) {
  const u64 got = d.op == StepOp::Double ? 2 * d.a : d.op == StepOp::DoubleAdd ? 2 * d.a + d.b : d.a + d.b;
  if (got != c || !bld.has(d.a) || (d.op != StepOp::Double && !bld.has(d.b))) {
    throw std::logic_error("recursion table produced a bad step for " + std::to_string(c));
  }
  if (d.op == StepOp::Add) {
    bld.sum(d.a, d.b);
  } else {
    bld.emit(d);
  }
}

}  // namespace

AdditionSequence build_quarter_square(u64 N) {
  if (N == 0) throw error(errc::invalid_argument, "need at least one term");
  Builder bld(first_exponents(ExponentKind::QuarterSquare, N));
  if (N >= 2) bld.leaf();
  // (beta, gamma) offsets for t(6n+alpha) = 2 t(4n+beta) + t(2n+gamma).
  constexpr int kOffsets[6][2] = {{0, -2}, {0, 1}, {1, 0}, {2, -1}, {2, 2}, {3, 1}};
  for (u64 i = 2; i < N; ++i) {
    const long long n = static_cast<long long>(i / 6);
    const auto& [beta, gamma] = kOffsets[i % 6];
    const u64 a = quarter_square(4 * n + beta);
    const u64 b = quarter_square(2 * n + gamma);
    const u64 c = quarter_square(static_cast<long long>(i));
    emit_checked(bld, c, b == 0 ? Decomposition{StepOp::Double, a} : Decomposition{StepOp::DoubleAdd, a, b});
  }
  return std::move(bld).finish();
}

AdditionSequence build_a182568(u64 N) {
  if (N == 0) throw error(errc::invalid_argument, "need at least one term");
  Builder bld(first_exponents(ExponentKind::A182568, N));
  if (N >= 2) bld.leaf();  // every member is even, so 1 is a helper
  // (beta, gamma) for alpha = 0..10; negative alpha flips both signs.
  constexpr int kTable[11][2] = {{0, 0},  {2, -1}, {1, 2}, {3, 1}, {2, 4}, {4, 3},
                                 {6, 2},  {5, 5},  {7, 4}, {6, 7}, {8, 6}};
  for (long long n = 3; n <= static_cast<long long>(N) + 1; ++n) {
    const u64 c = a182568_f(n);
    if (n == 3) {
      emit_checked(bld, c, {StepOp::Double, 1});
    } else if (n == 4 || n == 6) {
      emit_checked(bld, c, {StepOp::Double, a182568_f(n - (n == 4 ? 1 : 2))});
    } else {
      const long long k = (n + 9) / 20;
      const long long alpha = n - 20 * k;
      const int sign = alpha < 0 ? -1 : 1;
      const auto& [beta, gamma] = kTable[alpha < 0 ? -alpha : alpha];
      emit_checked(bld, c,
                   {StepOp::Add, a182568_f(16 * k + sign * beta), a182568_f(12 * k + sign * gamma)});
    }
  }
  return std::move(bld).finish();
}

AdditionSequence build_sequence(ExponentKind kind, u64 N, std::string_view algo) {
  if (algo == "classical") return build_classical(kind, N);
  if (algo == "optimized") return build_optimized(kind, N);
  if (algo == "generic") {
    auto targets = first_exponents(kind, N);
    auto seq = complete_generic(nonzero(targets));
    seq.targets = std::move(targets);
    return seq;
  }
  throw error(errc::invalid_argument, "unknown algorithm '" + std::string(algo) + "'");
}

std::optional<std::string> validate(const AdditionSequence& seq) {
  using std::to_string;
  std::unordered_map<u64, std::size_t> seen;
  bool has_one = false;
  for (std::size_t i = 0; i < seq.steps.size(); ++i) {
    const auto& s = seq.steps[i];
    const std::string t = to_string(s.target);
    if (!seen.emplace(s.target, i).second) return "duplicate element " + t;
    if (s.op == StepOp::Leaf) {
      if (s.target != 1) return "leaf " + t + " is not 1";
      has_one = true;
      continue;
    }
    const bool binary = s.op == StepOp::Add || s.op == StepOp::DoubleAdd;
    if (s.a >= i || (binary && s.b >= i)) return "step " + t + " uses an element that is not earlier";
    const u64 a = seq.steps[s.a].target;
    const u64 b = binary ? seq.steps[s.b].target : 0;
    u64 expect = 0;
    std::string formula;
    switch (s.op) {
      case StepOp::Double:
        expect = 2 * a;
        formula = "2*" + to_string(a);
        break;
      case StepOp::Add:
        expect = a + b;
        formula = to_string(a) + "+" + to_string(b);
        break;
      case StepOp::DoubleAdd:
        expect = 2 * a + b;
        formula = "2*" + to_string(a) + "+" + to_string(b);
        break;
      case StepOp::Triple:
        expect = 3 * a;
        formula = "3*" + to_string(a);
        break;
      case StepOp::Leaf:
        break;
    }
    if (expect != s.target) return t + " != " + formula;
  }
  if (!has_one) return std::string("sequence does not contain the base element 1");
  for (u64 t : seq.targets) {
    if (t != 0 && !seen.count(t)) return "target " + to_string(t) + " is not produced";
  }
  return std::nullopt;
}

double cost(const StepCounts& c, const CostModel& model) {
  return static_cast<double>(c.doubles) * model.step(StepOp::Double) +
         static_cast<double>(c.adds) * model.step(StepOp::Add) +
         static_cast<double>(c.doubleadds) * model.step(StepOp::DoubleAdd) +
         static_cast<double>(c.triples) * model.step(StepOp::Triple);
}

double cost(const AdditionSequence& seq, const CostModel& model) { return cost(seq.counts(), model); }

double normalized_cost(const StepCounts& counts, u64 N) {
  return cost(counts, CostModel::fft()) / (3.0 * static_cast<double>(N));
}

double normalized_cost(const AdditionSequence& seq, u64 N) { return normalized_cost(seq.counts(), N); }

void write_text(std::ostream& out, const AdditionSequence& seq) {
  out << "# targets:";
  for (u64 t : seq.targets) out << ' ' << t;
  out << '\n';
  for (const auto& s : seq.steps) {
    out << s.target << ' ' << to_string(s.op);
    if (s.op != StepOp::Leaf) out << ' ' << seq.steps[s.a].target;
    if (s.op == StepOp::Add || s.op == StepOp::DoubleAdd) out << ' ' << seq.steps[s.b].target;
    out << '\n';
  }
}

namespace {

struct RawStep {
  u64 target;
  StepOp op;
  u64 a = 0, b = 0;
};

AdditionSequence resolve(std::vector<RawStep> raw, std::vector<u64> targets) {
  std::unordered_map<u64, std::size_t> index;
  for (std::size_t i = 0; i < raw.size(); ++i) index.emplace(raw[i].target, i);
  auto lookup = [&](u64 v) {
    auto it = index.find(v);
    if (it == index.end()) throw error(errc::parse_error, "operand " + std::to_string(v) + " is not an element");
    return it->second;
  };
  AdditionSequence seq;
  seq.targets = std::move(targets);
  for (const auto& r : raw) {
    AdditionStep s{r.target, r.op};
    if (r.op != StepOp::Leaf) s.a = lookup(r.a);
    if (r.op == StepOp::Add || r.op == StepOp::DoubleAdd) s.b = lookup(r.b);
    seq.steps.push_back(s);
  }
  return seq;
}

}  // namespace

AdditionSequence read_text(std::istream& in) {
  std::vector<RawStep> raw;
  std::vector<u64> targets;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream fields(line);
    if (line[0] == '#') {
      std::string tag;
      fields.ignore(1);
      if (fields >> tag && tag == "targets:") {
        for (u64 t; fields >> t;) targets.push_back(t);
      }
      continue;
    }
    RawStep r{};
    std::string op;
    if (!(fields >> r.target >> op)) {
      throw error(errc::parse_error, "line " + std::to_string(lineno) + ": expected 'target op a [b]'");
    }
    r.op = parse_step_op(op);
    const int arity = r.op == StepOp::Leaf ? 0 : (r.op == StepOp::Add || r.op == StepOp::DoubleAdd) ? 2 : 1;
    if ((arity >= 1 && !(fields >> r.a)) || (arity == 2 && !(fields >> r.b))) {
      throw error(errc::parse_error, "line " + std::to_string(lineno) + ": missing operand");
    }
    raw.push_back(r);
  }
  return resolve(std::move(raw), std::move(targets));
}

std::string to_json(const AdditionSequence& seq) {
  nlohmann::json steps = nlohmann::json::array();
  for (const auto& s : seq.steps) {
    nlohmann::json j{{"target", s.target}, {"op", to_string(s.op)}};
    if (s.op != StepOp::Leaf) j["a"] = seq.steps[s.a].target;
    if (s.op == StepOp::Add || s.op == StepOp::DoubleAdd) j["b"] = seq.steps[s.b].target;
    steps.push_back(std::move(j));
  }
  return nlohmann::json{{"targets", seq.targets}, {"steps", std::move(steps)}}.dump();
}

AdditionSequence from_json(std::string_view text) {
  try {
    const auto j = nlohmann::json::parse(text);
    std::vector<RawStep> raw;
    for (const auto& s : j.at("steps")) {
      RawStep r{s.at("target").get<u64>(), parse_step_op(s.at("op").get<std::string>())};
      if (s.contains("a")) r.a = s["a"].get<u64>();
      if (s.contains("b")) r.b = s["b"].get<u64>();
      raw.push_back(r);
    }
    return resolve(std::move(raw), j.value("targets", std::vector<u64>{}));
  } catch (const nlohmann::json::exception& e) {
    throw error(errc::parse_error, std::string("sequence JSON: ") + e.what());
  }
}

}  // namespace etatheta
