#include <algorithm>
#include <set>
#include <sstream>

#include "doctest.h"
#include "etatheta/addseq.hpp"
#include "etatheta/error.hpp"

using namespace etatheta;

namespace {

std::vector<u64> values(const AdditionSequence& seq) {
  std::vector<u64> v;
  for (const auto& s : seq.steps) v.push_back(s.target);
  std::sort(v.begin(), v.end());
  return v;
}

// Brute-force validity: every element except 1 is a sum of two (not
// necessarily distinct) elements that appear before it.
bool brute_valid(const AdditionSequence& seq) {
  std::set<u64> seen;
  for (const auto& s : seq.steps) {
    const u64 c = s.target;
    if (c != 1) {
      bool ok = false;
      for (u64 a : seen) ok = ok || (a < c && seen.count(c - a));
      if (s.op == StepOp::DoubleAdd || s.op == StepOp::Triple) {
        // 2a+b and 3a use one extra implicit element 2a.
        ok = false;
        for (u64 a : seen) ok = ok || (2 * a < c && seen.count(c - 2 * a)) || 3 * a == c;
      }
      if (!ok) return false;
    }
    seen.insert(c);
  }
  return seen.count(1) != 0;
}

}  // namespace

TEST_CASE("classical sequences") {
  const auto sq = build_classical(ExponentKind::Square, 4);
  CHECK(!validate(sq));
  CHECK(values(sq) == std::vector<u64>{1, 2, 3, 4, 5, 7, 9, 16});

  const auto tri = build_classical(ExponentKind::Trigonal, 4);
  CHECK(!validate(tri));
  CHECK(values(tri) == std::vector<u64>{1, 2, 4, 6, 12});

  for (auto kind : {ExponentKind::Square, ExponentKind::Trigonal, ExponentKind::AlmostSquare,
                    ExponentKind::Pentagonal}) {
    for (u64 N : {1u, 2u, 3u, 6u, 50u, 1000u}) {
      const auto seq = build_classical(kind, N);
      REQUIRE_MESSAGE(!validate(seq), to_string(kind) << " N=" << N << ": " << validate(seq).value_or(""));
      CHECK(brute_valid(seq));
      // Two additions per term after a constant setup.
      CHECK(seq.counts().total() <= 2 * N + 3);
      CHECK(seq.counts().doubleadds == 0);
    }
  }
  const auto pent = build_classical(ExponentKind::Pentagonal, 6);
  CHECK(pent.counts().total() <= 2 * 6 + 3);
  CHECK_THROWS_AS(build_classical(ExponentKind::QuarterSquare, 5), error);
}

TEST_CASE("Algorithm 1") {
  const std::vector<u64> fib{1, 2, 3, 5, 8, 13};
  const auto f = complete_generic(fib);
  CHECK(values(f) == fib);
  CHECK(!validate(f));

  const std::vector<u64> nine{1, 9};
  const auto s = complete_generic(nine);
  CHECK(values(s) == std::vector<u64>{1, 2, 4, 5, 9});
  CHECK(!validate(s));

  const std::vector<u64> one{1};
  const auto o = complete_generic(one);
  CHECK(o.counts().total() == 0);

  // Exponents of every kind; 1 is inserted by halving when absent.
  for (auto kind : {ExponentKind::Square, ExponentKind::Trigonal, ExponentKind::Pentagonal,
                    ExponentKind::A182568}) {
    auto e = first_exponents(kind, 500);
    e.erase(std::remove(e.begin(), e.end(), 0), e.end());
    const auto seq = complete_generic(e);
    CHECK(!validate(seq));
    CHECK(brute_valid(seq));
  }
}

TEST_CASE("decompose_step") {
  const std::vector<u64> p5{0, 1, 2};
  CHECK(decompose_step(ExponentKind::Pentagonal, 5, p5) == Decomposition{StepOp::DoubleAdd, 2, 1});
  const std::vector<u64> p12{0, 1, 2, 5, 7};
  CHECK(decompose_step(ExponentKind::Pentagonal, 12, p12) == Decomposition{StepOp::Add, 7, 5});
  auto below70 = exponents_upto(ExponentKind::Pentagonal, 69);
  CHECK(decompose_step(ExponentKind::Pentagonal, 70, below70) == Decomposition{StepOp::Double, 35});

  const std::vector<u64> t20{0, 2, 6, 12};
  try {
    decompose_step(ExponentKind::Trigonal, 20, t20);
    FAIL("expected NoDecomposition");
  } catch (const error& e) {
    CHECK(e.code() == errc::no_decomposition);
  }
}

TEST_CASE("optimized sequences") {
  const auto tri = build_optimized(ExponentKind::Trigonal, 5);
  CHECK(!validate(tri));
  const auto i18 = tri.find(18);
  REQUIRE(i18);
  CHECK(tri.steps[*i18].op == StepOp::Add);
  const auto i20 = tri.find(20);
  REQUIRE(i20);
  CHECK(tri.operand_value(tri.steps[*i20]) + tri.operand_value(tri.steps[*i20], true) == 20);

  const auto as = build_optimized(ExponentKind::AlmostSquare, 5);
  CHECK(!validate(as));
  const auto i24 = as.find(24);
  REQUIRE(i24);
  CHECK(as.steps[*i24].op == StepOp::DoubleAdd);
  CHECK(as.operand_value(as.steps[*i24]) == 8);
  CHECK(as.operand_value(as.steps[*i24], true) == 8);

  const u64 N = 10000;
  const auto pent = build_optimized(ExponentKind::Pentagonal, N);
  CHECK(!validate(pent));
  const auto c = pent.counts();
  // No helpers for pentagonal: one step per term above 1.
  CHECK(pent.steps.size() == N - 1);
  // 2a+b is needed exactly when c/2 is not pentagonal and 12c+1 is prime;
  // 1544 of the first 10^4 terms (sympy count).
  CHECK(c.doubleadds == 1544);
  CHECK(static_cast<double>(c.doubleadds) / c.total() < 0.16);
  CHECK(static_cast<double>(c.adds) / c.total() > 0.8);

  const auto generic = build_sequence(ExponentKind::Pentagonal, N, "generic");
  CHECK(!validate(generic));
  CHECK(normalized_cost(pent, N) <= normalized_cost(generic, N));
}

TEST_CASE("every builder validates and covers exactly its targets") {
  for (auto kind : {ExponentKind::Pentagonal, ExponentKind::Trigonal, ExponentKind::AlmostSquare,
                    ExponentKind::Square, ExponentKind::QuarterSquare, ExponentKind::A182568}) {
    for (const char* algo : {"classical", "generic", "optimized"}) {
      const bool classical = std::string(algo) == "classical";
      if (classical && (kind == ExponentKind::QuarterSquare || kind == ExponentKind::A182568)) continue;
      for (u64 N : {2u, 3u, 10u, 777u, 10000u}) {
        const auto seq = build_sequence(kind, N, algo);
        const auto v = validate(seq);
        REQUIRE_MESSAGE(!v, to_string(kind) << ' ' << algo << " N=" << N << ": " << v.value_or(""));
        CHECK(seq.targets == first_exponents(kind, N));
      }
    }
  }
}

TEST_CASE("quarter-square and A182568 recursions") {
  const auto qs = build_quarter_square(9);
  CHECK(!validate(qs));
  auto step = [](const AdditionSequence& s, u64 v) { return s.steps[*s.find(v)]; };
  CHECK(step(qs, 2).op == StepOp::Double);
  CHECK(qs.operand_value(step(qs, 20)) == 9);
  CHECK(qs.operand_value(step(qs, 20), true) == 2);
  CHECK(step(qs, 12).op == StepOp::Double);
  CHECK(qs.operand_value(step(qs, 12)) == 6);

  const auto big = build_quarter_square(2000);
  for (const auto& s : big.steps) {
    if (s.target > 2) CHECK((s.op == StepOp::DoubleAdd || s.op == StepOp::Double));
  }

  const auto f = build_a182568(10);
  CHECK(step(f, 4).op == StepOp::Double);
  CHECK(f.operand_value(step(f, 4)) == 2);
  CHECK(step(f, 8).op == StepOp::Double);
  CHECK(f.operand_value(step(f, 8)) == 4);
}

TEST_CASE("validate reports violations") {
  AdditionSequence bad;
  bad.steps = {{1, StepOp::Leaf}, {2, StepOp::Double, 0}, {3, StepOp::Add, 1, 0},
               {5, StepOp::Add, 2, 1}, {9, StepOp::Add, 2, 3}};
  CHECK(validate(bad).value_or("") == "9 != 3+5");

  AdditionSequence no_one;
  no_one.steps = {{2, StepOp::Leaf}};
  CHECK(validate(no_one).has_value());

  AdditionSequence later;
  later.steps = {{1, StepOp::Leaf}, {3, StepOp::Add, 2, 0}, {2, StepOp::Double, 0}};
  CHECK(validate(later).has_value());

  AdditionSequence missing = build_classical(ExponentKind::Square, 3);
  missing.targets.push_back(10);
  CHECK(validate(missing).has_value());

  AdditionSequence triple;
  triple.steps = {{1, StepOp::Leaf}, {3, StepOp::Triple, 0}};
  CHECK(!validate(triple));
}

TEST_CASE("costs") {
  AdditionSequence d;
  d.steps = {{1, StepOp::Leaf}, {2, StepOp::Double, 0}};
  CHECK(cost(d, CostModel::fft()) == doctest::Approx(7.0 / 3.0));
  CHECK(cost(d, CostModel::schoolbook()) == doctest::Approx(2.0));
  AdditionSequence a;
  a.steps = {{1, StepOp::Leaf}, {2, StepOp::Double, 0}, {3, StepOp::Add, 1, 0}};
  CHECK(cost(a, CostModel::fft()) - cost(d, CostModel::fft()) == doctest::Approx(3.0));
  CHECK(CostModel::fft().step(StepOp::Triple) == doctest::Approx(10.0 / 3.0));
  CHECK(CostModel::fft().step(StepOp::DoubleAdd) == doctest::Approx(16.0 / 3.0));

  const u64 N = 100000;
  CHECK(normalized_cost(build_classical(ExponentKind::Pentagonal, N), N) == doctest::Approx(2.0).epsilon(0.01));
}

TEST_CASE("serialization round trips") {
  const auto seq = build_optimized(ExponentKind::Trigonal, 300);
  std::stringstream text;
  write_text(text, seq);
  const auto back = read_text(text);
  CHECK(!validate(back));
  CHECK(back.targets == seq.targets);
  CHECK(values(back) == values(seq));
  CHECK(back.counts() == seq.counts());

  const auto j = from_json(to_json(seq));
  CHECK(!validate(j));
  CHECK(j.counts() == seq.counts());

  std::stringstream bad("1 leaf\n9 add 3 5\n");
  CHECK_THROWS_AS(read_text(bad), error);
  std::stringstream wrong("1 leaf\n2 double 1\n3 add 2 1\n5 add 3 2\n9 add 3 5\n");
  CHECK(validate(read_text(wrong)).value_or("") == "9 != 3+5");
}
