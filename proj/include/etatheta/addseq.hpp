#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "etatheta/exponents.hpp"

namespace etatheta {

enum class StepOp { Leaf, Double, Add, DoubleAdd, Triple };

std::string_view to_string(StepOp op) noexcept;
StepOp parse_step_op(std::string_view name);

/// One element of an addition sequence. Operands are indices of earlier
/// steps; unused operands hold npos.
///   Double     target = 2a
///   Add        target = a + b
///   DoubleAdd  target = 2a + b
///   Triple     target = 3a
struct AdditionStep {
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  u64 target = 1;
  StepOp op = StepOp::Leaf;
  std::size_t a = npos;
  std::size_t b = npos;
};

struct StepCounts {
  u64 doubles = 0;
  u64 adds = 0;
  u64 doubleadds = 0;
  u64 triples = 0;
  u64 total() const noexcept { return doubles + adds + doubleadds + triples; }
  bool operator==(const StepCounts&) const = default;
};

struct AdditionSequence {
  std::vector<AdditionStep> steps;
  /// Exponents the sequence must produce. A 0 target is allowed and needs no
  /// step (q^0 = 1).
  std::vector<u64> targets;

  StepCounts counts() const noexcept;
  /// Index of the step producing value v.
  std::optional<std::size_t> find(u64 v) const;
  u64 operand_value(const AdditionStep& s, bool second = false) const {
    return steps[second ? s.b : s.a].target;
  }
};

/// Value-level description of how to form c from available elements.
struct Decomposition {
  StepOp op;
  u64 a;
  u64 b = 0;
  bool operator==(const Decomposition&) const = default;
};

/// Real-operation cost of each step kind, in units of one real multiplication.
struct CostModel {
  double S;  // real squaring
  double M = 1.0;

  static constexpr CostModel fft() { return {2.0 / 3.0, 1.0}; }
  static constexpr CostModel schoolbook() { return {0.5, 1.0}; }

  double step(StepOp op) const noexcept;
};

/// Finite-difference sequences. Square, Trigonal, AlmostSquare and Pentagonal
/// (both branches n(3n-1)/2, n(3n+1)/2).
AdditionSequence build_classical(ExponentKind kind, u64 N);

/// Algorithm 1: while some c != 1 is not the sum of two smaller elements,
/// insert floor(c/2) and ceil(c/2).
AdditionSequence complete_generic(std::span<const u64> E);

/// First of Double, Add, DoubleAdd that applies with operands from
/// `available` (sorted, positive). Larger first operand wins among
/// candidates of the same operation. Throws no_decomposition.
Decomposition decompose_step(ExponentKind kind, u64 c, std::span<const u64> available);

/// Greedy per-term sequence for Pentagonal, Trigonal, AlmostSquare (and
/// Square). When decompose_step fails a three-term split c = (a+b)+d is
/// tried, then halving as in Algorithm 1.
AdditionSequence build_optimized(ExponentKind kind, u64 N);

/// t(6n+alpha) = 2 t(4n+beta) + t(2n+gamma) for every quarter-square.
AdditionSequence build_quarter_square(u64 N);

/// g(20n+alpha) = g(16n+beta) + g(12n+gamma) for f = 2g = 2 floor(n^2/8).
AdditionSequence build_a182568(u64 N);

/// Dispatches on the algorithm name: classical, generic, optimized. For
/// QuarterSquare and A182568 "optimized" means the explicit recursions.
AdditionSequence build_sequence(ExponentKind kind, u64 N, std::string_view algo);

/// First violated invariant, or nullopt for a valid sequence.
std::optional<std::string> validate(const AdditionSequence& seq);

double cost(const AdditionSequence& seq, const CostModel& model);
double cost(const StepCounts& counts, const CostModel& model);
/// FFT-model cost per term, divided by the 3M of one complex multiplication.
double normalized_cost(const AdditionSequence& seq, u64 N);
double normalized_cost(const StepCounts& counts, u64 N);

/// Text format: optional "# targets: ..." header, then one line per step,
/// "target op a [b]" with operand values.
void write_text(std::ostream& out, const AdditionSequence& seq);
AdditionSequence read_text(std::istream& in);
std::string to_json(const AdditionSequence& seq);
AdditionSequence from_json(std::string_view text);

}  // namespace etatheta
