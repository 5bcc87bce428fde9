#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "etatheta/addseq.hpp"
#include "etatheta/mp.hpp"

namespace etatheta {

enum class Function { Eta, Theta0, Theta1, Theta2, ThetaAll };
enum class Method { ClassicalAS, OptimizedAS, BSGS, Auto };

std::string_view to_string(Function f) noexcept;
std::string_view to_string(Method m) noexcept;
/// eta, theta0, theta1, theta2, theta-all
Function parse_function(std::string_view name);
/// classical, optimized, bsgs, auto
Method parse_method(std::string_view name);

/// tau' = (a tau + b)/(c tau + d) in the standard fundamental domain.
struct Reduction {
  Complex tau;
  long long a = 1, b = 0, c = 0, d = 1;
};

Reduction reduce_tau(const Complex& tau);

/// q = e^gamma, with gamma = 2 pi i tau (eta) or pi i tau (theta).
enum class QConvention { Eta, Theta };

struct QValue {
  Complex q;
  Complex gamma;
  bool zero = false;   // raw q = 0; gamma is meaningless
  double log2_abs = 0;  // log2|q|, -inf when zero
};

QValue compute_q(const Complex& tau, QConvention conv, mpfr_prec_t prec);
/// Raw q with gamma the principal logarithm.
QValue q_from_raw(const Complex& q, mpfr_prec_t prec);
/// e^(gamma/ell); never a root extraction.
Complex fractional_power(const QValue& q, unsigned ell, mpfr_prec_t prec);

/// Largest exponent T for which c |q|^(T+1) / (1-|q|) < 2^(-p-2) first
/// holds, given L = -log2|q|. Throws q_too_large when |q| > 1 - 2^(-p/2).
u64 truncation_order(mpfr_prec_t p, double L, double c);

struct EvalRequest {
  Function function = Function::Eta;
  std::optional<Complex> tau;
  std::optional<Complex> q;
  mpfr_prec_t prec = 128;
  Method method = Method::Auto;
  bool precision_trick = true;
  std::optional<u64> truncation;  // replaces the computed bound
  // AS paths build their sequence with Algorithm 1; theta0/theta1 then sum
  // over the squares directly.
  bool generic_as = false;
  u64 auto_crossover = 5000;
};

struct NamedValue {
  std::string name;
  Complex value;
};

struct EvalReport {
  Function function = Function::Eta;
  Method method = Method::Auto;  // resolved, never Auto
  mpfr_prec_t prec = 0;
  mpfr_prec_t wp = 0;
  u64 T = 0;  // largest exponent actually summed
  u64 N = 0;  // number of series terms
  u64 m = 0;  // BSGS modulus, 0 otherwise
  double log2_abs_q = 0;
  std::vector<NamedValue> values;
  OpCounts counts;
  double modeled_cost = 0;  // FFT-model real multiplications
};

EvalReport eval(const EvalRequest& req);

/// Each q^e by its own binary powering; no shared powers. For tests.
std::vector<NamedValue> eval_naive_oracle(const EvalRequest& req);

double modeled_cost(const OpCounts& c, const CostModel& model = CostModel::fft());

/// Value as decimal text plus exact hex floats, and the instrumentation.
std::string to_json(const EvalReport& r);

}  // namespace etatheta
