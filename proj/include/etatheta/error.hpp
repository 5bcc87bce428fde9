#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace etatheta {

enum class errc {
  invalid_argument,
  not_a_member,
  unsupported_kind,
  no_decomposition,
  not_prime,
  precision_underflow,
  q_too_large,
  not_upper_half_plane,
  mismatched_modulus,
  leading_coefficient_nonpositive,
  parse_error,
};

std::string_view to_string(errc code) noexcept;

// Single exception type for the library; the code is what callers switch on.
class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

}  // namespace etatheta
