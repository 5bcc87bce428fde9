#include "etatheta/error.hpp"

namespace etatheta {

std::string_view to_string(errc code) noexcept {
  switch (code) {
    case errc::invalid_argument: return "InvalidArgument";
    case errc::not_a_member: return "NotAMember";
    case errc::unsupported_kind: return "UnsupportedKind";
    case errc::no_decomposition: return "NoDecomposition";
    case errc::not_prime: return "NotPrime";
    case errc::precision_underflow: return "PrecisionUnderflow";
    case errc::q_too_large: return "QTooLarge";
    case errc::not_upper_half_plane: return "NotUpperHalfPlane";
    case errc::mismatched_modulus: return "MismatchedModulus";
    case errc::leading_coefficient_nonpositive: return "LeadingCoefficientNonpositive";
    case errc::parse_error: return "ParseError";
  }
  return "Unknown";
}

}  // namespace etatheta
