#pragma once

#include <span>

#include "etatheta/modcount.hpp"

// Tables produced by tools/gen_minima at build time.
namespace etatheta::detail {

std::span<const MinimaEntry> embedded_minima(ExponentKind table_kind);
u64 embedded_minima_limit();

}  // namespace etatheta::detail
