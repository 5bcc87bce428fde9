#include <array>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "etatheta/error.hpp"
#include "etatheta/modcount.hpp"
#include "minima_embedded.hpp"

namespace etatheta {

namespace {

MinimaTable load(ExponentKind kind) {
  if (const char* dir = std::getenv("ETATHETA_MINIMA_DIR"); dir && *dir) {
    const auto path = std::filesystem::path(dir) / (std::string(to_string(kind)) + ".tsv");
    std::ifstream in(path);
    if (!in) throw error(errc::invalid_argument, "cannot open minima table " + path.string());
    return read_tsv(in, kind);
  }
  const auto rows = detail::embedded_minima(kind);
  return MinimaTable{kind, {rows.begin(), rows.end()}};
}

}  // namespace

const MinimaTable& default_minima(ExponentKind kind) {
  static const std::array<MinimaTable, 3> tables{load(ExponentKind::Square), load(ExponentKind::Trigonal),
                                                 load(ExponentKind::Pentagonal)};
  switch (minima_table_kind(kind)) {
    case ExponentKind::Square:
      return tables[0];
    case ExponentKind::Trigonal:
      return tables[1];
    default:
      return tables[2];
  }
}

}  // namespace etatheta
