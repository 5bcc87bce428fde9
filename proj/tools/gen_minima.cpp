// Emits the C++ source holding the successive-minima tables shipped with the
// library. Usage: gen_minima <limit> <output.cpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include "etatheta/modcount.hpp"

int main(int argc, char** argv) {
  if (argc != 3) {
    std::cerr << "usage: gen_minima <limit> <output.cpp>\n";
    return 2;
  }
  const etatheta::u64 limit = std::stoull(argv[1]);
  const auto tables = etatheta::successive_minima_all(limit);

  std::ofstream out(argv[2]);
  out << "// Generated by gen_minima (limit " << limit << "). Do not edit.\n"
      << "#include \"minima_embedded.hpp\"\n\n"
      << "namespace etatheta::detail {\nnamespace {\n";
  const char* names[] = {"kSquare", "kTrigonal", "kPentagonal"};
  for (std::size_t k = 0; k < tables.size(); ++k) {
    out << "constexpr MinimaEntry " << names[k] << "[] = {\n";
    for (const auto& e : tables[k].entries) out << "    {" << e.m << "u, " << e.count << "u},\n";
    out << "};\n";
  }
  out << "}  // namespace\n\n"
      << "std::span<const MinimaEntry> embedded_minima(ExponentKind kind) {\n"
      << "  switch (kind) {\n"
      << "    case ExponentKind::Square: return kSquare;\n"
      << "    case ExponentKind::Trigonal: return kTrigonal;\n"
      << "    default: return kPentagonal;\n"
      << "  }\n}\n\n"
      << "u64 embedded_minima_limit() { return " << limit << "u; }\n\n"
      << "}  // namespace etatheta::detail\n";
  if (!out) {
    std::cerr << "gen_minima: write failed\n";
    return 1;
  }
  return 0;
}
