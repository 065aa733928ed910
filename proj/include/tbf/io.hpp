// Textual matrix serialization and binary instance files with sidecars.
#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "tbf/pointerfn.hpp"

namespace tbf {

// One cell per line "r c : V (lr,lc) (rr,rc) (b...)" with '-' for null,
// followed by an optional tag grid of {>,<,^}.
void write_matrix_text(std::ostream& os, const PointerMatrix& M, const TagGrid* tags = nullptr);
struct ParsedMatrix {
  PointerMatrix M;
  std::optional<TagGrid> tags;
};
ParsedMatrix read_matrix_text(std::istream& is);

struct InstanceMeta {
  std::string construction;
  int n = 0, k = 0;
  long long b = 0;
  std::uint64_t seed = 0;
  long long nbits = 0;
};

// path gets the packed payload, path + ".meta" the key=value sidecar.
void write_instance(const std::string& path, const BitString& x, const InstanceMeta& meta);
BitString read_instance(const std::string& path, InstanceMeta* meta = nullptr);

}  // namespace tbf
