#pragma once

// Disk caches: line-oriented a_l tables per curve and the solved symbol
// space keyed by level.  Every file carries a format version and a
// checksum line; a mismatch triggers recompute, never silent reuse.
// Writes go through a temp file + rename.

#include "iwa/modular_symbols.hpp"

#include <map>

namespace iwa {

// FNV-1a over the payload text
std::string payload_checksum(const std::string& payload);

void atomic_write(const std::string& path, const std::string& payload);

class ALCache {
 public:
  ALCache(std::string dir, const CurveQ& E);
  std::optional<Int> get(const Int& ell) const;
  void put(const Int& ell, const Int& a);
  void flush();  // write the file (atomic)

 private:
  std::string path_;
  std::string curve_key_;
  std::map<Int, Int> table_;
  bool dirty_ = false;
  void load();
};

// Serialize / restore a solved symbol space (generators, expansion table,
// boundary classes, star map).  The textual dump is versioned + checksummed.
std::string dump_symbol_space(const SymbolSpace& S);
std::shared_ptr<const SymbolSpace> parse_symbol_space(const std::string& text);

std::shared_ptr<const SymbolSpace> cached_build_space(const Int& N, const std::string& cache_dir,
                                                      long budget = 2000);

}  // namespace iwa
