#pragma once

// Flat-file curve catalog: one entry per line,
//   label a1 a2 a3 a4 a6 [conductor]
// '#' starts a comment.  Offline by design.

#include "iwa/elliptic.hpp"

#include <map>

namespace iwa {

struct CatalogEntry {
  std::string label;
  CurveQ curve;
  Int conductor = 0;  // 0 when not annotated
};

class Catalog {
 public:
  static Catalog load(const std::string& path);
  static Catalog builtin();  // the curves shipped with the tool

  const CatalogEntry& get(const std::string& label) const;
  bool has(const std::string& label) const { return entries_.count(label) != 0; }
  std::vector<std::string> labels() const;
  void add(CatalogEntry e);

 private:
  std::map<std::string, CatalogEntry> entries_;
};

// Resolve "--curve" input: either five comma-separated integers or a label.
CatalogEntry resolve_curve(const std::string& spec, const Catalog& cat);

}  // namespace iwa
