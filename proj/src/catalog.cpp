#include "iwa/catalog.hpp"

#include <fstream>
#include <sstream>

namespace iwa {

Catalog Catalog::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open catalog: " + path);
  Catalog cat;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream is(line);
    std::string label;
    if (!(is >> label)) continue;
    std::string a1, a2, a3, a4, a6;
    if (!(is >> a1 >> a2 >> a3 >> a4 >> a6))
      throw input_error("catalog line needs label and five coefficients: " + line);
    std::string cond;
    Int N = 0;
    if (is >> cond) N = parse_int(cond);
    cat.add({label,
             CurveQ(parse_int(a1), parse_int(a2), parse_int(a3), parse_int(a4),
                    parse_int(a6), label),
             N});
  }
  return cat;
}

Catalog Catalog::builtin() {
  Catalog cat;
  auto put = [&](const char* label, long a1, long a2, long a3, long a4, long a6, long N) {
    cat.add({label, CurveQ(Int(a1), Int(a2), Int(a3), Int(a4), Int(a6), label), Int(N)});
  };
  // the conductor-11 isogeny class
  put("11a1", 0, -1, 1, -10, -20, 11);
  put("11a2", 0, -1, 1, -7820, -263580, 11);
  put("11a3", 0, -1, 1, 0, 0, 11);
  // the congruent pair at p = 5
  put("52a1", 0, 0, 0, 1, -10, 52);
  put("364a1", 0, 0, 0, -584, 5444, 364);
  // multiplicative reduction at 5
  put("15a1", 1, 1, 1, -10, -10, 15);
  return cat;
}

void Catalog::add(CatalogEntry e) {
  std::string label = e.label;
  entries_.insert_or_assign(label, std::move(e));
}

const CatalogEntry& Catalog::get(const std::string& label) const {
  auto it = entries_.find(label);
  if (it == entries_.end()) throw input_error("unknown curve label: " + label);
  return it->second;
}

std::vector<std::string> Catalog::labels() const {
  std::vector<std::string> out;
  for (auto& [k, v] : entries_) out.push_back(k);
  return out;
}

CatalogEntry resolve_curve(const std::string& spec, const Catalog& cat) {
  if (spec.find(',') != std::string::npos)
    return {spec, CurveQ::parse(spec), Int(0)};
  return cat.get(spec);
}

}  // namespace iwa
