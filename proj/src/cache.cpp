#include "iwa/cache.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

namespace iwa {

namespace fs = std::filesystem;

std::string payload_checksum(const std::string& payload) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : payload) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

void atomic_write(const std::string& path, const std::string& payload) {
  fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw input_error("cannot write cache file: " + tmp);
    out << payload;
  }
  fs::rename(tmp, path);
}

ALCache::ALCache(std::string dir, const CurveQ& E) {
  curve_key_ = E.a1().get_str() + "." + E.a2().get_str() + "." + E.a3().get_str() + "." +
               E.a4().get_str() + "." + E.a6().get_str();
  path_ = dir + "/al_" + payload_checksum(curve_key_) + ".tsv";
  if (!dir.empty()) load();
}

void ALCache::load() {
  std::ifstream in(path_);
  if (!in) return;
  std::string header, curve_line, checksum_line;
  if (!std::getline(in, header) || header != "# al-cache v1") return;
  if (!std::getline(in, curve_line) || curve_line != "# curve " + curve_key_) return;
  if (!std::getline(in, checksum_line)) return;
  std::ostringstream body;
  std::string line;
  std::map<Int, Int> tab;
  while (std::getline(in, line)) {
    body << line << "\n";
    std::istringstream is(line);
    std::string l, a;
    if (!(is >> l >> a)) return;  // malformed: ignore cache
    tab[Int(l)] = Int(a);
  }
  if (checksum_line != "# sum " + payload_checksum(body.str())) return;  // corrupt: recompute
  table_ = std::move(tab);
}

std::optional<Int> ALCache::get(const Int& ell) const {
  auto it = table_.find(ell);
  if (it == table_.end()) return std::nullopt;
  return it->second;
}

void ALCache::put(const Int& ell, const Int& a) {
  auto it = table_.find(ell);
  if (it != table_.end() && it->second == a) return;
  table_[ell] = a;
  dirty_ = true;
}

void ALCache::flush() {
  if (!dirty_) return;
  std::ostringstream body;
  for (auto& [l, a] : table_) body << l << "\t" << a << "\n";
  std::ostringstream out;
  out << "# al-cache v1\n# curve " << curve_key_ << "\n# sum " << payload_checksum(body.str())
      << "\n" << body.str();
  atomic_write(path_, out.str());
  dirty_ = false;
}

std::string dump_symbol_space(const SymbolSpace& S) {
  std::ostringstream b;
  b << S.N << "\n" << S.n_gens << " " << S.dim << " " << S.n_cusps << " "
    << S.cuspidal_dim << "\n";
  for (auto& [c, d] : S.gens) b << c << " " << d << "\n";
  for (auto& l : S.lifts) b << l[0] << " " << l[1] << " " << l[2] << " " << l[3] << "\n";
  for (auto& g : S.basis_gen) b << g << " ";
  b << "\n";
  for (auto& e : S.expand) {
    b << e.size();
    for (auto& [i, v] : e) b << " " << i << " " << v;
    b << "\n";
  }
  for (auto& cu : S.cusp_reps) b << cu.first << " " << cu.second << "\n";
  for (long i = 0; i < S.n_gens; ++i)
    b << S.cusp_pos[(size_t)i] << " " << S.cusp_neg[(size_t)i] << " "
      << S.star_map[(size_t)i] << "\n";
  std::ostringstream out;
  out << "msym-cache v1\nsum " << payload_checksum(b.str()) << "\n" << b.str();
  return out.str();
}

std::shared_ptr<const SymbolSpace> parse_symbol_space(const std::string& text) {
  std::istringstream in(text);
  std::string magic, sumword, sum;
  std::getline(in, magic);
  if (magic != "msym-cache v1") return nullptr;
  in >> sumword >> sum;
  std::string rest;
  {
    std::ostringstream r;
    std::getline(in, rest);  // eat newline
    r << in.rdbuf();
    rest = r.str();
  }
  if (sum != payload_checksum(rest)) return nullptr;
  std::istringstream body(rest);
  auto Sp = std::make_shared<SymbolSpace>();
  SymbolSpace& S = *Sp;
  std::string n;
  body >> n;
  S.N = Int(n);
  body >> S.n_gens >> S.dim >> S.n_cusps >> S.cuspidal_dim;
  long NN = S.N.get_si();
  S.gens.resize((size_t)S.n_gens);
  for (auto& [c, d] : S.gens) body >> c >> d;
  S.lifts.resize((size_t)S.n_gens);
  for (auto& l : S.lifts) body >> l[0] >> l[1] >> l[2] >> l[3];
  S.basis_gen.resize((size_t)S.dim);
  for (auto& g : S.basis_gen) body >> g;
  S.expand.resize((size_t)S.n_gens);
  for (auto& e : S.expand) {
    size_t m;
    body >> m;
    e.resize(m);
    for (auto& [i, v] : e) {
      std::string val;
      body >> i >> val;
      v = Rat(val);
    }
  }
  S.cusp_reps.resize((size_t)S.n_cusps);
  for (auto& cu : S.cusp_reps) {
    std::string a, b;
    body >> a >> b;
    cu = {Int(a), Int(b)};
  }
  S.cusp_pos.resize((size_t)S.n_gens);
  S.cusp_neg.resize((size_t)S.n_gens);
  S.star_map.resize((size_t)S.n_gens);
  for (long i = 0; i < S.n_gens; ++i)
    body >> S.cusp_pos[(size_t)i] >> S.cusp_neg[(size_t)i] >> S.star_map[(size_t)i];
  if (!body) return nullptr;
  // rebuild the lookup table
  S.lookup.assign((size_t)NN * NN, -1);
  std::vector<long> units;
  for (long u = 1; u < NN; ++u)
    if (std::gcd(u, NN) == 1) units.push_back(u);
  for (long i = 0; i < S.n_gens; ++i) {
    auto [c, d] = S.gens[(size_t)i];
    for (long u : units)
      S.lookup[(size_t)((c * u % NN) * NN + d * u % NN)] = (int32_t)i;
  }
  return Sp;
}

std::shared_ptr<const SymbolSpace> cached_build_space(const Int& N, const std::string& cache_dir,
                                                      long budget) {
  if (cache_dir.empty()) return build_space(N, budget);
  std::string path = cache_dir + "/msym_" + N.get_str() + ".txt";
  {
    std::ifstream in(path);
    if (in) {
      std::ostringstream text;
      text << in.rdbuf();
      auto S = parse_symbol_space(text.str());
      if (S && S->N == N) return S;
    }
  }
  auto S = build_space(N, budget);
  atomic_write(path, dump_symbol_space(*S));
  return S;
}

}  // namespace iwa
