#include "iwa/modular_symbols.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace iwa {

long SymbolSpace::index(long c, long d) const {
  long n = N.get_si();
  c %= n; if (c < 0) c += n;
  d %= n; if (d < 0) d += n;
  long v = lookup[(size_t)(c * n + d)];
  if (v < 0) throw std::logic_error("p1 lookup of a non-symbol");
  return v;
}

// (c', d') = (c, d) congruent mod N with gcd(c', d') = 1
static std::pair<Int, Int> lift_to_coprime(long c, long d, long N) {
  if (c == 0 && d == 0) throw std::logic_error("invalid symbol");
  Int C(c), D(d);
  if (C == 0) C = N;
  Int g;
  mpz_gcd(g.get_mpz_t(), C.get_mpz_t(), D.get_mpz_t());
  if (g == 1) return {C, D};
  for (long t = 0; t <= c + 1; ++t) {
    Int Dt = D + t * Int(N);
    if (Dt == 0) continue;
    mpz_gcd(g.get_mpz_t(), C.get_mpz_t(), Dt.get_mpz_t());
    if (g == 1) return {C, Dt};
  }
  throw std::logic_error("coprime lift not found");
}

// cusp as reduced fraction (p, q), q >= 0; infinity = (1, 0)
static std::pair<Int, Int> make_cusp(const Int& p, const Int& q) {
  if (q == 0) return {Int(1), Int(0)};
  Int g;
  mpz_gcd(g.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
  Int pp = p / g, qq = q / g;
  if (qq < 0) { pp = -pp; qq = -qq; }
  return {pp, qq};
}

static bool cusp_equiv(std::pair<Int, Int> a, std::pair<Int, Int> b, const Int& N) {
  // infinity ~ 1/N
  if (a.second == 0) a = {Int(1), N};
  if (b.second == 0) b = {Int(1), N};
  const Int &p1 = a.first, &q1 = a.second, &p2 = b.first, &q2 = b.second;
  Int s1 = (q1 == 1) ? Int(0) : inv_mod(mod_floor(p1, q1), q1);
  Int s2 = (q2 == 1) ? Int(0) : inv_mod(mod_floor(p2, q2), q2);
  Int g;
  Int q1q2 = q1 * q2;
  mpz_gcd(g.get_mpz_t(), q1q2.get_mpz_t(), N.get_mpz_t());
  return mod_floor(s1 * q2 - s2 * q1, g) == 0;
}

std::shared_ptr<const SymbolSpace> build_space(const Int& N_, long budget) {
  if (N_ < 11) throw input_error("level must be >= 11");
  if (N_ > budget) throw input_error("level exceeds the symbol-space budget");
  auto Sp = std::make_shared<SymbolSpace>();
  SymbolSpace& S = *Sp;
  S.N = N_;
  long N = N_.get_si();

  // ---- P^1(Z/N) enumeration -------------------------------------------
  std::vector<long> units;
  for (long u = 1; u < N; ++u)
    if (std::gcd(u, N) == 1) units.push_back(u);
  S.lookup.assign((size_t)N * N, -1);
  for (long c = 0; c < N; ++c) {
    for (long d = 0; d < N; ++d) {
      if (std::gcd(std::gcd(c, d), N) != 1) continue;
      if (S.lookup[(size_t)(c * N + d)] >= 0) continue;
      long idx = (long)S.gens.size();
      S.gens.emplace_back(c, d);
      for (long u : units)
        S.lookup[(size_t)((c * u % N) * N + d * u % N)] = (int32_t)idx;
    }
  }
  S.n_gens = (long)S.gens.size();

  // ---- SL2 lifts, star, boundary data ---------------------------------
  S.lifts.resize((size_t)S.n_gens);
  S.star_map.resize((size_t)S.n_gens);
  std::vector<std::pair<Int, Int>> cusp_out((size_t)S.n_gens), cusp_in((size_t)S.n_gens);
  for (long i = 0; i < S.n_gens; ++i) {
    auto [c, d] = S.gens[(size_t)i];
    auto [C, D] = lift_to_coprime(c, d, N);
    Int a, b, g;
    mpz_gcdext(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t(), D.get_mpz_t(), C.get_mpz_t());
    // a*D + b*C = 1  =>  matrix (a, -b; C, D) has det aD + bC... fix signs:
    // want x*D - y*C = 1 with matrix (x, y; C, D)
    Int x = a, y = -b;
    if (x * D - y * C != 1) throw std::logic_error("sl2 lift failed");
    S.lifts[(size_t)i] = {x.get_si(), y.get_si(), C.get_si(), D.get_si()};
    S.star_map[(size_t)i] = S.index(-c, d);
    cusp_out[(size_t)i] = make_cusp(x, C);   // g.inf = a/c
    cusp_in[(size_t)i] = make_cusp(y, D);    // g.0 = b/d
  }

  // cusp classes
  S.cusp_pos.assign((size_t)S.n_gens, -1);
  S.cusp_neg.assign((size_t)S.n_gens, -1);
  auto cusp_class = [&](const std::pair<Int, Int>& cu) -> long {
    for (long j = 0; j < (long)S.cusp_reps.size(); ++j)
      if (cusp_equiv(cu, S.cusp_reps[(size_t)j], S.N)) return j;
    S.cusp_reps.push_back(cu);
    return (long)S.cusp_reps.size() - 1;
  };
  for (long i = 0; i < S.n_gens; ++i) {
    S.cusp_pos[(size_t)i] = cusp_class(cusp_out[(size_t)i]);
    S.cusp_neg[(size_t)i] = cusp_class(cusp_in[(size_t)i]);
  }
  S.n_cusps = (long)S.cusp_reps.size();
  if (S.n_cusps != cusp_count_x0(S.N)) throw std::logic_error("cusp count mismatch");

  // ---- relations -------------------------------------------------------
  // S-pairing: x + xS = 0 with (c:d)S = (d:-c)
  std::vector<long> s_rep((size_t)S.n_gens, -1);
  std::vector<int> s_sign((size_t)S.n_gens, 0);
  std::vector<long> reps;  // representative generators after S-pairing
  std::vector<long> rep_col((size_t)S.n_gens, -1);
  for (long i = 0; i < S.n_gens; ++i) {
    if (s_rep[(size_t)i] >= 0) continue;
    auto [c, d] = S.gens[(size_t)i];
    long j = S.index(d, -c);
    if (j == i) { s_rep[(size_t)i] = i; s_sign[(size_t)i] = 0; continue; }  // 2x = 0
    s_rep[(size_t)i] = i; s_sign[(size_t)i] = 1;
    s_rep[(size_t)j] = i; s_sign[(size_t)j] = -1;
    rep_col[(size_t)i] = (long)reps.size();
    reps.push_back(i);
  }
  long n_cols = (long)reps.size();

  // T-relations x + xT + xT^2 = 0 with (c:d)T = (d : -c-d)
  std::vector<QVec> rows;
  {
    std::vector<char> seen((size_t)S.n_gens, 0);
    for (long i = 0; i < S.n_gens; ++i) {
      if (seen[(size_t)i]) continue;
      auto [c, d] = S.gens[(size_t)i];
      long j = S.index(d, -c - d);
      auto [c2, d2] = S.gens[(size_t)j];
      long k = S.index(d2, -c2 - d2);
      seen[(size_t)i] = seen[(size_t)j] = seen[(size_t)k] = 1;
      QVec row((size_t)n_cols, Rat(0));
      bool nonzero = false;
      for (long t : {i, j, k}) {
        if (s_sign[(size_t)t] == 0) continue;
        row[(size_t)rep_col[(size_t)s_rep[(size_t)t]]] += s_sign[(size_t)t];
        nonzero = true;
      }
      if (nonzero) rows.push_back(std::move(row));
    }
  }

  // dense RREF over Q
  long n_rows = (long)rows.size();
  std::vector<long> row_of_col((size_t)n_cols, -1);
  long r = 0;
  for (long c = 0; c < n_cols && r < n_rows; ++c) {
    long pr = -1;
    for (long i = r; i < n_rows; ++i)
      if (rows[(size_t)i][(size_t)c] != 0) { pr = i; break; }
    if (pr < 0) continue;
    std::swap(rows[(size_t)r], rows[(size_t)pr]);
    Rat inv = Rat(1) / rows[(size_t)r][(size_t)c];
    for (long cc = c; cc < n_cols; ++cc) rows[(size_t)r][(size_t)cc] *= inv;
    for (long i = 0; i < n_rows; ++i) {
      if (i == r) continue;
      Rat f = rows[(size_t)i][(size_t)c];
      if (f == 0) continue;
      for (long cc = c; cc < n_cols; ++cc)
        rows[(size_t)i][(size_t)cc] -= f * rows[(size_t)r][(size_t)cc];
    }
    row_of_col[(size_t)c] = r;
    ++r;
  }
  long rank = r;

  // basis = free columns
  std::vector<long> col_to_basis((size_t)n_cols, -1);
  for (long c = 0; c < n_cols; ++c) {
    if (row_of_col[(size_t)c] >= 0) continue;
    col_to_basis[(size_t)c] = (long)S.basis_gen.size();
    S.basis_gen.push_back(reps[(size_t)c]);
  }
  S.dim = (long)S.basis_gen.size();
  if (S.dim != n_cols - rank) throw std::logic_error("rank bookkeeping");

  // column expansion: pivot col c = -sum_{free cc} rows[row_of_col[c]][cc] * x_cc
  std::vector<SparseQ> col_expand((size_t)n_cols);
  for (long c = 0; c < n_cols; ++c) {
    if (col_to_basis[(size_t)c] >= 0) {
      col_expand[(size_t)c] = {{col_to_basis[(size_t)c], Rat(1)}};
    } else {
      long rr = row_of_col[(size_t)c];
      SparseQ e;
      for (long cc = c + 1; cc < n_cols; ++cc) {
        if (col_to_basis[(size_t)cc] < 0) continue;
        const Rat& v = rows[(size_t)rr][(size_t)cc];
        if (v != 0) e.emplace_back(col_to_basis[(size_t)cc], -v);
      }
      col_expand[(size_t)c] = std::move(e);
    }
  }
  S.expand.resize((size_t)S.n_gens);
  for (long i = 0; i < S.n_gens; ++i) {
    if (s_sign[(size_t)i] == 0) { S.expand[(size_t)i] = {}; continue; }
    SparseQ e = col_expand[(size_t)rep_col[(size_t)s_rep[(size_t)i]]];
    if (s_sign[(size_t)i] < 0)
      for (auto& [b, v] : e) v = -v;
    S.expand[(size_t)i] = std::move(e);
  }

  // dimension sanity: dim M = 2g + #cusps - 1
  long g = genus_x0(S.N);
  if (S.dim != 2 * g + S.n_cusps - 1)
    throw std::logic_error("symbol space dimension mismatch: dim=" + std::to_string(S.dim) +
                           " expected " + std::to_string(2 * g + S.n_cusps - 1));

  // cuspidal dimension = dim ker(boundary restricted to the quotient)
  {
    QMatrix B((size_t)S.n_cusps, QVec((size_t)S.dim, Rat(0)));
    for (long j = 0; j < S.dim; ++j) {
      long i = S.basis_gen[(size_t)j];
      B[(size_t)S.cusp_pos[(size_t)i]][(size_t)j] += 1;
      B[(size_t)S.cusp_neg[(size_t)i]][(size_t)j] -= 1;
    }
    // rank of B
    long rr = 0;
    for (long c = 0; c < S.dim && rr < S.n_cusps; ++c) {
      long pr = -1;
      for (long i = rr; i < S.n_cusps; ++i)
        if (B[(size_t)i][(size_t)c] != 0) { pr = i; break; }
      if (pr < 0) continue;
      std::swap(B[(size_t)rr], B[(size_t)pr]);
      Rat inv = Rat(1) / B[(size_t)rr][(size_t)c];
      for (long cc = 0; cc < S.dim; ++cc) B[(size_t)rr][(size_t)cc] *= inv;
      for (long i = 0; i < S.n_cusps; ++i) {
        if (i == rr) continue;
        Rat f = B[(size_t)i][(size_t)c];
        if (f == 0) continue;
        for (long cc = 0; cc < S.dim; ++cc)
          B[(size_t)i][(size_t)cc] -= f * B[(size_t)rr][(size_t)cc];
      }
      ++rr;
    }
    S.cuspidal_dim = S.dim - rr;
    if (S.cuspidal_dim != 2 * g)
      throw std::logic_error("cuspidal dimension != 2*genus");
  }
  return Sp;
}

void SymbolSpace::path_infinity(const Int& a_, const Int& b_,
                                std::vector<std::pair<long, int>>& out) const {
  // {inf -> a/b} as a sum of unimodular segments between consecutive
  // continued-fraction convergents; segment k contributes the generator of
  // (q_k : eps q_{k-1}) with eps = (-1)^(k-1) making the determinant 1.
  Int a = a_, b = b_;
  if (b == 0) return;  // {inf -> inf} = 0
  if (b < 0) { a = -a; b = -b; }
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  if (g != 1) { a /= g; b /= g; }
  Int p_prev = 1, q_prev = 0;  // p_{-1}/q_{-1} = inf
  Int p_cur, q_cur;
  // first convergent: floor(a/b)
  Int A = a, B = b;
  Int q0;
  mpz_fdiv_q(q0.get_mpz_t(), A.get_mpz_t(), B.get_mpz_t());
  p_cur = q0; q_cur = 1;
  Int rem = A - q0 * B;
  long k = 0;
  int eps = -1;  // (-1)^(k-1) for k = 0
  out.emplace_back(index(mod_floor(q_cur, N).get_si(),
                         mod_floor(eps * q_prev, N).get_si()), +1);
  A = B; B = rem;
  while (B != 0) {
    ++k;
    eps = -eps;
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), A.get_mpz_t(), B.get_mpz_t());
    Int p_next = q * p_cur + p_prev;
    Int q_next = q * q_cur + q_prev;
    p_prev = p_cur; q_prev = q_cur;
    p_cur = p_next; q_cur = q_next;
    out.emplace_back(index(mod_floor(q_cur, N).get_si(),
                           mod_floor(eps * q_prev, N).get_si()), +1);
    Int r2 = A - q * B;
    A = B; B = r2;
  }
  if (p_cur != a || q_cur != b) throw std::logic_error("continued fraction drift");
}

// dense accumulation of the expansion of {alpha -> beta} given as fractions
static void accumulate_modular_path(const SymbolSpace& S, const Int& an, const Int& ad,
                                    const Int& bn, const Int& bd, const Rat& c, QVec& acc) {
  std::vector<std::pair<long, int>> segs;
  S.path_infinity(bn, bd, segs);
  size_t split = segs.size();
  S.path_infinity(an, ad, segs);
  for (size_t t = 0; t < segs.size(); ++t) {
    int sgn = (t < split) ? segs[t].second : -segs[t].second;
    for (auto& [b, v] : S.expand[(size_t)segs[t].first]) acc[(size_t)b] += c * sgn * v;
  }
}

QMatrix hecke_matrix(const SymbolSpace& S, const Int& q) {
  bool divides = (mod_floor(S.N, q) == 0);
  QMatrix M((size_t)S.dim, QVec((size_t)S.dim, Rat(0)));  // columns = images
  long ql = q.get_si();
  for (long j = 0; j < S.dim; ++j) {
    auto lift = S.lifts[(size_t)S.basis_gen[(size_t)j]];
    Int a(lift[0]), b(lift[1]), c(lift[2]), d(lift[3]);
    QVec col((size_t)S.dim, Rat(0));
    // path {g.0 -> g.inf} = {b/d -> a/c}; coset reps (1, i; 0, q) and,
    // for q not dividing N, (q, 0; 0, 1)
    for (long i = 0; i < ql; ++i) {
      accumulate_modular_path(S, b + i * d, q * d, a + i * c, q * c, Rat(1), col);
    }
    if (!divides) accumulate_modular_path(S, q * b, d, q * a, c, Rat(1), col);
    for (long i = 0; i < S.dim; ++i) M[(size_t)i][(size_t)j] = col[(size_t)i];
  }
  return M;
}

QMatrix star_matrix(const SymbolSpace& S) {
  QMatrix M((size_t)S.dim, QVec((size_t)S.dim, Rat(0)));
  for (long j = 0; j < S.dim; ++j) {
    long im = S.star_map[(size_t)S.basis_gen[(size_t)j]];
    for (auto& [b, v] : S.expand[(size_t)im]) M[(size_t)b][(size_t)j] += v;
  }
  return M;
}

Rat EigenSymbol::value(const Int& a, const Int& b) const {
  std::vector<std::pair<long, int>> segs;
  space->path_infinity(a, b, segs);
  Rat acc(0);
  for (auto& [g, s] : segs) acc += s * gen_values[(size_t)g];
  return acc;
}

bool EigenSymbol::hecke_eigen_check(const Int& q, const Int& a_q) const {
  const SymbolSpace& S = *space;
  bool divides = (mod_floor(S.N, q) == 0);
  long ql = q.get_si();
  for (long j = 0; j < S.dim; ++j) {
    long gi = S.basis_gen[(size_t)j];
    auto lift = S.lifts[(size_t)gi];
    Int a(lift[0]), b(lift[1]), c(lift[2]), d(lift[3]);
    Rat lhs(0);
    auto add_path = [&](const Int& an, const Int& ad, const Int& bn, const Int& bd) {
      std::vector<std::pair<long, int>> segs;
      space->path_infinity(bn, bd, segs);
      size_t split = segs.size();
      space->path_infinity(an, ad, segs);
      for (size_t t = 0; t < segs.size(); ++t) {
        int sgn = (t < split) ? segs[t].second : -segs[t].second;
        lhs += sgn * gen_values[(size_t)segs[t].first];
      }
    };
    for (long i = 0; i < ql; ++i) add_path(b + i * d, q * d, a + i * c, q * c);
    if (!divides) add_path(q * b, d, q * a, c);
    Rat rhs = Rat(a_q) * gen_values[(size_t)gi];
    if (lhs != rhs) return false;
  }
  return true;
}

// kernel of the stacked constraint rows (dense, exact)
static std::vector<QVec> kernel_of(QMatrix rows, long dim) {
  long n_rows = (long)rows.size();
  std::vector<long> row_of_col((size_t)dim, -1);
  long r = 0;
  for (long c = 0; c < dim && r < n_rows; ++c) {
    long pr = -1;
    for (long i = r; i < n_rows; ++i)
      if (rows[(size_t)i][(size_t)c] != 0) { pr = i; break; }
    if (pr < 0) continue;
    std::swap(rows[(size_t)r], rows[(size_t)pr]);
    Rat inv = Rat(1) / rows[(size_t)r][(size_t)c];
    for (long cc = 0; cc < dim; ++cc) rows[(size_t)r][(size_t)cc] *= inv;
    for (long i = 0; i < n_rows; ++i) {
      if (i == r) continue;
      Rat f = rows[(size_t)i][(size_t)c];
      if (f == 0) continue;
      for (long cc = 0; cc < dim; ++cc)
        rows[(size_t)i][(size_t)cc] -= f * rows[(size_t)r][(size_t)cc];
    }
    row_of_col[(size_t)c] = r;
    ++r;
  }
  std::vector<QVec> ker;
  for (long c = 0; c < dim; ++c) {
    if (row_of_col[(size_t)c] >= 0) continue;
    QVec v((size_t)dim, Rat(0));
    v[(size_t)c] = 1;
    for (long cc = 0; cc < dim; ++cc) {
      long rr = row_of_col[(size_t)cc];
      if (rr >= 0) v[(size_t)cc] = -rows[(size_t)rr][(size_t)c];
    }
    ker.push_back(std::move(v));
  }
  return ker;
}

EigenSymbol hecke_eigensymbol(std::shared_ptr<const SymbolSpace> space,
                              const std::function<Int(const Int&)>& target,
                              int sign, long max_operator_prime) {
  const SymbolSpace& S = *space;
  // Phi((O - a) x_j) = 0 for every basis x_j: one constraint row per j
  // with entries (O x_j)_i - a [i = j], unknowns Phi(x_i).
  QMatrix rows;
  auto add_operator = [&](const QMatrix& M, const Rat& a) {
    // constraints sum_i Phi_i (M - a)_{i j} = 0 for each j: row_j[i] = M[i][j] - a delta
    for (long j = 0; j < S.dim; ++j) {
      QVec row((size_t)S.dim, Rat(0));
      bool nz = false;
      for (long i = 0; i < S.dim; ++i) {
        Rat v = M[(size_t)i][(size_t)j];
        if (i == j) v -= a;
        if (v != 0) nz = true;
        row[(size_t)i] = v;
      }
      if (nz) rows.push_back(std::move(row));
    }
  };
  add_operator(star_matrix(S), Rat(sign));
  std::vector<std::pair<Int, Int>> used;
  std::vector<QVec> ker;
  for (long q = 2; q <= max_operator_prime; ++q) {
    if (!is_prime(Int(q))) continue;
    Int aq = target(Int(q));
    add_operator(hecke_matrix(S, Int(q)), Rat(aq));
    used.emplace_back(q, aq);
    ker = kernel_of(rows, S.dim);
    if ((long)ker.size() == 1) break;
    if (ker.empty())
      throw input_error("no eigensymbol with the supplied eigenvalues at this level");
  }
  if ((long)ker.size() != 1)
    throw precision_error("need more Hecke operators to isolate the eigenspace");
  EigenSymbol eig;
  eig.space = space;
  eig.sign = sign;
  eig.eigenvalues = used;
  eig.gen_values.assign((size_t)S.n_gens, Rat(0));
  for (long i = 0; i < S.n_gens; ++i) {
    Rat v(0);
    for (auto& [b, w] : S.expand[(size_t)i]) v += w * ker[0][(size_t)b];
    eig.gen_values[(size_t)i] = v;
  }
  return eig;
}

static Rat rational_gcd(const Rat& a, const Rat& b) {
  if (a == 0) return b >= 0 ? b : Rat(-b);
  if (b == 0) return a >= 0 ? a : Rat(-a);
  Int n1 = a.get_num(), d1 = a.get_den(), n2 = b.get_num(), d2 = b.get_den();
  Int num, den;
  mpz_gcd(num.get_mpz_t(), Int(n1 * d2).get_mpz_t(), Int(n2 * d1).get_mpz_t());
  den = d1 * d2;
  Rat g(num, den);
  g.canonicalize();
  return g >= 0 ? g : Rat(-g);
}

void normalize_integral(EigenSymbol& eig) {
  const SymbolSpace& S = *eig.space;
  // The value lattice is taken over the star-(anti)symmetric integral
  // cycles: chains fixed (resp. negated) by the star involution inside the
  // integer kernel of the boundary.  This is the sign-part of H_1(X0(N); Z)
  // that the +- Neron period pairs against; saturating it pins the symbol
  // exactly (regression: [0]^+ = 1/2 for the conductor-52 curve).
  long rows_b = S.n_cusps;
  // one chain generator per star orbit
  std::vector<std::vector<std::pair<long, int>>> chains;
  {
    std::vector<char> seen((size_t)S.n_gens, 0);
    for (long i = 0; i < S.n_gens; ++i) {
      if (seen[(size_t)i]) continue;
      long j = S.star_map[(size_t)i];
      seen[(size_t)i] = 1;
      if (j == i) {
        if (eig.sign == +1) chains.push_back({{i, 1}});
        // antisymmetric chains vanish on star-fixed generators
      } else {
        seen[(size_t)j] = 1;
        chains.push_back({{i, 1}, {j, eig.sign}});
      }
    }
  }
  long m = (long)chains.size();
  std::vector<std::vector<Int>> col((size_t)m);
  for (long j = 0; j < m; ++j) {
    std::vector<Int> v((size_t)(rows_b + m), Int(0));
    for (auto& [g, s] : chains[(size_t)j]) {
      v[(size_t)S.cusp_pos[(size_t)g]] += s;
      v[(size_t)S.cusp_neg[(size_t)g]] -= s;
    }
    v[(size_t)(rows_b + j)] = 1;
    col[(size_t)j] = std::move(v);
  }
  long active = 0;  // columns < active have been used as pivots
  for (long r = 0; r < rows_b; ++r) {
    // gcd-chain columns active..m-1 on row r
    long piv = -1;
    for (long j = active; j < m; ++j)
      if (col[(size_t)j][(size_t)r] != 0) { piv = j; break; }
    if (piv < 0) continue;
    std::swap(col[(size_t)active], col[(size_t)piv]);
    for (long j = active + 1; j < m; ++j) {
      while (col[(size_t)j][(size_t)r] != 0) {
        Int q = col[(size_t)active][(size_t)r] / col[(size_t)j][(size_t)r];
        if (q != 0)
          for (long t = r; t < rows_b + m; ++t)
            col[(size_t)active][(size_t)t] -= q * col[(size_t)j][(size_t)t];
        std::swap(col[(size_t)active], col[(size_t)j]);
      }
    }
    ++active;
  }
  // kernel columns: active..m-1 (B-part all zero below processed rows)
  Rat lattice_gcd(0);
  Rat zero_val = eig.value(0, 1);
  for (long j = active; j < m; ++j) {
    Rat v(0);
    for (long t = 0; t < m; ++t) {
      const Int& c = col[(size_t)j][(size_t)(rows_b + t)];
      if (c == 0) continue;
      for (auto& [g, s] : chains[(size_t)t]) v += Rat(c) * s * eig.gen_values[(size_t)g];
    }
    lattice_gcd = rational_gcd(lattice_gcd, v);
  }
  if (lattice_gcd == 0) throw std::logic_error("eigen symbol vanishes on homology");
  Rat scale = Rat(1) / lattice_gcd;
  // sign convention
  Rat probe = zero_val * scale;
  if (probe == 0) {
    for (long j = 0; j < m && probe == 0; ++j) probe = eig.gen_values[(size_t)j] * scale;
  }
  if (probe < 0) scale = -scale;
  for (auto& v : eig.gen_values) v *= scale;
  eig.scale = eig.scale * scale;
}

CycQ gauss_sum(const DirichletCharacter& chi) {
  long f = chi.modulus().get_si();
  long o = chi.order();
  if (f == 1) return CycQ(1, Rat(1));
  long m = (long)std::lcm(f, o);
  CycQ acc(m);
  for (long a = 1; a < f; ++a) {
    auto e = chi.exponent(Int(a));
    if (!e) continue;
    // chi(a) zeta_f^a = zeta_m^(e * m/o) * zeta_m^(a * m/f)
    acc = acc + CycQ::zeta_power(m, (*e) * (m / o) + a * (m / f));
  }
  return acc;
}

CycQ twisted_lvalue(const EigenSymbol& plus, const EigenSymbol& minus,
                    const DirichletCharacter& chi) {
  const EigenSymbol& eig = chi.even() ? plus : minus;
  if ((chi.even() && eig.sign != +1) || (chi.odd() && eig.sign != -1))
    throw input_error("twisted_lvalue: sign mismatch between symbol and character");
  {
    Int g;
    mpz_gcd(g.get_mpz_t(), chi.modulus().get_mpz_t(), eig.space->N.get_mpz_t());
    if (g != 1)
      throw input_error("twisted_lvalue: twist conductor must be prime to the level");
  }
  long f = chi.modulus().get_si();
  long o = chi.order();
  CycQ acc(o);
  for (long a = 0; a < f; ++a) {
    auto e = chi.exponent(Int(a));
    if (!e) continue;
    Rat v = eig.value(Int(a), Int(f));
    if (v == 0) continue;
    // chi^{-1}(a) = zeta_o^{-e}
    acc = acc + CycQ::zeta_power(o, -*e) * v;
  }
  return acc;
}

}  // namespace iwa
