#pragma once

#include <algorithm>
#include <map>
#include <random>

#include "skewpbw/coideal.hpp"
#include "test_support.hpp"

namespace skewpbw::testing {


// Independent word basis: all words with a letters x1 and b letters x2 via
// repeated extension.
inline std::vector<Word> words_of(const Degree& d, Side s) {
  const Letter l1 = s == Side::Positive ? Letter::X1 : Letter::X1N;
  const Letter l2 = s == Side::Positive ? Letter::X2 : Letter::X2N;
  std::vector<Word> cur{{}};
  for (int len = 0; len < d[0] + d[1]; ++len) {
    std::vector<Word> next;
    for (const Word& w : cur)
      for (Letter l : {l1, l2}) {
        Word x = w;
        x.push_back(l);
        const Degree c = side_degree(x);
        if (c[0] <= d[0] && c[1] <= d[1]) next.push_back(x);
      }
    cur = std::move(next);
  }
  return cur;
}

inline mpq_class eval_at(const LaurentPoly& a, const mpq_class& q, const mpq_class& p) {
  mpq_class r = 0;
  for (const auto& t : a.terms()) {
    mpq_class v = t.coeff.raw();
    for (int i = 0; i < std::abs(t.exp.q); ++i) v = t.exp.q > 0 ? mpq_class(v * q) : mpq_class(v / q);
    for (int i = 0; i < std::abs(t.exp.p); ++i) v = t.exp.p > 0 ? mpq_class(v * p) : mpq_class(v / p);
    r += v;
  }
  return r;
}

// Rank over Q of the rows specialized at q = 3, p = 5.
inline std::size_t specialized_rank(const std::vector<CoeffVector>& rows, std::size_t cols) {
  std::vector<std::vector<mpq_class>> m;
  for (const auto& row : rows) {
    std::vector<mpq_class> v(cols);
    for (std::size_t j = 0; j < cols; ++j) v[j] = eval_at(row[j], 3, 5);
    m.push_back(std::move(v));
  }
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t piv = r;
    while (piv < m.size() && sgn(m[piv][c]) == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[r], m[piv]);
    for (std::size_t i = r + 1; i < m.size(); ++i) {
      if (sgn(m[i][c]) == 0) continue;
      const mpq_class f = m[i][c] / m[r][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    ++r;
  }
  return r;
}

// Ideal rows u * r * v as products of Elements, then an exact rank at a
// specialization.
inline std::size_t oracle_ideal_rank(Side s, const Degree& d) {
  const std::vector<Word> basis = words_of(d, s);
  std::map<Word, std::size_t> idx;
  for (std::size_t i = 0; i < basis.size(); ++i) idx[basis[i]] = i;
  std::vector<CoeffVector> rows;
  for (int k = 0; k < 2; ++k) {
    const Element r = serre_element(s, k);
    const Degree rd = side_degree(r.terms().begin()->first.word);
    for (int a0 = 0; a0 <= d[0] - rd[0]; ++a0)
      for (int a1 = 0; a1 <= d[1] - rd[1]; ++a1)
        for (const Word& u : words_of({a0, a1}, s))
          for (const Word& v : words_of({d[0] - rd[0] - a0, d[1] - rd[1] - a1}, s)) {
            const Element e = Element(Monomial({}, u)) * r * Element(Monomial({}, v));
            CoeffVector row(basis.size());
            for (const auto& [m, c] : e.terms()) row[idx.at(m.word)] = c;
            rows.push_back(row);
          }
  }
  if (rows.empty()) return 0;
  return specialized_rank(rows, basis.size());
}

inline std::size_t oracle_pbw_count(const Degree& d) {
  const std::array<Degree, 6> deg = {{{0, 1}, {1, 3}, {1, 2}, {2, 3}, {1, 1}, {1, 0}}};
  std::size_t n = 0;
  for (int f = 0; f <= d[1]; ++f)
    for (int e = 0; e <= d[0]; ++e)
      for (int dd = 0; dd <= d[0]; ++dd)
        for (int c = 0; c <= d[0]; ++c)
          for (int b = 0; b <= d[0]; ++b)
            for (int a = 0; a <= d[0]; ++a) {
              const std::array<int, 6> x{f, e, dd, c, b, a};
              Degree t{0, 0};
              for (int k = 0; k < 6; ++k) {
                t[0] += x[k] * deg[k][0];
                t[1] += x[k] * deg[k][1];
              }
              if (t == d) ++n;
            }
  return n;
}

inline LaurentPoly common_den(const TriangularForm& t) {
  LaurentPoly d = 1;
  for (const auto& [k, c] : t.terms()) d *= c.den_poly();
  return d;
}

// Random element with at most three x1 and three x1- overall.
inline Element random_small(std::mt19937& rng, int terms, std::size_t max_len) {
  Element a;
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  while (static_cast<int>(a.size()) < terms) {
    const Word w = random_word(rng, len(rng), true, true);
    const Constitution c = constitution(w);
    if (c[0] > 3 || c[2] > 3) continue;
    a.add_term(Monomial(random_group(rng, 1), w), random_coeff(rng));
  }
  return a;
}

// Random Gamma-homogeneous element: all terms share one word's constitution.
inline Element random_homogeneous(std::mt19937& rng, std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len(1, max_len);
  Word w;
  do {
    w = random_word(rng, len(rng), true, true);
  } while (constitution(w)[0] > 3 || constitution(w)[2] > 3);
  Element a;
  for (int i = 0; i < 3; ++i) {
    Word x = w;
    std::shuffle(x.begin(), x.end(), rng);
    a.add_term(Monomial(random_group(rng, 1), x), random_coeff(rng));
  }
  return a;
}

// Random element of neg k[H] pos of small degree.
inline TriangularForm random_member(PbwEngine& eng, std::mt19937& rng, const SubalgebraSpec& n, const SubalgebraSpec& p) {
  std::uniform_int_distribution<int> d(0, 2);
  TriangularForm z;
  for (int i = 0; i < 2; ++i) {
    const Degree dn{d(rng), d(rng)}, dp{d(rng), d(rng)};
    const auto mn = t_monomials(n, dn);
    const auto mp = t_monomials(p, dp);
    if (mn.empty() || mp.empty()) continue;
    std::uniform_int_distribution<std::size_t> pn(0, mn.size() - 1), pp(0, mp.size() - 1);
    const Element e = Element::group(random_group(rng, 1)) * mn[pn(rng)] * mp[pp(rng)] * random_coeff(rng);
    z += eng.triangular_nf(e);
  }
  return z;
}

}  // namespace skewpbw::testing
