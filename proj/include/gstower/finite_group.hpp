#ifndef GSTOWER_FINITE_GROUP_HPP
#define GSTOWER_FINITE_GROUP_HPP

// Brute-force group algebra F_p[G] of an explicit finite p-group: powers of
// the augmentation ideal and the Zassenhaus filtration. Used as an oracle
// independent of presentations and Magnus expansions.

#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

#include "gstower/error.hpp"
#include "gstower/fp_free_algebra.hpp"
#include "gstower/presentation.hpp"

namespace gstower {

inline constexpr std::size_t kMaxGroupOrder = 729;

class MultiplicationTable {
 public:
  // table[a][b] = a * b. Validates closure, identity, inverses, associativity.
  explicit MultiplicationTable(std::vector<std::vector<std::uint32_t>> table) : table_(std::move(table)) {
    const std::size_t n = table_.size();
    if (n == 0) throw ParameterError("multiplication table is empty");
    if (n > kMaxGroupOrder) throw CapacityError("group order exceeds " + std::to_string(kMaxGroupOrder));
    for (const auto& row : table_) {
      if (row.size() != n) throw ParameterError("multiplication table is not square");
      for (auto x : row)
        if (x >= n) throw ParameterError("multiplication table entry out of range");
    }
    std::optional<std::uint32_t> e;
    for (std::uint32_t a = 0; a < n && !e; ++a) {
      bool ok = true;
      for (std::uint32_t b = 0; b < n && ok; ++b) ok = table_[a][b] == b && table_[b][a] == b;
      if (ok) e = a;
    }
    if (!e) throw ParameterError("multiplication table has no identity");
    identity_ = *e;
    inverse_.assign(n, 0);
    for (std::uint32_t a = 0; a < n; ++a) {
      bool found = false;
      for (std::uint32_t b = 0; b < n && !found; ++b)
        if (table_[a][b] == identity_ && table_[b][a] == identity_) {
          inverse_[a] = b;
          found = true;
        }
      if (!found) throw ParameterError("element " + std::to_string(a) + " has no inverse");
    }
    for (std::uint32_t a = 0; a < n; ++a)
      for (std::uint32_t b = 0; b < n; ++b)
        for (std::uint32_t c = 0; c < n; ++c)
          if (table_[table_[a][b]][c] != table_[a][table_[b][c]])
            throw ParameterError("multiplication table is not associative");
  }

  // Z/m1 x Z/m2 x ..., elements in mixed radix (first factor fastest).
  static MultiplicationTable abelian(const std::vector<std::uint32_t>& orders) {
    std::size_t n = 1;
    for (auto m : orders) {
      if (m == 0) throw ParameterError("cyclic factor of order 0");
      n *= m;
      if (n > kMaxGroupOrder) throw CapacityError("group order exceeds " + std::to_string(kMaxGroupOrder));
    }
    std::vector<std::vector<std::uint32_t>> t(n, std::vector<std::uint32_t>(n));
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        std::size_t ra = a, rb = b, out = 0, scale = 1;
        for (auto m : orders) {
          out += ((ra % m + rb % m) % m) * scale;
          ra /= m;
          rb /= m;
          scale *= m;
        }
        t[a][b] = static_cast<std::uint32_t>(out);
      }
    return MultiplicationTable(std::move(t));
  }

  std::size_t order() const { return table_.size(); }
  std::uint32_t identity() const { return identity_; }
  std::uint32_t multiply(std::uint32_t a, std::uint32_t b) const { return table_[a][b]; }
  std::uint32_t inverse(std::uint32_t a) const { return inverse_[a]; }

 private:
  std::vector<std::vector<std::uint32_t>> table_;
  std::vector<std::uint32_t> inverse_;
  std::uint32_t identity_ = 0;
};

namespace detail {

inline void require_p_group(const MultiplicationTable& g, std::uint32_t p) {
  std::size_t n = g.order();
  while (n % p == 0) n /= p;
  if (n != 1)
    throw ParameterError("group order " + std::to_string(g.order()) + " is not a power of p = " +
                         std::to_string(p));
}

// Right multiplication of an F_p[G] vector by group element h.
inline std::vector<std::uint32_t> times_element(const MultiplicationTable& g, std::span<const std::uint32_t> v,
                                                std::uint32_t h) {
  std::vector<std::uint32_t> out(v.size(), 0);
  for (std::uint32_t a = 0; a < v.size(); ++a)
    if (v[a] != 0) out[g.multiply(a, h)] = v[a];
  return out;
}

// I^1, I^2, ..., I^{count}; stops early once a power vanishes.
inline std::vector<FpSubspace> augmentation_powers(const MultiplicationTable& g, std::uint32_t p,
                                                   unsigned count) {
  const std::size_t n = g.order();
  std::vector<FpSubspace> powers;
  FpSubspace ideal(n, p);
  for (std::uint32_t h = 0; h < n; ++h) {
    if (h == g.identity()) continue;
    std::vector<std::uint32_t> v(n, 0);
    v[h] = 1;
    v[g.identity()] = p - 1;
    ideal.insert(v);
  }
  powers.push_back(ideal);
  while (powers.size() < count && powers.back().rank() > 0) {
    // I^{k+1} = I^k * I, spanned by x (h - 1) for basis rows x.
    const FpSubspace& prev = powers.back();
    FpSubspace next(n, p);
    for (std::size_t pivot : prev.pivots()) {
      std::vector<std::uint32_t> x = prev.row(pivot);
      for (std::uint32_t h = 0; h < n; ++h) {
        if (h == g.identity()) continue;
        std::vector<std::uint32_t> y = times_element(g, x, h);
        for (std::size_t i = 0; i < n; ++i) y[i] = (y[i] + p - x[i]) % p;
        next.insert(y);
      }
    }
    powers.push_back(std::move(next));
  }
  return powers;
}

}  // namespace detail

// c_n = dim I^n - dim I^{n+1} for 0 <= n <= N-1 (I^0 = F_p[G]).
inline HilbertPrefix finite_group_oracle(const MultiplicationTable& g, std::uint32_t p, unsigned max_degree) {
  require_odd_prime(p);
  detail::require_p_group(g, p);
  if (max_degree < 1) throw ParameterError("N must be >= 1");
  std::vector<FpSubspace> powers = detail::augmentation_powers(g, p, max_degree);
  auto dim = [&](unsigned k) -> std::size_t {
    if (k == 0) return g.order();
    return k <= powers.size() ? powers[k - 1].rank() : 0;
  };
  HilbertPrefix h;
  h.max_degree = max_degree;
  h.coeffs.resize(max_degree);
  for (unsigned k = 0; k < max_degree; ++k) {
    h.coeffs[k] = dim(k) - dim(k + 1);
    if (h.coeffs[k] == 0) h.stabilized = true;  // I^k = I^{k+1} forces I^k = 0
  }
  return h;
}

struct ZassenhausData {
  std::vector<unsigned> a;  // a_1 .. a_N
};

// a_n = log_p |G_n / G_{n+1}| where G_n = {g : g - 1 in I^n}.
inline ZassenhausData zassenhaus_dims(const MultiplicationTable& g, std::uint32_t p, unsigned max_degree) {
  require_odd_prime(p);
  detail::require_p_group(g, p);
  const std::size_t n = g.order();
  std::vector<FpSubspace> powers = detail::augmentation_powers(g, p, max_degree + 1);
  auto in_power = [&](std::uint32_t x, unsigned k) {
    if (x == g.identity()) return true;
    if (k > powers.size()) return false;  // I^k = 0
    std::vector<std::uint32_t> v(n, 0);
    v[x] = 1;
    v[g.identity()] = p - 1;
    return powers[k - 1].contains(v);
  };
  auto log_p = [&](std::size_t m) {
    unsigned e = 0;
    while (m > 1) {
      m /= p;
      ++e;
    }
    return e;
  };
  std::vector<std::size_t> size(max_degree + 2, 0);  // |G_k| for k = 1..N+1
  for (unsigned k = 1; k <= max_degree + 1; ++k)
    for (std::uint32_t x = 0; x < n; ++x) size[k] += in_power(x, k) ? 1 : 0;
  ZassenhausData z;
  for (unsigned k = 1; k <= max_degree; ++k) z.a.push_back(log_p(size[k] / size[k + 1]));
  return z;
}

}  // namespace gstower

#endif  // GSTOWER_FINITE_GROUP_HPP
