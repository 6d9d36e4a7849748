#ifndef GSTOWER_FP_FREE_ALGEBRA_HPP
#define GSTOWER_FP_FREE_ALGEBRA_HPP

// Degree-truncated free noncommutative algebra F_p<u_0,...,u_{d-1}> / (deg > N)
// and a row-echelon subspace engine over F_p.
//
// Monomials are ranked degree-major, lexicographic within a degree (first
// letter most significant), so the basis of the truncated algebra is the
// contiguous range [0, sum_{n<=N} d^n).

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gstower/error.hpp"
#include "gstower/rational.hpp"

namespace gstower {

inline constexpr unsigned kMaxGenerators = 3;
inline constexpr std::size_t kMaxAmbientDimension = 9841;  // d=3, N=8
inline constexpr std::uint32_t kMaxPrime = 65521;          // rows are stored as uint16

namespace detail {

inline std::uint64_t upow(std::uint64_t base, unsigned exponent) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < exponent; ++i) r *= base;
  return r;
}

inline std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t p) {
  // Fermat; p is prime and a != 0 mod p.
  std::uint64_t result = 1, base = a % p;
  std::uint32_t e = p - 2;
  while (e != 0) {
    if (e & 1U) result = result * base % p;
    base = base * base % p;
    e >>= 1U;
  }
  return static_cast<std::uint32_t>(result);
}

inline std::uint32_t reduce_signed(std::int64_t value, std::uint32_t p) {
  std::int64_t r = value % static_cast<std::int64_t>(p);
  if (r < 0) r += p;
  return static_cast<std::uint32_t>(r);
}

}  // namespace detail

// Generator count d, truncation degree N and odd prime p of a truncated
// algebra. Construction enforces the desk-scale budget.
class AlgebraShape {
 public:
  AlgebraShape(unsigned generators, unsigned max_degree, std::uint32_t prime)
      : d_(generators), n_(max_degree), p_(prime) {
    if (prime == 2) throw ParameterError("p = 2 is not supported; p must be an odd prime");
    if (!is_prime(prime)) throw ParameterError("p = " + std::to_string(prime) + " is not prime");
    if (prime > kMaxPrime)
      throw CapacityError("p = " + std::to_string(prime) + " exceeds the supported maximum " +
                          std::to_string(kMaxPrime));
    if (generators > kMaxGenerators)
      throw CapacityError("d = " + std::to_string(generators) + " exceeds the budget d <= 3");
    if (dimension_for(generators, max_degree) > kMaxAmbientDimension)
      throw CapacityError("truncated algebra with d = " + std::to_string(generators) +
                          ", N = " + std::to_string(max_degree) +
                          " exceeds the budget (ambient dimension <= 9841)");
  }

  unsigned generators() const noexcept { return d_; }
  unsigned max_degree() const noexcept { return n_; }
  std::uint32_t prime() const noexcept { return p_; }

  // d^degree
  std::size_t words_of_degree(unsigned degree) const {
    return static_cast<std::size_t>(detail::upow(d_, degree));
  }

  // Rank of the first monomial of the given degree.
  std::size_t degree_offset(unsigned degree) const {
    if (d_ == 1) return degree;
    if (d_ == 0) return degree == 0 ? 0 : 1;
    return static_cast<std::size_t>((detail::upow(d_, degree) - 1) / (d_ - 1));
  }

  std::size_t ambient_dimension() const { return degree_offset(n_ + 1); }

  // Degree of the monomial with the given rank.
  unsigned degree_of_index(std::size_t index) const {
    unsigned k = 0;
    while (degree_offset(k + 1) <= index) ++k;
    return k;
  }

  static std::uint64_t dimension_for(unsigned d, unsigned n) {
    if (d == 0) return 1;
    if (d == 1) return static_cast<std::uint64_t>(n) + 1;
    std::uint64_t total = 0, power = 1;
    for (unsigned k = 0; k <= n; ++k) {
      total += power;
      if (total > kMaxAmbientDimension) return total;
      power *= d;
    }
    return total;
  }

  friend bool operator==(const AlgebraShape&, const AlgebraShape&) = default;

 private:
  unsigned d_;
  unsigned n_;
  std::uint32_t p_;
};

inline void require_same_shape(const AlgebraShape& a, const AlgebraShape& b) {
  if (!(a == b)) throw ParameterError("mismatched algebra parameters (d, N, p)");
}

// A word u_{i_1} ... u_{i_k}, stored as (k, base-d integer of the letters).
class Monomial {
 public:
  constexpr Monomial() = default;
  constexpr Monomial(unsigned degree, std::uint32_t word) : degree_(degree), word_(word) {}

  static Monomial from_letters(std::span<const unsigned> letters, unsigned generators) {
    std::uint64_t word = 0;
    for (unsigned letter : letters) {
      if (letter >= generators)
        throw ParameterError("generator index " + std::to_string(letter) + " out of range");
      word = word * generators + letter;
    }
    return {static_cast<unsigned>(letters.size()), static_cast<std::uint32_t>(word)};
  }

  static Monomial from_index(std::size_t index, const AlgebraShape& shape) {
    if (index >= shape.ambient_dimension()) throw ParameterError("monomial index out of range");
    unsigned degree = shape.degree_of_index(index);
    return {degree, static_cast<std::uint32_t>(index - shape.degree_offset(degree))};
  }

  constexpr unsigned degree() const noexcept { return degree_; }
  constexpr std::uint32_t word() const noexcept { return word_; }

  std::size_t index(const AlgebraShape& shape) const {
    return shape.degree_offset(degree_) + word_;
  }

  std::vector<unsigned> letters(unsigned generators) const {
    std::vector<unsigned> out(degree_);
    std::uint32_t w = word_;
    for (unsigned i = degree_; i-- > 0;) {
      out[i] = w % generators;
      w /= generators;
    }
    return out;
  }

  friend constexpr auto operator<=>(const Monomial&, const Monomial&) = default;

 private:
  unsigned degree_ = 0;
  std::uint32_t word_ = 0;
};

// Lowest degree of a truncated element: a value in [0, N], or "above
// truncation", meaning only that the true value is at least N + 1.
class Valuation {
 public:
  static Valuation finite(unsigned value) { return Valuation(value, false); }
  static Valuation above_truncation(unsigned max_degree) { return Valuation(max_degree + 1, true); }

  bool is_finite() const noexcept { return !above_; }
  bool is_above_truncation() const noexcept { return above_; }

  // Exact value; only meaningful when finite.
  unsigned value() const {
    if (above_) throw InconclusiveError("valuation is above the truncation degree");
    return value_;
  }

  // The certified lower bound: the value itself, or N + 1.
  unsigned lower_bound() const noexcept { return value_; }

  std::string to_string() const {
    return above_ ? ">=" + std::to_string(value_) : std::to_string(value_);
  }

  friend bool operator==(const Valuation&, const Valuation&) = default;

 private:
  Valuation(unsigned value, bool above) : value_(value), above_(above) {}
  unsigned value_;
  bool above_;
};

class TruncatedSeries {
 public:
  struct Term {
    Monomial monomial;
    std::uint32_t coeff;
    friend bool operator==(const Term&, const Term&) = default;
  };

  explicit TruncatedSeries(const AlgebraShape& shape) : shape_(shape) {}

  static TruncatedSeries one(const AlgebraShape& shape) { return constant(shape, 1); }

  static TruncatedSeries constant(const AlgebraShape& shape, std::int64_t c) {
    TruncatedSeries s(shape);
    std::uint32_t r = detail::reduce_signed(c, shape.prime());
    if (r != 0) s.terms_.push_back({Monomial{}, r});
    return s;
  }

  // u_i
  static TruncatedSeries generator(const AlgebraShape& shape, unsigned i) {
    if (i >= shape.generators())
      throw ParameterError("generator index " + std::to_string(i) + " out of range");
    TruncatedSeries s(shape);
    if (shape.max_degree() >= 1) s.terms_.push_back({Monomial{1, i}, 1});
    return s;
  }

  static TruncatedSeries monomial(const AlgebraShape& shape, Monomial m, std::int64_t c = 1) {
    return from_terms(shape, {{m, c}});
  }

  // Reduces coefficients mod p, merges duplicates and discards monomials
  // above the truncation degree.
  static TruncatedSeries from_terms(const AlgebraShape& shape,
                                    std::vector<std::pair<Monomial, std::int64_t>> terms) {
    std::sort(terms.begin(), terms.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    TruncatedSeries s(shape);
    for (std::size_t i = 0; i < terms.size();) {
      Monomial m = terms[i].first;
      std::int64_t acc = 0;
      for (; i < terms.size() && terms[i].first == m; ++i)
        acc = (acc + static_cast<std::int64_t>(detail::reduce_signed(terms[i].second, shape.prime()))) %
              shape.prime();
      if (m.degree() > shape.max_degree()) continue;
      if (m.word() >= shape.words_of_degree(m.degree()))
        throw ParameterError("monomial word out of range");
      if (acc != 0) s.terms_.push_back({m, static_cast<std::uint32_t>(acc)});
    }
    return s;
  }

  static TruncatedSeries from_dense(const AlgebraShape& shape, std::span<const std::uint32_t> v) {
    if (v.size() != shape.ambient_dimension()) throw ParameterError("dense vector dimension mismatch");
    TruncatedSeries s(shape);
    for (std::size_t i = 0; i < v.size(); ++i) {
      std::uint32_t c = v[i] % shape.prime();
      if (c != 0) s.terms_.push_back({Monomial::from_index(i, shape), c});
    }
    return s;
  }

  const AlgebraShape& shape() const noexcept { return shape_; }
  std::span<const Term> terms() const noexcept { return terms_; }
  std::size_t term_count() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }

  std::uint32_t coefficient(const Monomial& m) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                               [](const Term& t, const Monomial& key) { return t.monomial < key; });
    return (it != terms_.end() && it->monomial == m) ? it->coeff : 0;
  }

  std::uint32_t constant_term() const { return coefficient(Monomial{}); }

  Valuation lowest_degree() const {
    if (terms_.empty()) return Valuation::above_truncation(shape_.max_degree());
    return Valuation::finite(terms_.front().monomial.degree());
  }

  std::vector<std::uint32_t> dense() const {
    std::vector<std::uint32_t> v(shape_.ambient_dimension(), 0);
    for (const Term& t : terms_) v[t.monomial.index(shape_)] = t.coeff;
    return v;
  }

  // Homogeneous component of the given degree.
  TruncatedSeries component(unsigned degree) const {
    TruncatedSeries s(shape_);
    for (const Term& t : terms_)
      if (t.monomial.degree() == degree) s.terms_.push_back(t);
    return s;
  }

  // Drops every term of degree > max_degree, keeping the ambient shape.
  TruncatedSeries truncated(unsigned max_degree) const {
    TruncatedSeries s(shape_);
    for (const Term& t : terms_)
      if (t.monomial.degree() <= max_degree) s.terms_.push_back(t);
    return s;
  }

  TruncatedSeries scaled(std::int64_t c) const {
    std::uint64_t r = detail::reduce_signed(c, shape_.prime());
    TruncatedSeries s(shape_);
    if (r == 0) return s;
    s.terms_.reserve(terms_.size());
    for (const Term& t : terms_)
      s.terms_.push_back({t.monomial, static_cast<std::uint32_t>(t.coeff * r % shape_.prime())});
    return s;
  }

  TruncatedSeries operator-() const { return scaled(-1); }

  friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
    require_same_shape(a.shape_, b.shape_);
    const std::uint32_t p = a.shape_.prime();
    TruncatedSeries s(a.shape_);
    s.terms_.reserve(a.terms_.size() + b.terms_.size());
    auto ia = a.terms_.begin(), ib = b.terms_.begin();
    while (ia != a.terms_.end() || ib != b.terms_.end()) {
      if (ib == b.terms_.end() || (ia != a.terms_.end() && ia->monomial < ib->monomial)) {
        s.terms_.push_back(*ia++);
      } else if (ia == a.terms_.end() || ib->monomial < ia->monomial) {
        s.terms_.push_back(*ib++);
      } else {
        std::uint32_t c = (ia->coeff + ib->coeff) % p;
        if (c != 0) s.terms_.push_back({ia->monomial, c});
        ++ia;
        ++ib;
      }
    }
    return s;
  }

  friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
    return a + (-b);
  }

  // Noncommutative product; monomials of degree > N are discarded.
  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
    require_same_shape(a.shape_, b.shape_);
    const AlgebraShape& shape = a.shape_;
    const unsigned n = shape.max_degree();
    const std::uint64_t p = shape.prime();
    TruncatedSeries s(shape);
    if (a.is_zero() || b.is_zero()) return s;

    std::vector<std::uint64_t> power(n + 1);
    for (unsigned k = 0; k <= n; ++k) power[k] = shape.words_of_degree(k);

    std::vector<std::uint64_t> acc(shape.ambient_dimension(), 0);
    std::vector<bool> touched(acc.size(), false);
    for (const Term& x : a.terms_) {
      const unsigned dx = x.monomial.degree();
      for (const Term& y : b.terms_) {
        const unsigned dy = y.monomial.degree();
        if (dx + dy > n) break;  // b's terms are sorted by degree
        std::size_t idx = shape.degree_offset(dx + dy) +
                          static_cast<std::size_t>(x.monomial.word() * power[dy] + y.monomial.word());
        acc[idx] += static_cast<std::uint64_t>(x.coeff) * y.coeff;
        touched[idx] = true;
      }
    }
    // p < 2^16 and at most 9841 terms per side: acc stays below 2^46.
    for (std::size_t i = 0; i < acc.size(); ++i) {
      if (!touched[i]) continue;
      std::uint32_t c = static_cast<std::uint32_t>(acc[i] % p);
      if (c != 0) s.terms_.push_back({Monomial::from_index(i, shape), c});
    }
    return s;
  }

  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
    return a.shape_ == b.shape_ && a.terms_ == b.terms_;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const Term& t : terms_) {
      if (!out.empty()) out += " + ";
      if (t.coeff != 1 || t.monomial.degree() == 0) out += std::to_string(t.coeff);
      for (unsigned letter : t.monomial.letters(shape_.generators()))
        out += "u" + std::to_string(letter);
    }
    return out;
  }

 private:
  AlgebraShape shape_;
  std::vector<Term> terms_;  // sorted by monomial, nonzero residues only
};

inline TruncatedSeries series_add(const TruncatedSeries& a, const TruncatedSeries& b) { return a + b; }
inline TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b) { return a * b; }

inline TruncatedSeries series_pow(TruncatedSeries base, std::uint64_t exponent) {
  TruncatedSeries result = TruncatedSeries::one(base.shape());
  while (exponent != 0) {
    if (exponent & 1U) result = result * base;
    exponent >>= 1U;
    if (exponent != 0) base = base * base;
  }
  return result;
}

// Two-sided inverse of a unit: a = c(1 + x) with x in the augmentation
// ideal, so a^{-1} = c^{-1} (1 - x + x^2 - ...), evaluated by Horner in N
// steps; x^{N+1} vanishes in the truncation.
inline TruncatedSeries series_inverse(const TruncatedSeries& a) {
  const AlgebraShape& shape = a.shape();
  std::uint32_t c = a.constant_term();
  if (c == 0) throw NonUnitError("series has zero constant term and is not invertible");
  std::uint32_t c_inv = detail::inverse_mod(c, shape.prime());
  TruncatedSeries x = a.scaled(c_inv) - TruncatedSeries::one(shape);
  TruncatedSeries one = TruncatedSeries::one(shape);
  TruncatedSeries b = one;
  for (unsigned step = 0; step < shape.max_degree(); ++step) b = one - x * b;
  return b.scaled(c_inv);
}

inline Valuation lowest_degree(const TruncatedSeries& a) { return a.lowest_degree(); }

// Row-echelon subspace of F_p^n. Each stored row is monic at its pivot and
// zero before it; pivots are distinct. Rows are not back-reduced against
// later pivots (reduced_basis() produces the fully reduced form on demand).
class FpSubspace {
 public:
  FpSubspace(std::size_t ambient_dimension, std::uint32_t prime)
      : dim_(ambient_dimension), p_(prime), row_at_(ambient_dimension, kNoRow) {
    if (!is_prime(prime) || prime == 2)
      throw ParameterError("subspace modulus must be an odd prime");
    if (prime > kMaxPrime) throw CapacityError("subspace modulus exceeds 65521");
  }

  std::size_t ambient_dimension() const noexcept { return dim_; }
  std::uint32_t prime() const noexcept { return p_; }
  std::size_t rank() const noexcept { return rows_.size(); }

  // Inserts v; returns true iff v was not already in the span.
  bool insert(std::span<const std::uint32_t> v) { return insert_pivot(v).has_value(); }

  // Like insert(), but reports the pivot column of the new row.
  std::optional<std::size_t> insert_pivot(std::span<const std::uint32_t> v) {
    check_dimension(v.size());
    std::vector<std::uint64_t> acc(v.begin(), v.end());
    std::optional<std::size_t> lead = reduce(acc, 0);
    if (lead) adopt(acc, *lead);
    return lead;
  }

  bool insert(const TruncatedSeries& s) { return insert(s.dense()); }

  bool contains(std::span<const std::uint32_t> v) const {
    check_dimension(v.size());
    std::vector<std::uint64_t> acc(v.begin(), v.end());
    return !reduce(acc, 0).has_value();
  }

  bool contains(const TruncatedSeries& s) const { return contains(s.dense()); }

  bool has_pivot(std::size_t column) const { return row_at_.at(column) != kNoRow; }

  // Sorted pivot columns.
  std::vector<std::size_t> pivots() const {
    std::vector<std::size_t> out;
    out.reserve(rows_.size());
    for (std::size_t c = 0; c < dim_; ++c)
      if (row_at_[c] != kNoRow) out.push_back(c);
    return out;
  }

  // Number of pivots in [lo, hi).
  std::size_t pivots_in_range(std::size_t lo, std::size_t hi) const {
    std::size_t count = 0;
    for (std::size_t c = lo; c < std::min(hi, dim_); ++c) count += row_at_[c] != kNoRow;
    return count;
  }

  // Stored (echelon) row with the given pivot, as a full-length vector.
  std::vector<std::uint32_t> row(std::size_t pivot) const {
    std::uint32_t r = row_at_.at(pivot);
    if (r == kNoRow) throw ParameterError("no row with that pivot");
    std::vector<std::uint32_t> out(dim_, 0);
    const auto& data = rows_[r].data;
    for (std::size_t i = 0; i < data.size(); ++i) out[pivot + i] = data[i];
    return out;
  }

  // Reduced row-echelon basis, rows in increasing pivot order.
  std::vector<std::vector<std::uint32_t>> reduced_basis() const {
    std::vector<std::size_t> piv = pivots();
    std::vector<std::vector<std::uint32_t>> out(piv.size());
    for (std::size_t k = piv.size(); k-- > 0;) {
      std::vector<std::uint64_t> acc(dim_, 0);
      std::vector<std::uint32_t> r = row(piv[k]);
      std::copy(r.begin(), r.end(), acc.begin());
      for (std::size_t j = k + 1; j < piv.size(); ++j) {
        std::uint64_t x = acc[piv[j]] % p_;
        if (x == 0) continue;
        std::uint64_t f = p_ - x;
        for (std::size_t i = piv[j]; i < dim_; ++i) acc[i] = (acc[i] + f * out[j][i]) % p_;
      }
      out[k].resize(dim_);
      for (std::size_t i = 0; i < dim_; ++i) out[k][i] = static_cast<std::uint32_t>(acc[i] % p_);
    }
    return out;
  }

 private:
  static constexpr std::uint32_t kNoRow = 0xffffffffU;

  struct Row {
    std::size_t pivot;
    std::vector<std::uint16_t> data;  // entries [pivot, dim), data[0] == 1
  };

  void check_dimension(std::size_t n) const {
    if (n != dim_)
      throw ParameterError("vector dimension " + std::to_string(n) + " does not match ambient " +
                           std::to_string(dim_));
  }

  // Eliminates pivot columns from acc left to right. Returns the first
  // non-pivot column with a nonzero entry, or nullopt if acc reduces to 0.
  // Entries of acc stay below 2^46, so reduction mod p is deferred.
  std::optional<std::size_t> reduce(std::vector<std::uint64_t>& acc, std::size_t start) const {
    for (std::size_t c = start; c < dim_; ++c) {
      std::uint64_t x = acc[c] % p_;
      acc[c] = x;
      if (x == 0) continue;
      std::uint32_t r = row_at_[c];
      if (r == kNoRow) return c;
      const std::uint64_t f = p_ - x;
      const std::uint16_t* src = rows_[r].data.data();
      std::uint64_t* dst = acc.data() + c;
      const std::size_t len = dim_ - c;
      for (std::size_t i = 0; i < len; ++i) dst[i] += f * src[i];
    }
    return std::nullopt;
  }

  void adopt(std::vector<std::uint64_t>& acc, std::size_t lead) {
    const std::uint64_t inv = detail::inverse_mod(static_cast<std::uint32_t>(acc[lead] % p_), p_);
    Row r{lead, std::vector<std::uint16_t>(dim_ - lead)};
    for (std::size_t i = lead; i < dim_; ++i)
      r.data[i - lead] = static_cast<std::uint16_t>((acc[i] % p_) * inv % p_);
    row_at_[lead] = static_cast<std::uint32_t>(rows_.size());
    rows_.push_back(std::move(r));
  }

  std::size_t dim_;
  std::uint32_t p_;
  std::vector<Row> rows_;
  std::vector<std::uint32_t> row_at_;
};

// Functional form of FpSubspace::insert.
inline std::pair<FpSubspace, bool> subspace_insert(FpSubspace space, std::span<const std::uint32_t> v) {
  bool inserted = space.insert(v);
  return {std::move(space), inserted};
}

}  // namespace gstower

#endif  // GSTOWER_FP_FREE_ALGEBRA_HPP
