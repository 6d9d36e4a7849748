#ifndef GSTOWER_SIGN_ANALYSIS_HPP
#define GSTOWER_SIGN_ANALYSIS_HPP

// Exact search for negative values of a GS polynomial on (0,1).
//
// P is written as O * E^2 where O collects the odd-multiplicity factors
// (Yun's square-free decomposition over Q). P changes sign exactly at the
// roots of O, and O(0) > 0 because P(0) = 1, so
//   P < 0 somewhere on (0,1)  <=>  O has a root in (0,1),
// and inf{t : P(t) < 0} is the smallest such root. Roots of O are located
// by Descartes' rule of signs on dyadic subintervals, down to width 2^-40.

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "gstower/error.hpp"
#include "gstower/gs_polynomial.hpp"
#include "gstower/rational.hpp"

namespace gstower {

inline constexpr unsigned kResolutionFloorBits = 40;

struct NegativityWitness {
  Rational t0;  // P(t0) < 0, t0 in (0,1)
  Rational lo;  // P(lo) >= 0
  Rational hi;  // P(hi) < 0; inf{t : P(t) < 0} lies in [lo, hi]
};

namespace detail {

using QPoly = std::vector<Rational>;  // ascending coefficients
using ZPoly = std::vector<Integer>;

inline void trim(QPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

inline int degree(const QPoly& f) { return static_cast<int>(f.size()) - 1; }

inline QPoly derivative(const QPoly& f) {
  QPoly out;
  for (std::size_t i = 1; i < f.size(); ++i) out.push_back(f[i] * static_cast<long>(i));
  trim(out);
  return out;
}

inline QPoly multiply(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly out(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  trim(out);
  return out;
}

inline QPoly subtract(QPoly a, const QPoly& b) {
  if (a.size() < b.size()) a.resize(b.size(), Rational(0));
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}

// (quotient, remainder)
inline std::pair<QPoly, QPoly> divmod(QPoly a, const QPoly& b) {
  if (b.empty()) throw ParameterError("polynomial division by zero");
  trim(a);
  if (a.size() < b.size()) return {{}, a};
  QPoly q(a.size() - b.size() + 1, Rational(0));
  const Rational& lead = b.back();
  for (std::size_t k = q.size(); k-- > 0;) {
    Rational c = a[k + b.size() - 1] / lead;
    q[k] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) a[k + j] -= c * b[j];
  }
  trim(q);
  a.resize(b.size() - 1);
  trim(a);
  return {q, a};
}

inline QPoly exact_divide(const QPoly& a, const QPoly& b) {
  auto [q, r] = divmod(a, b);
  if (!r.empty()) throw Error("internal: inexact polynomial division");
  return q;
}

inline QPoly monic(QPoly f) {
  if (f.empty()) return f;
  Rational lead = f.back();
  for (auto& c : f) c /= lead;
  return f;
}

inline QPoly gcd(QPoly a, QPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    QPoly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

// O with P = O * E^2, O square-free (up to a positive square factor).
inline QPoly odd_multiplicity_part(const QPoly& f) {
  if (degree(f) <= 0) return f;
  QPoly df = derivative(f);
  QPoly a0 = gcd(f, df);
  if (degree(a0) == 0) return f;
  QPoly b = exact_divide(f, a0);
  QPoly c = exact_divide(df, a0);
  QPoly d = subtract(c, derivative(b));
  QPoly even_root{Rational(1)};  // E = prod a_i^{floor(i/2)}
  for (unsigned i = 1; degree(b) > 0; ++i) {
    QPoly a = gcd(b, d);
    b = exact_divide(b, a);
    c = exact_divide(d, a);
    d = subtract(c, derivative(b));
    for (unsigned r = 0; r < i / 2; ++r) even_root = multiply(even_root, a);
  }
  return exact_divide(f, multiply(even_root, even_root));
}

// Positive scalar multiple with integer coefficients (sign pattern preserved).
inline ZPoly to_integer(const QPoly& f) {
  Integer l = 1;
  for (const Rational& c : f) l = boost::multiprecision::lcm(l, denominator_of(c));
  ZPoly out;
  out.reserve(f.size());
  for (const Rational& c : f) out.push_back(numerator_of(c) * (l / denominator_of(c)));
  return out;
}

inline int sign_of(const Integer& x) { return x.sign(); }

inline Integer pow2(std::size_t e) { return Integer(1) << static_cast<unsigned>(e); }

// sign f(k / 2^j)
inline int sign_at_dyadic(const ZPoly& f, const Integer& k, unsigned j) {
  // 2^{j n} f(k/2^j) = sum c_i k^i 2^{j (n - i)}
  const std::size_t n = f.size() - 1;
  Integer acc = 0;
  for (std::size_t i = f.size(); i-- > 0;) acc = acc * k + f[i] * pow2(j * (n - i));
  return sign_of(acc);
}

inline void taylor_shift_one(ZPoly& f) {
  const std::size_t n = f.size();
  for (std::size_t i = 0; i + 1 < n; ++i)
    for (std::size_t j = n - 1; j-- > i;) f[j] += f[j + 1];
}

// Descartes sign variations of f on (k/2^j, (k+1)/2^j): an upper bound on
// the number of roots there, with the same parity, exact when 0 or 1.
inline unsigned variations(const ZPoly& f, const Integer& k, unsigned j) {
  const std::size_t n = f.size() - 1;
  // g(y) = 2^{j n} f((k + y) / 2^j): scale, then shift by k.
  ZPoly g(f.size());
  for (std::size_t i = 0; i <= n; ++i) g[i] = f[i] * pow2(j * (n - i));
  if (k != 0) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t m = n; m-- > i;) g[m] += k * g[m + 1];
  }
  // h(x) = (x+1)^n g(1/(x+1)): reverse, shift by 1.
  std::reverse(g.begin(), g.end());
  taylor_shift_one(g);
  unsigned changes = 0;
  int last = 0;
  for (const Integer& c : g) {
    int s = sign_of(c);
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

struct RootLocation {
  Integer k;        // interval (k/2^j, (k+1)/2^j), or the exact root k/2^j
  unsigned j;
  bool exact;
};

// Smallest root of the square-free f in (0,1), if any.
inline std::optional<RootLocation> smallest_root(const ZPoly& f, const Integer& k, unsigned j) {
  unsigned v = variations(f, k, j);
  if (v == 0) return std::nullopt;
  if (v == 1) return RootLocation{k, j, false};
  if (j >= kResolutionFloorBits)
    throw InconclusiveError("root isolation reached the resolution floor 2^-40 without a certificate");
  if (auto left = smallest_root(f, 2 * k, j + 1)) return left;
  if (sign_at_dyadic(f, 2 * k + 1, j + 1) == 0) return RootLocation{2 * k + 1, j + 1, true};
  return smallest_root(f, 2 * k + 1, j + 1);
}

inline Rational dyadic(const Integer& k, unsigned j) { return Rational(k, Integer(1) << j); }

}  // namespace detail

// Witness t0 with P(t0) < 0 and a bracket [lo, hi] of width <= tol around
// inf{t in (0,1) : P(t) < 0}; nullopt when P >= 0 on (0,1).
// Throws InconclusiveError if root isolation hits the 2^-40 floor.
inline std::optional<NegativityWitness> negativity_witness(const GsPolynomial& poly, const Rational& tol) {
  using namespace detail;
  if (tol <= 0) throw ParameterError("tolerance must be positive");
  QPoly odd = odd_multiplicity_part(poly.dense());
  if (degree(odd) <= 0) return std::nullopt;  // P is a positive constant times a square
  ZPoly f = to_integer(odd);

  std::optional<RootLocation> root = smallest_root(f, Integer(0), 0);
  if (!root) return std::nullopt;

  // Reduce all bracket points to a common dyadic scale (k / 2^j).
  Integer lo_k, hi_k;
  unsigned j = root->j;
  auto negative_at = [&](const Integer& k, unsigned scale) {
    return sign_at_dyadic(f, k, scale) < 0 && eval(poly, dyadic(k, scale)) < 0;
  };
  auto width_ok = [&](const Integer& lo, const Integer& hi, unsigned scale) {
    return dyadic(hi - lo, scale) <= tol;
  };
  if (root->exact) {
    // lo is the root itself; move hi right until P(hi) < 0.
    lo_k = root->k;
    hi_k = root->k + 1;
    while (!width_ok(lo_k, hi_k, j) || !negative_at(hi_k, j) || hi_k >= (Integer(1) << j)) {
      lo_k <<= 1;
      hi_k = lo_k + 1;
      ++j;
    }
  } else {
    lo_k = root->k;
    hi_k = root->k + 1;
    while (!width_ok(lo_k, hi_k, j) || !negative_at(hi_k, j) || hi_k >= (Integer(1) << j)) {
      lo_k <<= 1;
      hi_k <<= 1;
      ++j;
      Integer mid = lo_k + 1;
      int s = sign_at_dyadic(f, mid, j);
      if (s > 0) {
        lo_k = mid;
      } else if (s < 0) {
        hi_k = mid;
      } else {
        // mid is the (unique) root in the bracket: it becomes lo, and hi
        // shrinks toward it.
        lo_k = mid;
        while (!width_ok(lo_k, hi_k, j) || !negative_at(hi_k, j) || hi_k >= (Integer(1) << j)) {
          lo_k <<= 1;
          hi_k = lo_k + 1;
          ++j;
        }
        break;
      }
    }
  }
  NegativityWitness w;
  w.lo = dyadic(lo_k, j);
  w.hi = dyadic(hi_k, j);
  w.t0 = w.hi;
  return w;
}

// 1/hi for the negativity bracket: a valid (slightly conservative) lower
// bound for the growth rate; nullopt when P has no negative value on (0,1).
inline std::optional<Rational> rho_lower_bound(const GsPolynomial& poly, const Rational& tol) {
  auto w = negativity_witness(poly, tol);
  if (!w) return std::nullopt;
  return Rational(1) / w->hi;
}

}  // namespace gstower

#endif  // GSTOWER_SIGN_ANALYSIS_HPP
