#ifndef GSTOWER_GS_POLYNOMIAL_HPP
#define GSTOWER_GS_POLYNOMIAL_HPP

// Golod-Shafarevich type polynomials 1 - d t + sum t^{w_i} (+ Q-form terms),
// their exact evaluation, cutting, and the closed forms attached to
// Q(t) = 1 - D t + R t^2 + R' t^p.

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "gstower/error.hpp"
#include "gstower/rational.hpp"

namespace gstower {

class GsPolynomial {
 public:
  using CoefficientMap = std::map<unsigned, Rational>;

  GsPolynomial() { coeffs_[0] = 1; }

  explicit GsPolynomial(CoefficientMap coeffs) : coeffs_(std::move(coeffs)) {
    std::erase_if(coeffs_, [](const auto& kv) { return kv.second == 0; });
    auto it = coeffs_.find(0);
    if (it == coeffs_.end() || it->second != 1)
      throw ParameterError("Golod-Shafarevich polynomials must have constant coefficient 1");
  }

  // Ascending coefficients c_0, c_1, ...
  static GsPolynomial from_coefficients(std::span<const Rational> ascending) {
    CoefficientMap m;
    for (std::size_t e = 0; e < ascending.size(); ++e)
      if (ascending[e] != 0) m[static_cast<unsigned>(e)] = ascending[e];
    return GsPolynomial(std::move(m));
  }

  // 1 - d t + sum_i t^{depths[i]}
  static GsPolynomial golod_shafarevich(unsigned d, std::span<const unsigned> depths) {
    CoefficientMap m;
    m[0] = 1;
    m[1] -= d;
    for (unsigned w : depths) m[w] += 1;
    return GsPolynomial(std::move(m));
  }

  const CoefficientMap& coefficients() const noexcept { return coeffs_; }

  Rational coefficient(unsigned exponent) const {
    auto it = coeffs_.find(exponent);
    return it == coeffs_.end() ? Rational(0) : it->second;
  }

  unsigned degree() const { return coeffs_.rbegin()->first; }

  std::vector<Rational> dense() const {
    std::vector<Rational> out(degree() + 1);
    for (const auto& [e, c] : coeffs_) out[e] = c;
    return out;
  }

  // Adds c * t^exponent (constant term must stay 1).
  GsPolynomial plus_term(unsigned exponent, const Rational& c) const {
    CoefficientMap m = coeffs_;
    m[exponent] += c;
    return GsPolynomial(std::move(m));
  }

  std::string to_string() const {
    std::string out;
    for (const auto& [e, c] : coeffs_) {
      bool negative = c < 0;
      Rational mag = negative ? Rational(-c) : c;
      if (out.empty())
        out += negative ? "-" : "";
      else
        out += negative ? " - " : " + ";
      bool unit = mag == 1 && e != 0;
      if (!unit) {
        std::string text = to_exact_string(mag);
        out += (denominator_of(mag) != 1 && e != 0) ? "(" + text + ")" : text;
      }
      if (e >= 1) out += "t";
      if (e >= 2) out += "^" + std::to_string(e);
    }
    return out;
  }

  friend bool operator==(const GsPolynomial&, const GsPolynomial&) = default;

 private:
  CoefficientMap coeffs_;
};

inline Rational eval(const GsPolynomial& poly, const Rational& t) {
  // Horner over the sparse exponents, highest first.
  Rational acc = 0;
  unsigned prev = poly.degree();
  for (auto it = poly.coefficients().rbegin(); it != poly.coefficients().rend(); ++it) {
    acc *= rpow(t, prev - it->first);
    acc += it->second;
    prev = it->first;
  }
  return acc * rpow(t, prev);
}

// P + sum_i t^{depths[i]}. Every depth must be >= 2 (admissible cutting datum).
inline GsPolynomial cut(const GsPolynomial& poly, std::span<const unsigned> depths) {
  GsPolynomial::CoefficientMap m = poly.coefficients();
  for (unsigned w : depths) {
    if (w < 2)
      throw InadmissibleCutError("cutting element of depth " + std::to_string(w) +
                                 " is not admissible (depth must be >= 2)");
    m[w] += 1;
  }
  return GsPolynomial(std::move(m));
}

enum class QExponent {
  KUniform,  // R' t^p, a majorant valid for every k >= 1 on (0,1)
  ExactK     // R' t^{p^k}
};

inline void require_odd_prime(std::uint64_t p) {
  if (p == 2 || !is_prime(p)) throw ParameterError("p = " + std::to_string(p) + " is not an odd prime");
}

// 1 - D t + R t^2 + R' t^p (or t^{p^k} in ExactK mode).
inline GsPolynomial q_polynomial(const Rational& D, const Rational& R, const Rational& Rp, unsigned p,
                                 unsigned k = 1, QExponent mode = QExponent::KUniform) {
  require_odd_prime(p);
  if (D < 0 || R < 0 || Rp < 0) throw ParameterError("Q-polynomial parameters must be nonnegative");
  if (k < 1) throw ParameterError("k must be >= 1");
  std::uint64_t top = p;
  if (mode == QExponent::ExactK) {
    top = 1;
    for (unsigned i = 0; i < k; ++i) {
      top *= p;
      if (top > (1U << 20)) throw CapacityError("t^{p^k} exponent is too large");
    }
  }
  GsPolynomial::CoefficientMap m;
  m[0] = 1;
  m[1] -= D;
  m[2] += R;
  m[static_cast<unsigned>(top)] += Rp;
  return GsPolynomial(std::move(m));
}

// t_n = D / (2R), where the quadratic part of Q attains its minimum.
inline Rational q_minimizer(const Rational& D, const Rational& R) {
  if (R == 0) throw ParameterError("R must be nonzero");
  return D / (2 * R);
}

// Q(t_n) = 1 - D^2/(4R) + R' D^p / (2^p R^p)
inline Rational q_at_tn(const Rational& D, const Rational& R, const Rational& Rp, unsigned p) {
  require_odd_prime(p);
  if (R == 0) throw ParameterError("R must be nonzero");
  return Rational(1) - D * D / (4 * R) + Rp * rpow(D, p) / (rpow(Rational(2), p) * rpow(R, p));
}

struct NegativityCertificate {
  bool holds = false;
  Rational lhs;  // 2^{p-2} R^{p-1} D^2
  Rational rhs;  // 2^p R^p + R' D^p
  Rational t_n;  // D / (2R); the certificate is meaningful only for t_n in (0,1)

  bool t_n_in_unit_interval() const { return t_n > 0 && t_n < 1; }
};

// Exact test of 2^{p-2} R^{p-1} D^2 > 2^p R^p + R' D^p, equivalent to
// Q(t_n) < 0 after clearing the positive denominator 2^p R^p.
inline NegativityCertificate certified_negativity(const Rational& D, const Rational& R, const Rational& Rp,
                                                  unsigned p) {
  require_odd_prime(p);
  if (D <= 0 || R <= 0) throw ParameterError("certified_negativity requires D > 0 and R > 0");
  if (Rp < 0) throw ParameterError("R' must be nonnegative");
  NegativityCertificate c;
  c.lhs = rpow(Rational(2), p - 2) * rpow(R, p - 1) * D * D;
  c.rhs = rpow(Rational(2), p) * rpow(R, p) + Rp * rpow(D, p);
  c.holds = c.lhs > c.rhs;
  c.t_n = D / (2 * R);
  return c;
}

// Lower bound for the number of admissible cuts preserving negativity:
// D^2/4 - R - R' D^p / (2^p R^{p-1}) - 1. May be negative.
inline Rational m_lower_bound(const Rational& D, const Rational& R, const Rational& Rp, unsigned p) {
  require_odd_prime(p);
  if (R == 0) throw ParameterError("R must be nonzero");
  return D * D / 4 - R - Rp * rpow(D, p) / (rpow(Rational(2), p) * rpow(R, p - 1)) - 1;
}

}  // namespace gstower

#endif  // GSTOWER_GS_POLYNOMIAL_HPP
