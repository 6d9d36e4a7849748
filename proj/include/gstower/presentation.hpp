#ifndef GSTOWER_PRESENTATION_HPP
#define GSTOWER_PRESENTATION_HPP

// Presentations 1 -> R -> F -> G -> 1 of pro-p groups and the invariants
// computed from them in the truncated algebra A_N = F_p<<u>> / I^{N+1}.
//
// J_N is the image of the closed two-sided ideal generated by the relators'
// Magnus expansions minus 1. For n <= N the quotient (I^n + J)/(I^{n+1} + J)
// is unchanged by working modulo I^{N+1}, so the Hilbert coefficients read
// off J_N carry no truncation error. With echelon pivots at the lowest-degree
// monomial of each row, dim (J cap I^n) = #pivots of degree >= n, hence
//   c_n = d^n - #pivots of degree n.

#include <cstdint>
#include <deque>
#include <span>
#include <string>
#include <vector>

#include "gstower/error.hpp"
#include "gstower/fp_free_algebra.hpp"
#include "gstower/group_word.hpp"
#include "gstower/gs_polynomial.hpp"
#include "gstower/magnus.hpp"
#include "gstower/rational.hpp"

namespace gstower {

struct Presentation {
  std::uint32_t p = 3;
  std::vector<std::string> generator_names;
  std::vector<GroupWord> relators;
  std::vector<std::string> labels;  // optional, one per relator

  unsigned generators() const { return static_cast<unsigned>(generator_names.size()); }
  std::size_t relator_count() const { return relators.size(); }

  // Parses relator texts in the word grammar. Errors carry the relator index.
  static Presentation parse(std::uint32_t p, std::vector<std::string> names,
                            std::span<const std::string> relator_texts,
                            std::vector<std::string> labels = {}) {
    Presentation out;
    out.p = p;
    out.generator_names = std::move(names);
    out.labels = std::move(labels);
    if (!out.labels.empty() && out.labels.size() != relator_texts.size())
      throw ParameterError("labels must match the relator count");
    for (std::size_t i = 0; i < relator_texts.size(); ++i) {
      try {
        out.relators.push_back(parse_word(relator_texts[i], out.generator_names));
      } catch (const ParseError& e) {
        throw ParseError("relator " + std::to_string(i + 1) + " '" + relator_texts[i] + "': " +
                             std::string(e.what()).substr(0, std::string(e.what()).rfind(" at column")),
                         e.position());
      }
    }
    return out;
  }

  AlgebraShape shape(unsigned max_degree) const { return AlgebraShape(generators(), max_degree, p); }
};

// Relator depths at truncation N. A depth of 1 makes the presentation
// non-minimal and is rejected; depths above N come back tagged.
inline std::vector<DepthValue> relator_depths(const Presentation& pres, unsigned max_degree) {
  AlgebraShape shape = pres.shape(max_degree);
  std::vector<DepthValue> out;
  out.reserve(pres.relators.size());
  for (std::size_t i = 0; i < pres.relators.size(); ++i) {
    DepthValue v = depth(pres.relators[i], shape);
    if (v.is_finite() && v.value() == 1)
      throw NonMinimalPresentationError("relator " + std::to_string(i + 1) +
                                        " has depth 1; a minimal presentation needs depth >= 2");
    out.push_back(v);
  }
  return out;
}

namespace detail {

// Appends u_j * v (left) or v * u_j (right) for a dense truncated element.
inline std::vector<std::uint32_t> shift_by_generator(const AlgebraShape& shape,
                                                     std::span<const std::uint32_t> v, unsigned j,
                                                     bool left, bool& nonzero) {
  const unsigned n = shape.max_degree();
  const std::size_t d = shape.generators();
  std::vector<std::uint32_t> out(v.size(), 0);
  nonzero = false;
  for (unsigned k = 0; k < n; ++k) {
    const std::size_t base = shape.degree_offset(k);
    const std::size_t next = shape.degree_offset(k + 1);
    const std::size_t width = shape.words_of_degree(k);
    for (std::size_t w = 0; w < width; ++w) {
      std::uint32_t c = v[base + w];
      if (c == 0) continue;
      std::size_t target = left ? next + j * width + w : next + w * d + j;
      out[target] = c;
      nonzero = true;
    }
  }
  return out;
}

}  // namespace detail

// J_N: closure of {expand(rho_i) - 1} under left and right multiplication
// by every u_j, by worklist saturation.
inline FpSubspace ideal_truncation(const Presentation& pres, unsigned max_degree) {
  AlgebraShape shape = pres.shape(max_degree);
  FpSubspace space(shape.ambient_dimension(), shape.prime());
  std::deque<std::size_t> pending;  // pivots of rows not yet multiplied out
  auto push = [&](std::span<const std::uint32_t> v) {
    if (auto pivot = space.insert_pivot(v)) pending.push_back(*pivot);
  };
  TruncatedSeries one = TruncatedSeries::one(shape);
  for (const GroupWord& r : pres.relators) push((magnus_expand(r, shape) - one).dense());

  while (!pending.empty()) {
    std::size_t pivot = pending.front();
    pending.pop_front();
    std::vector<std::uint32_t> row = space.row(pivot);
    for (unsigned j = 0; j < shape.generators(); ++j) {
      for (bool left : {true, false}) {
        bool nonzero = false;
        std::vector<std::uint32_t> cand = detail::shift_by_generator(shape, row, j, left, nonzero);
        if (nonzero) push(cand);
      }
    }
  }
  return space;
}

struct HilbertPrefix {
  unsigned max_degree = 0;               // N
  std::vector<std::uint64_t> coeffs;     // c_0 .. c_{N-1}
  bool stabilized = false;               // trailing zeros are exact for all larger n

  std::uint64_t total() const {
    std::uint64_t s = 0;
    for (auto c : coeffs) s += c;
    return s;
  }

  // sum_n c_n t^n over the stored prefix (a lower bound for H(t) when t > 0).
  Rational evaluate(const Rational& t) const {
    Rational acc = 0;
    for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * t + Rational(coeffs[i]);
    return acc;
  }
};

// Hilbert coefficients from an already-saturated J_N.
inline HilbertPrefix hilbert_from_ideal(const AlgebraShape& shape, const FpSubspace& ideal) {
  const unsigned n_max = shape.max_degree();
  HilbertPrefix h;
  h.max_degree = n_max;
  h.coeffs.resize(n_max);
  for (unsigned n = 0; n < n_max; ++n) {
    std::size_t lo = shape.degree_offset(n), hi = shape.degree_offset(n + 1);
    h.coeffs[n] = (hi - lo) - ideal.pivots_in_range(lo, hi);
  }
  for (unsigned n = 0; n < n_max; ++n) {
    if (h.coeffs[n] != 0) continue;
    // I^n + J = I^{n+1} + J; additionally require the whole tail in J_N.
    std::size_t lo = shape.degree_offset(n);
    if (ideal.pivots_in_range(lo, shape.ambient_dimension()) == shape.ambient_dimension() - lo) {
      h.stabilized = true;
      for (unsigned m = n; m < n_max; ++m) h.coeffs[m] = 0;
      break;
    }
  }
  return h;
}

inline HilbertPrefix hilbert_coeffs(const Presentation& pres, unsigned max_degree) {
  relator_depths(pres, max_degree);  // rejects depth-1 relators
  AlgebraShape shape = pres.shape(max_degree);
  return hilbert_from_ideal(shape, ideal_truncation(pres, max_degree));
}

// 1 - d t + sum_i t^{depth(rho_i)}; every depth must be resolved below N + 1.
inline GsPolynomial gs_polynomial(const Presentation& pres, unsigned max_degree) {
  std::vector<DepthValue> depths = relator_depths(pres, max_degree);
  std::vector<unsigned> values;
  for (std::size_t i = 0; i < depths.size(); ++i) {
    if (depths[i].is_above_truncation())
      throw InconclusiveError("relator " + std::to_string(i + 1) + " has depth > " +
                              std::to_string(max_degree) + "; raise the truncation degree N");
    values.push_back(depths[i].value());
  }
  return GsPolynomial::golod_shafarevich(pres.generators(), values);
}

enum class VinbergOutcome { CertifiedHolds, Inconclusive, Violation };

inline const char* to_string(VinbergOutcome o) {
  switch (o) {
    case VinbergOutcome::CertifiedHolds: return "certified-holds";
    case VinbergOutcome::Inconclusive: return "inconclusive";
    case VinbergOutcome::Violation: return "violation";
  }
  return "?";
}

struct VinbergReport {
  VinbergOutcome outcome = VinbergOutcome::Inconclusive;
  Rational hilbert_value;  // H_N(t)
  Rational poly_value;     // P(t)
  Rational product;        // H_N(t) * P(t)
};

// Checks H(t) P(t) >= 1 at a rational t in (0,1). A stored prefix bounds H
// from below, so a product >= 1 with P(t) > 0 certifies the inequality. A
// product < 1 is a violation only when H is an exact polynomial (entire).
inline VinbergReport vinberg_check(const HilbertPrefix& h, const GsPolynomial& poly, const Rational& t) {
  if (t <= 0 || t >= 1) throw ParameterError("Vinberg check needs t in (0,1)");
  VinbergReport r;
  r.hilbert_value = h.evaluate(t);
  r.poly_value = eval(poly, t);
  r.product = r.hilbert_value * r.poly_value;
  if (r.poly_value > 0 && r.product >= 1)
    r.outcome = VinbergOutcome::CertifiedHolds;
  else if (h.stabilized && r.poly_value > 0 && r.product < 1)
    r.outcome = VinbergOutcome::Violation;
  else
    r.outcome = VinbergOutcome::Inconclusive;
  return r;
}

namespace detail {

// Largest m with m^n <= x.
inline Integer integer_root(const Integer& x, unsigned n) {
  if (x <= 1 || n == 1) return x;
  Integer lo = 0, hi = 1;
  while (ipow(hi, n) <= x) hi <<= 1;
  while (hi - lo > 1) {
    Integer mid = (lo + hi) / 2;
    if (ipow(mid, n) <= x)
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

}  // namespace detail

// Diagnostic proxy for limsup c_n^{1/n}: max over n in [N/2, N-1] of
// c_n^{1/n}, rounded down to a multiple of 10^-6.
inline Rational rho_estimate(const HilbertPrefix& h) {
  const unsigned n_max = static_cast<unsigned>(h.coeffs.size());
  if (n_max < 2) throw ParameterError("rho_estimate needs N >= 2");
  const Integer scale = 1000000;
  Rational best = 0;
  for (unsigned n = std::max(1U, n_max / 2); n < n_max; ++n) {
    Integer root = detail::integer_root(Integer(h.coeffs[n]) * ipow(scale, n), n);
    best = std::max(best, Rational(root, scale));
  }
  return best;
}

}  // namespace gstower

#endif  // GSTOWER_PRESENTATION_HPP
