#ifndef GSTOWER_MAGNUS_HPP
#define GSTOWER_MAGNUS_HPP

// Magnus expansion sigma_i -> 1 + u_i of free pro-p group words into the
// truncated free algebra, and the depth function derived from it.

#include <cstdint>

#include "gstower/fp_free_algebra.hpp"
#include "gstower/group_word.hpp"

namespace gstower {

// Depth of a group element: the lowest degree of (expansion - 1). The
// identity, and anything whose depth exceeds N, reports above-truncation
// (the mathematical depth of the identity is infinite).
using DepthValue = Valuation;

inline TruncatedSeries magnus_expand(const GroupWord& w, const AlgebraShape& shape) {
  using Kind = GroupWord::Kind;
  if (w.generator_bound() > shape.generators())
    throw ParameterError("word uses a generator index >= d = " + std::to_string(shape.generators()));
  switch (w.kind()) {
    case Kind::Generator:
      return TruncatedSeries::one(shape) + TruncatedSeries::generator(shape, w.generator_index());
    case Kind::Inverse:
      return series_inverse(magnus_expand(w.operand(), shape));
    case Kind::Power: {
      TruncatedSeries base = magnus_expand(w.operand(), shape);
      std::int64_t k = w.exponent();
      if (k < 0) base = series_inverse(base);
      std::uint64_t magnitude = k < 0 ? static_cast<std::uint64_t>(-(k + 1)) + 1 : static_cast<std::uint64_t>(k);
      return series_pow(std::move(base), magnitude);
    }
    case Kind::Commutator: {
      // [x,y] = x^-1 y^-1 x y
      TruncatedSeries x = magnus_expand(w.left(), shape);
      TruncatedSeries y = magnus_expand(w.right(), shape);
      return series_inverse(x) * series_inverse(y) * x * y;
    }
    case Kind::Product: {
      TruncatedSeries acc = TruncatedSeries::one(shape);
      for (const GroupWord& f : w.factors()) acc = acc * magnus_expand(f, shape);
      return acc;
    }
  }
  return TruncatedSeries::one(shape);
}

inline TruncatedSeries magnus_expand(const GroupWord& w, unsigned d, unsigned n, std::uint32_t p) {
  return magnus_expand(w, AlgebraShape(d, n, p));
}

inline DepthValue depth(const GroupWord& w, const AlgebraShape& shape) {
  DepthValue v = (magnus_expand(w, shape) - TruncatedSeries::one(shape)).lowest_degree();
  return v;
}

inline DepthValue depth(const GroupWord& w, unsigned d, unsigned n, std::uint32_t p) {
  return depth(w, AlgebraShape(d, n, p));
}

}  // namespace gstower

#endif  // GSTOWER_MAGNUS_HPP
