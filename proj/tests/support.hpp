#ifndef GSTOWER_TESTS_SUPPORT_HPP
#define GSTOWER_TESTS_SUPPORT_HPP

#include <random>
#include <vector>

#include "gstower/gstower.hpp"

namespace gstower::testing {

inline TruncatedSeries random_series(const AlgebraShape& shape, std::mt19937_64& rng, double density = 0.05,
                                     unsigned min_degree = 0) {
  std::bernoulli_distribution keep(density);
  std::uniform_int_distribution<std::int64_t> coeff(1, shape.prime() - 1);
  std::vector<std::pair<Monomial, std::int64_t>> terms;
  for (std::size_t i = shape.degree_offset(min_degree); i < shape.ambient_dimension(); ++i)
    if (keep(rng)) terms.emplace_back(Monomial::from_index(i, shape), coeff(rng));
  return TruncatedSeries::from_terms(shape, std::move(terms));
}

// Random group word over d generators, nesting at most `depth` levels.
inline GroupWord random_word(unsigned d, std::mt19937_64& rng, unsigned depth = 3) {
  std::uniform_int_distribution<int> kind(0, depth == 0 ? 1 : 4);
  std::uniform_int_distribution<unsigned> gen(0, d - 1);
  switch (kind(rng)) {
    case 0:
      return GroupWord::generator(gen(rng));
    case 1:
      return GroupWord::inverse(GroupWord::generator(gen(rng)));
    case 2: {
      std::uniform_int_distribution<int> e(-4, 4);
      return word_power(random_word(d, rng, depth - 1), e(rng));
    }
    case 3:
      return word_commutator(random_word(d, rng, depth - 1), random_word(d, rng, depth - 1));
    default: {
      std::uniform_int_distribution<int> len(2, 3);
      std::vector<GroupWord> f;
      for (int i = len(rng); i > 0; --i) f.push_back(random_word(d, rng, depth - 1));
      return GroupWord::product(f);
    }
  }
}

inline Presentation make_presentation(std::uint32_t p, std::vector<std::string> names,
                                      std::vector<std::string> relators) {
  return Presentation::parse(p, std::move(names), relators);
}

}  // namespace gstower::testing

#endif  // GSTOWER_TESTS_SUPPORT_HPP
