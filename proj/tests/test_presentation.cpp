#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

using namespace gstower;
using gstower::testing::make_presentation;

namespace {

struct FiniteFixture {
  std::string name;
  std::uint32_t p;
  std::vector<std::string> gens;
  std::vector<std::string> relators;
  std::vector<std::uint32_t> cyclic_orders;
  unsigned max_degree;
};

std::vector<FiniteFixture> finite_fixtures() {
  return {
      {"Z3", 3, {"a"}, {"a^3"}, {3}, 6},
      {"Z9", 3, {"a"}, {"a^9"}, {9}, 12},
      {"Z3xZ3", 3, {"a", "b"}, {"a^3", "b^3", "[a,b]"}, {3, 3}, 8},
      {"Z5", 5, {"a"}, {"a^5"}, {5}, 8},
      {"Z5xZ5", 5, {"a", "b"}, {"a^5", "b^5", "[a,b]"}, {5, 5}, 11},
  };
}

// Span of every sandwich m1 * r * m2 (monomials m1, m2), built independently
// of the worklist closure.
FpSubspace sandwich_span(const Presentation& pres, unsigned n) {
  AlgebraShape s = pres.shape(n);
  FpSubspace span(s.ambient_dimension(), s.prime());
  auto one = TruncatedSeries::one(s);
  for (const auto& r : pres.relators) {
    TruncatedSeries x = magnus_expand(r, s) - one;
    for (std::size_t i = 0; i < s.ambient_dimension(); ++i) {
      auto left = TruncatedSeries::monomial(s, Monomial::from_index(i, s)) * x;
      if (left.terms().empty()) continue;
      for (std::size_t j = 0; j < s.ambient_dimension(); ++j) {
        Monomial m2 = Monomial::from_index(j, s);
        if (m2.degree() + x.lowest_degree().lower_bound() + Monomial::from_index(i, s).degree() > n) break;
        span.insert(left * TruncatedSeries::monomial(s, m2));
      }
    }
  }
  return span;
}

}  // namespace

TEST(RelatorDepths, Examples) {
  EXPECT_EQ(relator_depths(make_presentation(3, {"a"}, {"a^3"}), 6)[0].value(), 3u);
  EXPECT_EQ(relator_depths(make_presentation(3, {"a", "b"}, {"[a,b]"}), 6)[0].value(), 2u);
  EXPECT_THROW(relator_depths(make_presentation(3, {"a"}, {"a"}), 6), NonMinimalPresentationError);
  auto deep = relator_depths(make_presentation(3, {"a"}, {"a^27"}), 10);
  EXPECT_TRUE(deep[0].is_above_truncation());
}

TEST(IdealTruncation, Examples) {
  EXPECT_EQ(ideal_truncation(make_presentation(3, {"a", "b"}, {}), 5).rank(), 0u);

  auto z3 = make_presentation(3, {"a"}, {"a^3"});
  FpSubspace j = ideal_truncation(z3, 4);
  EXPECT_EQ(j.rank(), 2u);
  EXPECT_EQ(j.pivots(), (std::vector<std::size_t>{3, 4}));

  for (unsigned n : {4u, 6u}) {
    auto pres = make_presentation(3, {"a", "b"}, {"a^3", "b^3"});
    FpSubspace closure = ideal_truncation(pres, n);
    FpSubspace oracle = sandwich_span(pres, n);
    EXPECT_EQ(closure.rank(), oracle.rank());
    for (std::size_t piv : oracle.pivots()) EXPECT_TRUE(closure.contains(oracle.row(piv)));
  }
  auto mixed = make_presentation(5, {"a", "b", "c"}, {"[a,b] c^5", "[b,c]^2 a^25"});
  FpSubspace closure = ideal_truncation(mixed, 5);
  FpSubspace oracle = sandwich_span(mixed, 5);
  EXPECT_EQ(closure.rank(), oracle.rank());
}

TEST(HilbertCoeffs, Examples) {
  HilbertPrefix free2 = hilbert_coeffs(make_presentation(3, {"a", "b"}, {}), 9);
  for (unsigned n = 0; n < 9; ++n) EXPECT_EQ(free2.coeffs[n], 1ull << n);
  EXPECT_FALSE(free2.stabilized);

  HilbertPrefix z3 = hilbert_coeffs(make_presentation(3, {"a"}, {"a^3"}), 6);
  EXPECT_EQ(z3.coeffs, (std::vector<std::uint64_t>{1, 1, 1, 0, 0, 0}));
  EXPECT_TRUE(z3.stabilized);

  HilbertPrefix z33 = hilbert_coeffs(make_presentation(3, {"a", "b"}, {"a^3", "b^3", "[a,b]"}), 8);
  EXPECT_EQ(z33.coeffs, (std::vector<std::uint64_t>{1, 2, 3, 2, 1, 0, 0, 0}));
  EXPECT_TRUE(z33.stabilized);
  EXPECT_EQ(z33.total(), 9u);

  // No zero reached yet: trailing behaviour is unknown.
  HilbertPrefix short_z33 = hilbert_coeffs(make_presentation(3, {"a", "b"}, {"a^3", "b^3", "[a,b]"}), 5);
  EXPECT_FALSE(short_z33.stabilized);
  EXPECT_EQ(short_z33.coeffs, (std::vector<std::uint64_t>{1, 2, 3, 2, 1}));
}

TEST(FiniteGroupOracle, Examples) {
  EXPECT_EQ(finite_group_oracle(MultiplicationTable::abelian({3}), 3, 3).coeffs,
            (std::vector<std::uint64_t>{1, 1, 1}));
  EXPECT_EQ(finite_group_oracle(MultiplicationTable::abelian({3, 3}), 3, 5).coeffs,
            (std::vector<std::uint64_t>{1, 2, 3, 2, 1}));
  EXPECT_EQ(finite_group_oracle(MultiplicationTable::abelian({9}), 3, 9).coeffs,
            std::vector<std::uint64_t>(9, 1));
  EXPECT_THROW(finite_group_oracle(MultiplicationTable::abelian({6}), 3, 4), ParameterError);
  EXPECT_THROW(MultiplicationTable({{0, 1}, {0, 1}}), ParameterError);
}

TEST(FiniteGroupOracle, NonAbelianHeisenberg) {
  // Heisenberg group mod 3 (order 27), elements (x, y, z) with
  // (x,y,z)(x',y',z') = (x+x', y+y', z+z'+x y').
  std::vector<std::vector<std::uint32_t>> t(27, std::vector<std::uint32_t>(27));
  auto enc = [](unsigned x, unsigned y, unsigned z) { return x + 3 * y + 9 * z; };
  for (unsigned a = 0; a < 27; ++a)
    for (unsigned b = 0; b < 27; ++b) {
      unsigned x = a % 3, y = a / 3 % 3, z = a / 9, x2 = b % 3, y2 = b / 3 % 3, z2 = b / 9;
      t[a][b] = enc((x + x2) % 3, (y + y2) % 3, (z + z2 + x * y2) % 3);
    }
  MultiplicationTable heis(t);
  HilbertPrefix oracle = finite_group_oracle(heis, 3, 12);
  EXPECT_EQ(oracle.total(), 27u);
  HilbertPrefix pipeline =
      hilbert_coeffs(make_presentation(3, {"a", "b"}, {"a^3", "b^3", "[[a,b],a]", "[[a,b],b]"}), 12);
  EXPECT_EQ(pipeline.coeffs, oracle.coeffs);
}

TEST(Zassenhaus, Examples) {
  EXPECT_EQ(zassenhaus_dims(MultiplicationTable::abelian({3}), 3, 4).a, (std::vector<unsigned>{1, 0, 0, 0}));
  EXPECT_EQ(zassenhaus_dims(MultiplicationTable::abelian({9}), 3, 5).a, (std::vector<unsigned>{1, 0, 1, 0, 0}));
  EXPECT_EQ(zassenhaus_dims(MultiplicationTable::abelian({1}), 3, 3).a, (std::vector<unsigned>{0, 0, 0}));
  EXPECT_EQ(zassenhaus_dims(MultiplicationTable::abelian({3, 9}), 3, 4).a, (std::vector<unsigned>{2, 0, 1, 0}));
}

TEST(GsPolynomialFromPresentation, Examples) {
  EXPECT_EQ(gs_polynomial(make_presentation(3, {"a", "b", "c"}, {"[a,b]", "[b,c]"}), 4).to_string(),
            "1 - 3t + 2t^2");
  EXPECT_EQ(gs_polynomial(make_presentation(3, {"a"}, {"a^3"}), 4).to_string(), "1 - t + t^3");
  EXPECT_EQ(gs_polynomial(make_presentation(3, {"a", "b"}, {}), 4).to_string(), "1 - 2t");
  EXPECT_THROW(gs_polynomial(make_presentation(3, {"a"}, {"a^9"}), 6), InconclusiveError);
}

TEST(Vinberg, Examples) {
  auto z3 = make_presentation(3, {"a"}, {"a^3"});
  VinbergReport r = vinberg_check(hilbert_coeffs(z3, 6), gs_polynomial(z3, 6), Rational(1, 2));
  EXPECT_EQ(r.hilbert_value, Rational(7, 4));
  EXPECT_EQ(r.poly_value, Rational(5, 8));
  EXPECT_EQ(r.product, Rational(35, 32));
  EXPECT_EQ(r.outcome, VinbergOutcome::CertifiedHolds);

  auto free2 = make_presentation(3, {"a", "b"}, {});
  // Free group at t = 1/3: the prefix gives exactly 1 - (2/3)^N, approaching
  // the true value 1 from below, so a truncated H cannot certify here.
  for (unsigned n = 2; n <= 8; ++n) {
    VinbergReport f = vinberg_check(hilbert_coeffs(free2, n), gs_polynomial(free2, n), Rational(1, 3));
    EXPECT_EQ(f.product, 1 - rpow(Rational(2, 3), n));
    EXPECT_EQ(f.outcome, VinbergOutcome::Inconclusive);
  }
  // With one relator added the prefix does certify: <a,b | a^3> at t = 1/3.
  auto one_rel = make_presentation(3, {"a", "b"}, {"a^3"});
  VinbergReport c = vinberg_check(hilbert_coeffs(one_rel, 8), gs_polynomial(one_rel, 8), Rational(1, 3));
  EXPECT_GE(c.product, 1);
  EXPECT_EQ(c.outcome, VinbergOutcome::CertifiedHolds);
  EXPECT_EQ(vinberg_check(hilbert_coeffs(free2, 6), gs_polynomial(free2, 6), Rational(3, 4)).outcome,
            VinbergOutcome::Inconclusive);

  // A stabilized H paired with a polynomial that is too small is a violation.
  EXPECT_EQ(vinberg_check(hilbert_coeffs(z3, 6), GsPolynomial::from_coefficients(std::vector<Rational>{1, -1}),
                          Rational(1, 2))
                .outcome,
            VinbergOutcome::Violation);
  EXPECT_THROW(vinberg_check(hilbert_coeffs(z3, 6), gs_polynomial(z3, 6), Rational(1)), ParameterError);
  EXPECT_THROW(vinberg_check(hilbert_coeffs(z3, 6), gs_polynomial(z3, 6), Rational(0)), ParameterError);
}

TEST(RhoEstimate, Examples) {
  EXPECT_EQ(rho_estimate(hilbert_coeffs(make_presentation(3, {"a", "b"}, {}), 10)), Rational(2));
  EXPECT_EQ(rho_estimate(hilbert_coeffs(make_presentation(3, {"a"}, {"a^3"}), 8)), Rational(0));
  HilbertPrefix h = hilbert_coeffs(make_presentation(3, {"a", "b"}, {"a^3", "b^3"}), 10);
  Rational rho = rho_estimate(h);
  EXPECT_GT(rho, 1);
  EXPECT_LT(rho, 2);
  // Brute-force check of the definition: (rho)^n <= c_n for the maximizing n,
  // and (rho + 10^-6)^n > c_n for every n in range.
  Rational up = rho + Rational(1, 1000000);
  bool attained = false;
  for (unsigned n = 5; n < 10; ++n) {
    EXPECT_GT(rpow(up, n), Rational(h.coeffs[n]));
    attained = attained || rpow(rho, n) <= Rational(h.coeffs[n]);
  }
  EXPECT_TRUE(attained);
}

TEST(PresentationProperties, OracleEqualityAndMass) {
  for (const auto& f : finite_fixtures()) {
    HilbertPrefix h = hilbert_coeffs(make_presentation(f.p, f.gens, f.relators), f.max_degree);
    HilbertPrefix o = finite_group_oracle(MultiplicationTable::abelian(f.cyclic_orders), f.p, f.max_degree);
    EXPECT_EQ(h.coeffs, o.coeffs) << f.name;
    EXPECT_TRUE(h.stabilized) << f.name;
    std::uint64_t order = 1;
    for (auto m : f.cyclic_orders) order *= m;
    EXPECT_EQ(h.total(), order) << f.name;
  }
}

TEST(PresentationProperties, FreeGroupLaw) {
  for (unsigned d = 1; d <= 3; ++d) {
    unsigned n = d == 3 ? 7 : 9;
    std::vector<std::string> names = default_generator_names(d);
    HilbertPrefix h = hilbert_coeffs(make_presentation(5, names, {}), n);
    std::uint64_t expect = 1;
    for (unsigned k = 0; k < n; ++k, expect *= d) EXPECT_EQ(h.coeffs[k], expect);
  }
}

TEST(PresentationProperties, MonotonicityAndGsRecursion) {
  std::vector<std::string> pool{"a^3", "b^3", "[a,b]", "[a,b]^3", "[[a,b],a]", "a^9 [b,a]", "[[a,b],b] a^3"};
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 12; ++trial) {
    std::vector<std::string> rel;
    std::vector<std::uint64_t> prev;
    for (int step = 0; step < 3; ++step) {
      rel.push_back(pool[rng() % pool.size()]);
      auto pres = make_presentation(3, {"a", "b"}, rel);
      const unsigned n = 8;
      HilbertPrefix h = hilbert_coeffs(pres, n);
      if (!prev.empty()) {
        for (unsigned k = 0; k < n; ++k) EXPECT_LE(h.coeffs[k], prev[k]);
      }
      prev = h.coeffs;
      auto depths = relator_depths(pres, n);
      for (unsigned k = 1; k < n; ++k) {
        std::int64_t rhs = 2 * static_cast<std::int64_t>(h.coeffs[k - 1]);
        for (const auto& w : depths)
          if (w.is_finite() && w.value() <= k) rhs -= static_cast<std::int64_t>(h.coeffs[k - w.value()]);
        EXPECT_GE(static_cast<std::int64_t>(h.coeffs[k]), rhs) << "n = " << k;
      }
    }
  }
}
