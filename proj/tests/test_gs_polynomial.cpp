#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

using namespace gstower;

namespace {

GsPolynomial poly(std::vector<Rational> c) { return GsPolynomial::from_coefficients(c); }

const Rational kTol(1, 1 << 20);

// a <= sqrt(x) <= b, exactly.
bool sqrt_between(const Rational& x, const Rational& a, const Rational& b) {
  if (b < 0) return false;
  return (a <= 0 || a * a <= x) && b * b >= x;
}

// Ground truth for P = 1 - D t + R t^2: whether P < 0 somewhere on (0,1),
// and whether [lo, hi] contains the infimum of the negative set.
struct QuadraticTruth {
  bool negative;
};

QuadraticTruth quadratic_truth(const Rational& D, const Rational& R) {
  if (R == 0) return {D > 1};
  if (R < 0) return {1 - D + R < 0};
  Rational disc = D * D - 4 * R;
  if (disc <= 0 || D <= 0) return {false};
  // r1 < 1  <=>  sqrt(disc) > D - 2R
  Rational m = D - 2 * R;
  return {m < 0 || disc > m * m};
}

bool bracket_contains_root(const Rational& D, const Rational& R, const Rational& lo, const Rational& hi) {
  if (R == 0) return lo <= 1 / D && 1 / D <= hi;
  Rational disc = D * D - 4 * R;
  // root (D - sqrt(disc)) / (2R) in [lo, hi]
  if (R > 0) return sqrt_between(disc, D - 2 * R * hi, D - 2 * R * lo);
  return sqrt_between(disc, D - 2 * R * lo, D - 2 * R * hi);
}

}  // namespace

TEST(Eval, Examples) {
  auto p = poly({1, -3, 2});
  EXPECT_EQ(eval(p, Rational(1, 2)), 0);
  EXPECT_EQ(eval(p, Rational(3, 4)), Rational(-1, 8));
  EXPECT_EQ(eval(p, 0), 1);
  EXPECT_EQ(eval(poly({1, 0, 0, 0, 0, 7}), 2), 225);
  EXPECT_THROW(poly({2, 1}), ParameterError);
}

TEST(Witness, Examples) {
  auto w = negativity_witness(poly({1, -3, 2}), kTol);
  ASSERT_TRUE(w);
  EXPECT_LE(w->lo, Rational(1, 2));
  EXPECT_GE(w->hi, Rational(1, 2));
  EXPECT_LE(w->hi - w->lo, kTol);
  EXPECT_LT(eval(poly({1, -3, 2}), w->t0), 0);

  EXPECT_FALSE(negativity_witness(poly({1, -2, 1}), kTol));
  for (int d = 2; d <= 7; ++d) {
    auto lin = negativity_witness(poly({1, -d}), kTol);
    ASSERT_TRUE(lin);
    EXPECT_LE(lin->lo, Rational(1, d));
    EXPECT_GE(lin->hi, Rational(1, d));
  }
  EXPECT_THROW(negativity_witness(poly({1, -3, 2}), 0), ParameterError);
  // Narrow negative dip between two close roots near 0.3.
  // (1 - 10/3 t)(1 - (10/3 + 10^-6 ... )) style: roots 3/10 and 3/10 + 1/10^5.
  Rational r1(3, 10), r2 = r1 + Rational(1, 100000);
  auto dip = poly({1, -(1 / r1 + 1 / r2), 1 / (r1 * r2)});
  auto wd = negativity_witness(dip, kTol);
  ASSERT_TRUE(wd);
  EXPECT_LT(eval(dip, wd->t0), 0);
  EXPECT_LE(wd->lo, r1);
  EXPECT_GE(wd->hi, r1);
  // A double root touches zero without going negative.
  auto touch = poly({1, -4, 4});
  EXPECT_FALSE(negativity_witness(touch, kTol));
  auto touch_then_dip = poly({1, -4, 4}).plus_term(3, Rational(-1, 100));
  auto wt = negativity_witness(touch_then_dip, kTol);
  ASSERT_TRUE(wt);
  EXPECT_LT(eval(touch_then_dip, wt->t0), 0);
  EXPECT_GE(eval(touch_then_dip, wt->lo), 0);
}

TEST(RhoLowerBound, Examples) {
  auto b = rho_lower_bound(poly({1, -3, 2}), kTol);
  ASSERT_TRUE(b);
  EXPECT_LE(*b, 2);
  EXPECT_GE(*b, 2 - Rational(1, 100000));
  EXPECT_EQ(*rho_lower_bound(poly({1, -2}), Rational(1, 1024)), Rational(1024, 513));
  EXPECT_LE(*rho_lower_bound(poly({1, -2}), kTol), 2);
  EXPECT_FALSE(rho_lower_bound(poly({1, -2, 1}), kTol));
}

TEST(Cut, Examples) {
  std::vector<unsigned> two{2, 2}, three{2, 2, 2}, none{}, bad{1};
  EXPECT_EQ(cut(poly({1, -5, 1}), two), poly({1, -5, 3}));
  EXPECT_EQ(cut(poly({1, -5, 1}), none), poly({1, -5, 1}));
  auto p = poly({1, -4, 1});
  EXPECT_TRUE(negativity_witness(cut(p, two), kTol));
  EXPECT_EQ(cut(p, three), poly({1, -4, 4}));
  EXPECT_FALSE(negativity_witness(cut(p, three), kTol));
  EXPECT_THROW(cut(p, bad), InadmissibleCutError);
}

TEST(QForm, Examples) {
  EXPECT_EQ(q_polynomial(50, 339, 100, 3), poly({1, -50, 339, 100}));
  EXPECT_EQ(q_polynomial(50, 339, 0, 3), poly({1, -50, 339}));
  EXPECT_FALSE(negativity_witness(q_polynomial(0, 5, 3, 3), kTol));
  EXPECT_EQ(q_polynomial(1, 2, 3, 3, 2, QExponent::ExactK).degree(), 9u);
  EXPECT_EQ(q_polynomial(1, 2, 3, 3, 2, QExponent::KUniform).degree(), 3u);
  EXPECT_THROW(q_polynomial(-1, 2, 3, 3), ParameterError);
  EXPECT_THROW(q_polynomial(1, 2, 3, 9), ParameterError);

  Rational q = q_at_tn(50, 339, 100, 3);
  EXPECT_EQ(q, 1 - Rational(2500, 1356) + Rational(100 * 125000, 8 * 339 * 339 * Integer(339)));
  EXPECT_EQ(q, eval(q_polynomial(50, 339, 100, 3), Rational(50, 678)));
  EXPECT_LT(q, 0);
  EXPECT_EQ(q_at_tn(4, 4, 0, 3), 0);
  EXPECT_LT(q_at_tn(24, 83, 48, 3), 0);
  EXPECT_THROW(q_at_tn(1, 0, 1, 3), ParameterError);
}

TEST(CertifiedNegativity, Examples) {
  auto c1 = certified_negativity(50, 339, 100, 3);
  EXPECT_TRUE(c1.holds);
  EXPECT_EQ(c1.lhs, 574605000);
  EXPECT_EQ(c1.rhs, 324165752);
  EXPECT_EQ(c1.t_n, Rational(25, 339));
  auto c0 = certified_negativity(24, 83, 48, 3);
  EXPECT_TRUE(c0.holds);
  EXPECT_EQ(c0.lhs, 7936128);
  EXPECT_EQ(c0.rhs, 5237848);
  auto c2 = certified_negativity(2, 10, 0, 3);
  EXPECT_FALSE(c2.holds);
  EXPECT_EQ(c2.lhs, 800);
  EXPECT_EQ(c2.rhs, 8000);
  EXPECT_THROW(certified_negativity(0, 1, 1, 3), ParameterError);
}

TEST(MBound, Examples) {
  EXPECT_EQ(m_lower_bound(50, 339, 100, 3), 625 - 339 - Rational(12500000, 919368) - 1);
  EXPECT_EQ(to_decimal_string(m_lower_bound(50, 339, 100, 3), 2), "271.40");
  EXPECT_EQ(m_lower_bound(10, 4, 0, 3), 20);
  EXPECT_THROW(m_lower_bound(1, 0, 0, 3), ParameterError);
}

TEST(MBound, DiscriminantConsistency) {
  std::mt19937_64 rng(43);
  for (int i = 0; i < 200; ++i) {
    Integer D = 3 + rng() % 30;
    Integer R = D / 2 + 1 + rng() % 40;  // t_n = D/(2R) < 1
    Rational m = m_lower_bound(D, R, 0, 3);
    Integer floor_m = m < 0 ? Integer(-1) : numerator_of(m) / denominator_of(m);
    auto base = poly({1, Rational(-D), Rational(R)});
    for (Integer j = 0; j <= floor_m + 3; ++j) {
      std::vector<unsigned> cuts(static_cast<std::size_t>(j), 2);
      bool predicted = D * D > 4 * (R + j);
      bool found = negativity_witness(cut(base, cuts), kTol).has_value();
      EXPECT_EQ(found, predicted) << "D=" << D << " R=" << R << " j=" << j;
      if (j <= floor_m) {
        EXPECT_TRUE(found);
      }
    }
  }
}

TEST(GsProperties, CertifiedMatchesQSign) {
  std::mt19937_64 rng(47);
  int agree_true = 0, agree_false = 0;
  const unsigned primes[] = {3, 5, 7};
  for (int i = 0; i < 1000; ++i) {
    Rational D(1 + rng() % 400, 1 + rng() % 7);
    Rational R = D / 2 + Rational(1 + rng() % 5000, 1 + rng() % 9);
    Rational Rp(rng() % 3000, 1 + rng() % 5);
    unsigned p = primes[rng() % 3];
    ASSERT_LT(D / (2 * R), 1);
    bool cert = certified_negativity(D, R, Rp, p).holds;
    EXPECT_EQ(cert, q_at_tn(D, R, Rp, p) < 0);
    (cert ? agree_true : agree_false)++;
  }
  EXPECT_GT(agree_true, 50);
  EXPECT_GT(agree_false, 50);
}

TEST(GsProperties, RandomQuadraticsAgainstGroundTruth) {
  std::mt19937_64 rng(53);
  int negatives = 0;
  for (int i = 0; i < 1000; ++i) {
    Rational D(static_cast<long>(rng() % 61) - 10, 1 + rng() % 4);
    Rational R(static_cast<long>(rng() % 401) - 50, 1 + rng() % 6);
    auto p = poly({1, -D, R});
    auto truth = quadratic_truth(D, R);
    auto w = negativity_witness(p, kTol);
    ASSERT_EQ(w.has_value(), truth.negative) << "D=" << D << " R=" << R;
    if (!w) continue;
    ++negatives;
    EXPECT_LT(eval(p, w->t0), 0);
    EXPECT_GE(eval(p, w->lo), 0);
    EXPECT_LE(w->hi - w->lo, kTol);
    EXPECT_TRUE(w->t0 > 0 && w->t0 < 1);
    EXPECT_TRUE(bracket_contains_root(D, R, w->lo, w->hi)) << "D=" << D << " R=" << R;
  }
  EXPECT_GT(negatives, 100);
}

TEST(GsProperties, WitnessValidityAndRhoSoundness) {
  std::mt19937_64 rng(59);
  for (int i = 0; i < 300; ++i) {
    unsigned d = 2 + rng() % 4;
    std::vector<unsigned> depths;
    for (unsigned k = rng() % 8; k > 0; --k) depths.push_back(2 + rng() % 6);
    auto p = GsPolynomial::golod_shafarevich(d, depths);
    auto w = negativity_witness(p, kTol);
    if (!w) {
      // No witness: nonnegative on a fine grid.
      for (int k = 1; k < 256; ++k) EXPECT_GE(eval(p, Rational(k, 256)), 0);
      continue;
    }
    EXPECT_LT(eval(p, w->t0), 0);
    EXPECT_GE(eval(p, w->lo), 0);
    // Every grid point below lo keeps P >= 0 (lo bounds the infimum from below).
    for (int k = 1; k < 64; ++k) {
      Rational t = w->lo * Rational(k, 64);
      EXPECT_GE(eval(p, t), 0);
    }
    // rho bound never exceeds 1/t for negative t in the bracket.
    Rational rho = *rho_lower_bound(p, kTol);
    for (int k = 0; k <= 8; ++k) {
      Rational t = w->lo + (w->hi - w->lo) * Rational(k, 8);
      if (eval(p, t) < 0) {
        EXPECT_LE(rho, 1 / t);
      }
    }
  }
}

TEST(GsProperties, CutMonotonicity) {
  std::mt19937_64 rng(61);
  for (int i = 0; i < 100; ++i) {
    auto p = GsPolynomial::golod_shafarevich(3 + rng() % 3, std::vector<unsigned>{2, 3});
    std::vector<unsigned> add{static_cast<unsigned>(2 + rng() % 4)};
    auto q = cut(p, add);
    for (int k = 1; k < 32; ++k) EXPECT_GT(eval(q, Rational(k, 32)), eval(p, Rational(k, 32)));
    auto wp = negativity_witness(p, kTol), wq = negativity_witness(q, kTol);
    if (wq) {
      ASSERT_TRUE(wp);
      EXPECT_GE(wq->hi, wp->lo);
    }
  }
}
