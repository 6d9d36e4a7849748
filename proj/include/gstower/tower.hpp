#ifndef GSTOWER_TOWER_HPP
#define GSTOWER_TOWER_HPP

// Split-prime Z_p-towers L_n / L: ramification and class-group models,
// Shafarevich dimension formulas, the exact bound profile (D_n, R_n, R'_n)
// and the growth constants derived from it.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "gstower/error.hpp"
#include "gstower/gs_polynomial.hpp"
#include "gstower/rational.hpp"

namespace gstower {

struct LocalPrime {
  unsigned e = 1;  // ramification index over p
  unsigned f = 1;  // inertia degree
  unsigned local_degree() const { return e * f; }
};

struct TowerSpec {
  std::uint32_t p = 3;
  unsigned deg = 0;                 // [L:Q]
  std::vector<LocalPrime> primes;   // primes above p; index 0 is the totally split one
  bool contains_mu_p = true;
  unsigned T1 = 1;
  unsigned T2 = 1;                  // bookkeeping only
  unsigned k = 1;

  unsigned g() const { return static_cast<unsigned>(primes.size()); }
  unsigned d(unsigned i) const { return primes.at(i).local_degree(); }

  // Sum of d_i^2 over i >= 2 (1-based), i.e. every prime but the split one.
  Integer sum_other_squares() const {
    Integer s = 0;
    for (unsigned i = 1; i < g(); ++i) s += Integer(d(i)) * d(i);
    return s;
  }

  void validate() const {
    require_odd_prime(p);
    if (primes.empty()) throw ModelError("tower spec needs at least one prime above p");
    unsigned total = 0;
    for (const auto& q : primes) {
      if (q.e < 1 || q.f < 1) throw ModelError("local data e, f must be >= 1");
      total += q.local_degree();
    }
    if (total != deg)
      throw ModelError("sum of e_i f_i is " + std::to_string(total) + ", expected deg = " + std::to_string(deg));
    if (T1 < 1 || T1 > T2 || T2 > g())
      throw ModelError("need 1 <= T1 <= T2 <= g (T1 = " + std::to_string(T1) + ", T2 = " +
                       std::to_string(T2) + ", g = " + std::to_string(g()) + ")");
    if (k < 1) throw ModelError("k must be >= 1");
  }
};

struct PrimeSplitting {
  unsigned delay = 0;           // a_i
  std::optional<unsigned> cap;  // c_i; nullopt = unbounded
};

// g_i(n) = p^{min(max(n - a_i, 0), c_i)}.
struct DecompositionModel {
  std::vector<PrimeSplitting> primes;

  unsigned split_exponent(unsigned i, unsigned n) const {
    const PrimeSplitting& s = primes.at(i);
    unsigned e = n > s.delay ? n - s.delay : 0;
    return s.cap ? std::min(e, *s.cap) : e;
  }

  Integer g(const TowerSpec& spec, unsigned i, unsigned n) const { return ipow(spec.p, split_exponent(i, n)); }

  void validate(const TowerSpec& spec) const {
    if (primes.size() != spec.g())
      throw ModelError("decomposition model has " + std::to_string(primes.size()) + " primes, spec has " +
                       std::to_string(spec.g()));
    if (primes[0].delay != 0 || primes[0].cap)
      throw ModelError("prime 1 must split completely (split_delay 0, unbounded cap)");
    for (unsigned i = 1; i < spec.g(); ++i) {
      bool unbounded = !primes[i].cap.has_value();
      if (i < spec.T1 && !unbounded)
        throw ModelError("prime " + std::to_string(i + 1) + " <= T1 must have an unbounded split cap");
      if (i >= spec.T1 && unbounded)
        throw ModelError("prime " + std::to_string(i + 1) + " > T1 must have a finite split cap");
    }
  }
};

// s_n = max(0, mu p^n + lambda n + nu)
struct ClassGroupModel {
  Integer mu = 0;
  Integer lambda = 0;
  Integer nu = 0;

  Integer s(std::uint32_t p, unsigned n) const {
    Integer v = mu * ipow(p, n) + lambda * n + nu;
    return v < 0 ? Integer(0) : v;
  }

  void validate() const {
    if (mu < 0 || lambda < 0) throw ModelError("class-group model needs mu, lambda >= 0");
  }
};

struct ShafarevichDims {
  Integer h1;  // d(G_S(L))
  Integer h2;  // r(G_S(L))
};

// h1 = sum g_i + deg/2 + s, h2 = sum g_i - 1 + s.
inline ShafarevichDims shafarevich_dims(const std::vector<Integer>& g_list, const Integer& degree,
                                        const Integer& s) {
  if (degree % 2 != 0) throw ModelError("field degree must be even (totally imaginary)");
  if (s < 0) throw ModelError("class-group dimension must be >= 0");
  Integer sum = 0;
  for (const auto& x : g_list) sum += x;
  return {sum + degree / 2 + s, sum - 1 + s};
}

struct HypothesisCheck {
  unsigned id = 0;
  std::string statement;
  Integer lhs;
  Integer rhs;
  std::string relation;  // ">", ">=", "true"
  bool passed = false;
};

struct HypothesisReport {
  std::vector<HypothesisCheck> checks;
  bool all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
  }
  std::vector<unsigned> failed() const {
    std::vector<unsigned> out;
    for (const auto& c : checks)
      if (!c.passed) out.push_back(c.id);
    return out;
  }
};

inline HypothesisReport check_hypotheses(const TowerSpec& spec) {
  HypothesisReport r;
  const Integer deg = spec.deg;
  r.checks.push_back({1, "g > 1", spec.g(), 1, ">", spec.g() > 1});
  r.checks.push_back({2, "mu_p contained in L", spec.contains_mu_p ? 1 : 0, 1, "true", spec.contains_mu_p});
  Integer d1 = spec.primes.empty() ? 0 : spec.d(0);
  r.checks.push_back({3, "[L:Q] >= 2(d_1 + 1)", deg, 2 * (d1 + 1), ">=", deg >= 2 * (d1 + 1)});
  Integer lhs4 = (deg + 2) * (deg + 2);
  Integer rhs4 = 8 * spec.sum_other_squares();
  r.checks.push_back({4, "([L:Q] + 2)^2 > 8 sum_{i>=2} d_i^2", lhs4, rhs4, ">", lhs4 > rhs4});
  return r;
}

inline std::string describe_failures(const HypothesisReport& r) {
  std::string out;
  for (const auto& c : r.checks) {
    if (c.passed) continue;
    if (!out.empty()) out += "; ";
    out += "(" + std::to_string(c.id) + ") " + c.statement;
    if (c.relation != "true") out += ": " + c.lhs.str() + " " + c.relation + " " + c.rhs.str() + " fails";
  }
  return out;
}

// n_v = [L_{n,v} : Q_p] + 2 = (p^n / g_i(n)) d_i + 2
inline Integer local_unit_rank(const TowerSpec& spec, const DecompositionModel& model, unsigned n, unsigned i) {
  if (!spec.contains_mu_p) throw ModelError("n_v = [L_v:Q_p] + 2 needs mu_p in L");
  return ipow(spec.p, n) / model.g(spec, i, n) * spec.d(i) + 2;
}

struct BoundProfile {
  unsigned n = 0;
  Integer D;                     // d(n)
  Integer r;                     // r(n)
  Integer R;
  Integer Rp;                    // R'_n
  Rational t;                    // D / (2R)
  Integer s;                     // s_n
  std::vector<Integer> g;        // g_i(n)
  std::vector<Integer> n_v;      // per prime i
};

inline Integer binomial2(const Integer& x) { return x * (x - 1) / 2; }

inline BoundProfile bound_profile(const TowerSpec& spec, const DecompositionModel& dm, const ClassGroupModel& cm,
                                  unsigned n) {
  spec.validate();
  dm.validate(spec);
  cm.validate();
  BoundProfile b;
  b.n = n;
  const Integer pn = ipow(spec.p, n);
  b.s = cm.s(spec.p, n);
  Integer sum_g = 0, binomials = 0, rp = 0;
  for (unsigned i = 0; i < spec.g(); ++i) {
    Integer gi = dm.g(spec, i, n);
    Integer local = pn / gi * spec.d(i);
    b.g.push_back(gi);
    b.n_v.push_back(spec.contains_mu_p ? local + 2 : local);
    sum_g += gi;
    binomials += gi * binomial2(local + 2);
    rp += pn * spec.d(i) + 2 * gi;
  }
  b.D = sum_g + pn * spec.deg / 2 + b.s;
  b.r = sum_g - 1 + b.s;
  b.R = b.r + binomials;
  b.Rp = rp;
  b.t = Rational(b.D, 2 * b.R);
  return b;
}

// C_max = 2 sum_{i>=2} d_i^2 / (2 T1 + deg + 2 mu)
inline Rational thm_constant(const TowerSpec& spec, const ClassGroupModel& cm) {
  HypothesisReport r = check_hypotheses(spec);
  if (!r.all_passed()) throw HypothesisError("hypotheses fail: " + describe_failures(r));
  return Rational(2 * spec.sum_other_squares(), 2 * Integer(spec.T1) + spec.deg + 2 * cm.mu);
}

// A = (1 + deg/2)^2, B = sum_{i>=2} d_i^2 / 2
inline Rational constant_A(const TowerSpec& spec) {
  Rational x = Rational(1) + Rational(spec.deg, 2);
  return x * x;
}

inline Rational constant_B(const TowerSpec& spec) { return Rational(spec.sum_other_squares(), 2); }

// Cyclotomic setting L = Q(mu_p)(mu_ell) as used by the corollary: g = ell - 1
// primes above p, each with e = p - 1, f = 1.
inline void require_cyclotomic_parameters(std::uint32_t p, std::uint64_t ell) {
  require_odd_prime(p);
  if (!is_prime(ell)) throw ParameterError("ell = " + std::to_string(ell) + " is not prime");
  if (ell % p != 1)
    throw ParameterError("ell = " + std::to_string(ell) + " is not congruent to 1 mod p = " + std::to_string(p));
}

inline TowerSpec cyclotomic_spec(std::uint32_t p, std::uint64_t ell, unsigned T1 = 1, unsigned k = 1) {
  require_cyclotomic_parameters(p, ell);
  TowerSpec s;
  s.p = p;
  s.primes.assign(ell - 1, LocalPrime{p - 1, 1});
  s.deg = static_cast<unsigned>((p - 1) * (ell - 1));
  s.contains_mu_p = true;
  s.T1 = T1;
  s.T2 = T1;
  s.k = k;
  s.validate();
  return s;
}

// Standard model: primes 1..T1 split completely, the rest stay inert in the
// tower (g_i = 1), s_n = mu p^n.
inline DecompositionModel standard_decomposition(const TowerSpec& spec) {
  DecompositionModel m;
  for (unsigned i = 0; i < spec.g(); ++i) {
    PrimeSplitting s;
    if (i >= spec.T1) s.cap = 0;
    m.primes.push_back(s);
  }
  return m;
}

inline Rational corollary_constant(std::uint32_t p, std::uint64_t ell, unsigned T1, const Integer& mu) {
  require_cyclotomic_parameters(p, ell);
  if (ell < 11) throw HypothesisError("the corollary needs ell >= 11 (ell = " + std::to_string(ell) + ")");
  Rational c(2 * Integer(ell - 2) * (p - 1) * (p - 1), 2 * Integer(T1) + Integer(p - 1) * (ell - 1) + 2 * mu);
  ClassGroupModel cm;
  cm.mu = mu;
  if (thm_constant(cyclotomic_spec(p, ell, T1), cm) != c)
    throw Error("internal: corollary constant disagrees with the theorem constant");
  return c;
}

struct GrowthRow {
  BoundProfile profile;
  bool t_in_unit_interval = false;
  Rational q_at_t;
  NegativityCertificate certificate;
  bool certified = false;
  Rational rho_bound;        // 2R/D
  Rational m_bound;          // exact cut bound, unclamped
  Rational m_over_p2n;
  Rational m_over_pn;
};

struct GrowthTable {
  std::vector<GrowthRow> rows;
  HypothesisReport hypotheses;
  std::optional<Rational> c_max;
  Rational A;
  Rational B;
  Rational A_quarter_minus_B;
  std::optional<unsigned> n0;  // smallest n with every row from n on certified
};

inline unsigned worker_count() {
  unsigned hw = std::max(1U, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("GSTOWER_THREADS")) {
    long v = std::strtol(env, nullptr, 10);
    if (v >= 1) hw = std::min<unsigned>(hw, static_cast<unsigned>(v));
  }
  return hw;
}

inline GrowthRow growth_row(const TowerSpec& spec, const DecompositionModel& dm, const ClassGroupModel& cm,
                            unsigned n) {
  GrowthRow row;
  row.profile = bound_profile(spec, dm, cm, n);
  const BoundProfile& b = row.profile;
  const Rational D(b.D), R(b.R), Rp(b.Rp);
  row.t_in_unit_interval = b.t > 0 && b.t < 1;
  row.q_at_t = q_at_tn(D, R, Rp, spec.p);
  row.certificate = certified_negativity(D, R, Rp, spec.p);
  row.certified = row.t_in_unit_interval && row.certificate.holds;
  row.rho_bound = 2 * R / D;
  row.m_bound = m_lower_bound(D, R, Rp, spec.p);
  Integer pn = ipow(spec.p, n);
  row.m_over_pn = row.m_bound / Rational(pn);
  row.m_over_p2n = row.m_bound / Rational(pn * pn);
  return row;
}

// Rows are computed in parallel (GSTOWER_THREADS caps the worker count) and
// returned in order of n.
inline GrowthTable growth_table(const TowerSpec& spec, const DecompositionModel& dm, const ClassGroupModel& cm,
                                unsigned n_start, unsigned n_end) {
  spec.validate();
  dm.validate(spec);
  cm.validate();
  if (n_start > n_end) throw ParameterError("empty n range");
  if (n_end > 200) throw CapacityError("n range is limited to n <= 200");
  GrowthTable t;
  t.hypotheses = check_hypotheses(spec);
  if (t.hypotheses.all_passed()) t.c_max = thm_constant(spec, cm);
  t.A = constant_A(spec);
  t.B = constant_B(spec);
  t.A_quarter_minus_B = t.A / 4 - t.B;

  const unsigned count = n_end - n_start + 1;
  t.rows.resize(count);
  const unsigned workers = std::min(worker_count(), count);
  std::vector<std::exception_ptr> errors(workers);
  auto work = [&](unsigned w) {
    try {
      for (unsigned i = w; i < count; i += workers) t.rows[i] = growth_row(spec, dm, cm, n_start + i);
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  if (workers <= 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  for (unsigned i = count; i-- > 0;) {
    if (!t.rows[i].certified) break;
    t.n0 = n_start + i;
  }
  return t;
}

}  // namespace gstower

#endif  // GSTOWER_TOWER_HPP
