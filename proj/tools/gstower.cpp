// gstower: command-line front end for presentations, tower tables and
// polynomial analysis.
//
// Exit codes: 0 success, 1 input error, 2 inconclusive or no witness,
// 3 hypothesis failure.

#include <algorithm>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gstower/gstower.hpp"

namespace {

using namespace gstower;

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitInconclusive = 2;
constexpr int kExitHypothesis = 3;

enum class Format { Table, Csv, Json };

struct Options {
  Format format = Format::Table;
  std::string tol_text = "1/1000000";
  std::uint64_t seed = 0;

  std::string file = "-";
  unsigned max_degree = 8;

  std::string config = "-";
  unsigned n_start = 0;
  unsigned n_end = 6;
  std::optional<unsigned> k;

  std::string coeffs;
  std::vector<std::string> q;
};

// Rows of cells, printed as an aligned table or as CSV.
class Grid {
 public:
  explicit Grid(std::vector<std::string> header) : header_(std::move(header)) {}
  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

  void print(std::ostream& out, Format format) const {
    if (format == Format::Csv) {
      print_csv_row(out, header_);
      for (const auto& r : rows_) print_csv_row(out, r);
      return;
    }
    std::vector<std::size_t> width(header_.size(), 0);
    auto measure = [&](const std::vector<std::string>& r) {
      for (std::size_t i = 0; i < r.size() && i < width.size(); ++i) width[i] = std::max(width[i], r[i].size());
    };
    measure(header_);
    for (const auto& r : rows_) measure(r);
    auto line = [&](const std::vector<std::string>& r) {
      std::string text;
      for (std::size_t i = 0; i < r.size(); ++i) {
        if (i) text += "  ";
        text += r[i];
        if (i + 1 < r.size()) text.append(width[i] - r[i].size(), ' ');
      }
      out << text << '\n';
    };
    line(header_);
    std::size_t total = 0;
    for (auto w : width) total += w;
    out << std::string(total + 2 * (width.size() - 1), '-') << '\n';
    for (const auto& r : rows_) line(r);
  }

 private:
  static void print_csv_row(std::ostream& out, const std::vector<std::string>& r) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i) out << ',';
      const std::string& c = r[i];
      if (c.find_first_of(",\"\n") != std::string::npos) {
        out << '"';
        for (char ch : c) out << (ch == '"' ? "\"\"" : std::string(1, ch));
        out << '"';
      } else {
        out << c;
      }
    }
    out << '\n';
  }

  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

std::string exact(const Rational& q) { return to_exact_string(q); }
std::string decimal(const Rational& q) { return to_decimal_string(q, 6); }
std::string both(const Rational& q) {
  if (denominator_of(q) == 1) return exact(q);
  return exact(q) + " (" + decimal(q) + ")";
}

Json rational_json(const Rational& q) { return Json{{"exact", exact(q)}, {"decimal", decimal(q)}}; }

std::string join(const std::vector<std::uint64_t>& v, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + std::to_string(v[i]);
  return out;
}

Rational parse_tolerance(const std::string& text) {
  Rational tol = parse_rational(text);
  if (tol <= 0) throw ParameterError("--tol must be positive");
  return tol;
}

// Witness search; InconclusiveError is reported, not thrown.
struct WitnessResult {
  std::optional<NegativityWitness> witness;
  std::optional<std::string> inconclusive;
};

WitnessResult find_witness(const GsPolynomial& poly, const Rational& tol) {
  WitnessResult r;
  try {
    r.witness = negativity_witness(poly, tol);
  } catch (const InconclusiveError& e) {
    r.inconclusive = e.what();
  }
  return r;
}

Json witness_json(const WitnessResult& w) {
  if (w.inconclusive) return Json{{"status", "inconclusive"}, {"reason", *w.inconclusive}};
  if (!w.witness) return Json{{"status", "none"}};
  return Json{{"status", "found"},
              {"t0", rational_json(w.witness->t0)},
              {"inf_lo", rational_json(w.witness->lo)},
              {"inf_hi", rational_json(w.witness->hi)},
              {"rho_lower_bound", rational_json(Rational(1) / w.witness->hi)}};
}

void witness_rows(Grid& g, const WitnessResult& w) {
  if (w.inconclusive) {
    g.add({"witness", "inconclusive", *w.inconclusive});
    return;
  }
  if (!w.witness) {
    g.add({"witness", "none", ""});
    g.add({"rho_lower_bound", "none", ""});
    return;
  }
  g.add({"witness_t0", exact(w.witness->t0), decimal(w.witness->t0)});
  g.add({"inf_lo", exact(w.witness->lo), decimal(w.witness->lo)});
  g.add({"inf_hi", exact(w.witness->hi), decimal(w.witness->hi)});
  Rational rho = Rational(1) / w.witness->hi;
  g.add({"rho_lower_bound", exact(rho), decimal(rho)});
}

int cmd_presentation(const Options& o) {
  Rational tol = parse_tolerance(o.tol_text);
  Presentation pres = load_presentation(o.file);
  const unsigned n = o.max_degree;
  std::vector<DepthValue> depths = relator_depths(pres, n);
  HilbertPrefix h = hilbert_coeffs(pres, n);

  std::optional<GsPolynomial> poly;
  std::optional<std::string> poly_error;
  try {
    poly = gs_polynomial(pres, n);
  } catch (const InconclusiveError& e) {
    poly_error = e.what();
  }
  WitnessResult w;
  if (poly) w = find_witness(*poly, tol);
  std::optional<Rational> rho_est;
  if (n >= 2) rho_est = rho_estimate(h);

  auto label = [&](std::size_t i) {
    return i < pres.labels.size() ? pres.labels[i] : "r" + std::to_string(i + 1);
  };

  if (o.format == Format::Json) {
    Json j;
    j["p"] = pres.p;
    j["generators"] = pres.generator_names;
    j["max_degree"] = n;
    Json rel = Json::array();
    for (std::size_t i = 0; i < depths.size(); ++i)
      rel.push_back({{"label", label(i)},
                     {"word", print_word(pres.relators[i], pres.generator_names)},
                     {"depth", depths[i].to_string()}});
    j["relators"] = rel;
    j["coefficients"] = h.coeffs;
    j["stabilized"] = h.stabilized;
    j["coefficient_sum"] = h.total();
    if (poly)
      j["gs_polynomial"] = poly->to_string();
    else
      j["gs_polynomial"] = Json{{"status", "inconclusive"}, {"reason", *poly_error}};
    if (poly) j["negativity"] = witness_json(w);
    if (rho_est) j["rho_estimate"] = rational_json(*rho_est);
    std::cout << j.dump(2) << '\n';
  } else {
    Grid rel({"relator", "word", "depth"});
    for (std::size_t i = 0; i < depths.size(); ++i)
      rel.add({label(i), print_word(pres.relators[i], pres.generator_names), depths[i].to_string()});
    if (o.format == Format::Table) {
      std::cout << "presentation: d = " << pres.generators() << ", r = " << pres.relator_count()
                << ", p = " << pres.p << ", N = " << n << "\n\n";
      if (!depths.empty()) {
        rel.print(std::cout, o.format);
        std::cout << '\n';
      }
    } else {
      rel.print(std::cout, o.format);
      std::cout << '\n';
    }
    Grid g({"quantity", "value", "detail"});
    g.add({"coefficients", join(h.coeffs, ","), "c_0..c_" + std::to_string(n - 1)});
    g.add({"stabilized", h.stabilized ? "yes" : "no", ""});
    g.add({"coefficient_sum", std::to_string(h.total()), h.stabilized ? "= |G|" : "prefix"});
    if (poly) {
      g.add({"gs_polynomial", poly->to_string(), ""});
      witness_rows(g, w);
    } else {
      g.add({"gs_polynomial", "inconclusive", *poly_error});
    }
    if (rho_est) g.add({"rho_estimate", exact(*rho_est), decimal(*rho_est)});
    g.print(std::cout, o.format);
  }

  if (w.witness || h.stabilized) return kExitOk;
  return kExitInconclusive;
}

int cmd_poly(const Options& o) {
  Rational tol = parse_tolerance(o.tol_text);
  const bool q_form = !o.q.empty();
  if (q_form == !o.coeffs.empty()) throw ParameterError("give exactly one of --coeffs or --q");

  GsPolynomial poly;
  Rational D, R, Rp;
  unsigned p = 0;
  if (q_form) {
    if (o.q.size() != 4) throw ParameterError("--q takes four values: D R Rp p");
    D = parse_rational(o.q[0]);
    R = parse_rational(o.q[1]);
    Rp = parse_rational(o.q[2]);
    Rational pq = parse_rational(o.q[3]);
    if (denominator_of(pq) != 1 || pq < 3 || pq > 65521) throw ParameterError("p must be an odd prime");
    p = static_cast<unsigned>(numerator_of(pq));
    poly = q_polynomial(D, R, Rp, p, o.k.value_or(1));
  } else {
    std::istringstream in(o.coeffs);
    std::vector<Rational> c;
    std::string tok;
    while (in >> tok) {
      try {
        c.push_back(parse_rational(tok));
      } catch (const ParameterError&) {
        throw ParameterError("malformed coefficient '" + tok + "' in --coeffs");
      }
    }
    if (c.empty()) throw ParameterError("--coeffs is empty");
    poly = GsPolynomial::from_coefficients(c);
  }

  WitnessResult w = find_witness(poly, tol);
  std::vector<Rational> grid;
  for (int i = 0; i <= 10; ++i) grid.push_back(Rational(i, 10));

  std::optional<NegativityCertificate> cert;
  std::optional<Rational> q_tn, m_bound;
  if (q_form && D > 0 && R > 0) {
    cert = certified_negativity(D, R, Rp, p);
    q_tn = q_at_tn(D, R, Rp, p);
    m_bound = m_lower_bound(D, R, Rp, p);
  }

  if (o.format == Format::Json) {
    Json j;
    j["polynomial"] = poly.to_string();
    Json ev = Json::array();
    for (const auto& t : grid) ev.push_back({{"t", exact(t)}, {"value", rational_json(eval(poly, t))}});
    j["evaluations"] = ev;
    j["negativity"] = witness_json(w);
    if (cert) {
      j["t_n"] = rational_json(cert->t_n);
      j["q_at_t_n"] = rational_json(*q_tn);
      j["certified"] = cert->holds && cert->t_n_in_unit_interval();
      j["lhs"] = exact(cert->lhs);
      j["rhs"] = exact(cert->rhs);
      j["m_bound"] = rational_json(*m_bound);
    }
    std::cout << j.dump(2) << '\n';
  } else {
    if (o.format == Format::Table) std::cout << "P(t) = " << poly.to_string() << "\n\n";
    Grid ev({"t", "P(t)", "decimal"});
    for (const auto& t : grid) {
      Rational v = eval(poly, t);
      ev.add({exact(t), exact(v), decimal(v)});
    }
    ev.print(std::cout, o.format);
    std::cout << '\n';
    Grid g({"quantity", "value", "detail"});
    if (o.format == Format::Csv) g.add({"polynomial", poly.to_string(), ""});
    witness_rows(g, w);
    if (cert) {
      g.add({"t_n", exact(cert->t_n), decimal(cert->t_n)});
      g.add({"q_at_t_n", exact(*q_tn), decimal(*q_tn)});
      g.add({"certified", cert->holds && cert->t_n_in_unit_interval() ? "true" : "false",
             exact(cert->lhs) + (cert->holds ? " > " : " <= ") + exact(cert->rhs)});
      g.add({"m_bound", exact(*m_bound), decimal(*m_bound)});
    }
    g.print(std::cout, o.format);
  }

  if (w.inconclusive || !w.witness) return kExitInconclusive;
  return kExitOk;
}

void print_hypotheses(std::ostream& out, const HypothesisReport& r, Format f) {
  Grid g({"condition", "statement", "lhs", "relation", "rhs", "result"});
  for (const auto& c : r.checks)
    g.add({"(" + std::to_string(c.id) + ")", c.statement, c.lhs.str(), c.relation, c.rhs.str(),
           c.passed ? "pass" : "fail"});
  g.print(out, f);
}

int cmd_tower(const Options& o) {
  TowerConfig cfg = load_tower_config(o.config);
  if (o.k) {
    if (*o.k < 1) throw ParameterError("--k must be >= 1");
    cfg.spec.k = *o.k;
  }
  HypothesisReport hyp = check_hypotheses(cfg.spec);
  if (!hyp.all_passed()) {
    if (o.format == Format::Json) {
      Json j;
      Json checks = Json::array();
      for (const auto& c : hyp.checks)
        checks.push_back({{"condition", c.id}, {"statement", c.statement}, {"lhs", c.lhs.str()},
                          {"relation", c.relation}, {"rhs", c.rhs.str()}, {"passed", c.passed}});
      j["hypotheses"] = checks;
      j["status"] = "hypothesis-failure";
      std::cout << j.dump(2) << '\n';
    } else {
      print_hypotheses(std::cout, hyp, o.format);
    }
    std::cerr << "error: hypotheses fail: " << describe_failures(hyp) << '\n';
    return kExitHypothesis;
  }

  GrowthTable t = growth_table(cfg.spec, cfg.decomposition, cfg.class_model, o.n_start, o.n_end);
  std::optional<Rational> corollary;
  std::optional<std::string> corollary_refusal;
  if (cfg.ell) {
    try {
      corollary = corollary_constant(cfg.spec.p, *cfg.ell, cfg.spec.T1, cfg.class_model.mu);
    } catch (const HypothesisError& e) {
      corollary_refusal = e.what();
    }
  }

  if (o.format == Format::Json) {
    Json j;
    Json checks = Json::array();
    for (const auto& c : hyp.checks)
      checks.push_back({{"condition", c.id}, {"statement", c.statement}, {"lhs", c.lhs.str()},
                        {"relation", c.relation}, {"rhs", c.rhs.str()}, {"passed", c.passed}});
    j["hypotheses"] = checks;
    j["k"] = cfg.spec.k;
    Json rows = Json::array();
    for (const auto& r : t.rows) {
      const auto& b = r.profile;
      rows.push_back({{"n", b.n},
                      {"D", b.D.str()},
                      {"R", b.R.str()},
                      {"R_prime", b.Rp.str()},
                      {"t_n", rational_json(b.t)},
                      {"q_sign", r.q_at_t.sign()},
                      {"certified", r.certified},
                      {"rho_bound", rational_json(r.rho_bound)},
                      {"m_bound", rational_json(r.m_bound)},
                      {"m_over_p2n", rational_json(r.m_over_p2n)},
                      {"m_over_pn", rational_json(r.m_over_pn)}});
    }
    j["rows"] = rows;
    Json footer;
    footer["C_max"] = rational_json(*t.c_max);
    footer["A"] = rational_json(t.A);
    footer["B"] = rational_json(t.B);
    footer["A_over_4_minus_B"] = rational_json(t.A_quarter_minus_B);
    footer["n0"] = t.n0 ? Json(*t.n0) : Json(nullptr);
    if (corollary) footer["corollary_constant"] = rational_json(*corollary);
    if (corollary_refusal) footer["corollary_refusal"] = *corollary_refusal;
    j["constants"] = footer;
    std::cout << j.dump(2) << '\n';
  } else {
    print_hypotheses(std::cout, hyp, o.format);
    std::cout << '\n';
    const bool csv = o.format == Format::Csv;
    std::vector<std::string> header = {"n", "D_n", "R_n", "R'_n", "t_n"};
    if (csv) header.push_back("t_n_decimal");
    header.insert(header.end(), {"Q_sign", "certified", "rho_bound"});
    if (csv) header.push_back("rho_bound_decimal");
    header.push_back("m_bound");
    if (csv) header.push_back("m_bound_decimal");
    header.insert(header.end(), {"m/p^2n", "m/p^n"});
    Grid g(header);
    for (const auto& r : t.rows) {
      const auto& b = r.profile;
      int s = r.q_at_t.sign();
      std::vector<std::string> row = {std::to_string(b.n), b.D.str(), b.R.str(), b.Rp.str()};
      auto add = [&](const Rational& q) {
        if (csv) {
          row.push_back(exact(q));
          row.push_back(decimal(q));
        } else {
          row.push_back(both(q));
        }
      };
      add(b.t);
      row.push_back(s < 0 ? "-" : s > 0 ? "+" : "0");
      row.push_back(r.certified ? "true" : "false");
      add(r.rho_bound);
      add(r.m_bound);
      row.push_back(decimal(r.m_over_p2n));
      row.push_back(decimal(r.m_over_pn));
      g.add(row);
    }
    g.print(std::cout, o.format);
    std::cout << '\n';
    Grid f({"constant", "exact", "decimal"});
    f.add({"C_max", exact(*t.c_max), decimal(*t.c_max)});
    f.add({"A", exact(t.A), decimal(t.A)});
    f.add({"B", exact(t.B), decimal(t.B)});
    f.add({"A/4-B", exact(t.A_quarter_minus_B), decimal(t.A_quarter_minus_B)});
    f.add({"n0", t.n0 ? std::to_string(*t.n0) : "none", ""});
    if (corollary) f.add({"corollary_constant", exact(*corollary), decimal(*corollary)});
    if (corollary_refusal) f.add({"corollary_constant", "refused", *corollary_refusal});
    f.print(std::cout, o.format);
  }
  return t.n0 ? kExitOk : kExitInconclusive;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Growth invariants of pro-p group presentations and Z_p-towers", "gstower"};
  app.require_subcommand(1);

  std::map<std::string, Format> formats{{"table", Format::Table}, {"csv", Format::Csv}, {"json", Format::Json}};
  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "Output format: table, csv or json")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
    sub->add_option("--tol", o.tol_text, "Bracket tolerance (rational, e.g. 1/1000000)");
    sub->add_option("--seed", o.seed, "Seed (recorded; all pipelines are deterministic)");
  };

  auto* pres = app.add_subcommand("presentation", "Analyse a presentation file");
  pres->add_option("--file", o.file, "Presentation JSON ('-' for stdin)");
  pres->add_option("--max-degree,-N", o.max_degree, "Truncation degree N")->check(CLI::PositiveNumber);
  common(pres);

  auto* tower = app.add_subcommand("tower", "Growth table for a split-prime Z_p-tower");
  tower->add_option("--config", o.config, "Tower config JSON ('-' for stdin)");
  tower->add_option("--n-start", o.n_start, "First level n");
  tower->add_option("--n-end", o.n_end, "Last level n");
  tower->add_option("--k", o.k, "Tower parameter k (overrides the config)");
  common(tower);

  auto* poly = app.add_subcommand("poly", "Analyse a Golod-Shafarevich type polynomial");
  poly->add_option("--coeffs", o.coeffs, "Ascending coefficients, e.g. \"1 -3 2\"");
  poly->add_option("--q", o.q, "Q-form parameters D R Rp p")->expected(4);
  poly->add_option("--k", o.k, "Exponent level k");
  common(poly);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (pres->parsed()) return cmd_presentation(o);
    if (tower->parsed()) return cmd_tower(o);
    return cmd_poly(o);
  } catch (const HypothesisError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitHypothesis;
  } catch (const InconclusiveError& e) {
    std::cerr << "inconclusive: " << e.what() << '\n';
    return kExitInconclusive;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
}
