#include "siegel/suites.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <tuple>

#include "siegel/counts.hpp"
#include "siegel/cusps.hpp"
#include "siegel/hecke.hpp"
#include "siegel/random.hpp"
#include "siegel/theta.hpp"

namespace siegel {

namespace {

constexpr size_t kMaxFailing = 5;

CycNumber ipow_c(long long q, long long e) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(q), static_cast<unsigned long>(e));
  return CycNumber(r);
}

CheckResult timed(const std::string& name, int criterion, const std::function<void(CheckResult&)>& body) {
  CheckResult r;
  r.name = name;
  r.criterion = criterion;
  auto t0 = std::chrono::steady_clock::now();
  try {
    body(r);
  } catch (const std::exception& e) {
    r.record(false, json{{"exception", e.what()}});
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

// ---- gauss ----

CheckResult check_g1() {
  return timed("gauss-g1-closed-form", 1, [](CheckResult& r) {
    for (long long q : {3, 5, 7, 11, 13, 17, 19, 23}) {
      CycNumber g = gauss_g1(q);
      long long eps = q % 4 == 1 ? 1 : -1;
      // the closed form is the root of x^2 = (-1/q) q on the positive real or imaginary axis
      std::complex<double> closed = eps == 1 ? std::complex<double>(std::sqrt(double(q)), 0)
                                             : std::complex<double>(0, std::sqrt(double(q)));
      bool ok = g * g == CycNumber(eps * q) && std::abs(g.approx() - closed) < 1e-9;
      r.record(ok, json{{"q", q}, {"value", to_json(g)}});
    }
  });
}

CheckResult check_section5(const SuiteOptions& opt, int which) {
  const char* names[] = {"scaling-random", "conjugation-random", "reduction-random"};
  return timed(names[which], 3, [&](CheckResult& r) {
    Rng rng(opt.seed * 1000003 + static_cast<uint64_t>(which));
    if (which == 0) {
      auto anchor = verify_scaling(IntMatrix{{1}}, IntMatrix{{1}}, 3, 1, opt.gauss_budget);
      r.record(anchor.passed() && anchor.lhs && *anchor.lhs == CycNumber(3), to_json(anchor));
      r.summary["anchor G_1(9)"] = anchor.lhs ? exact_string(*anchor.lhs) : "n/a";
    }
    struct Cell {
      size_t n;
      long long q;
      size_t param;
    };
    std::vector<Cell> cells;
    for (size_t n = 1; n <= 3; ++n)
      for (long long q : {3, 5})
        for (size_t p = 1; p <= n; ++p) cells.push_back({n, q, p});
    int done = 0, misses = 0;
    std::map<std::string, int> per_degree;
    for (size_t i = 0; done < opt.trials; ++i) {
      const Cell& c = cells[i % cells.size()];
      std::optional<PairInstance> inst;
      if (which == 0) inst = random_scaling_instance(rng, c.n, c.q, c.param, opt.gauss_budget);
      if (which == 1) inst = random_conjugation_instance(rng, c.n, c.q, c.param, opt.gauss_budget);
      if (which == 2) inst = random_reduction_instance(rng, c.n, c.q, c.param, opt.gauss_budget);
      if (!inst) {
        if (++misses > 20 * opt.trials + 100) throw std::runtime_error("instance generator keeps failing");
        continue;
      }
      VerifyReport rep = which == 0   ? verify_scaling(inst->M, inst->N, c.q, c.param, opt.gauss_budget)
                         : which == 1 ? verify_conjugation(inst->M, inst->N, c.q, c.param, opt.gauss_budget)
                                      : verify_reduction(inst->M, inst->N, c.q, c.param, opt.gauss_budget);
      r.record(rep.applicable && rep.passed(), to_json(rep));
      ++per_degree["n=" + std::to_string(c.n)];
      ++done;
    }
    r.summary["instances"] = done;
    r.summary["per_degree"] = per_degree;
  });
}

CheckResult check_unimodular(const SuiteOptions& opt) {
  return timed("unimodular-invariance", 4, [&](CheckResult& r) {
    Rng rng(opt.seed * 7919 + 22);
    for (size_t n = 1; n <= 3; ++n)
      for (int t = 0; t < 20; ++t) {
        auto [C, D] = random_coprime_pair(rng, n, 200);
        while (abs(D.det()) < 2) std::tie(C, D) = random_coprime_pair(rng, n, 200);  // G_C(D) = 1 otherwise
        for (int e = 0; e < 20; ++e) {
          IntMatrix E = random_unimodular(rng, n, 5, 2);
          auto rep = verify_unimodular_invariance(C, D, E, opt.gauss_budget);
          r.record(rep.applicable && rep.passed(), to_json(rep));
        }
      }
  });
}

CheckResult check_plus_sign(const SuiteOptions& opt) {
  return timed("plus-type-sign", 6, [&](CheckResult& r) {
    for (long long N : {3, 5, 15}) {
      auto rep = verify_plus_type_sign(N, 2, opt.gauss_budget);
      bool ok = rep.applicable && rep.passed() && rep.rhs && *rep.rhs == CycNumber(2 * N - 1);
      r.record(ok, to_json(rep));
    }
  });
}

// ---- sym ----

CheckResult check_sym() {
  return timed("sym-closed-vs-brute", 2, [](CheckResult& r) {
    r.record(sym_closed(3, CharKind::Trivial, 2, 0) == CycNumber(18), json{{"anchor", "sym_3(2,0)=18"}});
    r.record(sym_closed(3, CharKind::Quadratic, 2, 0) == CycNumber(-6), json{{"anchor", "sym_3^psi(2,0)=-6"}});
    for (long long q : {3, 5})
      for (long long b = 0; b <= 4; ++b)
        for (long long c = 0; b + c <= 4; ++c)
          for (CharKind k : {CharKind::Trivial, CharKind::Quadratic}) {
            CycNumber closed = sym_closed(q, k, b, c), brute = sym_bruteforce(q, k, b, c);
            r.record(closed == brute, json{{"q", q}, {"b", b}, {"c", c}, {"chi", to_string(k)},
                                           {"closed", exact_string(closed)}, {"brute", exact_string(brute)}});
          }
  });
}

// ---- theta ----

CheckResult check_theta(const SuiteOptions& opt) {
  return timed("theta-transformation", 5, [&](CheckResult& r) {
    Rng rng(opt.seed * 31337 + 21);
    double worst = 0;
    for (auto [n, count] : std::vector<std::pair<size_t, int>>{{1, 12}, {2, 4}})
      for (int t = 0; t < count; ++t) {
        IntMatrix g = random_gamma0_4(rng, n, 4);
        for (double eps : {0.0, 0.3}) {
          auto rep = verify_transformation(g, sample_tau(n, eps));
          worst = std::max(worst, rep.rel_error);
          r.record(rep.passed(1e-8), json{{"gamma", to_json(g)}, {"eps", eps}, {"rel_error", rep.rel_error}});
        }
      }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", worst);
    r.summary["worst_rel_error"] = buf;
  });
}

// ---- cusps ----

CheckResult check_cusps() {
  return timed("cusp-types", 11, [](CheckResult& r) {
    Rng rng(17);
    for (auto [N, n] : std::vector<std::pair<long long, size_t>>{{3, 1}, {15, 2}, {3, 3}}) {
      auto types = enumerate_admissible(N, n);
      // count formula, summed independently over (d, d')
      long long per = 0;
      for (size_t d = 0; d <= n; ++d)
        for (size_t dp = 0; d + dp <= n; ++dp) per += (dp > 0 && dp % 2 == 0) ? 2 : 1;
      long long expect = per;
      for (size_t i = 0; i < prime_factors(N).size(); ++i) expect *= static_cast<long long>(n + 1);
      r.record(static_cast<long long>(types.size()) == expect,
               json{{"N", N}, {"n", n}, {"count", types.size()}, {"formula", expect}});
      for (const auto& t : types) {
        IntMatrix m = build_M_sigma(t);
        r.record(classify_cusp(m, N) == t && satisfies_sigma_congruences(m, t),
                 json{{"type", t.to_string()}, {"M", to_json(m)}});
        for (int k = 0; k < 20; ++k) {
          IntMatrix E = random_unimodular(rng, n, 4, 2);
          IntMatrix m2 = E * m * E.transpose();
          r.record(classify_cusp(m2, N) == t, json{{"type", t.to_string()}, {"E", to_json(E)}});
        }
      }
    }
  });
}

// ---- hecke ----

struct CharCase {
  long long N;
  std::string spec;
};

CheckResult check_bad_cross() {
  return timed("coefficient-vs-eigenvalue", 7, [](CheckResult& r) {
    std::vector<CharCase> cases{{3, "trivial"},  {5, "trivial"},  {5, "quadratic@5"},
                                {15, "trivial"}, {15, "quadratic@5"}, {15, "quadratic@3,quadratic@4"}};
    for (const auto& cc : cases)
      for (size_t n = 1; n <= 3; ++n)
        for (long long k : {7, 9}) {
          HalfIntegralContext ctx(n, k, cc.N, DirichletCharacter::parse(4 * cc.N, cc.spec));
          for (long long q : prime_factors(cc.N))
            for (const auto& s : ctx.partitions()) {
              size_t d = s.slot_of(q);
              MultiplicativePartition sp = remove_prime(s, q);
              json where{{"N", cc.N}, {"chi", cc.spec}, {"n", n}, {"k", k}, {"q", q}, {"sigma", s.to_string()}};
              for (size_t j = 1; j <= n; ++j) {
                CycNumber a = A_coeff(ctx, sp, d, j, 0, q), l = lambda_bad(ctx, s, j, q);
                json w = where;
                w["j"] = j;
                w["A"] = exact_string(a);
                w["lambda"] = exact_string(l);
                r.record(a == l, w);
              }
              CycNumber lam = lambda_bad(ctx, s, n, q);
              long long ld = static_cast<long long>(d);
              r.record(lam.conj() * lam == ipow_c(q, 2 * ld * (k - ld - 1)), where);
            }
        }
  });
}

CheckResult check_multiplicity_one() {
  return timed("multiplicity-one", 8, [](CheckResult& r) {
    HalfIntegralContext ctx(2, 9, 15, DirichletCharacter::trivial(60));
    auto rep = multiplicity_one_check(ctx);
    r.record(rep.separated && rep.vectors.size() == 9, json{{"collisions", rep.collisions.size()}});
    for (size_t a = 0; a < rep.vectors.size(); ++a)
      for (size_t b = a + 1; b < rep.vectors.size(); ++b)
        r.record(rep.vectors[a] != rep.vectors[b],
                 json{{"sigma", ctx.partitions()[a].to_string()}, {"rho", ctx.partitions()[b].to_string()}});
    TildeBasis tb = tilde_basis(ctx);
    r.record(tb.unitriangular, json{{"claim", "upper unitriangular"}});
    for (const auto& [q, ok] : tb.residual_zero) r.record(ok, json{{"claim", "zero residual"}, {"q", q}});
    json vecs = json::array();
    for (size_t a = 0; a < rep.vectors.size(); ++a) {
      json row{{"sigma", ctx.partitions()[a].to_string()}};
      for (size_t i = 0; i < rep.primes.size(); ++i)
        row["q=" + std::to_string(rep.primes[i])] = approx_string(rep.vectors[a][i]);
      vecs.push_back(row);
    }
    r.summary["eigenvalue_vectors"] = vecs;
  });
}

// Ẽ_sigma against every T_j(q^2) with the sign-corrected coefficients
CheckResult check_full_diagonalisation() {
  return timed("tilde-diagonalises-all-Tj", 0, [](CheckResult& r) {
    for (const auto& cc : std::vector<CharCase>{{15, "trivial"}, {15, "quadratic@5"}, {21, "gen^1:6@7,quadratic@4"}})
      for (size_t n = 1; n <= 2; ++n) {
        HalfIntegralContext ctx(n, 9, cc.N, DirichletCharacter::parse(4 * cc.N, cc.spec));
        TildeBasis tb = tilde_basis(ctx);
        for (size_t s = 0; s < ctx.partitions().size(); ++s) {
          if (tb.vanishing[s]) continue;
          for (long long q : prime_factors(cc.N))
            for (size_t j = 1; j <= n; ++j)
              r.record(tilde_is_eigenvector(ctx, tb, s, q, j, BadReading::SignCorrected),
                       json{{"N", cc.N}, {"chi", cc.spec}, {"n", n}, {"sigma", ctx.partitions()[s].to_string()},
                            {"q", q}, {"j", j}});
        }
      }
  });
}

CheckResult check_closed_vs_transform() {
  return timed("closed-vs-transform", 9, [](CheckResult& r) {
    std::vector<CharCase> cases{{1, "trivial"},     {1, "quadratic@4"}, {11, "trivial"},
                                {11, "quadratic@11"}, {11, "gen^1:5@11"}, {11, "gen^2:10@11,quadratic@4"}};
    for (const auto& cc : cases)
      for (size_t n = 1; n <= 3; ++n)
        for (long long k : {7, 9}) {
          HalfIntegralContext ctx(n, k, cc.N, DirichletCharacter::parse(4 * cc.N, cc.spec));
          for (long long p : {3, 5, 7})
            for (const auto& s : ctx.partitions())
              for (size_t j = 0; j <= n; ++j) {
                CycNumber a = lambda_prime(ctx, s, j, p, PrimeMode::Closed);
                CycNumber b = lambda_prime(ctx, s, j, p, PrimeMode::ViaTransform);
                r.record(a == b, json{{"N", cc.N}, {"chi", cc.spec}, {"n", n}, {"k", k}, {"p", p},
                                      {"sigma", s.to_string()}, {"j", j}, {"closed", exact_string(a)},
                                      {"transform", exact_string(b)}});
              }
        }
  });
}

CheckResult check_shimura() {
  return timed("shimura-degree-one", 10, [](CheckResult& r) {
    for (long long N : {3, 5, 15})
      for (long long k : {7, 9})
        for (long long p : {5, 7, 11}) {
          if (N % p == 0) continue;
          for (const std::string& spec : {std::string("trivial"), "quadratic@" + std::to_string(prime_factors(N)[0])}) {
            auto chi = DirichletCharacter::parse(4 * N, spec);
            for (const auto& row : shimura_compare(N, k, chi, p))
              r.record(row.equal, json{{"N", N}, {"k", k}, {"p", p}, {"chi", spec}, {"sigma", row.sigma.to_string()},
                                       {"half_integral", exact_string(row.half_integral)},
                                       {"integral", exact_string(row.integral)}});
            if (spec == "trivial") {
              HalfIntegralContext ctx(1, k, N, chi);
              MultiplicativePartition top{{N, 1}};
              r.record(lambda_good(ctx, top, 1, p) == ipow_c(p, k - 2) + CycNumber(1),
                       json{{"anchor", "1+p^(k-2)"}, {"N", N}, {"k", k}, {"p", p}});
            }
          }
        }
  });
}

void append(std::vector<CheckResult>& out, const std::string& suite, const SuiteOptions& opt) {
  if (suite == "gauss") {
    out.push_back(check_g1());
    for (int w = 0; w < 3; ++w) out.push_back(check_section5(opt, w));
    out.push_back(check_unimodular(opt));
    out.push_back(check_plus_sign(opt));
  } else if (suite == "sym") {
    out.push_back(check_sym());
  } else if (suite == "theta") {
    out.push_back(check_theta(opt));
  } else if (suite == "cusps") {
    out.push_back(check_cusps());
  } else if (suite == "hecke") {
    out.push_back(check_bad_cross());
    out.push_back(check_multiplicity_one());
    out.push_back(check_full_diagonalisation());
    out.push_back(check_closed_vs_transform());
    out.push_back(check_shimura());
  } else {
    throw std::invalid_argument("unknown suite '" + suite + "'");
  }
}

}  // namespace

void CheckResult::record(bool ok, const json& detail) {
  ++cases;
  if (ok) return;
  ++failures;
  if (failing.size() < kMaxFailing) failing.push_back(detail);
}

bool SuiteReport::passed() const {
  for (const auto& c : checks)
    if (!c.passed()) return false;
  return !checks.empty();
}

json SuiteReport::to_json(bool with_timings) const {
  json j{{"schema", kSchemaVersion},
         {"suite", suite},
         {"seed", options.seed},
         {"trials", options.trials},
         {"gauss_budget", options.gauss_budget},
         {"passed", passed()}};
  json arr = json::array();
  for (const auto& c : checks) {
    json cj{{"name", c.name}, {"criterion", c.criterion}, {"cases", c.cases}, {"failures", c.failures},
            {"passed", c.passed()}};
    if (!c.summary.empty()) cj["summary"] = c.summary;
    if (!c.failing.empty()) cj["failing"] = c.failing;
    if (with_timings) cj["seconds"] = c.seconds;
    arr.push_back(cj);
  }
  j["checks"] = arr;
  if (with_timings) j["seconds"] = seconds;
  return j;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"gauss", "sym", "theta", "cusps", "hecke", "all"};
  return names;
}

SuiteReport run_suite(const std::string& name, const SuiteOptions& opt) {
  if (opt.trials < 1) throw std::invalid_argument("trials must be positive");
  SuiteReport rep;
  rep.suite = name;
  rep.options = opt;
  auto t0 = std::chrono::steady_clock::now();
  if (name == "all") {
    for (const auto& s : suite_names())
      if (s != "all") append(rep.checks, s, opt);
  } else {
    append(rep.checks, name, opt);
  }
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace siegel
