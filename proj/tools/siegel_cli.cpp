#include <cstdio>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "siegel/cusps.hpp"
#include "siegel/hecke.hpp"
#include "siegel/io.hpp"
#include "siegel/suites.hpp"

using namespace siegel;

namespace {

// bad input that the parser cannot see (level, prime, character)
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

long long level_to_N(long long level) {
  if (level < 4 || level % 4 != 0) throw UsageError("level must be 4N with N odd squarefree, got " + std::to_string(level));
  long long N = level / 4;
  if (N % 2 == 0 || !is_squarefree(N))
    throw UsageError("level must be 4N with N odd squarefree, got " + std::to_string(level));
  return N;
}

DirichletCharacter parse_character(long long level, const std::string& spec) {
  try {
    return DirichletCharacter::parse(level, spec);
  } catch (const std::exception& e) {
    throw UsageError(std::string("bad character: ") + e.what());
  }
}

void print_table(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
  std::vector<size_t> w(header.size());
  for (size_t i = 0; i < header.size(); ++i) w[i] = header[i].size();
  for (const auto& r : rows)
    for (size_t i = 0; i < r.size(); ++i) w[i] = std::max(w[i], r[i].size());
  auto line = [&](const std::vector<std::string>& r) {
    std::string s;
    for (size_t i = 0; i < r.size(); ++i) {
      s += r[i];
      if (i + 1 < r.size()) s += std::string(w[i] - r[i].size() + 2, ' ');
    }
    std::cout << s << "\n";
  };
  line(header);
  for (const auto& r : rows) line(r);
}

void emit(const std::string& format, const json& doc, const std::vector<std::string>& header,
          const std::vector<std::vector<std::string>>& rows) {
  if (format == "json") {
    std::cout << doc.dump(2) << "\n";
  } else if (format == "csv") {
    std::cout << csv_row(header) << "\n";
    for (const auto& r : rows) std::cout << csv_row(r) << "\n";
  } else {
    for (const auto& w : doc.value("warnings", json::array())) std::cerr << "warning: " << w.get<std::string>() << "\n";
    print_table(header, rows);
  }
}

const char* vanishing_name(Vanishing v) {
  switch (v) {
    case Vanishing::Zero: return "zero";
    case Vanishing::Nonvanishing: return "nonvanishing";
    default: return "undetermined";
  }
}

int cmd_cusps(long long level, size_t degree, const std::string& spec, const std::string& format) {
  long long N = level_to_N(level);
  if (degree < 1) throw UsageError("degree must be positive");
  DirichletCharacter chi = parse_character(level, spec);
  json doc{{"schema", kSchemaVersion}, {"command", "cusps"}, {"level", level}, {"degree", degree},
           {"character", chi.spec()}};
  json arr = json::array();
  std::vector<std::vector<std::string>> rows;
  size_t idx = 0;
  for (const auto& t : enumerate_admissible(N, degree)) {
    IntMatrix M = build_M_sigma(t);
    VanishingStatus st = vanishing_status(t, chi);
    json row{{"index", idx},       {"partition", t.partition.to_string()}, {"pattern", t.pattern_string()},
             {"M", to_json(M)},    {"status", vanishing_name(st.value)},   {"reason", st.reason}};
    if (!st.note.empty()) row["note"] = st.note;
    arr.push_back(row);
    rows.push_back({std::to_string(idx), t.partition.to_string(), t.pattern_string(), M.to_string(),
                    vanishing_name(st.value), st.reason});
    ++idx;
  }
  doc["rows"] = arr;
  emit(format, doc, {"index", "partition", "type", "M_sigma", "status", "reason"}, rows);
  return 0;
}

int cmd_verify(const std::string& suite, uint64_t seed, int trials, bool timings, const std::string& out_path) {
  SuiteOptions opt;
  opt.seed = seed;
  opt.trials = trials;
  SuiteReport rep = run_suite(suite, opt);
  std::string text = rep.to_json(timings).dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    FILE* f = std::fopen(out_path.c_str(), "w");
    if (!f) throw std::runtime_error("cannot write " + out_path);
    std::fputs(text.c_str(), f);
    std::fclose(f);
  }
  for (const auto& c : rep.checks)
    std::fprintf(stderr, "%-30s %6lld cases  %s  %.2fs\n", c.name.c_str(), c.cases, c.passed() ? "ok  " : "FAIL",
                 c.seconds);
  std::fprintf(stderr, "suite %s: %s in %.1fs\n", suite.c_str(), rep.passed() ? "pass" : "FAIL", rep.seconds);
  return rep.passed() ? 0 : 1;
}

struct EigenArgs {
  long long level = 0, k = 0, prime = 0;
  size_t degree = 1, j = 1;
  std::string spec = "trivial", op = "good", format = "table", reading = "displayed", mode = "closed";
  std::optional<size_t> partition;
};

int cmd_eigen(const EigenArgs& a) {
  long long N = level_to_N(a.level);
  DirichletCharacter chi = parse_character(a.level, a.spec);
  HalfIntegralContext ctx(a.degree, a.k, N, chi);
  if (a.j > a.degree) throw UsageError("--j must be at most the degree");
  if (a.op == "bad") {
    if (N % a.prime != 0 || !is_prime(a.prime))
      throw UsageError("--op bad needs a prime dividing N = " + std::to_string(N));
    if (!ctx.even_character()) throw UsageError("--op bad needs an even character");
  } else if (N % a.prime == 0 || a.prime == 2 || !is_prime(a.prime)) {
    throw UsageError("--op " + a.op + " needs an odd prime not dividing N = " + std::to_string(N));
  }
  const auto& parts = ctx.partitions();
  if (a.partition && *a.partition >= parts.size())
    throw UsageError("--partition must be below " + std::to_string(parts.size()));

  json doc{{"schema", kSchemaVersion},
           {"command", "eigen"},
           {"context", {{"level", a.level}, {"degree", a.degree}, {"weight_num", a.k}, {"character", chi.spec()}}},
           {"warnings", ctx.warnings()}};
  json arr = json::array();
  std::vector<std::vector<std::string>> rows;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (a.partition && *a.partition != i) continue;
    CycNumber v;
    std::string opname;
    if (a.op == "bad") {
      v = lambda_bad(ctx, parts[i], a.j, a.prime);
      opname = "Tj_q2";
    } else if (a.op == "good") {
      v = lambda_good(ctx, parts[i], a.j, a.prime);
      opname = "Tj_p2";
    } else {
      v = lambda_prime(ctx, parts[i], a.j, a.prime, a.mode == "transform" ? PrimeMode::ViaTransform : PrimeMode::Closed);
      opname = "Tj_prime_p2";
    }
    arr.push_back(json{{"index", i},
                       {"sigma", parts[i].to_string()},
                       {"op", opname},
                       {"prime", a.prime},
                       {"j", a.j},
                       {"value", to_json(v)}});
    rows.push_back({std::to_string(i), parts[i].to_string(), opname, std::to_string(a.prime), std::to_string(a.j),
                    exact_string(v), approx_string(v)});
  }
  doc["rows"] = arr;
  emit(a.format, doc, {"index", "sigma", "op", "prime", "j", "exact", "approx"}, rows);
  return 0;
}

int cmd_shimura(long long level, long long k, long long p, const std::string& spec, const std::string& format) {
  long long N = level_to_N(level);
  DirichletCharacter chi = parse_character(level, spec);
  if (k < 3 || k % 2 == 0) throw UsageError("--weight-num must be odd and at least 3");
  if (N % p == 0 || p == 2 || !is_prime(p)) throw UsageError("--prime must be odd and coprime to N");
  auto rows = shimura_compare(N, k, chi, p);
  json doc{{"schema", kSchemaVersion},
           {"command", "shimura"},
           {"context", {{"level", level}, {"weight_num", k}, {"prime", p}, {"character", chi.spec()}}}};
  json arr = json::array();
  std::vector<std::vector<std::string>> table;
  bool all = true;
  for (const auto& r : rows) {
    all = all && r.equal;
    arr.push_back(json{{"sigma", r.sigma.to_string()},
                       {"half_integral", to_json(r.half_integral)},
                       {"integral", to_json(r.integral)},
                       {"equal", r.equal}});
    table.push_back({r.sigma.to_string(), exact_string(r.half_integral), exact_string(r.integral),
                     r.equal ? "true" : "false"});
  }
  doc["rows"] = arr;
  doc["all_equal"] = all;
  emit(format, doc, {"sigma", "T1(p^2) half-integral", "T(p) integral", "equal"}, table);
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Eisenstein series of half-integral weight: cusp types, Hecke eigenvalues, verification suites"};
  app.require_subcommand(1);
  const std::vector<std::string> formats{"table", "json", "csv"};

  long long level = 0;
  size_t degree = 1;
  std::string spec = "trivial", format = "table";
  auto* cusps = app.add_subcommand("cusps", "admissible cusp types with vanishing status");
  cusps->add_option("--level", level, "level 4N")->required();
  cusps->add_option("--degree", degree, "degree n")->required();
  cusps->add_option("--character", spec, "character spec, e.g. quadratic@3,gen^1:4@5");
  cusps->add_option("--format", format)->check(CLI::IsMember(formats));

  std::string suite = "all", out_path;
  uint64_t seed = 1;
  int trials = 50;
  bool timings = false;
  auto* verify = app.add_subcommand("verify", "run verification suites, JSON report on stdout");
  verify->add_option("--suite", suite)->check(CLI::IsMember(suite_names()));
  verify->add_option("--seed", seed);
  verify->add_option("--trials", trials)->check(CLI::PositiveNumber);
  verify->add_flag("--timings", timings, "include timings in the report");
  verify->add_option("--output", out_path, "write the report here instead of stdout");

  EigenArgs ea;
  auto* eigen = app.add_subcommand("eigen", "Hecke eigenvalues of the tilde basis");
  eigen->add_option("--level", ea.level, "level 4N")->required();
  eigen->add_option("--degree", ea.degree)->required();
  eigen->add_option("--weight-num", ea.k, "odd k, weight k/2")->required();
  eigen->add_option("--character", ea.spec);
  eigen->add_option("--prime", ea.prime)->required();
  eigen->add_option("--op", ea.op)->check(CLI::IsMember({"bad", "good", "prime"}));
  eigen->add_option("--j", ea.j);
  eigen->add_option("--partition", ea.partition, "index into the partition list");
  eigen->add_option("--mode", ea.mode, "for --op prime")->check(CLI::IsMember({"closed", "transform"}));
  eigen->add_option("--format", ea.format)->check(CLI::IsMember(formats));

  long long sk = 0, sp = 0;
  auto* shim = app.add_subcommand("shimura", "degree one comparison with integral weight");
  shim->add_option("--level", level, "level 4N")->required();
  shim->add_option("--weight-num", sk)->required();
  shim->add_option("--prime", sp)->required();
  shim->add_option("--character", spec);
  shim->add_option("--format", format)->check(CLI::IsMember(formats));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*cusps) return cmd_cusps(level, degree, spec, format);
    if (*verify) return cmd_verify(suite, seed, trials, timings, out_path);
    if (*eigen) return cmd_eigen(ea);
    if (*shim) return cmd_shimura(level, sk, sp, spec, format);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
