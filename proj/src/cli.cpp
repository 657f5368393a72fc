#include "seshadri/cli.hpp"

#include "seshadri/bounds.hpp"
#include "seshadri/cache.hpp"
#include "seshadri/error.hpp"
#include "seshadri/fatpoints.hpp"
#include "seshadri/verify.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

namespace seshadri {

namespace {

constexpr const char* kProtocol =
    "alpha is the maximum over seeded random configurations, one per (prime, trial); no nonzero form exists "
    "below it for the reported configuration, and semicontinuity makes it a lower bound on the very general "
    "value, equal to it away from a proper closed set of configurations";

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

int parse_int(const std::string& text, const char* what) {
  try {
    std::size_t used = 0;
    long value = std::stol(text, &used);
    if (used != text.size() || value < std::numeric_limits<int>::min() || value > std::numeric_limits<int>::max()) {
      throw std::invalid_argument(text);
    }
    return static_cast<int>(value);
  } catch (const std::exception&) {
    throw InvalidArgument(std::string("bad ") + what + " '" + text + "'");
  }
}

std::vector<std::uint32_t> parse_primes(const std::string& text) {
  if (text.empty()) return default_primes(2);
  std::vector<std::uint32_t> out;
  for (const auto& item : split(text, ',')) {
    long long value = 0;
    try {
      value = std::stoll(item);
    } catch (const std::exception&) {
      throw InvalidArgument("bad prime '" + item + "'");
    }
    if (value <= 0 || value > std::numeric_limits<std::uint32_t>::max()) throw InvalidArgument("bad prime '" + item + "'");
    PrimeField check(static_cast<std::uint32_t>(value));
    out.push_back(check.modulus());
  }
  if (out.empty()) throw InvalidArgument("empty prime list");
  return out;
}

/// "uniform:m" (needs r) or a comma list.
std::vector<int> parse_mults(const std::string& text, int r) {
  if (text.rfind("uniform:", 0) == 0) {
    if (r < 1) throw InvalidArgument("--mults uniform:m needs --r >= 1");
    int m = parse_int(text.substr(8), "multiplicity");
    if (m < 0) throw InvalidArgument("multiplicities must be non-negative");
    return uniform_mults(static_cast<std::size_t>(r), m);
  }
  std::vector<int> out;
  for (const auto& item : split(text, ',')) {
    int m = parse_int(item, "multiplicity");
    if (m < 0) throw InvalidArgument("multiplicities must be non-negative");
    out.push_back(m);
  }
  if (out.empty()) throw InvalidArgument("empty multiplicity list");
  if (r > 0 && out.size() != static_cast<std::size_t>(r)) {
    throw InvalidArgument("--mults has " + std::to_string(out.size()) + " entries but --r is " + std::to_string(r));
  }
  return out;
}

std::vector<int> parse_int_list(const std::string& text, const char* what) {
  std::vector<int> out;
  for (const auto& item : split(text, ',')) out.push_back(parse_int(item, what));
  return out;
}

PointConfiguration load_points(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot read points file " + path);
  nlohmann::json doc = nlohmann::json::parse(in, nullptr, false);
  if (doc.is_discarded()) throw InvalidArgument("points file " + path + " is not valid JSON");
  try {
    int n = doc.at("n").get<int>();
    std::vector<RationalPoint> points;
    for (const auto& row : doc.at("points")) {
      RationalPoint pt;
      for (const auto& c : row) {
        if (c.is_number_integer()) {
          pt.emplace_back(std::to_string(c.get<long long>()), 10);
        } else if (c.is_string()) {
          pt.push_back(parse_rational(c.get<std::string>()));
        } else {
          throw InvalidArgument("coordinates must be integers or rational strings");
        }
      }
      points.push_back(std::move(pt));
    }
    return PointConfiguration::from_rational(n, std::move(points), doc.value("special", true));
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument("malformed points file " + path + ": " + e.what());
  }
}

struct CommonOptions {
  std::string primes;
  std::uint64_t seed = 0;
  int trials = 2;
};

void add_common(CLI::App* cmd, CommonOptions& common) {
  cmd->add_option("--primes", common.primes, "Comma-separated primes in (2^30, 2^31)");
  cmd->add_option("--seed", common.seed, "Base seed for random configurations");
  cmd->add_option("--trials", common.trials, "Random configurations per prime")->check(CLI::PositiveNumber);
}

// --- alpha -----------------------------------------------------------------

struct AlphaArgs {
  int n = 0;
  int r = 0;
  std::string mults;
  std::string points = "random";
  bool scan = false;
  bool certify = false;
  std::string witness_out;
  std::string cache;
  bool recheck = false;
  CommonOptions common;
};

nlohmann::json compute_alpha(const AlphaArgs& a, AlphaResult& result) {
  const auto primes = parse_primes(a.common.primes);
  if (a.points == "random") {
    if (a.n < 1) throw InvalidArgument("--n must be >= 1");
    std::vector<int> mults = parse_mults(a.mults, a.r);
    result = alpha_generic(a.n, mults, a.common.trials, primes, a.common.seed, a.scan);
  } else {
    PointConfiguration config = load_points(a.points);
    if (a.n != 0 && a.n != config.n()) throw InvalidArgument("--n disagrees with the points file");
    std::vector<int> mults = parse_mults(a.mults, static_cast<int>(config.size()));
    AlphaOptions options;
    options.primes = primes;
    options.scan = a.scan;
    result = alpha(FatPointScheme{std::move(config), std::move(mults)}, options);
  }
  nlohmann::json j = to_json(result);
  j["protocol"] = a.points == "random" ? kProtocol
                                       : "explicit points reduced modulo each prime; alpha is the maximum, and no "
                                         "nonzero form exists below it over the rationals";
  return j;
}

std::string alpha_cache_key(const AlphaArgs& a) {
  nlohmann::json key = {{"cmd", "alpha"},
                        {"n", a.n},
                        {"r", a.r},
                        {"mults", a.mults},
                        {"primes", parse_primes(a.common.primes)},
                        {"seed", a.common.seed},
                        {"trials", a.common.trials},
                        {"scan", a.scan}};
  if (a.points != "random") {
    std::ifstream in(a.points);
    std::stringstream content;
    content << in.rdbuf();
    key["points"] = content.str();
  }
  return key.dump();
}

int run_alpha(const AlphaArgs& a, std::ostream& out, std::ostream& err) {
  std::optional<ResultCache> cache;
  if (auto path = ResultCache::resolve(a.cache)) cache.emplace(*path);
  if (a.recheck && !cache) throw InvalidArgument("--recheck needs --cache or SESHADRI_CACHE");

  const std::string key = cache ? alpha_cache_key(a) : std::string();
  std::vector<nlohmann::json> cached = cache ? cache->lookup(key) : std::vector<nlohmann::json>{};
  const bool need_witness = a.certify || !a.witness_out.empty();
  if (!cached.empty() && !a.recheck && !need_witness) {
    out << cached.front().dump(2) << "\n";
    return kExitOk;
  }

  AlphaResult result;
  nlohmann::json j = compute_alpha(a, result);
  if (a.certify) {
    Certificate cert = certify(result);
    j["certified"] = cert.ok;
    j["certificate"] = cert.detail;
  }
  nlohmann::json stored = j;
  stored.erase("certified");
  stored.erase("certificate");
  if (a.recheck) {
    int mismatches = 0;
    for (const auto& c : cached) {
      if (c.dump() != stored.dump()) ++mismatches;
    }
    err << "recheck: " << cached.size() << " cached entries, " << mismatches << " mismatches\n";
    if (mismatches > 0) {
      err << "error: cached result differs from recomputation\n";
      return kExitUsage;
    }
  }
  if (cache && cached.empty()) cache->append(key, stored);
  if (!a.witness_out.empty()) {
    std::ofstream w(a.witness_out);
    if (!w) throw InvalidArgument("cannot write " + a.witness_out);
    w << witness_json(result).dump() << "\n";
  }
  out << j.dump(2) << "\n";
  if (a.certify && !j["certified"].get<bool>()) return kExitCounterexample;
  return kExitOk;
}

// --- sweep -----------------------------------------------------------------

struct SweepArgs {
  int n = 2;
  int r = 0;
  int mmax = 1;
  std::string format = "json";
  CommonOptions common;
};

int run_sweep(const SweepArgs& a, std::ostream& out) {
  if (a.n < 2) throw InvalidArgument("--n must be >= 2 for Seshadri upper bounds");
  if (a.r < 1) throw InvalidArgument("--r must be >= 1");
  SweepResult s = eps_upper_sweep(a.n, a.r, a.mmax, a.common.trials, parse_primes(a.common.primes), a.common.seed);
  if (a.format == "csv") {
    out << to_csv(s);
  } else {
    out << to_json(s).dump(2) << "\n";
  }
  return kExitOk;
}

// --- bounds ----------------------------------------------------------------

struct BoundsArgs {
  int n = 2;
  std::string ln = "1";
  std::string eps_point = "1";
  int r = 0;
  std::string assume;
  int sweep_mmax = 0;
  CommonOptions common;
};

int run_bounds(const BoundsArgs& a, std::ostream& out) {
  if (a.r < 1) throw InvalidArgument("--r must be >= 1");
  if (a.n < 2) throw InvalidArgument("--n must be >= 2");
  SurfaceContext ctx;
  ctx.n = a.n;
  Rational ln = parse_rational(a.ln);
  if (ln.get_den() != 1 || ln < 1) throw InvalidArgument("--Ln must be a positive integer");
  ctx.self_intersection = ln.get_num();
  if (a.eps_point == "steffens") {
    if (a.n != 2) throw InvalidArgument("--eps-point steffens is only defined for surfaces");
    ctx.eps_point = steffens_lower(ctx.self_intersection);
  } else {
    RadicalValue value = parse_radical(a.eps_point);
    if (value.sign() <= 0) throw InvalidArgument("--eps-point must be positive");
    ctx.eps_point.value = value;
    ctx.eps_point.n = a.n;
    ctx.eps_point.kind = BoundKind::Lower;
    ctx.eps_point.source = "user";
  }
  std::set<Assumption> allowed;
  for (const auto& name : split(a.assume, ',')) allowed.insert(parse_assumption(name));

  std::vector<Bound> extra;
  if (a.sweep_mmax > 0) {
    if (ctx.self_intersection != 1) throw InvalidArgument("--sweep-mmax applies to O(1) on P^n, so --Ln must be 1");
    SweepResult s = eps_upper_sweep(a.n, a.r, a.sweep_mmax, a.common.trials, parse_primes(a.common.primes),
                                    a.common.seed);
    extra.push_back(s.best);
  }
  BoundsReport report = best_bounds(ctx, a.r, allowed, extra);
  out << to_json(report).dump(2) << "\n";
  return kExitOk;
}

// --- verify ----------------------------------------------------------------

struct VerifyArgs {
  std::string suite = "all";
  int n = 0;
  std::string r;
  int mmax = 0;
  int samples = 0;
  bool timing = false;
  CommonOptions common;
};

int run_verify(const VerifyArgs& a, std::ostream& out) {
  VerifyConfig config;
  config.primes = parse_primes(a.common.primes);
  config.seed = a.common.seed;
  config.trials = a.common.trials;
  const std::vector<int> r_list = parse_int_list(a.r, "r");
  const bool all = a.suite == "all";
  if (!all && a.suite != "remark-alpha" && a.suite != "semicontinuity" && a.suite != "axioms") {
    throw InvalidArgument("unknown suite '" + a.suite + "'");
  }

  std::vector<SuiteReport> reports;
  if (all || a.suite == "remark-alpha") {
    if (a.n != 0 || !r_list.empty() || a.mmax != 0) {
      const int n = a.n != 0 ? a.n : 2;
      const std::vector<int> rs = r_list.empty() ? std::vector<int>{1, 4, 9} : r_list;
      reports.push_back(suite_remark_alpha(n, rs, a.mmax != 0 ? a.mmax : 5, config));
    } else {
      SuiteReport plane = suite_remark_alpha(2, {1, 4, 9}, 5, config);
      SuiteReport space = suite_remark_alpha(3, {1, 8}, 2, config);
      plane.attempted += space.attempted;
      plane.passed += space.passed;
      for (auto& c : space.cases) plane.cases.push_back(c);
      for (auto& c : space.counterexamples) plane.counterexamples.push_back(c);
      plane.wall_seconds += space.wall_seconds;
      reports.push_back(std::move(plane));
    }
  }
  if (all || a.suite == "semicontinuity") {
    reports.push_back(suite_semicontinuity(default_semicontinuity_cases(), config));
  }
  if (all || a.suite == "axioms") {
    struct Scale {
      int n, r, mmax, samples;
    };
    std::vector<Scale> scales;
    if (a.n != 0 || !r_list.empty() || a.mmax != 0) {
      const int n = a.n != 0 ? a.n : 2;
      for (int r : r_list.empty() ? std::vector<int>{10} : r_list) {
        scales.push_back({n, r, a.mmax != 0 ? a.mmax : (n == 2 ? 5 : 2), a.samples != 0 ? a.samples : 4});
      }
    } else {
      scales = {{2, 10, 5, a.samples != 0 ? a.samples : 6}, {3, 10, 2, a.samples != 0 ? a.samples : 4}};
    }
    SuiteReport merged;
    merged.name = "axioms";
    for (const Scale& s : scales) {
      SuiteReport part = suite_alpha_axioms(s.n, s.r, sample_mult_pairs(s.r, s.mmax, s.samples, config.seed), config);
      merged.attempted += part.attempted;
      merged.passed += part.passed;
      for (auto& c : part.cases) {
        c["n"] = s.n;
        c["r"] = s.r;
        merged.cases.push_back(c);
      }
      for (auto& c : part.counterexamples) {
        c["n"] = s.n;
        c["r"] = s.r;
        merged.counterexamples.push_back(c);
      }
      merged.wall_seconds += part.wall_seconds;
    }
    reports.push_back(std::move(merged));
  }

  nlohmann::json suites = nlohmann::json::array();
  bool ok = true;
  for (const auto& r : reports) {
    suites.push_back(to_json(r, a.timing));
    ok = ok && r.ok();
  }
  out << nlohmann::json{{"ok", ok}, {"suites", suites}}.dump(2) << "\n";
  return ok ? kExitOk : kExitCounterexample;
}

// --- expdim ----------------------------------------------------------------

struct ExpdimArgs {
  int n = 2;
  int d_max = 6;
  int r_max = 10;
  std::string format = "json";
  CommonOptions common;
};

int run_expdim(const ExpdimArgs& a, std::ostream& out) {
  if (a.n < 2) throw InvalidArgument("--n must be >= 2");
  if (a.d_max < 2) throw InvalidArgument("--d-max must be >= 2");
  if (a.r_max < 1) throw InvalidArgument("--r-max must be >= 1");
  const auto primes = parse_primes(a.common.primes);
  nlohmann::json rows = nlohmann::json::array();
  std::ostringstream csv;
  csv << "n,d,r,columns,conditions,expected_kernel,actual_kernel,ranks,status,table_status,mismatch\n";
  int mismatches = 0;
  for (int d = 2; d <= a.d_max; ++d) {
    for (int r = 1; r <= a.r_max; ++r) {
      const auto mults = uniform_mults(static_cast<std::size_t>(r), 2);
      std::size_t min_kernel = std::numeric_limits<std::size_t>::max();
      KernelDimension last;
      nlohmann::json ranks = nlohmann::json::array();
      for (std::uint32_t p : primes) {
        PrimeField field(p);
        for (int t = 0; t < a.common.trials; ++t) {
          PointConfiguration config =
              PointConfiguration::random(a.n, static_cast<std::size_t>(r), field, a.common.seed + static_cast<std::uint64_t>(t));
          last = kernel_dimension(config.field_points(), mults, a.n, d, field);
          ranks.push_back({{"prime", p}, {"seed", a.common.seed + static_cast<std::uint64_t>(t)}, {"rank", last.rank}});
          min_kernel = std::min(min_kernel, last.kernel);
        }
      }
      const DoublePointStatus status =
          min_kernel == last.expected_kernel ? DoublePointStatus::Regular : DoublePointStatus::Exceptional;
      const DoublePointStatus table = ah_double_point_status(a.n, d, r);
      const bool mismatch = status != table;
      if (mismatch) ++mismatches;
      rows.push_back({{"n", a.n},
                      {"d", d},
                      {"r", r},
                      {"columns", last.columns},
                      {"conditions", last.conditions},
                      {"expected_kernel", last.expected_kernel},
                      {"actual_kernel", min_kernel},
                      {"ranks", ranks},
                      {"status", to_string(status)},
                      {"table_status", to_string(table)},
                      {"mismatch", mismatch}});
      std::string rank_list;
      for (const auto& e : ranks) rank_list += (rank_list.empty() ? "" : ";") + e["rank"].dump();
      csv << a.n << ',' << d << ',' << r << ',' << last.columns << ',' << last.conditions << ','
          << last.expected_kernel << ',' << min_kernel << ',' << rank_list << ',' << to_string(status) << ','
          << to_string(table) << ',' << (mismatch ? "true" : "false") << '\n';
    }
  }
  if (a.format == "csv") {
    out << csv.str();
  } else {
    out << nlohmann::json{{"n", a.n}, {"rows", rows}, {"mismatches", mismatches}}.dump(2) << "\n";
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fat-point interpolation degrees and Seshadri-constant bounds in exact arithmetic", "seshadri"};
  app.require_subcommand(1);
  app.set_version_flag("--version", SESHADRI_VERSION);

  AlphaArgs alpha_args;
  auto* alpha_cmd = app.add_subcommand("alpha", "Minimal degree of a form vanishing to prescribed orders");
  alpha_cmd->add_option("--n", alpha_args.n, "Dimension of projective space");
  alpha_cmd->add_option("--r", alpha_args.r, "Number of points (random configurations)");
  alpha_cmd->add_option("--mults", alpha_args.mults, "Comma list or uniform:m")->required();
  alpha_cmd->add_option("--points", alpha_args.points, "Points JSON file, or 'random'");
  alpha_cmd->add_flag("--scan", alpha_args.scan, "Linear scan over degrees instead of binary search");
  alpha_cmd->add_flag("--certify", alpha_args.certify, "Independently certify the result");
  alpha_cmd->add_option("--witness-out", alpha_args.witness_out, "Write the witness coefficients to a JSON file");
  alpha_cmd->add_option("--cache", alpha_args.cache, "JSON-lines cache file (default $SESHADRI_CACHE)");
  alpha_cmd->add_flag("--recheck", alpha_args.recheck, "Recompute and compare with cached entries");
  add_common(alpha_cmd, alpha_args.common);

  SweepArgs sweep_args;
  auto* sweep_cmd = app.add_subcommand("sweep", "Upper bounds on epsilon from uniform-multiplicity witnesses");
  sweep_cmd->add_option("--n", sweep_args.n, "Dimension of projective space");
  sweep_cmd->add_option("--r", sweep_args.r, "Number of points")->required();
  sweep_cmd->add_option("--mmax", sweep_args.mmax, "Largest uniform multiplicity")->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--format", sweep_args.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  add_common(sweep_cmd, sweep_args.common);

  BoundsArgs bounds_args;
  auto* bounds_cmd = app.add_subcommand("bounds", "Best lower and upper bounds on epsilon(L, r)");
  bounds_cmd->add_option("--n", bounds_args.n, "Dimension of X");
  bounds_cmd->add_option("--Ln", bounds_args.ln, "Self-intersection L^n");
  bounds_cmd->add_option("--eps-point", bounds_args.eps_point, "Radical literal, or 'steffens'");
  bounds_cmd->add_option("--r", bounds_args.r, "Number of points")->required();
  bounds_cmd->add_option("--assume", bounds_args.assume, "Comma list: nagata, very-ample, ns-generator, char0");
  bounds_cmd->add_option("--sweep-mmax", bounds_args.sweep_mmax, "Add sweep upper bounds (O(1) on P^n only)");
  add_common(bounds_cmd, bounds_args.common);

  VerifyArgs verify_args;
  auto* verify_cmd = app.add_subcommand("verify", "Run the property suites");
  verify_cmd->add_option("--suite", verify_args.suite, "remark-alpha, semicontinuity, axioms or all")
      ->check(CLI::IsMember({"remark-alpha", "semicontinuity", "axioms", "all"}));
  verify_cmd->add_option("--n", verify_args.n, "Dimension override");
  verify_cmd->add_option("--r", verify_args.r, "Comma list of point counts");
  verify_cmd->add_option("--mmax", verify_args.mmax, "Largest multiplicity");
  verify_cmd->add_option("--samples", verify_args.samples, "Multiplicity pairs per axioms scale");
  verify_cmd->add_flag("--timing", verify_args.timing, "Include wall time in the reports");
  add_common(verify_cmd, verify_args.common);

  ExpdimArgs expdim_args;
  auto* expdim_cmd = app.add_subcommand("expdim", "Expected vs actual dimensions for double points");
  expdim_cmd->add_option("--n", expdim_args.n, "Dimension of projective space");
  expdim_cmd->add_option("--d-max", expdim_args.d_max, "Largest degree");
  expdim_cmd->add_option("--r-max", expdim_args.r_max, "Largest number of points");
  expdim_cmd->add_option("--format", expdim_args.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  add_common(expdim_cmd, expdim_args.common);

  std::vector<const char*> argv{"seshadri"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << SESHADRI_VERSION << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (alpha_cmd->parsed()) return run_alpha(alpha_args, out, err);
    if (sweep_cmd->parsed()) return run_sweep(sweep_args, out);
    if (bounds_cmd->parsed()) return run_bounds(bounds_args, out);
    if (verify_cmd->parsed()) return run_verify(verify_args, out);
    if (expdim_cmd->parsed()) return run_expdim(expdim_args, out);
  } catch (const DegenerateScheme& e) {
    err << "error: degenerate scheme: " << e.what() << "\n";
    return kExitDegenerate;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace seshadri
