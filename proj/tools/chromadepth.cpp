// chromadepth: command line front end for the library.  Every subcommand
// reads and writes the JSON formats described in the README and emits one
// run report on stdout.
//
// Exit codes: 0 all checks pass, 1 a checked property failed (the report
// names the failing seed), 2 malformed input or bad usage.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "chroma/io.hpp"

using namespace chroma;

namespace {

struct RunReport {
  std::string command;
  std::string inputs;  // digest of whatever the command consumed
  Json results = Json::object();
  Json violations = Json::array();
  std::optional<std::uint64_t> seed;
  long elapsed_ms = 0;
};

// FNV-1a: we only need a stable fingerprint tying a report to its inputs,
// nothing cryptographic.
std::string digest(const std::string& payload) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : payload) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << h;
  return out.str();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void print_report(const RunReport& r, const std::string& format) {
  if (format == "json") {
    Json j{{"command", r.command},
           {"inputs", r.inputs},
           {"results", r.results},
           {"violations", r.violations},
           {"elapsed_ms", r.elapsed_ms}};
    if (r.seed) j["seed"] = *r.seed;
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::cout << "command: " << r.command << "\n";
  std::cout << "inputs: " << r.inputs << "\n";
  if (r.seed) std::cout << "seed: " << *r.seed << "\n";
  for (const auto& [key, value] : r.results.items())
    std::cout << key << ": "
              << (value.is_string() ? value.get<std::string>() : value.dump())
              << "\n";
  if (r.violations.empty()) {
    std::cout << "violations: none\n";
  } else {
    for (const Json& v : r.violations)
      std::cout << "violation: " << v.dump() << "\n";
  }
  std::cout << "elapsed_ms: " << r.elapsed_ms << "\n";
}

std::string join_sizes(const std::vector<std::size_t>& v) {
  std::ostringstream out;
  for (std::size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << v[i];
  return out.str();
}

std::uint64_t random_seed() {
  std::random_device rd;
  return (std::uint64_t(rd()) << 32) | rd();
}

// ----------------------------------------------------------------- csd

void run_csd(RunReport& r, const std::string& file, bool list,
             bool assert_bound) {
  r.command = "csd";
  std::string raw = slurp(file);
  r.inputs = digest(raw);
  ColorfulConfiguration c = config_from_json(Json::parse(raw));
  DepthReport rep = hitting_simplices(c);

  Json sizes = Json::array();
  for (const auto& cls : c.classes) sizes.push_back(cls.size());
  r.results = Json{{"dimension", c.dim},
                   {"class_sizes", sizes},
                   {"csd", rep.csd},
                   {"bound", rep.bound},
                   {"satisfies_bound", rep.satisfies_bound},
                   {"centered", is_centered(c)},
                   {"relative_general_position", is_relative_general_position(c)}};
  if (list) {
    Json hits = Json::array();
    for (const ColorfulSimplex& s : rep.hitting) hits.push_back(members_to_json(s));
    r.results["hitting"] = hits;
  }
  if (assert_bound && !rep.satisfies_bound)
    r.violations.push_back(
        Json{{"check", "bound"},
             {"detail", "csd " + std::to_string(rep.csd) + " exceeds bound " +
                            std::to_string(rep.bound)}});
}

// ----------------------------------------------------------------- verify

std::size_t pool_size(std::size_t jobs) {
  std::size_t n = std::thread::hardware_concurrency();
  if (n == 0) n = 1;
  if (const char* env = std::getenv("CHROMADEPTH_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end && *end == '\0' && v >= 1) n = std::size_t(v);
  }
  return std::max<std::size_t>(1, std::min(n, jobs));
}

struct SeedOutcome {
  std::uint64_t seed = 0;
  std::size_t csd = 0;
  Json violations = Json::array();
  Json config;  // filled only on failure, for the reproducer file
};

void run_verify(RunReport& r, const std::vector<std::size_t>& shape,
                std::size_t seeds, std::uint64_t base_seed,
                std::vector<std::string> checks, long coord_bound,
                bool corrupt) {
  r.command = "verify";
  r.inputs = digest("shape=" + join_sizes(shape));
  r.seed = base_seed;

  if (shape.size() < 2)
    throw std::invalid_argument("verify needs at least two classes");
  if (checks.empty()) checks = {"bound", "betti", "euler", "lower"};
  for (const std::string& c : checks)
    if (c != "bound" && c != "betti" && c != "euler" && c != "lower")
      throw std::invalid_argument("unknown check '" + c + "'");
  auto want = [&](const char* name) {
    return std::find(checks.begin(), checks.end(), name) != checks.end();
  };

  std::size_t d = shape.size() - 1;
  r.results = Json{{"shape", shape},
                   {"seeds", seeds},
                   {"checks", checks},
                   {"coord_bound", coord_bound}};

  // the rain complex depends on the shape alone, so check it once
  if (want("betti")) {
    BettiVector rb = betti_gf2(rain_complex(shape));
    std::uint64_t expect = 1;
    for (std::size_t ni : shape) expect *= std::uint64_t(ni - 1);
    bool ok = d < rb.size() && rb[d] == expect;
    for (std::size_t k = 0; k < d && k < rb.size(); ++k)
      if (rb[k] != 0) ok = false;
    r.results["rain_betti"] = rb;
    if (!ok)
      r.violations.push_back(
          Json{{"check", "betti"},
               {"detail", "rain complex betti numbers are off for shape " +
                              join_sizes(shape)}});
  }

  std::vector<SeedOutcome> outcomes(seeds);
  std::atomic<std::size_t> next{0};
  auto work = [&]() {
    for (std::size_t i = next.fetch_add(1); i < seeds; i = next.fetch_add(1)) {
      SeedOutcome& o = outcomes[i];
      o.seed = base_seed + i;
      auto fail = [&](const char* check, const std::string& detail) {
        o.violations.push_back(
            Json{{"seed", o.seed}, {"check", check}, {"detail", detail}});
      };
      ColorfulConfiguration cfg;
      try {
        cfg = random_centered_rgp(shape, o.seed, coord_bound);
        if (corrupt)  // test hook: slide the instance off the origin
          for (auto& cls : cfg.classes)
            for (QVec& p : cls) p[0] += Rat(3 * coord_bound);

        if (!is_centered(cfg)) {
          fail("generator", "instance is not centered");
        } else if (!is_relative_general_position(cfg)) {
          fail("generator", "instance is not in relative general position");
        } else {
          DepthReport rep = hitting_simplices(cfg);
          o.csd = rep.csd;
          if (want("bound") && !rep.satisfies_bound)
            fail("bound", "csd " + std::to_string(rep.csd) + " exceeds " +
                              std::to_string(rep.bound));
          if (want("betti")) {
            BettiVector av = betti_gf2(avoiding_complex(cfg));
            std::size_t b = d - 1 < av.size() ? av[d - 1] : 0;
            if (b != 1)
              fail("betti", "avoiding complex has reduced betti " +
                                std::to_string(b) + " in degree " +
                                std::to_string(d - 1));
          }
          if (want("euler") && !verify_euler_identity(cfg).identity_holds)
            fail("euler", "depth does not match the Euler identity");
          if (want("lower")) {
            if (rep.csd < 1) fail("lower", "no hitting simplex");
            bool cubic = true;
            for (std::size_t ni : shape) cubic = cubic && ni == d + 1;
            if (cubic) {
              bool interior = true;
              for (const auto& cls : cfg.classes)
                interior = interior && origin_containment(cls).in_interior;
              if (interior && rep.csd < 1 + d * d)
                fail("lower", "csd " + std::to_string(rep.csd) +
                                  " below 1 + d^2 on a full-dimensional core");
            }
          }
        }
      } catch (const std::exception& e) {
        fail("exception", e.what());
      }
      if (!o.violations.empty() && !cfg.classes.empty())
        o.config = config_to_json(cfg);
    }
  };

  std::vector<std::thread> workers;
  for (std::size_t t = 0; t < pool_size(seeds); ++t) workers.emplace_back(work);
  for (std::thread& t : workers) t.join();

  std::size_t lo = 0, hi = 0;
  for (std::size_t i = 0; i < seeds; ++i) {
    const SeedOutcome& o = outcomes[i];
    if (i == 0 || o.csd < lo) lo = o.csd;
    if (o.csd > hi) hi = o.csd;
    for (const Json& v : o.violations) r.violations.push_back(v);
  }
  r.results["csd_min"] = lo;
  r.results["csd_max"] = hi;

  for (const SeedOutcome& o : outcomes)
    if (!o.violations.empty()) {
      r.results["failing_seed"] = o.seed;
      if (!o.config.is_null()) {
        save_json("chromadepth_reproducer.json", o.config);
        r.results["reproducer"] = "chromadepth_reproducer.json";
      }
      break;
    }
}

// ----------------------------------------------------------------- tmf

void run_tmf(RunReport& r, const std::string& file,
             const std::vector<std::size_t>& extremal, bool fans) {
  r.command = "tmf";
  std::vector<SimplexV> simplices;
  if (!extremal.empty() && !file.empty())
    throw std::invalid_argument("give either a simplices file or --extremal");
  if (!extremal.empty()) {
    simplices = extremal_minkowski(extremal);
    r.inputs = digest("extremal=" + join_sizes(extremal));
  } else if (!file.empty()) {
    std::string raw = slurp(file);
    r.inputs = digest(raw);
    simplices = simplices_from_json(Json::parse(raw));
  } else {
    throw std::invalid_argument("give either a simplices file or --extremal");
  }

  std::vector<MinkowskiFace> facets = totally_mixed_facets(simplices);
  std::uint64_t bound = 1;
  Json dims = Json::array();
  for (const SimplexV& s : simplices) {
    bound *= std::uint64_t(s.dim());
    dims.push_back(s.dim());
  }
  bound += 1;

  Json sel = Json::array();
  for (const MinkowskiFace& f : facets) sel.push_back(f.selection);
  r.results = Json{{"summands", simplices.size()},
                   {"dims", dims},
                   {"count", facets.size()},
                   {"bound", bound},
                   {"facets", sel}};
  if (facets.size() > bound)
    r.violations.push_back(
        Json{{"check", "tmf-bound"},
             {"detail", std::to_string(facets.size()) +
                            " totally mixed facets exceed bound " +
                            std::to_string(bound)}});

  if (fans) {
    std::vector<Fan3> f3;
    for (const SimplexV& s : simplices) f3.push_back(fan_from_triangle(s));
    FanIntersection fi = intersect_fans(f3);
    r.results["fan_cones"] = fi.maximal_cones;
    r.results["fans_match"] = fi.maximal_cones == facets.size();
    if (fi.maximal_cones != facets.size())
      r.violations.push_back(
          Json{{"check", "fan-cross-check"},
               {"detail", std::to_string(fi.maximal_cones) +
                              " maximal cones vs " +
                              std::to_string(facets.size()) + " facets"}});
  }
}

// ----------------------------------------------------------------- flip

void run_flip_verify(RunReport& r, const std::string& file, bool strict) {
  r.command = "flip";
  std::string raw = slurp(file);
  r.inputs = digest(raw);
  FlipPath path = flip_path_from_json(Json::parse(raw));
  if (strict) path.mode = FlipMode::STRICT;
  FlipCertificate cert = verify_flip(path);
  r.results = Json{
      {"mode", path.mode == FlipMode::STRICT ? "strict" : "certificate"},
      {"certificate", certificate_to_json(cert)}};
  if (!cert.valid)
    r.violations.push_back(Json{
        {"check", "flip-certificate"},
        {"detail", cert.endpoints_ok ? "hitting sets do not toggle across the ridge"
                                     : "endpoints rejected"}});
}

void run_flip_walk(RunReport& r, const std::vector<std::string>& files,
                   std::size_t retries, std::uint64_t seed) {
  r.command = "flip";
  std::string raw1 = slurp(files[0]);
  std::string raw2 = slurp(files[1]);
  r.inputs = digest(raw1 + "\n" + raw2);
  r.seed = seed;
  ColorfulConfiguration a = config_from_json(Json::parse(raw1));
  ColorfulConfiguration b = config_from_json(Json::parse(raw2));
  FlipWalkResult walk = flip_walk(a, b, retries, seed);

  Json flips = Json::array();
  for (const FlipPath& p : walk.flips) flips.push_back(flip_path_to_json(p));
  r.results = Json{{"success", walk.success},
                   {"flip_count", walk.flips.size()},
                   {"flips", flips},
                   {"diagnostics", walk.diagnostics}};
  if (!walk.success)
    r.violations.push_back(Json{{"check", "flip-walk"},
                                {"seed", seed},
                                {"detail", walk.diagnostics}});
}

// ----------------------------------------------------------------- gale

void run_gale(RunReport& r, const std::string& file, bool inverse) {
  r.command = "gale";
  std::string raw = slurp(file);
  r.inputs = digest(raw);

  if (!inverse) {
    PointConfiguration a = point_config_from_json(Json::parse(raw));
    GaleTransform g = a.partition ? colorful_gale(a) : gale_transform(a);
    PointConfiguration out;
    out.dim = g.gale_dim();
    out.points = g.vectors;
    out.partition = g.partition;
    r.results = Json{{"source_size", g.source_size},
                     {"gale", point_config_to_json(out)}};
    return;
  }

  // a centered colorful configuration is read as the Gale side; rebuild a
  // summand collection whose colorful Gale dual matches it
  ColorfulConfiguration c = config_from_json(Json::parse(raw));
  GaleTransform g;
  Partition part;
  for (const auto& cls : c.classes) {
    std::vector<std::size_t> idx;
    for (const QVec& p : cls) {
      idx.push_back(g.vectors.size());
      g.vectors.push_back(p);
    }
    part.push_back(idx);
  }
  g.source_size = g.vectors.size();
  g.partition = part;
  PointConfiguration inv = inverse_colorful_gale(g);
  bool round_trip = positively_equivalent(colorful_gale(inv).vectors, g.vectors);
  r.results = Json{{"configuration", point_config_to_json(inv)},
                   {"round_trip", round_trip}};
  if (!round_trip)
    r.violations.push_back(
        Json{{"check", "gale-round-trip"},
             {"detail", "inverse transform is not positively equivalent"}});
}

// ----------------------------------------------------------------- ptransform

void run_ptransform(RunReport& r, const std::string& file) {
  r.command = "ptransform";
  std::string raw = slurp(file);
  r.inputs = digest(raw);
  std::vector<SimplexV> simplices = simplices_from_json(Json::parse(raw));
  bool ok = verify_coincidence(simplices);
  r.results = Json{{"summands", simplices.size()}, {"coincidence", ok}};
  if (!ok)
    r.violations.push_back(
        Json{{"check", "coincidence"},
             {"detail", "projection transform does not match the colorful "
                        "Gale dual"}});
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "exact tools for colorful configurations: depth, homology, flips, "
      "Gale duals and Minkowski sums"};
  app.require_subcommand(1);

  std::string format = "json";
  app.add_option("--format", format, "report format")
      ->check(CLI::IsMember({"json", "text"}));

  std::string csd_file;
  bool csd_list = false, csd_assert = false;
  CLI::App* csd_cmd =
      app.add_subcommand("csd", "colorful simplicial depth of a configuration");
  csd_cmd->fallthrough();
  csd_cmd->add_option("config", csd_file, "configuration JSON file")->required();
  csd_cmd->add_flag("--list", csd_list, "include the hitting simplices");
  csd_cmd->add_flag("--assert-bound", csd_assert,
                    "fail when csd exceeds 1 + prod(n_i - 1)");

  std::vector<std::size_t> shape;
  std::size_t seeds = 100;
  std::uint64_t base_seed = 0;
  std::vector<std::string> checks;
  long coord_bound = 8;
  bool corrupt = false;
  CLI::App* verify_cmd = app.add_subcommand(
      "verify", "generate random centered instances and check the theorems");
  verify_cmd->fallthrough();
  verify_cmd->add_option("--shape", shape, "class sizes, e.g. 2,3,3")
      ->required()
      ->delimiter(',');
  verify_cmd->add_option("--seeds", seeds, "number of instances");
  CLI::Option* seed_opt =
      verify_cmd->add_option("--seed", base_seed, "base seed (default random)");
  verify_cmd->add_option("--checks", checks, "subset of bound,betti,euler,lower")
      ->delimiter(',');
  verify_cmd->add_option("--coord-bound", coord_bound,
                         "coordinate range for the generator");
  verify_cmd->add_flag("--corrupt-generator", corrupt)->group("");

  std::string tmf_file;
  std::vector<std::size_t> extremal_dims;
  bool fans = false;
  CLI::App* tmf_cmd = app.add_subcommand(
      "tmf", "totally mixed facets of a Minkowski sum of simplices");
  tmf_cmd->fallthrough();
  tmf_cmd->add_option("simplices", tmf_file, "simplex collection JSON file");
  tmf_cmd->add_option("--extremal", extremal_dims,
                      "build the extremal collection for these summand dims")
      ->delimiter(',');
  tmf_cmd->add_flag("--fans", fans,
                    "cross-check the count against the normal fan "
                    "intersection (triangle summands)");

  std::string flip_verify_file;
  std::vector<std::string> walk_files;
  bool strict = false;
  std::size_t retries = 16;
  std::uint64_t flip_seed = 0;
  CLI::App* flip_cmd = app.add_subcommand(
      "flip", "verify a recorded flip or search for a flip sequence");
  flip_cmd->fallthrough();
  CLI::Option* fv_opt =
      flip_cmd->add_option("--verify", flip_verify_file, "flip path JSON file");
  flip_cmd->add_flag("--strict", strict,
                     "also sweep the homotopy for class boundary crossings");
  CLI::Option* fw_opt =
      flip_cmd->add_option("--walk", walk_files, "two configuration files")
          ->expected(2);
  fv_opt->excludes(fw_opt);
  CLI::Option* flip_seed_opt =
      flip_cmd->add_option("--seed", flip_seed, "walk seed (default random)");
  flip_cmd->add_option("--retries", retries, "waypoint retries for the walk");

  std::string gale_file;
  bool inverse = false;
  CLI::App* gale_cmd =
      app.add_subcommand("gale", "colorful Gale transform and its inverse");
  gale_cmd->fallthrough();
  gale_cmd->add_option("input", gale_file, "input JSON file")->required();
  gale_cmd->add_flag("--inverse", inverse,
                     "read a centered colorful configuration and rebuild a "
                     "summand collection dual to it");

  std::string pt_file;
  CLI::App* pt_cmd = app.add_subcommand(
      "ptransform", "projection transforms of polytope sums");
  pt_cmd->fallthrough();
  pt_cmd->add_option("--coincidence", pt_file,
                     "simplex collection JSON file: check the transform of "
                     "the sum against the colorful Gale dual")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  RunReport report;
  auto t0 = std::chrono::steady_clock::now();
  auto stamp = [&]() {
    report.elapsed_ms = long(std::chrono::duration_cast<std::chrono::milliseconds>(
                                 std::chrono::steady_clock::now() - t0)
                                 .count());
  };

  try {
    if (csd_cmd->parsed()) {
      run_csd(report, csd_file, csd_list, csd_assert);
    } else if (verify_cmd->parsed()) {
      if (seed_opt->count() == 0) base_seed = random_seed();
      run_verify(report, shape, seeds, base_seed, checks, coord_bound, corrupt);
    } else if (tmf_cmd->parsed()) {
      run_tmf(report, tmf_file, extremal_dims, fans);
    } else if (flip_cmd->parsed()) {
      if (!walk_files.empty()) {
        if (flip_seed_opt->count() == 0) flip_seed = random_seed();
        run_flip_walk(report, walk_files, retries, flip_seed);
      } else if (!flip_verify_file.empty()) {
        run_flip_verify(report, flip_verify_file, strict);
      } else {
        throw std::invalid_argument("flip needs --verify or --walk");
      }
    } else if (gale_cmd->parsed()) {
      run_gale(report, gale_file, inverse);
    } else if (pt_cmd->parsed()) {
      run_ptransform(report, pt_file);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::logic_error& e) {
    // an internal cross-check failed on well-formed input
    report.violations.push_back(
        Json{{"check", "internal"}, {"detail", e.what()}});
    stamp();
    print_report(report, format);
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  stamp();
  print_report(report, format);
  return report.violations.empty() ? 0 : 1;
}
