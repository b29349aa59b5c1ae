#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <tuple>

#include <CLI11.hpp>

#include "seghull/datagen.hpp"
#include "seghull/errors.hpp"
#include "seghull/oracle.hpp"
#include "seghull/point_io.hpp"
#include "seghull/quickhull.hpp"

namespace seghull::cli {

namespace {

struct GenOptions {
  std::string dist;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  int dim = 0;
  double band = 0.01;
  std::string out;
};

struct HullOptions {
  std::string in;
  double eps_rel = Tolerance{}.eps_rel;
  std::size_t threads = 0;
  std::string out;
  bool stats = false;
};

struct VerifyOptions {
  std::string in;
  double eps_rel = Tolerance{}.eps_rel;
};

struct BenchOptions {
  std::vector<std::string> dists;
  std::vector<std::size_t> sizes;
  std::size_t reps = 1;
  int dim = 2;
  double eps_rel = Tolerance{}.eps_rel;
  std::size_t threads = 0;
  std::string out;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::size_t resolve_threads(std::size_t requested) {
  return requested == 0 ? default_worker_count() : requested;
}

DistributionKind resolve_kind(const std::string& name, int dim) {
  const auto kind = parse_distribution(name);
  if (!kind) throw UsageError("unknown distribution '" + name + "'");
  if (dim != 0 && dim != 2 && dim != 3) throw UsageError("--dim must be 2 or 3");
  if (dim != 0 && dimension_of(*kind) != dim) {
    throw UsageError("distribution '" + name + "' is " + std::to_string(dimension_of(*kind)) +
                     "D but --dim is " + std::to_string(dim));
  }
  return *kind;
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

int cmd_gen(const GenOptions& opt, std::ostream& err) {
  const DistributionKind kind = resolve_kind(opt.dist, opt.dim);
  if (!(opt.band > 0.0 && opt.band < 1.0)) throw UsageError("--band must lie in (0, 1)");
  const auto format = io::format_from_path(opt.out);
  if (!format) throw UsageError("output must end in .csv or .pts");

  const PointSet points = generate({kind, opt.n, opt.seed, opt.band});
  if (!io::write_point_file(opt.out, points, *format)) {
    err << "gen: cannot write " << opt.out << "\n";
    return kExitFailure;
  }
  return kExitOk;
}

int cmd_hull(const HullOptions& opt, std::ostream& out, std::ostream& err) {
  if (opt.eps_rel < 0.0) throw UsageError("--eps must be nonnegative");
  std::optional<io::PointFormat> out_format;
  if (!opt.out.empty()) {
    out_format = io::format_from_path(opt.out);
    if (!out_format) throw UsageError("output must end in .csv or .pts");
  }

  const io::LoadedPoints loaded = io::read_point_file(opt.in);
  const PointSet& points = loaded.points;
  if (!out_format) out_format = loaded.format;

  const Executor exec(resolve_threads(opt.threads));
  const auto start = std::chrono::steady_clock::now();
  const HullResult hull = quickhull(points, Tolerance{opt.eps_rel}, exec);
  const double ms = elapsed_ms(start);
  for (const auto& warning : hull.warnings) err << "hull: warning: " << warning << "\n";

  const PointSet vertices = points.dim() == 2 ? order_hull_2d(hull.vertices) : hull.vertices;
  if (!opt.out.empty()) {
    if (!io::write_point_file(opt.out, vertices, *out_format)) {
      err << "hull: cannot write " << opt.out << "\n";
      return kExitFailure;
    }
  } else {
    out << (*out_format == io::PointFormat::kBinary ? io::to_binary(vertices) : io::to_csv(vertices));
  }
  if (opt.stats) {
    out << "n=" << points.size() << " hull=" << vertices.size() << " iterations=" << hull.iterations
        << " ms=" << ms << "\n";
  }
  return kExitOk;
}

using Key = std::tuple<double, double, double>;

std::set<Key> coordinate_set(const PointSet& points) {
  std::set<Key> keys;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Vec3 p = points.point3(i);
    keys.emplace(p.x, p.y, p.z);
  }
  return keys;
}

int cmd_verify(const VerifyOptions& opt, std::ostream& out, std::ostream& err) {
  if (opt.eps_rel < 0.0) throw UsageError("--eps must be nonnegative");
  const PointSet points = io::read_point_file(opt.in).points;
  if (points.dim() == 3 && (points.size() < 4 || points.size() > oracle::kMaxBruteForce3D)) {
    throw UsageError("3D verification supports 4 to " + std::to_string(oracle::kMaxBruteForce3D) +
                     " points, file has " + std::to_string(points.size()));
  }
  const Tolerance tol{opt.eps_rel};
  const HullResult hull = quickhull(points, tol);
  const std::set<Key> driver = coordinate_set(hull.vertices);
  const std::set<Key> expected = coordinate_set(
      points.dim() == 2 ? oracle::hull2_giftwrap(points, tol).vertices
                        : oracle::hull3_bruteforce(points, tol).vertices);

  std::vector<Key> missing, extra;
  std::set_difference(expected.begin(), expected.end(), driver.begin(), driver.end(),
                      std::back_inserter(missing));
  std::set_difference(driver.begin(), driver.end(), expected.begin(), expected.end(),
                      std::back_inserter(extra));

  bool ok = missing.empty();
  std::size_t far_extras = 0;
  if (points.dim() == 2) {
    ok = ok && extra.empty();
  } else {
    const double eps = tol.effective(points);
    for (const auto& [x, y, z] : extra) {
      if (!oracle::contains_hull_point(points, Vec3{x, y, z}, eps)) ++far_extras;
    }
    ok = ok && far_extras == 0;
  }

  out << "verify: " << (ok ? "match" : "mismatch") << " hull=" << driver.size()
      << " oracle=" << expected.size() << " missing=" << missing.size()
      << " extras=" << extra.size() << "\n";
  if (!ok) {
    for (const auto& [x, y, z] : missing) err << "missing vertex " << x << "," << y << "," << z << "\n";
    for (const auto& [x, y, z] : extra) err << "extra vertex " << x << "," << y << "," << z << "\n";
    return kExitFailure;
  }
  return kExitOk;
}

int cmd_bench(const BenchOptions& opt, std::ostream& out, std::ostream& err) {
  if (opt.dim != 2 && opt.dim != 3) throw UsageError("--dim must be 2 or 3");
  if (opt.reps == 0) throw UsageError("--reps must be positive");
  if (opt.sizes.empty() || std::find(opt.sizes.begin(), opt.sizes.end(), 0u) != opt.sizes.end()) {
    throw UsageError("--sizes must be positive");
  }
  std::vector<DistributionKind> kinds;
  for (const auto& name : opt.dists) kinds.push_back(resolve_kind(name, opt.dim));
  if (kinds.empty()) throw UsageError("--dists must name at least one distribution");

  std::ostringstream csv;
  csv << "distribution,n,dim,seed,wall_ms,iterations,hull_size\n";
  const Executor exec(resolve_threads(opt.threads));
  for (const DistributionKind kind : kinds) {
    for (const std::size_t n : opt.sizes) {
      for (std::size_t rep = 0; rep < opt.reps; ++rep) {
        const PointSet points = generate({kind, n, rep, 0.01});
        const auto start = std::chrono::steady_clock::now();
        const HullResult hull = quickhull(points, Tolerance{opt.eps_rel}, exec);
        const double ms = elapsed_ms(start);
        csv << to_string(kind) << ',' << n << ',' << opt.dim << ',' << rep << ',' << ms << ','
            << hull.iterations << ',' << hull.vertices.size() << '\n';
      }
    }
  }

  if (opt.out.empty()) {
    out << csv.str();
    return kExitOk;
  }
  std::ofstream file(opt.out);
  file << csv.str();
  if (!file.flush()) {
    err << "bench: cannot write " << opt.out << "\n";
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Segmented data-parallel Quickhull for 2D and 3D point sets", "seghull"};
  app.require_subcommand(1);

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a benchmark point distribution");
  gen_cmd->add_option("--dist", gen.dist,
                      "uniform-disk, on-circle, near-circle, uniform-ball, on-sphere, near-sphere")
      ->required();
  gen_cmd->add_option("--n", gen.n, "Number of points")->required();
  gen_cmd->add_option("--seed", gen.seed, "RNG seed");
  gen_cmd->add_option("--dim", gen.dim, "Dimension; must match the distribution");
  gen_cmd->add_option("--band", gen.band, "Shell thickness for near-* distributions");
  gen_cmd->add_option("-o,--out", gen.out, "Output file (.csv or .pts)")->required();

  HullOptions hull;
  auto* hull_cmd = app.add_subcommand("hull", "Compute the hull vertices of a point file");
  hull_cmd->add_option("input", hull.in, "Point file")->required();
  hull_cmd->add_option("--eps", hull.eps_rel, "Relative tolerance");
  hull_cmd->add_option("--threads", hull.threads, "Worker threads (0 = all cores)");
  hull_cmd->add_option("-o,--out", hull.out, "Output file (.csv or .pts); default stdout");
  hull_cmd->add_flag("--stats", hull.stats, "Print n, hull size, iterations and time");

  VerifyOptions verify;
  auto* verify_cmd = app.add_subcommand("verify", "Check the hull against a brute-force oracle");
  verify_cmd->add_option("input", verify.in, "Point file")->required();
  verify_cmd->add_option("--eps", verify.eps_rel, "Relative tolerance");

  BenchOptions bench;
  auto* bench_cmd = app.add_subcommand("bench", "Time the hull over a distribution grid");
  bench_cmd->add_option("--dists", bench.dists, "Comma-separated distributions")
      ->delimiter(',')
      ->required();
  bench_cmd->add_option("--sizes", bench.sizes, "Comma-separated point counts")
      ->delimiter(',')
      ->required();
  bench_cmd->add_option("--reps", bench.reps, "Repetitions per cell (seed = repetition)");
  bench_cmd->add_option("--dim", bench.dim, "Dimension of every distribution");
  bench_cmd->add_option("--eps", bench.eps_rel, "Relative tolerance");
  bench_cmd->add_option("--threads", bench.threads, "Worker threads (0 = all cores)");
  bench_cmd->add_option("-o,--out", bench.out, "CSV output; default stdout");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  try {
    if (*gen_cmd) return cmd_gen(gen, err);
    if (*hull_cmd) return cmd_hull(hull, out, err);
    if (*verify_cmd) return cmd_verify(verify, out, err);
    if (*bench_cmd) return cmd_bench(bench, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const io::FormatError& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  } catch (const EmptyInputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  } catch (const DegenerateInputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  } catch (const ContractViolation& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace seghull::cli
