#include "bench_cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "ldp/field_io.hpp"
#include "ldp/runner.hpp"
#include "ldp/verify.hpp"

namespace ldp::cli {
namespace {

std::size_t parse_count(std::string_view text, std::string_view what) {
  std::size_t value = 0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || end != text.data() + text.size()) {
    throw ConfigError("invalid " + std::string(what) + " '" + std::string(text) + "'");
  }
  return value;
}

template <class T>
bool contains(const std::vector<T>& items, const T& item) {
  return std::find(items.begin(), items.end(), item) != items.end();
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

}  // namespace

void validate(const SweepConfig& config) {
  ldp::validate(config.shape);
  if (config.vvls.empty() || config.workers.empty() || config.backends.empty()) {
    throw ConfigError("--vvl, --workers and --backend lists must be non-empty");
  }
  if (config.iterations == 0) {
    throw ConfigError("--iters must be >= 1");
  }
  if (config.tpb == 0) {
    throw ConfigError("--tpb must be >= 1");
  }
  const std::size_t padded = pad_sites(config.shape.nsites(), kDefaultPadMultiple);
  for (std::size_t vvl : config.vvls) {
    if (vvl == 0 || vvl > kMaxLanes || padded % vvl != 0) {
      throw ConfigError("VVL must divide padded extent (VVL " + std::to_string(vvl) +
                        ", padded extent " + std::to_string(padded) + ")");
    }
  }
  for (std::size_t w : config.workers) {
    if (w == 0) {
      throw ConfigError("worker counts must be >= 1");
    }
  }
}

std::optional<SweepConfig> parse_args(int argc, const char* const* argv, std::ostream& out) {
  SweepConfig config;
  std::string kernel = std::string(to_string(config.kernel));
  std::string shape = to_string(config.shape);
  std::vector<std::string> vvls;
  std::vector<std::string> workers;
  std::vector<std::string> backends;
  std::string csv_path;
  std::string dump_prefix;

  CLI::App app{"Lattice kernel VVL / worker / backend sweep"};
  app.add_option("--kernel", kernel, "scale | binary-collision")->capture_default_str();
  app.add_option("--shape", shape, "Lattice extents NXxNYxNZ")->capture_default_str();
  app.add_option("--vvl", vvls, "Comma-separated virtual vector lengths (default 1,2,4,8)")
      ->delimiter(',');
  app.add_option("--workers", workers, "Comma-separated worker counts (default: hardware)")
      ->delimiter(',');
  app.add_option("--backend", backends,
                 "Comma-separated backends: reference, threaded, emulated (default threaded)")
      ->delimiter(',');
  app.add_option("--tpb", config.tpb, "Chunks per worker group (emulated backend)")
      ->capture_default_str();
  app.add_option("--iters", config.iterations, "Timed iterations per configuration")
      ->capture_default_str();
  auto* csv = app.add_option("--csv", csv_path, "Write CSV, to PATH if given, else stdout")
                  ->expected(0, 1);
  app.add_flag("--verify", config.verify, "Run equivalence and conservation checks first");
  app.add_flag("--stats", config.stats, "Report transfer counters per configuration");
  app.add_option("--seed", config.seed, "Seed for random verification states")
      ->capture_default_str();
  app.add_option("--dump", dump_prefix,
                 "With --verify, write reference output fields to PREFIX.*.bin");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw ConfigError(e.what());
  }

  config.kernel = parse_kernel(kernel);
  config.shape = parse_shape(shape);
  if (!vvls.empty()) {
    config.vvls.clear();
    for (const auto& v : vvls) config.vvls.push_back(parse_count(v, "VVL"));
  }
  if (!workers.empty()) {
    config.workers.clear();
    for (const auto& w : workers) config.workers.push_back(parse_count(w, "worker count"));
  }
  if (!backends.empty()) {
    config.backends.clear();
    for (const auto& b : backends) config.backends.push_back(parse_backend(b));
  }
  if (csv->count() > 0) {
    config.csv = true;
    if (!csv_path.empty()) {
      config.csv_path = csv_path;
    }
  }
  if (!dump_prefix.empty()) {
    config.dump_prefix = dump_prefix;
  }
  validate(config);
  return config;
}

SweepRow to_row(const BenchmarkResult& r) {
  const auto& c = r.config;
  return SweepRow{std::string(to_string(c.kernel)),
                  std::string(to_string(c.backend)),
                  c.shape.nx,
                  c.shape.ny,
                  c.shape.nz,
                  c.vvl,
                  c.workers,
                  c.tpb,
                  c.iterations,
                  r.elapsed_s,
                  r.sites_per_s};
}

std::string emit_csv(std::span<const SweepRow> rows) {
  std::ostringstream os;
  os << kCsvHeader << '\n';
  for (const auto& r : rows) {
    os << r.kernel << ',' << r.backend << ',' << r.nx << ',' << r.ny << ',' << r.nz << ','
       << r.vvl << ',' << r.workers << ',' << r.tpb << ',' << r.iters << ','
       << format_number(r.elapsed_s) << ',' << format_number(r.sites_per_s) << '\n';
  }
  return os.str();
}

std::vector<SweepRow> parse_csv(std::string_view text) {
  std::vector<SweepRow> rows;
  std::istringstream is{std::string(text)};
  std::string line;
  if (!std::getline(is, line) || line != kCsvHeader) {
    throw ConfigError("CSV header mismatch");
  }
  while (std::getline(is, line)) {
    if (line.empty()) {
      continue;
    }
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) {
      cells.push_back(cell);
    }
    if (cells.size() != 11) {
      throw ConfigError("CSV row has " + std::to_string(cells.size()) + " cells: " + line);
    }
    SweepRow r;
    r.kernel = cells[0];
    r.backend = cells[1];
    r.nx = parse_count(cells[2], "nx");
    r.ny = parse_count(cells[3], "ny");
    r.nz = parse_count(cells[4], "nz");
    r.vvl = parse_count(cells[5], "vvl");
    r.workers = parse_count(cells[6], "workers");
    r.tpb = parse_count(cells[7], "tpb");
    r.iters = parse_count(cells[8], "iters");
    r.elapsed_s = std::stod(cells[9]);
    r.sites_per_s = std::stod(cells[10]);
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<std::string> report_best(std::span<const SweepRow> rows) {
  // Worker counts seen per (kernel, backend), to decide whether labels need them.
  std::map<std::pair<std::string, std::string>, std::set<std::size_t>> workers_seen;
  for (const auto& r : rows) {
    workers_seen[{r.kernel, r.backend}].insert(r.workers);
  }

  struct Group {
    std::string label;
    std::optional<double> baseline;
    std::size_t best_vvl = 0;
    double best_rate = 0.0;
  };
  std::vector<Group> groups;
  std::map<std::tuple<std::string, std::string, std::size_t>, std::size_t> index;

  for (const auto& r : rows) {
    const auto key = std::make_tuple(r.kernel, r.backend, r.workers);
    auto [it, inserted] = index.emplace(key, groups.size());
    if (inserted) {
      std::string label = r.kernel + "/" + r.backend;
      if (workers_seen[{r.kernel, r.backend}].size() > 1) {
        label += "/workers=" + std::to_string(r.workers);
      }
      groups.push_back({std::move(label), std::nullopt, r.vvl, r.sites_per_s});
    }
    auto& g = groups[it->second];
    if (r.vvl == 1) {
      g.baseline = r.sites_per_s;
    }
    if (r.sites_per_s > g.best_rate || (r.sites_per_s == g.best_rate && r.vvl < g.best_vvl)) {
      g.best_rate = r.sites_per_s;
      g.best_vvl = r.vvl;
    }
  }

  std::vector<std::string> lines;
  for (const auto& g : groups) {
    if (!g.baseline) {
      throw ConfigError(g.label + ": no VVL=1 baseline in results");
    }
    char buf[256];
    std::snprintf(buf, sizeof buf, "%s: best VVL=%zu, %.2fx over VVL=1", g.label.c_str(),
                  g.best_vvl, g.best_rate / *g.baseline);
    lines.emplace_back(buf);
  }
  return lines;
}

std::vector<BenchmarkResult> run_sweep(const SweepConfig& config) {
  std::vector<BenchmarkResult> results;
  results.reserve(config.backends.size() * config.workers.size() * config.vvls.size());
  for (Backend backend : config.backends) {
    for (std::size_t workers : config.workers) {
      for (std::size_t vvl : config.vvls) {
        BenchmarkConfig bc;
        bc.kernel = config.kernel;
        bc.shape = config.shape;
        bc.vvl = vvl;
        bc.workers = workers;
        bc.backend = backend;
        bc.tpb = config.tpb;
        bc.iterations = config.iterations;
        bc.seed = config.seed;
        results.push_back(benchmark_run(bc));
      }
    }
  }
  return results;
}

namespace {

bool run_verification(const SweepConfig& config, std::ostream& report) {
  std::vector<CheckResult> checks;
  checks.push_back(verify_equivalence(config.kernel, config.shape, ConfigMatrix{}, config.seed));
  if (config.kernel == KernelId::binary_collision) {
    checks.push_back(verify_conservation(config.shape, config.seed));
  } else {
    checks.push_back(verify_scale_oracle(config.shape, config.seed));
  }
  bool ok = true;
  for (const auto& c : checks) {
    report << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << '\n';
    ok = ok && c.passed;
  }

  if (config.dump_prefix) {
    const auto& prefix = *config.dump_prefix;
    if (config.kernel == KernelId::scale) {
      const auto out = run_scale(random_vector_field(config.shape, config.seed), 0.37, RunConfig{});
      dump_field(prefix + ".field.bin", out);
    } else {
      const auto model = lb::make_d3q19();
      const auto out =
          run_binary_collision(random_binary_state(config.shape, config.seed), model, RunConfig{});
      const auto obs = compute_observables(out, model);
      dump_field(prefix + ".f.bin", out.f);
      dump_field(prefix + ".g.bin", out.g);
      dump_field(prefix + ".rho.bin", obs.rho);
      dump_field(prefix + ".u.bin", obs.u);
      dump_field(prefix + ".phi.bin", obs.phi);
    }
    report << "wrote reference output to " << prefix << ".*.bin\n";
  }
  return ok;
}

void print_table(std::span<const BenchmarkResult> results, std::ostream& os) {
  os << std::left << std::setw(17) << "kernel" << std::setw(10) << "backend" << std::setw(12)
     << "shape" << std::right << std::setw(5) << "vvl" << std::setw(8) << "workers"
     << std::setw(6) << "tpb" << std::setw(7) << "iters" << std::setw(14) << "elapsed_s"
     << std::setw(14) << "sites/s" << std::setw(10) << "GB/s" << '\n';
  for (const auto& r : results) {
    const auto& c = r.config;
    os << std::left << std::setw(17) << to_string(c.kernel) << std::setw(10)
       << to_string(c.backend) << std::setw(12) << to_string(c.shape) << std::right
       << std::setw(5) << c.vvl << std::setw(8) << c.workers << std::setw(6) << c.tpb
       << std::setw(7) << c.iterations << std::setw(14) << format_number(r.elapsed_s)
       << std::setw(14) << format_number(r.sites_per_s) << std::setw(10) << std::fixed
       << std::setprecision(3) << r.bytes_per_s / 1e9 << std::defaultfloat << '\n';
  }
}

void print_stats(std::span<const BenchmarkResult> results, std::ostream& os) {
  for (const auto& r : results) {
    const auto& c = r.config;
    const auto& s = r.stats;
    os << "stats " << to_string(c.kernel) << '/' << to_string(c.backend) << " vvl=" << c.vvl
       << " workers=" << c.workers << ": launches=" << s.launches
       << " copies_to=" << s.full_copies_to_target << " copies_from=" << s.full_copies_from_target
       << " masked_to=" << s.masked_copies_to_target
       << " masked_from=" << s.masked_copies_from_target << " packed=" << s.elements_packed
       << " bytes_to=" << s.bytes_to_target << " bytes_from=" << s.bytes_from_target << '\n';
  }
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  SweepConfig config;
  try {
    auto parsed = parse_args(argc, argv, out);
    if (!parsed) {
      return kExitOk;
    }
    config = std::move(*parsed);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }

  // CSV on stdout must stay machine-readable; everything else goes to stderr then.
  const bool csv_on_stdout = config.csv && !config.csv_path;
  std::ostream& report = csv_on_stdout ? err : out;

  try {
    const bool verified = !config.verify || run_verification(config, report);

    const auto results = run_sweep(config);
    std::vector<SweepRow> rows;
    for (const auto& r : results) rows.push_back(to_row(r));

    if (config.csv) {
      const auto text = emit_csv(rows);
      if (config.csv_path) {
        std::ofstream file(*config.csv_path);
        if (!file) {
          err << "error: cannot write " << *config.csv_path << '\n';
          return kExitConfig;
        }
        file << text;
      } else {
        out << text;
      }
    } else {
      print_table(results, out);
    }

    if (contains(config.vvls, std::size_t{1})) {
      for (const auto& line : report_best(rows)) {
        report << line << '\n';
      }
    }
    if (config.stats) {
      print_stats(results, report);
    }
    return verified ? kExitOk : kExitVerifyFailed;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const PlanError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitVerifyFailed;
  }
}

}  // namespace ldp::cli
