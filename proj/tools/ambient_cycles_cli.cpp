// Command-line front end: quotient distances, point-cloud classification and
// Monte Carlo principal persistence measures.
//
// Exit codes: 0 ok, 2 usage or input error, 3 resource limit, 4 I/O failure.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <ambient_cycles/ambient_cycles.hpp>
#include <ambient_cycles/io.hpp>

namespace ac = ambient_cycles;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitResource = 3;
constexpr int kExitIo = 4;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string surface = "torus";
  double tie_tolerance = 1e-9;
  int max_word_length = 12;
  std::optional<unsigned> threads;

  // dist
  std::vector<std::string> coords;
  // classify
  std::string input;
  double epsilon = 0.0;
  std::string output;
  // ppm
  std::size_t n_samples = 0;
  std::uint64_t seed = 0;
  std::string out_dir = ".";

  ac::GeometryOptions geometry() const { return {tie_tolerance, max_word_length}; }
};

ac::SurfaceKind require_surface(const std::string& name) {
  auto kind = ac::parse_surface(name);
  if (!kind) throw ac::InputError("unknown surface '" + name + "' (torus, klein, rp2, genus2)");
  return *kind;
}

unsigned resolve_threads(const std::optional<unsigned>& flag) {
  if (flag) return std::max(1u, *flag);
  if (const char* env = std::getenv("AMBIENT_CYCLES_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
    throw ac::InputError("AMBIENT_CYCLES_THREADS must be a positive integer");
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << text << '\n';
  if (!out) throw IoError("failed writing " + path);
}

int cmd_dist(const RunConfig& cfg) {
  const auto kind = require_surface(cfg.surface);
  std::vector<double> values;
  for (const auto& c : cfg.coords) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(c, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != c.size() || c.empty()) throw ac::InputError("malformed coordinate '" + c + "'");
    values.push_back(v);
  }
  return ac::with_surface(kind, [&]<class S>(S) {
    const std::size_t k = S::coordinate_count;
    if (values.size() != 2 * k)
      throw ac::InputError("dist on " + cfg.surface + " takes " + std::to_string(2 * k) +
                           " coordinates");
    const auto p = ac::io::point_from_coords<S>({values.begin(), values.begin() + k});
    const auto q = ac::io::point_from_coords<S>({values.begin() + k, values.end()});
    const auto bd = ac::base_distance<S>(p, q, cfg.geometry());
    json minimizers = json::array();
    for (const auto& g : bd.minimizers) minimizers.push_back(ac::io::element_to_json<S>(g));
    const json out = {{"surface", cfg.surface},
                      {"distance", bd.length},
                      {"minimizers", minimizers},
                      {"tied", bd.tied()}};
    std::cout << out.dump() << '\n';
    return kExitOk;
  });
}

int cmd_classify(const RunConfig& cfg) {
  const auto kind = require_surface(cfg.surface);
  if (!(cfg.epsilon > 0.0)) throw ac::InputError("--epsilon must be positive");
  std::ifstream in(cfg.input);
  if (!in) throw ac::InputError("cannot read " + cfg.input);
  return ac::with_surface(kind, [&]<class S>(S) {
    const auto cloud = ac::io::read_cloud_csv<S>(in);
    const auto result = ac::classify_cloud<S>(cloud, cfg.epsilon, cfg.geometry());
    write_output(cfg.output, ac::io::classification_to_json(result).dump(2));
    return kExitOk;
  });
}

int cmd_ppm(const RunConfig& cfg) {
  const auto kind = require_surface(cfg.surface);
  if (cfg.n_samples < 1) throw ac::InputError("-n must be at least 1");
  const unsigned threads = resolve_threads(cfg.threads);

  std::error_code ec;
  std::filesystem::create_directories(cfg.out_dir, ec);
  if (ec) throw IoError("cannot create " + cfg.out_dir + ": " + ec.message());

  std::cerr << "ppm: " << cfg.n_samples << " quadruples on " << cfg.surface << " (seed "
            << cfg.seed << ", " << threads << " threads)\n";
  const auto start = std::chrono::steady_clock::now();
  const auto sample = ac::with_surface(kind, [&]<class S>(S) {
    return ac::principal_persistence_measure<S>(cfg.n_samples, cfg.seed, cfg.geometry(), threads);
  });
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cerr << "ppm: " << sample.persistent << " persistent, " << sample.skipped << " skipped, "
            << seconds << " s\n";

  const auto dir = std::filesystem::path(cfg.out_dir);
  {
    std::ofstream jsonl(dir / "ppm.jsonl");
    if (!jsonl) throw IoError("cannot open " + (dir / "ppm.jsonl").string());
    for (const auto& r : sample.points) jsonl << ac::io::quadruple_record(kind, r).dump() << '\n';
    if (!jsonl) throw IoError("failed writing ppm.jsonl");
  }
  write_output((dir / "summary.json").string(), ac::io::summary_to_json(sample).dump(2));
  return kExitOk;
}

int cmd_surfaces() {
  json out = json::array();
  for (auto kind : ac::kAllSurfaces) {
    ac::with_surface(kind, [&]<class S>(S) {
      out.push_back({{"name", std::string(ac::surface_name(kind))},
                     {"coordinates", ac::io::csv_header(kind)},
                     {"class_free_rank", S::free_rank},
                     {"class_torsion_rank", S::torsion_rank}});
    });
  }
  std::cout << out.dump(2) << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ambient homology classes of point-cloud cycles on model surfaces"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--surface,-s", cfg.surface, "torus | klein | rp2 | genus2")->required();
    sub->add_option("--tie-tolerance", cfg.tie_tolerance, "Orbit-distance tie tolerance")
        ->check(CLI::PositiveNumber);
    sub->add_option("--max-word-length", cfg.max_word_length,
                    "Longest genus-two generator word the enumeration may use")
        ->check(CLI::PositiveNumber);
  };

  auto* dist = app.add_subcommand("dist", "Quotient distance and minimizing deck elements");
  add_common(dist);
  dist->add_option("coords", cfg.coords, "Coordinates of the two cover points")->required();

  auto* classify = app.add_subcommand("classify", "Classify the cycles of a lifted point cloud");
  add_common(classify);
  classify->add_option("input", cfg.input, "CSV file, one lifted point per row")->required();
  classify->add_option("--epsilon,-e", cfg.epsilon, "Neighbourhood graph scale")->required();
  classify->add_option("--output,-o", cfg.output, "Output JSON path (default stdout)");

  auto* ppm = app.add_subcommand("ppm", "Sample the principal persistence measure");
  add_common(ppm);
  ppm->add_option("-n", cfg.n_samples, "Number of four-point samples")->required();
  ppm->add_option("--seed", cfg.seed, "Random seed")->required();
  ppm->add_option("--output,-o", cfg.out_dir, "Output directory for ppm.jsonl and summary.json");
  ppm->add_option("--threads", cfg.threads, "Worker threads (env AMBIENT_CYCLES_THREADS)");

  auto* surfaces = app.add_subcommand("surfaces", "List supported surfaces");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (dist->parsed()) return cmd_dist(cfg);
    if (classify->parsed()) return cmd_classify(cfg);
    if (ppm->parsed()) return cmd_ppm(cfg);
    if (surfaces->parsed()) return cmd_surfaces();
  } catch (const ac::InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const ac::ResourceError& e) {
    std::cerr << "resource limit: " << e.what() << '\n';
    return kExitResource;
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kExitIo;
  }
  return kExitInput;
}
