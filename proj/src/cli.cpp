#include "rgstar/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <thread>

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "rgstar/oracle.hpp"
#include "rgstar/verify.hpp"

namespace rgstar {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

// 1-based line of the byte offset.
std::size_t line_at(const std::string& text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
}

// Line of the last key in `path`, found by searching each quoted key after the previous one.
std::size_t line_of(const std::string& text, const std::vector<std::string>& path) {
  std::size_t pos = 0;
  for (const auto& key : path) {
    const auto hit = text.find('"' + key + '"', pos);
    if (hit == std::string::npos) return line_at(text, pos);
    pos = hit;
  }
  return line_at(text, pos);
}

class ConfigReader {
 public:
  ConfigReader(const std::string& text, std::string origin) : text_(text), origin_(std::move(origin)) {}

  [[noreturn]] void fail(const std::vector<std::string>& path, const std::string& message) const {
    std::string where;
    for (const auto& p : path) where += (where.empty() ? "" : ".") + p;
    throw ConfigError(origin_ + ":" + std::to_string(line_of(text_, path)) + ": " +
                      (where.empty() ? "" : "`" + where + "`: ") + message);
  }

  void only(const json& obj, const std::vector<std::string>& path, std::initializer_list<const char*> allowed) const {
    if (!obj.is_object()) fail(path, "expected an object");
    for (const auto& [key, _] : obj.items()) {
      if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; })) {
        auto p = path;
        p.push_back(key);
        fail(p, "unknown key");
      }
    }
  }

  template <class T>
  T get(const json& obj, const std::vector<std::string>& path, const char* key) const {
    auto p = path;
    p.push_back(key);
    const auto& v = obj.at(key);
    try {
      if constexpr (std::is_same_v<T, bool>) {
        if (!v.is_boolean()) fail(p, "expected true or false");
      } else if constexpr (std::is_integral_v<T>) {
        if (!v.is_number_integer()) fail(p, "expected an integer");
        if constexpr (std::is_unsigned_v<T>)
          if (v.is_number_integer() && !v.is_number_unsigned() && v.get<std::int64_t>() < 0)
            fail(p, "expected a non-negative integer");
      } else if constexpr (std::is_floating_point_v<T>) {
        if (!v.is_number()) fail(p, "expected a number");
      } else if constexpr (std::is_same_v<T, std::string>) {
        if (!v.is_string()) fail(p, "expected a string");
      }
      return v.get<T>();
    } catch (const json::exception& e) {
      fail(p, e.what());
    }
  }

  const std::string& origin() const { return origin_; }

 private:
  const std::string& text_;
  std::string origin_;
};

std::string csv_row(std::uint64_t step, const ChainStats& s) {
  std::ostringstream os;
  os.precision(17);
  os << step << ',' << s.failures << ',' << s.rejections << ',' << s.acceptances << ',' << s.construction_rate() << ','
     << s.acceptance_rate() << '\n';
  return os.str();
}

std::shared_ptr<spdlog::logger> logger() {
  static const auto log = [] {
    auto l = spdlog::stderr_color_mt("rgstar");
    const char* level = std::getenv("RGSTAR_LOG");
    l->set_level(level ? spdlog::level::from_str(level) : spdlog::level::warn);
    return l;
  }();
  return log;
}

}  // namespace

LoadedConfig parse_config(const std::string& text, const std::string& origin) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(origin + ":" + std::to_string(line_at(text, e.byte == 0 ? 0 : e.byte - 1)) +
                      ": malformed JSON: " + e.what());
  }
  const ConfigReader r(text, origin);
  r.only(doc, {}, {"lattice", "N", "L", "lengths", "mode", "feeler", "energy", "steps", "seed", "snapshot_every",
                   "stats_every", "implementation", "oracle", "initial_snapshot"});
  LoadedConfig out;
  auto& cfg = out.chain;

  if (!doc.contains("lattice")) r.fail({}, "missing key `lattice`");
  const auto& lat = doc["lattice"];
  r.only(lat, {"lattice"}, {"d", "a"});
  if (!lat.contains("d") || !lat.contains("a")) r.fail({"lattice"}, "needs both `d` and `a`");
  cfg.lattice.d = r.get<int>(lat, {"lattice"}, "d");
  cfg.lattice.a = r.get<int>(lat, {"lattice"}, "a");
  try {
    cfg.lattice.validate();
  } catch (const std::invalid_argument& e) {
    r.fail({"lattice"}, e.what());
  }

  if (doc.contains("lengths")) {
    if (doc.contains("L")) r.fail({"lengths"}, "give either `L` or `lengths`, not both");
    if (!doc["lengths"].is_array()) r.fail({"lengths"}, "expected an array of integers");
    for (const auto& v : doc["lengths"]) {
      if (!v.is_number_integer()) r.fail({"lengths"}, "expected an array of integers");
      cfg.lengths.push_back(v.get<int>());
    }
    if (doc.contains("N") && r.get<int>(doc, {}, "N") != static_cast<int>(cfg.lengths.size()))
      r.fail({"N"}, "does not match the number of entries in `lengths`");
  } else {
    if (!doc.contains("N") || !doc.contains("L")) r.fail({}, "needs `N` and `L` (or `lengths`)");
    const int n = r.get<int>(doc, {}, "N");
    if (n < 1) r.fail({"N"}, "must be >= 1");
    cfg.lengths.assign(static_cast<std::size_t>(n), r.get<int>(doc, {}, "L"));
  }

  if (!doc.contains("mode")) r.fail({}, "missing key `mode`");
  const auto& mode = doc["mode"];
  r.only(mode, {"mode"}, {"fixed_k", "extended"});
  try {
    if (mode.contains("fixed_k") == mode.contains("extended"))
      r.fail({"mode"}, "give exactly one of `fixed_k` or `extended`");
    if (mode.contains("fixed_k")) {
      cfg.law = DegreeLaw::fixed(r.get<int>(mode, {"mode"}, "fixed_k"), cfg.lattice.coordination());
    } else {
      if (!mode["extended"].is_array()) r.fail({"mode", "extended"}, "expected an array p_1..p_Q");
      std::vector<double> p;
      for (const auto& v : mode["extended"]) {
        if (!v.is_number()) r.fail({"mode", "extended"}, "expected numbers");
        p.push_back(v.get<double>());
      }
      if (static_cast<int>(p.size()) != cfg.lattice.coordination())
        r.fail({"mode", "extended"}, "needs Q = 2d = " + std::to_string(cfg.lattice.coordination()) + " entries");
      cfg.law = DegreeLaw::extended(std::move(p));
    }
  } catch (const std::invalid_argument& e) {
    r.fail({"mode"}, e.what());
  }

  cfg.feeler = doc.contains("feeler") ? r.get<int>(doc, {}, "feeler") : 1;
  if (doc.contains("energy")) {
    const auto& en = doc["energy"];
    r.only(en, {"energy"}, {"kind", "epsilon", "offset"});
    const std::string kind = en.contains("kind") ? r.get<std::string>(en, {"energy"}, "kind") : "uniform";
    if (kind == "uniform") {
      if (en.contains("epsilon")) r.fail({"energy", "epsilon"}, "only meaningful for kind `contact`");
      cfg.energy = EnergyModel::uniform();
    } else if (kind == "contact") {
      if (!en.contains("epsilon")) r.fail({"energy"}, "kind `contact` needs `epsilon`");
      cfg.energy = EnergyModel::contact(r.get<double>(en, {"energy"}, "epsilon"),
                                        en.contains("offset") ? r.get<double>(en, {"energy"}, "offset") : 0.0);
    } else {
      r.fail({"energy", "kind"}, "expected `uniform` or `contact`");
    }
  }
  if (doc.contains("steps")) cfg.steps = r.get<std::uint64_t>(doc, {}, "steps");
  if (doc.contains("seed")) cfg.seed = r.get<std::uint64_t>(doc, {}, "seed");
  if (doc.contains("snapshot_every")) cfg.snapshot_every = r.get<std::uint64_t>(doc, {}, "snapshot_every");
  if (doc.contains("stats_every")) cfg.stats_every = r.get<std::uint64_t>(doc, {}, "stats_every");
  if (doc.contains("implementation")) {
    const auto impl = r.get<std::string>(doc, {}, "implementation");
    if (impl == "naive")
      cfg.implementation = Implementation::Naive;
    else if (impl == "entangled")
      cfg.implementation = Implementation::Entangled;
    else
      r.fail({"implementation"}, "expected `naive` or `entangled`");
  }
  if (doc.contains("oracle")) out.oracle = r.get<bool>(doc, {}, "oracle");
  if (doc.contains("initial_snapshot")) out.initial_snapshot = r.get<std::string>(doc, {}, "initial_snapshot");

  try {
    cfg.validate();
  } catch (const std::exception& e) {
    r.fail({}, e.what());
  }
  return out;
}

LoadedConfig load_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  auto cfg = parse_config(ss.str(), path.string());
  if (cfg.initial_snapshot) {
    fs::path snap(*cfg.initial_snapshot);
    if (snap.is_relative()) snap = path.parent_path() / snap;
    cfg.initial_snapshot = snap.string();
  }
  return cfg;
}

std::vector<std::uint64_t> chain_seeds(std::uint64_t base, int chains) {
  if (chains < 1) throw std::invalid_argument("chain count must be >= 1");
  if (chains == 1) return {base};
  std::vector<std::uint64_t> seeds;
  std::set<std::uint64_t> seen;
  for (std::uint64_t c = 0; seeds.size() < static_cast<std::size_t>(chains); ++c) {
    const auto s = derive_seed(base, c);
    if (seen.insert(s).second) seeds.push_back(s);
  }
  return seeds;
}

void write_file_atomic(const fs::path& path, const std::string& contents) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << contents;
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + tmp.string());
  }
  fs::rename(tmp, path);
}

namespace {

struct ChainOutput {
  RunResult result{SystemState(LatticeConfig{}), {}};
  std::optional<DistanceReport> distance;
  std::string error;
};

ChainOutput run_one_chain(const LoadedConfig& config, std::uint64_t seed, const fs::path& dir,
                          const StateSpace* space) {
  ChainOutput out;
  auto cfg = config.chain;
  cfg.seed = seed;
  fs::create_directories(dir);
  std::optional<SystemState> initial;
  if (config.initial_snapshot) {
    std::ifstream in(*config.initial_snapshot);
    if (!in) throw std::runtime_error("cannot open initial snapshot " + *config.initial_snapshot);
    initial = read_snapshot(in);
  }
  std::string csv = "step,growth_failures,rejections,acceptances,construction_rate,acceptance_rate\n";
  std::optional<StateHistogram> hist;
  if (space) hist.emplace(*space);
  RunObserver obs;
  obs.on_snapshot = [&](std::uint64_t step, const SystemState& s) {
    write_file_atomic(dir / ("snapshot-" + std::to_string(step) + ".txt"), snapshot_string(s));
  };
  obs.on_stats = [&](std::uint64_t step, const ChainStats& s) { csv += csv_row(step, s); };
  if (hist) obs.on_step = [&](const StepOutcome&, const SystemState& s) { hist->add(s); };
  out.result = run(cfg, std::move(initial), obs);
  write_file_atomic(dir / "stats.csv", csv);
  if (hist && hist->total() > 0) {
    std::vector<double> target(space->size());
    double z = 0.0;
    for (std::size_t s = 0; s < space->size(); ++s) z += target[s] = std::exp(-cfg.energy.energy(space->state(s)));
    for (double& t : target) t /= z;
    out.distance = distribution_distance(hist->counts(), target);
  }
  return out;
}

json chain_json(std::uint64_t seed, const ChainOutput& c) {
  const auto& s = c.result.stats;
  json j{{"seed", seed},
         {"steps", s.steps},
         {"growth_failures", s.failures},
         {"rejections", s.rejections},
         {"acceptances", s.acceptances},
         {"construction_rate", s.construction_rate()},
         {"acceptance_rate", s.acceptance_rate()}};
  if (c.distance) j["oracle"] = {{"tv", c.distance->tv}, {"chi2", c.distance->chi2}, {"dof", c.distance->dof}, {"p_value", c.distance->p_value}};
  return j;
}

}  // namespace

json run_manifest(const LoadedConfig& config, const RunManifest& manifest) {
  const auto seeds = chain_seeds(manifest.seed.value_or(config.chain.seed), manifest.chains);
  fs::create_directories(manifest.out_dir);
  std::optional<StateSpace> space;
  if (config.oracle) {
    const auto& c = config.chain;
    if (std::any_of(c.lengths.begin(), c.lengths.end(), [&](int l) { return l != c.lengths.front(); }))
      throw ConfigError("oracle comparison needs equal polymer lengths");
    space = enumerate_states(c.lattice, static_cast<int>(c.polymer_count()), c.lengths.front());
  }
  std::vector<ChainOutput> outputs(seeds.size());
  auto dir_of = [&](std::size_t i) {
    return seeds.size() == 1 ? manifest.out_dir : manifest.out_dir / ("chain-" + std::to_string(i));
  };
  {
    std::vector<std::jthread> threads;
    for (std::size_t i = 0; i < seeds.size(); ++i)
      threads.emplace_back([&, i] {
        try {
          const auto t0 = std::chrono::steady_clock::now();
          outputs[i] = run_one_chain(config, seeds[i], dir_of(i), space ? &*space : nullptr);
          logger()->info("chain {} finished {} steps in {:.3f} s", i, outputs[i].result.stats.steps,
                         std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
        } catch (const std::exception& e) {
          outputs[i].error = e.what();
        }
      });
  }
  for (const auto& o : outputs)
    if (!o.error.empty()) throw std::runtime_error(o.error);

  json summary;
  if (seeds.size() == 1) {
    summary = chain_json(seeds[0], outputs[0]);
  } else {
    ChainStats total;
    json chains = json::array();
    for (std::size_t i = 0; i < seeds.size(); ++i) {
      chains.push_back(chain_json(seeds[i], outputs[i]));
      chains.back()["directory"] = dir_of(i).filename().string();
      const auto& s = outputs[i].result.stats;
      total.steps += s.steps;
      total.successes += s.successes;
      total.failures += s.failures;
      total.acceptances += s.acceptances;
      total.rejections += s.rejections;
    }
    summary = {{"chains", chains},
               {"steps", total.steps},
               {"growth_failures", total.failures},
               {"rejections", total.rejections},
               {"acceptances", total.acceptances},
               {"construction_rate", total.construction_rate()},
               {"acceptance_rate", total.acceptance_rate()}};
  }
  write_file_atomic(manifest.out_dir / "summary.json", summary.dump(2) + "\n");
  return summary;
}

std::string dump_state_space(const LoadedConfig& config) {
  const auto& c = config.chain;
  if (std::any_of(c.lengths.begin(), c.lengths.end(), [&](int l) { return l != c.lengths.front(); }))
    throw ConfigError("enumeration needs equal polymer lengths");
  const auto space = enumerate_states(c.lattice, static_cast<int>(c.polymer_count()), c.lengths.front());
  std::ostringstream os;
  os << "# d=" << c.lattice.d << " a=" << c.lattice.a << " N=" << c.polymer_count() << " L=" << c.lengths.front()
     << " states=" << space.size() << '\n';
  for (std::size_t s = 0; s < space.size(); ++s) {
    bool first_polymer = true;
    for (std::uint32_t id : space.ids(s)) {
      if (!first_polymer) os << " ;";
      first_polymer = false;
      for (VertexId v : space.catalog().polymers[id]) os << ' ' << v;
    }
    os << '\n';
  }
  return os.str();
}

int cli_main(int argc, char** argv) {
  CLI::App app{"RG* polymer Markov chain simulator and brute-force verifier"};
  app.require_subcommand(1);

  RunManifest manifest;
  std::uint64_t seed = 0;
  auto* run_cmd = app.add_subcommand("run", "run one or more chains from a JSON config");
  run_cmd->add_option("--config", manifest.config_path, "JSON run configuration")->required();
  run_cmd->add_option("--out", manifest.out_dir, "output directory")->required();
  run_cmd->add_option("--chains", manifest.chains, "independent chains, one thread each")->check(CLI::PositiveNumber);
  auto* seed_opt = run_cmd->add_option("--seed", seed, "base seed (overrides the config)");

  std::string suite;
  std::uint64_t verify_seed = 20240601;
  auto* verify_cmd = app.add_subcommand("verify", "run a verification suite and print a JSON report");
  verify_cmd->add_option("suite", suite, "graphs|growth|balance|stationarity|irreducibility|entangled|extended|all")
      ->required();
  verify_cmd->add_option("--seed", verify_seed, "seed for the statistical checks");

  fs::path enum_config;
  auto* enum_cmd = app.add_subcommand("enumerate", "list every state of a small instance");
  enum_cmd->add_option("--config", enum_config, "JSON run configuration")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (*run_cmd) {
      if (!fs::exists(manifest.config_path)) {
        std::cerr << "error: config file not found: " << manifest.config_path.string() << '\n';
        return 2;
      }
      if (*seed_opt) manifest.seed = seed;
      const auto config = load_config(manifest.config_path);
      const auto summary = run_manifest(config, manifest);
      std::cout << summary.dump(2) << '\n';
      return 0;
    }
    if (*verify_cmd) {
      if (std::find(suite_names().begin(), suite_names().end(), suite) == suite_names().end()) {
        std::cerr << "error: unknown suite `" << suite << "`\n";
        return 2;
      }
      const auto reports = run_suite(suite, verify_seed);
      const auto doc = to_json(reports);
      std::cout << doc.dump(2) << '\n';
      return doc["pass"].get<bool>() ? 0 : 1;
    }
    if (*enum_cmd) {
      if (!fs::exists(enum_config)) {
        std::cerr << "error: config file not found: " << enum_config.string() << '\n';
        return 2;
      }
      std::cout << dump_state_space(load_config(enum_config));
      return 0;
    }
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace rgstar
