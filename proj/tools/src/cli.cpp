#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "graphdiff/checkpoint.hpp"
#include "graphdiff/datasets.hpp"
#include "graphdiff/diffusion.hpp"
#include "graphdiff/errors.hpp"
#include "graphdiff/graph_io.hpp"
#include "graphdiff/metrics.hpp"
#include "graphdiff/random.hpp"
#include "graphdiff/sampling.hpp"
#include "graphdiff/training.hpp"

namespace graphdiff::cli {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

constexpr const char* kVersion = "0.1.0";

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_json(const Json& doc, const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << doc.dump(2) << '\n';
}

void ensure_parent(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
}

Json artifact(const fs::path& path) { return Json{{"path", path.generic_string()}, {"fnv1a64", file_hash(path.string())}}; }

Json manifest_header(const char* command) { return Json{{"tool", "graphdiff"}, {"version", kVersion}, {"command", command}}; }

Json histogram_json(const std::map<int, int>& h) {
  Json j = Json::object();
  for (auto [n, c] : h) j[std::to_string(n)] = c;
  return j;
}

Json kernel_json(const KernelSpec& k) {
  Json j{{"kernel", to_string(k.kind)}, {"sigma", k.sigma}};
  if (k.kind == KernelKind::gaussian_emd) j["bin_width"] = k.bin_width;
  return j;
}

// ---------------------------------------------------------------- dataset

struct DatasetOpts {
  std::string kind = "community-small";
  int count = 0;
  std::uint64_t seed = 0;
  int n = 20;
  double p = 0.5;
  std::string input;
  std::string out;
};

void run_dataset(const DatasetOpts& o, int threads, std::ostream& out) {
  DatasetSpec spec;
  spec.kind = parse_dataset_kind(o.kind);
  spec.count = o.count > 0 ? o.count : default_count(spec.kind);
  spec.seed = o.seed;
  spec.er_nodes = o.n;
  spec.er_p = o.p;
  spec.path = o.input;
  const auto batch = gen_dataset(spec, threads);

  const fs::path path(o.out);
  ensure_parent(path);
  write_graphs(batch, path);

  Json config{{"kind", to_string(spec.kind)}, {"count", batch.size()}, {"seed", spec.seed}};
  if (spec.kind == DatasetKind::er) {
    config["n"] = spec.er_nodes;
    config["p"] = spec.er_p;
  }
  if (spec.kind == DatasetKind::file) config["input"] = artifact(spec.path);
  Json manifest = manifest_header("dataset");
  manifest["config"] = config;
  manifest["n_distribution"] = histogram_json(node_count_histogram(batch));
  manifest["artifacts"] = Json::array({artifact(path)});
  write_json(manifest, path.string() + ".manifest.json");
  out << "wrote " << batch.size() << " graphs to " << path.string() << '\n';
}

// ---------------------------------------------------------------- train

struct TrainOpts {
  std::string data;
  std::string out_dir;
  std::string loss = "simple";
  std::string schedule = "linear";
  int steps = 32;
  int depth = 6;
  int hidden = 16;
  int epochs = 100;
  int batch_size = 64;
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double adam_eps = 1e-8;
  double lr_decay = 0.999;
  double divergence = 1e6;
  std::uint64_t seed = 0;
  int checkpoint_every = 0;
  std::string resume;
};

std::vector<TraceRow> read_trace(const fs::path& path, int before_epoch) {
  std::vector<TraceRow> rows;
  std::ifstream in(path);
  if (!in) return rows;
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    TraceRow r;
    unsigned long long step = 0;
    if (std::sscanf(line.c_str(), "%d,%llu,%lf,%lf", &r.epoch, &step, &r.loss, &r.t_mean) != 4) {
      throw std::runtime_error("malformed trace row in '" + path.string() + "': " + line);
    }
    r.step = step;
    if (r.epoch < before_epoch) rows.push_back(r);
  }
  return rows;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << text;
}

int run_train(const TrainOpts& o, const CLI::App& cmd, int threads, std::ostream& out, std::ostream& err) {
  const auto dataset = read_graphs(fs::path(o.data));
  if (dataset.empty()) throw std::runtime_error("training set '" + o.data + "' holds no graphs");

  TrainConfig config;
  config.loss = parse_loss_kind(o.loss);
  config.schedule = parse_schedule_kind(o.schedule);
  config.steps = o.steps;
  config.model.depth = o.depth;
  config.model.hidden = o.hidden;
  config.epochs = o.epochs;
  config.batch_size = o.batch_size;
  config.learning_rate = o.lr;
  config.beta1 = o.beta1;
  config.beta2 = o.beta2;
  config.adam_epsilon = o.adam_eps;
  config.lr_decay = o.lr_decay;
  config.seed = o.seed;
  config.checkpoint_every = o.checkpoint_every;
  config.divergence_threshold = o.divergence;
  config.threads = threads;

  std::optional<Checkpoint> resumed;
  if (!o.resume.empty()) {
    resumed = read_checkpoint(fs::path(o.resume));
    const auto& ck = *resumed;
    auto clash = [&](const char* flag, bool differs) {
      if (cmd.count(flag) > 0 && differs) {
        throw std::invalid_argument(std::string(flag) + " differs from the checkpoint being resumed");
      }
    };
    clash("--depth", ck.state.params.config().depth != o.depth);
    clash("--hidden", ck.state.params.config().hidden != o.hidden);
    clash("--steps", ck.steps != o.steps);
    clash("--schedule", ck.schedule != config.schedule);
    clash("--loss", ck.loss != config.loss);
    if (ck.seed != o.seed) throw std::invalid_argument("--seed differs from the checkpoint being resumed");
    config.model = ck.state.params.config();
    config.steps = ck.steps;
    config.schedule = ck.schedule;
    config.loss = ck.loss;
  }
  config.validate();

  const fs::path dir(o.out_dir);
  fs::create_directories(dir);
  const auto node_counts = node_count_histogram(dataset);
  auto checkpoint_of = [&](const TrainState& s) {
    return Checkpoint{s, config.schedule, config.steps, config.loss, config.seed, node_counts};
  };

  TrainState state = resumed ? resumed->state : initial_train_state(config);
  std::vector<TraceRow> trace = resumed ? read_trace(dir / "trace.csv", state.epoch) : std::vector<TraceRow>{};
  const std::size_t carried = trace.size();

  TrainHooks hooks;
  hooks.on_step = [&](const TraceRow& row) { trace.push_back(row); };
  hooks.on_best = [&](const TrainState& s) { write_checkpoint(checkpoint_of(s), dir / "best.ckpt"); };
  hooks.on_checkpoint = [&](const TrainState& s) {
    char name[32];
    std::snprintf(name, sizeof name, "epoch-%04d.ckpt", s.epoch);
    write_checkpoint(checkpoint_of(s), dir / name);
    write_checkpoint(checkpoint_of(s), dir / "last.ckpt");
    write_text(dir / "trace.csv", format_trace_csv(trace));
  };

  const auto result = train(config, dataset, std::move(state), hooks);
  if (result.diverged) {
    // Drop the rows of the epoch that failed so the trace matches last.ckpt.
    std::erase_if(trace, [&](const TraceRow& r) { return r.epoch >= result.last.epoch; });
  }
  write_checkpoint(checkpoint_of(result.last), dir / "last.ckpt");
  write_text(dir / "trace.csv", format_trace_csv(trace));

  Json cfg{{"data", artifact(o.data)},
           {"loss", to_string(config.loss)},
           {"schedule", to_string(config.schedule)},
           {"steps", config.steps},
           {"depth", config.model.depth},
           {"hidden", config.model.hidden},
           {"epochs", config.epochs},
           {"batch_size", config.batch_size},
           {"learning_rate", config.learning_rate},
           {"betas", Json::array({config.beta1, config.beta2})},
           {"adam_epsilon", config.adam_epsilon},
           {"lr_decay", config.lr_decay},
           {"divergence_threshold", config.divergence_threshold},
           {"checkpoint_every", config.checkpoint_every},
           {"seed", config.seed}};
  if (resumed) cfg["resumed_from"] = artifact(o.resume);
  Json manifest = manifest_header("train");
  manifest["config"] = cfg;
  manifest["result"] = Json{{"epochs_completed", result.last.epoch},
                            {"steps", result.last.step},
                            {"best_loss", std::isfinite(result.last.best_loss) ? Json(result.last.best_loss) : Json("inf")},
                            {"diverged", result.diverged}};
  if (result.diverged) manifest["result"]["message"] = result.message;
  Json artifacts = Json::array({artifact(dir / "last.ckpt"), artifact(dir / "trace.csv")});
  if (fs::exists(dir / "best.ckpt")) artifacts.push_back(artifact(dir / "best.ckpt"));
  manifest["artifacts"] = artifacts;
  write_json(manifest, dir / "manifest.json");

  if (result.diverged) {
    err << "error: training diverged: " << result.message << '\n';
    return 1;
  }
  out << "trained " << (trace.size() - carried) << " steps to epoch " << result.last.epoch << "; last loss "
      << (result.epoch_losses.empty() ? 0.0 : result.epoch_losses.back()) << '\n';
  return 0;
}

// ---------------------------------------------------------------- sample

struct SampleOpts {
  std::string checkpoint;
  std::string oracle;
  std::string algorithm;
  int count = 1024;
  int n = 0;
  int steps = 32;
  std::string schedule = "linear";
  std::uint64_t seed = 0;
  std::string out;
  std::string trajectory;
};

void run_sample(const SampleOpts& o, const CLI::App& cmd, int threads, std::ostream& out) {
  std::unique_ptr<Denoiser> denoiser;
  std::map<int, int> node_counts;
  SamplerKind kind = SamplerKind::simple;
  Json source;
  SampleConfig config;
  if (!o.checkpoint.empty()) {
    auto ck = read_checkpoint(fs::path(o.checkpoint));
    if (cmd.count("--schedule") > 0 && parse_schedule_kind(o.schedule) != ck.schedule) {
      throw std::invalid_argument("--schedule differs from the checkpoint's schedule");
    }
    if (cmd.count("--steps") > 0) config.steps = o.steps;
    kind = ck.loss == LossKind::vb ? SamplerKind::vb : SamplerKind::simple;
    node_counts = ck.node_counts;
    denoiser = std::make_unique<PpgnDenoiser>(ck.state.params, NoiseSchedule::make(ck.schedule, ck.steps));
    source = Json{{"checkpoint", artifact(o.checkpoint)}};
  } else {
    auto data = read_graphs(fs::path(o.oracle));
    if (data.empty()) throw std::runtime_error("oracle dataset '" + o.oracle + "' holds no graphs");
    node_counts = node_count_histogram(data);
    if (node_counts.size() != 1) throw std::invalid_argument("oracle mode needs a dataset with a single node count");
    denoiser = std::make_unique<EmpiricalDenoiser>(std::move(data),
                                                   NoiseSchedule::make(parse_schedule_kind(o.schedule), o.steps));
    source = Json{{"oracle", artifact(o.oracle)}, {"schedule", o.schedule}, {"steps", o.steps}};
  }
  if (!o.algorithm.empty()) kind = parse_sampler_kind(o.algorithm);

  config.count = o.count;
  config.node_counts = o.n > 0 ? NodeCountPolicy::fixed(o.n) : NodeCountPolicy::empirical(node_counts);
  config.seed = o.seed;
  config.threads = threads;

  GraphBatch trajectory;
  const auto graphs = sample_graphs(*denoiser, kind, config, o.trajectory.empty() ? nullptr : &trajectory);

  const fs::path path(o.out);
  ensure_parent(path);
  write_graphs(graphs, path);
  Json artifacts = Json::array({artifact(path)});
  if (!o.trajectory.empty()) {
    ensure_parent(o.trajectory);
    write_graphs(trajectory, fs::path(o.trajectory));
    artifacts.push_back(artifact(o.trajectory));
  }

  Json manifest = manifest_header("sample");
  manifest["config"] = Json{{"source", source},
                            {"algorithm", to_string(kind)},
                            {"count", config.count},
                            {"node_counts", o.n > 0 ? Json(o.n) : histogram_json(node_counts)},
                            {"seed", config.seed}};
  manifest["artifacts"] = artifacts;
  write_json(manifest, path.string() + ".manifest.json");
  out << "wrote " << graphs.size() << " graphs to " << path.string() << '\n';
}

// ---------------------------------------------------------------- eval

struct EvalOpts {
  std::string generated;
  std::string reference;
  std::string out;
  std::string degree_kernel = "gaussian-emd";
  double degree_sigma = 1.0;
  std::string clustering_kernel = "gaussian-emd";
  double clustering_sigma = 1.0;
  std::string orbit_kernel = "gaussian-tv";
  double orbit_sigma = 1.0;
  int clustering_bins = 100;
};

void run_eval(const EvalOpts& o, int threads, std::ostream& out) {
  const auto generated = read_graphs(fs::path(o.generated));
  const auto reference = read_graphs(fs::path(o.reference));
  MetricConfig config;
  config.degree = {parse_kernel_kind(o.degree_kernel), o.degree_sigma, 1.0};
  config.clustering = {parse_kernel_kind(o.clustering_kernel), o.clustering_sigma, 1.0 / o.clustering_bins};
  config.orbit = {parse_kernel_kind(o.orbit_kernel), o.orbit_sigma, 1.0};
  config.clustering_bins = o.clustering_bins;
  config.threads = threads;
  const auto report = evaluate(generated, reference, config);

  Json doc{{"degree", report.degree},
           {"clustering", report.clustering},
           {"orbit", report.orbit},
           {"avg", report.avg},
           {"kernels", Json{{"degree", kernel_json(config.degree)},
                            {"clustering", kernel_json(config.clustering)},
                            {"orbit", kernel_json(config.orbit)}}},
           {"estimator", "biased-mmd2-clipped"},
           {"clustering_bins", config.clustering_bins},
           {"generated", Json{{"file", artifact(o.generated)}, {"count", generated.size()}}},
           {"reference", Json{{"file", artifact(o.reference)}, {"count", reference.size()}}}};
  const fs::path path(o.out);
  ensure_parent(path);
  write_json(doc, path);
  Json manifest = manifest_header("eval");
  manifest["artifacts"] = Json::array({artifact(path)});
  write_json(manifest, path.string() + ".manifest.json");
  out << "degree " << report.degree << " clustering " << report.clustering << " orbit " << report.orbit << " avg "
      << report.avg << '\n';
}

// ---------------------------------------------------------------- noise-demo

struct NoiseOpts {
  std::string input;
  std::string kind = "community-small";
  int steps = 32;
  std::string schedule = "linear";
  int every = 4;
  std::uint64_t seed = 0;
  std::string out;
};

void run_noise_demo(const NoiseOpts& o, std::ostream& out) {
  Graph g;
  if (!o.input.empty()) {
    const auto batch = read_graphs(fs::path(o.input));
    if (batch.empty()) throw std::runtime_error("'" + o.input + "' holds no graphs");
    g = batch.front();
  } else {
    DatasetSpec spec;
    spec.kind = parse_dataset_kind(o.kind);
    if (spec.kind == DatasetKind::file) throw std::invalid_argument("noise-demo: use --input for graph files");
    spec.count = 1;
    spec.seed = o.seed;
    g = gen_dataset(spec).front();
  }
  const auto schedule = NoiseSchedule::make(parse_schedule_kind(o.schedule), o.steps);
  Rng rng = make_rng(o.seed, "noise-demo");

  const fs::path path(o.out);
  ensure_parent(path);
  std::ofstream dot(path, std::ios::binary);
  if (!dot) throw std::runtime_error("cannot write '" + path.string() + "'");
  dot << to_dot(g, "t0");
  int rungs = 1;
  for (int t = 1; t <= schedule.steps(); ++t) {
    g = flip_pairs(g, forward_flip_prob(schedule, t), rng);
    if (t % o.every == 0 || t == schedule.steps()) {
      dot << to_dot(g, "t" + std::to_string(t));
      ++rungs;
    }
  }
  dot.close();
  Json manifest = manifest_header("noise-demo");
  manifest["config"] = Json{{"schedule", o.schedule}, {"steps", o.steps}, {"every", o.every}, {"seed", o.seed}};
  manifest["artifacts"] = Json::array({artifact(path)});
  write_json(manifest, path.string() + ".manifest.json");
  out << "wrote " << rungs << " DOT graphs to " << path.string() << '\n';
}

}  // namespace

std::string file_hash(const std::string& path) { return hex64(fnv1a64(read_file(path))); }

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Discrete denoising diffusion for simple undirected graphs", "graphdiff"};
  app.set_config("--config", "", "INI/TOML file of option values; [section] per subcommand, flags override it");
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  int threads = 1;
  // GRAPHDIFF_THREADS is read by hand: CLI11 silently drops env values that fail validation.
  auto* o_threads = app.add_option("--threads", threads, "Worker threads (fallback: GRAPHDIFF_THREADS)")
                        ->check(CLI::PositiveNumber)
                        ->capture_default_str();

  DatasetOpts ds;
  auto* c_ds = app.add_subcommand("dataset", "Generate or load a dataset and write it as an edge-list file");
  c_ds->add_option("--kind", ds.kind, "er | community-small | sbm-27 | planar-60 | file")->capture_default_str();
  c_ds->add_option("--count", ds.count, "Number of graphs (default depends on --kind)");
  c_ds->add_option("--seed", ds.seed, "Global seed")->required();
  c_ds->add_option("--n", ds.n, "Node count for er")->capture_default_str();
  c_ds->add_option("--p", ds.p, "Edge probability for er")->capture_default_str();
  c_ds->add_option("--input", ds.input, "Edge-list file for --kind file");
  c_ds->add_option("--out", ds.out, "Output edge-list file")->required();

  TrainOpts tr;
  auto* c_tr = app.add_subcommand("train", "Train a MiniPPGN denoiser");
  c_tr->add_option("--data", tr.data, "Training set edge-list file")->required();
  c_tr->add_option("--out-dir", tr.out_dir, "Directory for checkpoints, trace and manifest")->required();
  c_tr->add_option("--loss", tr.loss, "vb | simple")->capture_default_str();
  c_tr->add_option("--schedule", tr.schedule, "linear | cosine")->capture_default_str();
  c_tr->add_option("--steps", tr.steps, "Diffusion steps T")->capture_default_str();
  c_tr->add_option("--depth", tr.depth, "MiniPPGN blocks")->capture_default_str();
  c_tr->add_option("--hidden", tr.hidden, "MiniPPGN hidden width")->capture_default_str();
  c_tr->add_option("--epochs", tr.epochs, "Total epochs, counting resumed ones")->capture_default_str();
  c_tr->add_option("--batch-size", tr.batch_size)->capture_default_str();
  c_tr->add_option("--lr", tr.lr, "Adam learning rate")->capture_default_str();
  c_tr->add_option("--beta1", tr.beta1)->capture_default_str();
  c_tr->add_option("--beta2", tr.beta2)->capture_default_str();
  c_tr->add_option("--adam-eps", tr.adam_eps)->capture_default_str();
  c_tr->add_option("--lr-decay", tr.lr_decay, "Learning rate factor per epoch")->capture_default_str();
  c_tr->add_option("--divergence-threshold", tr.divergence)->capture_default_str();
  c_tr->add_option("--checkpoint-every", tr.checkpoint_every, "Epochs between checkpoints; 0 disables")
      ->capture_default_str();
  c_tr->add_option("--seed", tr.seed, "Global seed")->required();
  c_tr->add_option("--resume", tr.resume, "Checkpoint to continue from");

  SampleOpts sm;
  auto* c_sm = app.add_subcommand("sample", "Generate graphs by running the reverse chain");
  auto* o_ck = c_sm->add_option("--checkpoint", sm.checkpoint, "Trained MiniPPGN checkpoint");
  auto* o_or = c_sm->add_option("--oracle", sm.oracle, "Dataset for the exact empirical denoiser");
  o_ck->excludes(o_or);
  c_sm->add_option("--algorithm", sm.algorithm, "vb | simple (default: matches the training loss; simple for --oracle)");
  c_sm->add_option("--count", sm.count)->capture_default_str()->check(CLI::PositiveNumber);
  c_sm->add_option("--n", sm.n, "Fixed node count (default: training-set distribution)");
  c_sm->add_option("--steps", sm.steps, "Diffusion steps T; must match a checkpoint")->capture_default_str();
  c_sm->add_option("--schedule", sm.schedule, "linear | cosine (oracle mode)")->capture_default_str();
  c_sm->add_option("--seed", sm.seed, "Global seed")->required();
  c_sm->add_option("--out", sm.out, "Output edge-list file")->required();
  c_sm->add_option("--dump-trajectory", sm.trajectory, "Write A_T..A_1 of the first sample to this file");

  EvalOpts ev;
  auto* c_ev = app.add_subcommand("eval", "MMD report between generated and reference graphs");
  c_ev->add_option("--generated", ev.generated)->required();
  c_ev->add_option("--reference", ev.reference)->required();
  c_ev->add_option("--out", ev.out, "JSON report path")->required();
  c_ev->add_option("--degree-kernel", ev.degree_kernel)->capture_default_str();
  c_ev->add_option("--degree-sigma", ev.degree_sigma)->capture_default_str();
  c_ev->add_option("--clustering-kernel", ev.clustering_kernel)->capture_default_str();
  c_ev->add_option("--clustering-sigma", ev.clustering_sigma)->capture_default_str();
  c_ev->add_option("--orbit-kernel", ev.orbit_kernel)->capture_default_str();
  c_ev->add_option("--orbit-sigma", ev.orbit_sigma)->capture_default_str();
  c_ev->add_option("--clustering-bins", ev.clustering_bins)->capture_default_str()->check(CLI::PositiveNumber);

  NoiseOpts nd;
  auto* c_nd = app.add_subcommand("noise-demo", "Forward-noise one graph and write the ladder as DOT");
  c_nd->add_option("--input", nd.input, "Edge-list file; the first graph is used");
  c_nd->add_option("--kind", nd.kind, "Generator used when --input is absent")->capture_default_str();
  c_nd->add_option("--steps", nd.steps)->capture_default_str();
  c_nd->add_option("--schedule", nd.schedule)->capture_default_str();
  c_nd->add_option("--every", nd.every, "Write every k-th step")->capture_default_str()->check(CLI::PositiveNumber);
  c_nd->add_option("--seed", nd.seed, "Global seed")->required();
  c_nd->add_option("--out", nd.out, "DOT output file")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
    if (const char* env = std::getenv("GRAPHDIFF_THREADS"); env != nullptr && *env != '\0' && o_threads->count() == 0) {
      const std::string text(env);
      std::size_t used = 0;
      try {
        threads = std::stoi(text, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != text.size()) throw CLI::ValidationError("GRAPHDIFF_THREADS", "not an integer: '" + text + "'");
    }
    if (threads < 1) throw CLI::ValidationError("--threads", "must be >= 1");
    if (c_sm->parsed() && sm.checkpoint.empty() && sm.oracle.empty()) {
      throw CLI::RequiredError("sample needs --checkpoint or --oracle");
    }
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (c_ds->parsed()) run_dataset(ds, threads, out);
    if (c_tr->parsed()) return run_train(tr, *c_tr, threads, out, err);
    if (c_sm->parsed()) run_sample(sm, *c_sm, threads, out);
    if (c_ev->parsed()) run_eval(ev, threads, out);
    if (c_nd->parsed()) run_noise_demo(nd, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace graphdiff::cli
