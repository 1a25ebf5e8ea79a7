// Copyright 2026 The linksparse Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// linksparse command-line driver: dataset generation, eCDF collection,
// training and the two evaluation experiments.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "linksparse/dataset.h"
#include "linksparse/errors.h"
#include "linksparse/experiments.h"
#include "linksparse/gcn.h"
#include "linksparse/graph.h"
#include "linksparse/graph_io.h"
#include "linksparse/scheduler.h"
#include "linksparse/training.h"
#include "linksparse/traffic.h"

namespace fs = std::filesystem;
using namespace linksparse;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitData = 3;

constexpr std::size_t kFullTrainingSetSize = 5900;

struct Options {
  std::uint64_t seed = 1;
  std::string out;
  std::string manifest;
  std::string ecdf;
  std::string model;

  // gen-dataset
  std::string split = "test";
  double scale = 1.0;

  // collect-ecdf
  int slots = 300;
  double mu = 0.04;
  double rate_spread = 25.0;
  int max_graphs = 50;

  // train
  int epochs = 25;
  std::size_t batch = 200;
  int replay_passes = 0;
  double lr = 0.01;
  double lr_decay = 0.97;
  double delta = 0.97;
  std::vector<int> hidden;
  bool restart_stage2 = false;

  // sweep / timesim
  std::vector<double> etas = DefaultSweepQuantiles();
  double eta = 0.95;
  double mu_min = 0.03;
  double mu_max = 0.05;

  // mwis-oracle / inspect-model
  std::string graph;
  std::string weights;
  std::string trace;
};

void PrintMeans(std::ostream& out, const std::string& title,
                const std::map<std::string, std::vector<double>>& sums,
                const std::map<std::string, int>& counts,
                const std::vector<std::string>& columns) {
  out << title << '\n';
  for (const auto& [key, values] : sums) {
    out << "  " << key;
    const int c = counts.at(key);
    for (std::size_t i = 0; i < values.size(); ++i) {
      out << "  " << columns[i] << '=' << FormatDouble(values[i] / c);
    }
    out << '\n';
  }
}

int GenDataset(const Options& o) {
  DatasetManifest manifest;
  if (o.split == "train") {
    manifest = TrainingRecipe(o.seed, o.scale);
  } else if (o.split == "test") {
    manifest = TestRecipe(o.seed, o.scale);
  } else {
    std::cerr << "gen-dataset: --split must be train or test\n";
    return kExitUsage;
  }
  WriteDataset(o.out, manifest);
  std::cout << "wrote " << manifest.entries.size() << " graphs and "
            << (fs::path(o.out) / "manifest.json").string() << '\n';
  return kExitOk;
}

int CollectEcdfCommand(const Options& o) {
  DatasetManifest manifest;
  auto graphs = LoadDataset(o.manifest, &manifest);
  if (o.max_graphs > 0 && graphs.size() > static_cast<std::size_t>(o.max_graphs)) {
    // Evenly spaced subset so every recipe cell stays represented.
    std::vector<ConflictGraph> subset;
    const double stride = static_cast<double>(graphs.size()) / o.max_graphs;
    for (int i = 0; i < o.max_graphs; ++i) {
      subset.push_back(graphs[static_cast<std::size_t>(i * stride)]);
    }
    graphs = std::move(subset);
  }
  TrafficConfig traffic;
  traffic.mu = o.mu;
  traffic.rate_spread = o.rate_spread;
  Rng rng(o.seed);
  const auto ecdf = CollectEcdf(graphs, traffic, o.slots, rng);
  EcdfFileHeader header;
  header.pool_size = ecdf.size();
  header.traffic = traffic;
  header.slots = o.slots;
  header.source_fingerprint = FingerprintHex(Fingerprint(ReadTextFile(o.manifest)));
  WriteEcdfFile(o.out, ecdf, header);
  std::cout << "collected " << ecdf.size() << " utility samples from " << graphs.size()
            << " graphs; u(0.5)=" << FormatDouble(ecdf.Quantile(0.5))
            << " u(0.95)=" << FormatDouble(ecdf.Quantile(0.95)) << '\n';
  return kExitOk;
}

int TrainCommand(const Options& o) {
  const auto graphs = LoadDataset(o.manifest);
  const auto ecdf = ReadEcdfFile(o.ecdf);
  TrainConfig cfg;
  cfg.seed = o.seed;
  cfg.epochs = o.epochs;
  cfg.batch_size = o.batch;
  cfg.lr0 = o.lr;
  cfg.lr_decay = o.lr_decay;
  cfg.delta = o.delta;
  cfg.continue_stage2 = !o.restart_stage2;
  // Auto: keep the number of optimizer steps per epoch of the full recipe.
  cfg.replay_passes =
      o.replay_passes > 0
          ? o.replay_passes
          : std::max<int>(1, static_cast<int>(std::lround(
                                 static_cast<double>(kFullTrainingSetSize) /
                                 static_cast<double>(graphs.size()))));
  Rng init_rng(DeriveSeed(o.seed, 0xfeed));
  const GcnModel initial = GcnModel::Initialize(o.hidden, init_rng);

  const TrainResult result = Train(initial, graphs, ecdf, cfg);
  CheckpointInfo info;
  info.stage1_eta = cfg.stage1_eta;
  info.ecdf_fingerprint = EcdfFingerprint(ecdf);
  const fs::path dir(o.out);
  fs::create_directories(dir);
  if (result.stage1_model) SaveCheckpoint(dir / "stage1.json", *result.stage1_model, info);
  SaveCheckpoint(dir / "model.json", result.model, info);
  WriteTextFile(dir / "train_log.csv", TrainingLogCsv(result.log));
  std::cout << "trained " << result.log.size() << " epochs (" << cfg.replay_passes
            << " replay passes/epoch); z1 calibration "
            << FormatDouble(result.z1_calibration) << "; wrote " << (dir / "model.json").string()
            << '\n';
  return kExitOk;
}

std::optional<GcnModel> MaybeLoadModel(const Options& o, const EmpiricalDistribution& ecdf) {
  if (o.model.empty()) {
    std::cerr << "no --model given: running the threshold baseline only\n";
    return std::nullopt;
  }
  CheckpointInfo info;
  GcnModel model = LoadCheckpoint(o.model, &info);
  if (!info.ecdf_fingerprint.empty() && info.ecdf_fingerprint != EcdfFingerprint(ecdf)) {
    std::cerr << "warning: model was trained with a different eCDF ("
              << info.ecdf_fingerprint << ")\n";
  }
  return model;
}

int SweepCommand(const Options& o) {
  DatasetManifest manifest;
  const auto graphs = LoadDataset(o.manifest, &manifest);
  const auto ecdf = ReadEcdfFile(o.ecdf);
  const auto model = MaybeLoadModel(o, ecdf);
  SweepOptions so;
  so.etas = o.etas;
  so.seed = o.seed;
  for (double eta : so.etas) {
    if (!(eta >= 0.0 && eta <= 1.0)) {
      std::cerr << "sweep: quantile levels must lie in [0, 1]\n";
      return kExitUsage;
    }
  }
  const auto rows = QuantileSweep(model ? &*model : nullptr, manifest, graphs, ecdf, so);
  WriteTextFile(o.out, SweepCsv(rows));

  std::map<std::string, std::vector<double>> sums;
  std::map<std::string, int> counts;
  for (const auto& r : rows) {
    std::ostringstream key;
    key << r.method << " eta=" << FormatDouble(r.eta);
    auto& s = sums[key.str()];
    s.resize(4, 0.0);
    s[0] += r.ratios.ar_utility;
    s[1] += r.ratios.rr_vertices;
    s[2] += r.ratios.rr_avg_degree;
    s[3] += r.ratios.rr_messages;
    ++counts[key.str()];
  }
  PrintMeans(std::cout, "mean ratios by method and quantile:", sums, counts,
             {"ar_utility", "rr_vertices", "rr_avg_degree", "rr_messages"});
  return kExitOk;
}

int TimeSimCommand(const Options& o) {
  DatasetManifest manifest;
  const auto graphs = LoadDataset(o.manifest, &manifest);
  const auto ecdf = ReadEcdfFile(o.ecdf);
  const auto model = MaybeLoadModel(o, ecdf);
  TimeSimOptions to;
  to.slots = o.slots;
  to.eta = o.eta;
  to.mu_min = o.mu_min;
  to.mu_max = o.mu_max;
  to.traffic.rate_spread = o.rate_spread;
  to.seed = o.seed;
  const auto rows = TimeSimulation(model ? &*model : nullptr, manifest, graphs, ecdf, to);
  WriteTextFile(o.out, TimeSimCsv(rows));

  std::map<std::string, std::vector<double>> sums;
  std::map<std::string, int> counts;
  std::map<std::string, std::pair<std::int64_t, std::int64_t>> throughput;
  for (const auto& r : rows) {
    std::ostringstream key;
    key << r.method << " d_bar=" << FormatDouble(r.d_bar);
    auto& s = sums[key.str()];
    s.resize(2, 0.0);
    s[0] += r.rr_avg_degree;
    s[1] += r.rr_messages;
    ++counts[key.str()];
    throughput[r.method].first += r.delivered;
    throughput[r.method].second += r.arrivals;
  }
  PrintMeans(std::cout, "mean ratios by method and expected degree:", sums, counts,
             {"rr_avg_degree", "rr_messages"});
  std::cout << "throughput (delivered / arrivals):\n";
  for (const auto& [method, t] : throughput) {
    std::cout << "  " << method << "  " << t.first << " / " << t.second << '\n';
  }
  return kExitOk;
}

int MwisOracleCommand(const Options& o) {
  const ConflictGraph g = ReadGraphFile(o.graph);
  const auto w = ReadWeightsFile(o.weights);
  if (static_cast<VertexId>(w.size()) != g.num_vertices()) {
    throw DataError("weights file has " + std::to_string(w.size()) +
                    " entries for a graph with " + std::to_string(g.num_vertices()) +
                    " vertices");
  }
  const TracedSchedule lgs = LocalGreedyScheduleTraced(g, w);
  if (!o.trace.empty()) {
    std::ostringstream trace;
    WriteTraceJsonLines(trace, lgs.trace);
    WriteTextFile(o.trace, trace.str());
  }
  auto print_set = [](const VertexSet& s) {
    std::cout << '[';
    for (std::size_t i = 0; i < s.members().size(); ++i) {
      std::cout << (i ? "," : "") << s.members()[i];
    }
    std::cout << ']';
  };
  std::cout << "lgs_weight=" << FormatDouble(TotalWeight(w, lgs.schedule.selected))
            << " lgs_set=";
  print_set(lgs.schedule.selected);
  std::cout << " rounds=" << lgs.schedule.rounds
            << " p2p_messages=" << lgs.schedule.p2p_messages << '\n';
  if (g.num_vertices() > kMaxBruteForceVertices) {
    std::cerr << "exact optimum skipped: n = " << g.num_vertices() << " exceeds "
              << kMaxBruteForceVertices << '\n';
    return kExitData;
  }
  const MwisSolution best = BruteForceMwis(g, w);
  std::cout << "optimum_weight=" << FormatDouble(best.weight) << " optimum_set=";
  print_set(best.set);
  std::cout << '\n';
  return kExitOk;
}

int InspectModelCommand(const Options& o) {
  CheckpointInfo info;
  const GcnModel model = LoadCheckpoint(o.model, &info);
  std::cout << "layers=" << model.num_layers() << " dims=";
  for (std::size_t i = 0; i < model.dims.size(); ++i) {
    std::cout << (i ? "x" : "") << model.dims[i];
  }
  std::cout << " leaky_slope=" << FormatDouble(model.leaky_slope)
            << " z1_calibration=" << FormatDouble(model.z1_calibration)
            << " stage1_eta=" << FormatDouble(info.stage1_eta)
            << " ecdf=" << info.ecdf_fingerprint << '\n';
  const Eigen::IOFormat fmt(Eigen::FullPrecision, 0, ", ", "; ", "", "", "[", "]");
  for (int l = 0; l < model.num_layers(); ++l) {
    std::cout << "layer " << l + 1 << " self=" << model.self_weights[l].format(fmt)
              << " neighbor=" << model.neighbor_weights[l].format(fmt) << '\n';
  }
  if (!o.graph.empty()) {
    const ConflictGraph g = ReadGraphFile(o.graph);
    const Embeddings z = ComputeEmbeddings(model, g);
    std::ostringstream csv;
    csv << "vertex,degree,z0,z1\n";
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
      csv << v << ',' << g.degree(v) << ',' << FormatDouble(z(v, 0)) << ','
          << FormatDouble(z(v, 1)) << '\n';
    }
    if (o.out.empty()) {
      std::cout << csv.str();
    } else {
      WriteTextFile(o.out, csv.str());
    }
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"GCN-based link sparsification for distributed wireless scheduling"};
  app.require_subcommand(1);
  Options o;

  auto* gen = app.add_subcommand("gen-dataset", "Generate an ER train/test dataset");
  gen->add_option("--split", o.split, "train or test")->check(CLI::IsMember({"train", "test"}));
  gen->add_option("--seed", o.seed, "Dataset seed");
  gen->add_option("--scale", o.scale, "Multiplier on every per-cell count")
      ->check(CLI::PositiveNumber);
  gen->add_option("--out", o.out, "Output directory")->required();

  auto* collect = app.add_subcommand("collect-ecdf", "Collect the utility eCDF with vanilla LGS");
  collect->add_option("--manifest", o.manifest, "Dataset manifest.json")->required();
  collect->add_option("--seed", o.seed, "Simulation seed");
  collect->add_option("--slots", o.slots, "Slots per graph")->check(CLI::PositiveNumber);
  collect->add_option("--mu", o.mu, "Traffic load")->check(CLI::Range(0.0, 0.999));
  collect->add_option("--rate-spread", o.rate_spread, "Std. deviation of the link rate");
  collect->add_option("--max-graphs", o.max_graphs, "Use an evenly spaced subset (0 = all)");
  collect->add_option("--out", o.out, "Output eCDF CSV")->required();

  auto* train = app.add_subcommand("train", "Two-stage GCN training");
  train->add_option("--manifest", o.manifest, "Training manifest.json")->required();
  train->add_option("--ecdf", o.ecdf, "eCDF CSV")->required();
  train->add_option("--seed", o.seed, "Training seed");
  train->add_option("--epochs", o.epochs, "Epochs per stage")->check(CLI::NonNegativeNumber);
  train->add_option("--batch", o.batch, "Replay batch size")->check(CLI::PositiveNumber);
  train->add_option("--replay-passes", o.replay_passes,
                    "Passes over each epoch's buffer (0 = match the full recipe's step count)");
  train->add_option("--lr", o.lr, "Initial learning rate")->check(CLI::PositiveNumber);
  train->add_option("--lr-decay", o.lr_decay, "Per-epoch learning-rate decay")
      ->check(CLI::PositiveNumber);
  train->add_option("--delta", o.delta, "Target approximation ratio")
      ->check(CLI::Range(0.0, 1.0));
  train->add_option("--hidden", o.hidden, "Hidden layer widths (none = single layer)")
      ->delimiter(',');
  train->add_flag("--restart-stage2", o.restart_stage2, "Reinitialize before stage 2");
  train->add_option("--out", o.out, "Output directory for checkpoints and log")->required();

  auto* sweep = app.add_subcommand("sweep", "Cut-off quantile sweep on identical inputs");
  sweep->add_option("--manifest", o.manifest, "Test manifest.json")->required();
  sweep->add_option("--ecdf", o.ecdf, "eCDF CSV")->required();
  sweep->add_option("--model", o.model, "Checkpoint (omit for baseline only)");
  sweep->add_option("--seed", o.seed, "Utility seed");
  sweep->add_option("--etas", o.etas, "Quantile levels")->delimiter(',');
  sweep->add_option("--out", o.out, "Output CSV")->required();

  auto* timesim = app.add_subcommand("timesim", "Closed-loop time-slotted simulation");
  timesim->add_option("--manifest", o.manifest, "Test manifest.json")->required();
  timesim->add_option("--ecdf", o.ecdf, "eCDF CSV")->required();
  timesim->add_option("--model", o.model, "Checkpoint (omit for baseline only)");
  timesim->add_option("--seed", o.seed, "Traffic seed");
  timesim->add_option("--slots", o.slots, "Slots per instance")->check(CLI::PositiveNumber);
  timesim->add_option("--eta", o.eta, "Cut-off quantile")->check(CLI::Range(0.0, 1.0));
  timesim->add_option("--mu-min", o.mu_min, "Lowest traffic load");
  timesim->add_option("--mu-max", o.mu_max, "Highest traffic load");
  timesim->add_option("--rate-spread", o.rate_spread, "Std. deviation of the link rate");
  timesim->add_option("--out", o.out, "Output CSV")->required();

  auto* oracle = app.add_subcommand("mwis-oracle", "Exact MWIS (n <= 30) next to LGS");
  oracle->add_option("--graph", o.graph, "Graph file (JSON or edge list)")->required();
  oracle->add_option("--weights", o.weights, "One weight per line")->required();
  oracle->add_option("--trace", o.trace, "Write the LGS round trace as JSON lines");

  auto* inspect = app.add_subcommand("inspect-model", "Print a checkpoint");
  inspect->add_option("--model", o.model, "Checkpoint")->required();
  inspect->add_option("--graph", o.graph, "Also print per-link embeddings for this graph");
  inspect->add_option("--out", o.out, "Write embeddings CSV here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*gen) return GenDataset(o);
    if (*collect) return CollectEcdfCommand(o);
    if (*train) return TrainCommand(o);
    if (*sweep) return SweepCommand(o);
    if (*timesim) return TimeSimCommand(o);
    if (*oracle) return MwisOracleCommand(o);
    if (*inspect) return InspectModelCommand(o);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}
