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

#include "linksparse/training.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "linksparse/errors.h"
#include "linksparse/graph_io.h"
#include "linksparse/parallel.h"

namespace linksparse {

Eigen::VectorXd Rho0Targets(const Eigen::VectorXd& z0,
                            std::span<const std::uint8_t> scheduled, double epsilon) {
  if (static_cast<Eigen::Index>(scheduled.size()) != z0.size()) {
    throw ParameterError("rho0: shape mismatch");
  }
  Eigen::VectorXd rho0 = z0;
  for (Eigen::Index v = 0; v < z0.size(); ++v) {
    if (scheduled[v]) rho0[v] = epsilon;
  }
  return rho0;
}

double UtilityRatio(std::span<const double> u, const VertexSet& sparse,
                    const VertexSet& baseline, double cap) {
  const double num = TotalWeight(u, sparse);
  const double den = TotalWeight(u, baseline);
  if (den > 0.0) return num / den;
  return num > 0.0 ? cap : 1.0;
}

double ThresholdGain(double epsilon, double delta) {
  return epsilon >= delta ? 1.1 : 0.9;
}

Eigen::VectorXd Rho2Targets(const Eigen::VectorXd& z0, const Eigen::VectorXd& z1,
                            std::span<const double> u,
                            std::span<const std::uint8_t> removed, double epsilon,
                            double delta, double u_eta) {
  if (!(u_eta > 0.0)) throw ParameterError("rho2 needs a positive threshold utility");
  const Eigen::Index n = z0.size();
  if (z1.size() != n || static_cast<Eigen::Index>(u.size()) != n ||
      static_cast<Eigen::Index>(removed.size()) != n) {
    throw ParameterError("rho2: shape mismatch");
  }
  const double scale = ThresholdGain(epsilon, delta) / u_eta;
  Eigen::VectorXd rho2(n);
  for (Eigen::Index v = 0; v < n; ++v) {
    rho2[v] = removed[v] ? scale * z0[v] * u[v] : z1[v];
  }
  return rho2;
}

Eigen::VectorXd Rho1Stage2Targets(const Eigen::VectorXd& rho2,
                                  const Eigen::VectorXd& z1,
                                  std::span<const std::uint8_t> scheduled) {
  const Eigen::Index n = rho2.size();
  if (z1.size() != n || static_cast<Eigen::Index>(scheduled.size()) != n) {
    throw ParameterError("rho1: shape mismatch");
  }
  Eigen::VectorXd rho3 = rho2;
  for (Eigen::Index v = 0; v < n; ++v) {
    if (scheduled[v]) rho3[v] -= 0.2 * z1[v];
  }
  if (n == 0) return rho3;
  const double mean = rho3.mean();
  if (mean <= 1e-6) return rho3;
  return rho3 / mean;
}

TargetMatrix ExperienceTuple::Targets() const {
  TargetMatrix t(rho0.size(), 2);
  t.col(0) = rho0;
  t.col(1) = rho1;
  return t;
}

ExperienceTuple MakeExperience(const ConflictGraph& g, std::span<const double> u,
                               const Embeddings& z, const EmpiricalDistribution& ecdf,
                               double eta, const EpisodeOptions& options) {
  const VertexId n = g.num_vertices();
  const double u_eta = ecdf.Quantile(eta);
  SparseSchedule sparse = ScheduleSparse(g, u, z, u_eta);

  VertexSet baseline = options.stage == Stage::kOne
                           ? LocalGreedySchedule(g, u).selected
                           : ScheduleSparse(g, u, UnitEmbeddings(n), u_eta).schedule.selected;

  ExperienceTuple out;
  out.utilities.assign(u.begin(), u.end());
  out.eta = eta;
  out.epsilon = UtilityRatio(u, sparse.schedule.selected, baseline, options.epsilon_cap);

  const Eigen::VectorXd z0 = z.col(0);
  const Eigen::VectorXd z1 = z.col(1);
  const auto& scheduled = sparse.schedule.selected.indicator();
  const auto& removed = sparse.sparse.removed.indicator();
  out.rho0 = Rho0Targets(z0, scheduled, out.epsilon);

  // A zero cut-off (tiny eta) would divide by zero; the removed links then
  // all have zero utility, so any positive scale gives the same targets.
  double target_threshold = u_eta > 0.0 ? u_eta : ecdf.SmallestPositive();
  if (!(target_threshold > 0.0)) target_threshold = 1.0;
  const Eigen::VectorXd rho2 =
      Rho2Targets(z0, z1, u, removed, out.epsilon, options.delta, target_threshold);
  out.rho1 = options.stage == Stage::kOne ? rho2 : Rho1Stage2Targets(rho2, z1, scheduled);

  out.scheduled = std::move(sparse.schedule.selected);
  out.removed = std::move(sparse.sparse.removed);
  return out;
}

ExperienceTuple RunEpisode(const GcnModel& model, const ConflictGraph& g,
                           const EmpiricalDistribution& ecdf,
                           const EpisodeOptions& options, Rng& rng) {
  const auto u = ecdf.SampleMany(rng, static_cast<std::size_t>(g.num_vertices()));
  const double eta = options.stage == Stage::kOne ? options.stage1_eta : UniformUnit(rng);
  const Embeddings z = Forward(model, g).output;
  return MakeExperience(g, u, z, ecdf, eta, options);
}

void TrainConfig::Validate() const {
  if (!(delta > 0.0 && delta < 1.0)) throw ParameterError("delta must be in (0, 1)");
  if (batch_size == 0) throw ParameterError("batch size must be positive");
  if (epochs < 0 || replay_passes < 1) {
    throw ParameterError("epochs must be >= 0 and replay passes >= 1");
  }
  if (!(lr0 > 0.0) || !(lr_decay > 0.0)) {
    throw ParameterError("learning rate and decay must be positive");
  }
  if (!(calibration_fraction >= 0.0 && calibration_fraction < 1.0)) {
    throw ParameterError("calibration fraction must be in [0, 1)");
  }
  if (!(stage1_eta > 0.0 && stage1_eta < 1.0)) {
    throw ParameterError("stage-1 quantile must be in (0, 1)");
  }
}

BatchGradient ComputeBatchGradient(const GcnModel& model,
                                   std::span<const ConflictGraph> graphs,
                                   std::span<const ExperienceTuple* const> batch) {
  BatchGradient out{0.0, GcnGradients::ZerosLike(model)};
  if (batch.empty()) return out;
  for (const ExperienceTuple* tuple : batch) {
    const ForwardCache cache = Forward(model, graphs[tuple->graph_index]);
    const TargetMatrix targets = tuple->Targets();
    out.loss += RmsLoss(cache.output, targets);
    out.gradients += Backward(model, cache, targets);
  }
  const double inv = 1.0 / static_cast<double>(batch.size());
  out.loss *= inv;
  out.gradients *= inv;
  return out;
}

namespace {

std::vector<int> HiddenDims(const GcnModel& model) {
  return std::vector<int>(model.dims.begin() + 1, model.dims.end() - 1);
}

void RunStage(GcnModel& model, Stage stage, std::span<const ConflictGraph> graphs,
              const std::vector<std::int32_t>& train_ids,
              const EmpiricalDistribution& ecdf, const TrainConfig& cfg,
              std::vector<EpochLog>& log) {
  const EpisodeOptions options{stage, cfg.stage1_eta, cfg.delta, cfg.epsilon_cap};
  const std::uint64_t stage_seed = DeriveSeed(cfg.seed, static_cast<int>(stage));
  AdamOptimizer optimizer(model);

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    if (cfg.moment_reset_period > 0 && epoch % cfg.moment_reset_period == 0) {
      optimizer.Reset();
    }
    const double lr = DecayedLearningRate(cfg.lr0, cfg.lr_decay, epoch);
    const std::uint64_t epoch_seed = DeriveSeed(stage_seed, epoch);
    Rng rng(epoch_seed);

    std::vector<std::int32_t> order = train_ids;
    Shuffle(order.begin(), order.end(), rng);

    // Fresh on-policy replay buffer: targets reference the current z.
    std::vector<ExperienceTuple> buffer(order.size());
    ParallelFor(order.size(), [&](std::size_t i) {
      Rng episode_rng(DeriveSeed(epoch_seed, i + 1));
      buffer[i] = RunEpisode(model, graphs[order[i]], ecdf, options, episode_rng);
      buffer[i].graph_index = order[i];
    });

    EpochLog entry;
    entry.stage = static_cast<int>(stage);
    entry.epoch = epoch;
    entry.lr = lr;
    for (const auto& t : buffer) {
      entry.mean_epsilon += t.epsilon;
      const auto n = t.removed.universe();
      entry.mean_removed_fraction +=
          n > 0 ? static_cast<double>(t.removed.size()) / n : 0.0;
    }
    if (!buffer.empty()) {
      entry.mean_epsilon /= static_cast<double>(buffer.size());
      entry.mean_removed_fraction /= static_cast<double>(buffer.size());
    }

    std::vector<const ExperienceTuple*> replay;
    replay.reserve(buffer.size());
    for (const auto& t : buffer) replay.push_back(&t);
    double loss_sum = 0.0;
    int steps = 0;
    for (int pass = 0; pass < cfg.replay_passes; ++pass) {
      Shuffle(replay.begin(), replay.end(), rng);
      for (std::size_t start = 0; start < replay.size(); start += cfg.batch_size) {
        const std::size_t end = std::min(replay.size(), start + cfg.batch_size);
        const auto batch = std::span<const ExperienceTuple* const>(replay).subspan(
            start, end - start);
        BatchGradient step = ComputeBatchGradient(model, graphs, batch);
        optimizer.Step(model, step.gradients, lr);
        loss_sum += step.loss;
        ++steps;
      }
    }
    entry.mean_loss = steps > 0 ? loss_sum / steps : 0.0;
    log.push_back(entry);
  }
}

}  // namespace

TrainResult Train(const GcnModel& initial, std::span<const ConflictGraph> dataset,
                  const EmpiricalDistribution& ecdf, const TrainConfig& config) {
  config.Validate();
  initial.Validate();
  if (dataset.empty()) throw ParameterError("training needs a non-empty dataset");

  std::vector<std::int32_t> ids(dataset.size());
  std::iota(ids.begin(), ids.end(), 0);
  Rng split_rng(DeriveSeed(config.seed, 0));
  Shuffle(ids.begin(), ids.end(), split_rng);
  auto holdout = static_cast<std::size_t>(
      std::floor(config.calibration_fraction * static_cast<double>(ids.size())));
  if (holdout >= ids.size()) holdout = 0;
  std::vector<std::int32_t> train_ids(ids.begin(), ids.end() - holdout);
  std::vector<ConflictGraph> calibration_graphs;
  for (std::size_t i = ids.size() - holdout; i < ids.size(); ++i) {
    calibration_graphs.push_back(dataset[ids[i]]);
  }
  if (calibration_graphs.empty()) {
    calibration_graphs.assign(dataset.begin(), dataset.end());
  }

  TrainResult result;
  result.model = initial;
  result.model.z1_calibration = 1.0;
  if (config.run_stage1) {
    RunStage(result.model, Stage::kOne, dataset, train_ids, ecdf, config, result.log);
    result.stage1_model = result.model;
  }
  if (config.run_stage2) {
    if (config.run_stage1 && !config.continue_stage2) {
      Rng init_rng(DeriveSeed(config.seed, 3));
      const auto hidden = HiddenDims(initial);
      result.model = GcnModel::Initialize(hidden, init_rng, initial.leaky_slope);
    }
    RunStage(result.model, Stage::kTwo, dataset, train_ids, ecdf, config, result.log);
  }
  result.z1_calibration = CalibrateZ1(result.model, calibration_graphs);
  return result;
}

std::string TrainingLogCsv(std::span<const EpochLog> log) {
  std::ostringstream out;
  out << "epoch,stage,mean_loss,mean_epsilon,mean_removed_fraction,lr\n";
  for (const auto& e : log) {
    out << e.epoch << ',' << e.stage << ',' << FormatDouble(e.mean_loss) << ','
        << FormatDouble(e.mean_epsilon) << ',' << FormatDouble(e.mean_removed_fraction)
        << ',' << FormatDouble(e.lr) << '\n';
  }
  return out.str();
}

}  // namespace linksparse
