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

#ifndef LINKSPARSE_TRAINING_H_
#define LINKSPARSE_TRAINING_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "linksparse/gcn.h"
#include "linksparse/graph.h"
#include "linksparse/random.h"
#include "linksparse/sparsifier.h"
#include "linksparse/traffic.h"

namespace linksparse {

// Two-stage regression training of the GCN sparsifier.
//
// Stage 1 cuts at the 0.95 utility quantile and compares the sparse schedule
// to the dense scheduler; stage 2 draws the quantile at random per episode
// and compares to the plain threshold policy at the same quantile. Each
// episode produces regression targets for both embedding columns, and the
// network is fitted to them with the RMS loss.

enum class Stage { kOne = 1, kTwo = 2 };

/// rho0 = eps * vs + z0 .* (1 - vs).
Eigen::VectorXd Rho0Targets(const Eigen::VectorXd& z0,
                            std::span<const std::uint8_t> scheduled, double epsilon);

/// u(sparse) / u(baseline) in original utilities. 0/0 is 1; x/0 with x > 0
/// is `cap`.
double UtilityRatio(std::span<const double> u, const VertexSet& sparse,
                    const VertexSet& baseline, double cap = 2.0);

/// 1.1 when epsilon >= delta, else 0.9.
double ThresholdGain(double epsilon, double delta);

/// rho2 = (b / u_eta) z0 .* u .* vr + z1 .* (1 - vr). Throws ParameterError
/// when u_eta <= 0.
Eigen::VectorXd Rho2Targets(const Eigen::VectorXd& z0, const Eigen::VectorXd& z1,
                            std::span<const double> u,
                            std::span<const std::uint8_t> removed, double epsilon,
                            double delta, double u_eta);

/// rho3 = rho2 - 0.2 z1 .* vs, returned as rho3 / mean(rho3). When the mean
/// is <= 1e-6 rho3 is returned unnormalized.
Eigen::VectorXd Rho1Stage2Targets(const Eigen::VectorXd& rho2,
                                  const Eigen::VectorXd& z1,
                                  std::span<const std::uint8_t> scheduled);

struct ExperienceTuple {
  std::int32_t graph_index = -1;
  std::vector<double> utilities;
  VertexSet scheduled;  // sparse schedule, original ids
  VertexSet removed;
  Eigen::VectorXd rho0;
  Eigen::VectorXd rho1;
  double eta = 0.0;
  double epsilon = 1.0;

  TargetMatrix Targets() const;
};

struct EpisodeOptions {
  Stage stage = Stage::kOne;
  double stage1_eta = 0.95;
  double delta = 0.97;
  double epsilon_cap = 2.0;
};

/// Builds one experience tuple from a fixed utility realization and
/// embedding matrix. `eta` selects the cut-off u^(eta) from the eCDF.
ExperienceTuple MakeExperience(const ConflictGraph& g, std::span<const double> u,
                               const Embeddings& z, const EmpiricalDistribution& ecdf,
                               double eta, const EpisodeOptions& options);

/// Draws utilities from the eCDF (and eta in stage 2), evaluates the model
/// without z1 calibration and calls MakeExperience().
ExperienceTuple RunEpisode(const GcnModel& model, const ConflictGraph& g,
                           const EmpiricalDistribution& ecdf,
                           const EpisodeOptions& options, Rng& rng);

struct TrainConfig {
  double delta = 0.97;
  std::size_t batch_size = 200;
  int epochs = 25;  // per stage
  // Passes over each epoch's replay buffer; each pass reshuffles and walks
  // the buffer in batches of `batch_size`.
  int replay_passes = 1;
  double lr0 = 0.01;
  double lr_decay = 0.97;
  // Optimizer moments are zeroed every this many epochs (0 disables).
  int moment_reset_period = 1;
  double stage1_eta = 0.95;
  double epsilon_cap = 2.0;
  bool run_stage1 = true;
  bool run_stage2 = true;
  // Stage 2 continues from stage-1 weights; when false it reinitializes.
  bool continue_stage2 = true;
  // Fraction of the dataset held out for the z1 calibration.
  double calibration_fraction = 0.1;
  std::uint64_t seed = 1;

  void Validate() const;
};

struct EpochLog {
  int stage = 1;
  int epoch = 0;
  double mean_loss = 0.0;
  double mean_epsilon = 0.0;
  double mean_removed_fraction = 0.0;
  double lr = 0.0;
};

/// Mean RMS loss over the batch and the matching averaged gradient.
struct BatchGradient {
  double loss = 0.0;
  GcnGradients gradients;
};
BatchGradient ComputeBatchGradient(const GcnModel& model,
                                   std::span<const ConflictGraph> graphs,
                                   std::span<const ExperienceTuple* const> batch);

struct TrainResult {
  GcnModel model;
  std::optional<GcnModel> stage1_model;  // snapshot after stage 1
  std::vector<EpochLog> log;
  double z1_calibration = 1.0;
};

/// Runs stage 1 then stage 2 (as enabled) and finishes with the z1
/// calibration on the held-out slice. Throws ParameterError on an empty
/// dataset.
TrainResult Train(const GcnModel& initial, std::span<const ConflictGraph> dataset,
                  const EmpiricalDistribution& ecdf, const TrainConfig& config);

/// "epoch,stage,mean_loss,mean_epsilon,mean_removed_fraction,lr" CSV.
std::string TrainingLogCsv(std::span<const EpochLog> log);

}  // namespace linksparse

#endif  // LINKSPARSE_TRAINING_H_
