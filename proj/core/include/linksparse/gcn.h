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

#ifndef LINKSPARSE_GCN_H_
#define LINKSPARSE_GCN_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "linksparse/graph.h"
#include "linksparse/random.h"
#include "linksparse/sparsifier.h"

namespace linksparse {

/// Featureless graph convolutional network
///
///   X^0 = 1 (n x 1),   X^l = act(X^{l-1} W0^l + L X^{l-1} W1^l),
///
/// where L is the normalized Laplacian, hidden layers use leaky ReLU and the
/// output layer (width 2) is linear. The output rows are the per-link
/// parameters [z0, z1]. Because L is local, row v of an L-layer network only
/// depends on the L-hop neighborhood of v.
struct GcnModel {
  std::vector<int> dims{1, 2};  // g_0 = 1, ..., g_L = 2
  std::vector<Eigen::MatrixXd> self_weights;      // W0^l, dims[l-1] x dims[l]
  std::vector<Eigen::MatrixXd> neighbor_weights;  // W1^l
  double leaky_slope = 0.2;
  // Offline estimate of the expected mean z1; the deployed z1 column is
  // divided by it.
  double z1_calibration = 1.0;

  int num_layers() const { return static_cast<int>(dims.size()) - 1; }
  /// Throws ParameterError on an inconsistent dimension chain.
  void Validate() const;

  /// Hidden widths between the fixed input (1) and output (2) widths. Hidden
  /// and neighbor weights are uniform in [-0.5, 0.5]; the output layer's self
  /// weights are centered on 1 so that a fresh model starts near the plain
  /// threshold policy.
  static GcnModel Initialize(std::span<const int> hidden_dims, Rng& rng,
                             double leaky_slope = 0.2);
};

struct ForwardCache {
  Eigen::SparseMatrix<double> laplacian;
  std::vector<Eigen::MatrixXd> inputs;        // X^{l-1} per layer
  std::vector<Eigen::MatrixXd> propagated;    // L X^{l-1} per layer
  std::vector<Eigen::MatrixXd> preactivations;
  Embeddings output;                          // raw Z = X^L
};

/// Raw network output (no z1 calibration), with the activations needed by
/// Backward().
ForwardCache Forward(const GcnModel& model, const ConflictGraph& g);

/// Deployed embeddings: raw output with z1 divided by z1_calibration.
Embeddings ComputeEmbeddings(const GcnModel& model, const ConflictGraph& g);

using TargetMatrix = Embeddings;

/// n^{-1/2} * ||z - targets||_F.
double RmsLoss(const Embeddings& z, const TargetMatrix& targets);

struct GcnGradients {
  std::vector<Eigen::MatrixXd> self_weights;
  std::vector<Eigen::MatrixXd> neighbor_weights;

  static GcnGradients ZerosLike(const GcnModel& model);
  GcnGradients& operator+=(const GcnGradients& other);
  GcnGradients& operator*=(double s);
};

/// Exact gradient of RmsLoss(Forward(model, g).output, targets) with respect
/// to every weight matrix. The leaky ReLU derivative at 0 is taken from the
/// negative side and the gradient at zero residual is 0.
GcnGradients Backward(const GcnModel& model, const ForwardCache& cache,
                      const TargetMatrix& targets);

struct AdamConfig {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

class AdamOptimizer {
 public:
  explicit AdamOptimizer(const GcnModel& model, AdamConfig config = {});

  void Step(GcnModel& model, const GcnGradients& grads, double lr);
  /// Zeroes both moment estimates and the bias-correction step counter.
  void Reset();
  std::int64_t steps() const { return steps_; }

 private:
  AdamConfig config_;
  std::int64_t steps_ = 0;
  GcnGradients first_;
  GcnGradients second_;
};

/// lr_0 * decay^epoch.
inline double DecayedLearningRate(double lr0, double decay, int epoch) {
  double lr = lr0;
  for (int i = 0; i < epoch; ++i) lr *= decay;
  return lr;
}

/// Mean over graphs of the per-graph mean raw z1. Throws CalibrationError
/// when the set is empty or the estimate is not strictly positive.
double EstimateZ1Calibration(const GcnModel& model,
                             std::span<const ConflictGraph> graphs);
/// Stores EstimateZ1Calibration() in the model and returns it.
double CalibrateZ1(GcnModel& model, std::span<const ConflictGraph> graphs);

/// Checkpoint metadata stored next to the weights.
struct CheckpointInfo {
  double stage1_eta = 0.95;
  std::string ecdf_fingerprint;
};

inline constexpr int kCheckpointSchemaVersion = 1;

std::string ModelToJson(const GcnModel& model, const CheckpointInfo& info);
GcnModel ModelFromJson(std::string_view json, CheckpointInfo* info = nullptr);
void SaveCheckpoint(const std::filesystem::path& path, const GcnModel& model,
                    const CheckpointInfo& info);
GcnModel LoadCheckpoint(const std::filesystem::path& path,
                        CheckpointInfo* info = nullptr);

}  // namespace linksparse

#endif  // LINKSPARSE_GCN_H_
