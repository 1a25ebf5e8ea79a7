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

#include "linksparse/gcn.h"

#include <cmath>
#include <string>

#include "json.hpp"
#include "linksparse/errors.h"
#include "linksparse/graph_io.h"

namespace linksparse {

void GcnModel::Validate() const {
  if (dims.size() < 2 || dims.front() != 1 || dims.back() != 2) {
    throw ParameterError("GCN dims must start at 1 and end at 2");
  }
  const auto layers = static_cast<std::size_t>(num_layers());
  if (self_weights.size() != layers || neighbor_weights.size() != layers) {
    throw ParameterError("GCN weight count does not match the layer count");
  }
  for (std::size_t l = 0; l < layers; ++l) {
    if (dims[l] < 1) throw ParameterError("GCN layer widths must be positive");
    for (const auto* w : {&self_weights[l], &neighbor_weights[l]}) {
      if (w->rows() != dims[l] || w->cols() != dims[l + 1]) {
        throw ParameterError("GCN layer " + std::to_string(l + 1) +
                             " weight shape does not match dims");
      }
    }
  }
  if (!(z1_calibration > 0.0) || !std::isfinite(z1_calibration)) {
    throw ParameterError("z1 calibration must be positive and finite");
  }
}

GcnModel GcnModel::Initialize(std::span<const int> hidden_dims, Rng& rng,
                              double leaky_slope) {
  GcnModel m;
  m.leaky_slope = leaky_slope;
  m.dims = {1};
  m.dims.insert(m.dims.end(), hidden_dims.begin(), hidden_dims.end());
  m.dims.push_back(2);
  const int layers = m.num_layers();
  auto uniform = [&](int rows, int cols, double lo, double hi) {
    Eigen::MatrixXd w(rows, cols);
    for (int i = 0; i < rows; ++i) {
      for (int j = 0; j < cols; ++j) w(i, j) = lo + (hi - lo) * UniformUnit(rng);
    }
    return w;
  };
  for (int l = 0; l < layers; ++l) {
    const bool output = l + 1 == layers;
    m.self_weights.push_back(output ? uniform(m.dims[l], m.dims[l + 1], 0.5, 1.5)
                                    : uniform(m.dims[l], m.dims[l + 1], -0.5, 0.5));
    m.neighbor_weights.push_back(uniform(m.dims[l], m.dims[l + 1], -0.5, 0.5));
  }
  m.Validate();
  return m;
}

ForwardCache Forward(const GcnModel& model, const ConflictGraph& g) {
  const VertexId n = g.num_vertices();
  ForwardCache cache;
  cache.laplacian = NormalizedLaplacian(g);
  Eigen::MatrixXd x = Eigen::MatrixXd::Ones(n, 1);
  const int layers = model.num_layers();
  for (int l = 0; l < layers; ++l) {
    Eigen::MatrixXd propagated = cache.laplacian * x;
    Eigen::MatrixXd pre =
        x * model.self_weights[l] + propagated * model.neighbor_weights[l];
    cache.inputs.push_back(std::move(x));
    cache.propagated.push_back(std::move(propagated));
    if (l + 1 < layers) {
      const double slope = model.leaky_slope;
      x = pre.unaryExpr([slope](double a) { return a > 0.0 ? a : slope * a; });
    } else {
      x = pre;
    }
    cache.preactivations.push_back(std::move(pre));
  }
  cache.output = x;
  return cache;
}

Embeddings ComputeEmbeddings(const GcnModel& model, const ConflictGraph& g) {
  Embeddings z = Forward(model, g).output;
  z.col(1) /= model.z1_calibration;
  return z;
}

double RmsLoss(const Embeddings& z, const TargetMatrix& targets) {
  if (z.rows() != targets.rows()) throw ParameterError("loss: shape mismatch");
  if (z.rows() == 0) return 0.0;
  return (z - targets).norm() / std::sqrt(static_cast<double>(z.rows()));
}

GcnGradients GcnGradients::ZerosLike(const GcnModel& model) {
  GcnGradients g;
  for (int l = 0; l < model.num_layers(); ++l) {
    g.self_weights.push_back(Eigen::MatrixXd::Zero(model.dims[l], model.dims[l + 1]));
    g.neighbor_weights.push_back(Eigen::MatrixXd::Zero(model.dims[l], model.dims[l + 1]));
  }
  return g;
}

GcnGradients& GcnGradients::operator+=(const GcnGradients& other) {
  for (std::size_t l = 0; l < self_weights.size(); ++l) {
    self_weights[l] += other.self_weights[l];
    neighbor_weights[l] += other.neighbor_weights[l];
  }
  return *this;
}

GcnGradients& GcnGradients::operator*=(double s) {
  for (std::size_t l = 0; l < self_weights.size(); ++l) {
    self_weights[l] *= s;
    neighbor_weights[l] *= s;
  }
  return *this;
}

GcnGradients Backward(const GcnModel& model, const ForwardCache& cache,
                      const TargetMatrix& targets) {
  GcnGradients grads = GcnGradients::ZerosLike(model);
  const Eigen::Index n = cache.output.rows();
  if (targets.rows() != n) throw ParameterError("backward: target shape mismatch");
  if (n == 0) return grads;
  const Eigen::MatrixXd residual = cache.output - targets;
  const double norm = residual.norm();
  if (norm == 0.0) return grads;

  // d loss / d X^L
  Eigen::MatrixXd upstream = residual / (std::sqrt(static_cast<double>(n)) * norm);
  for (int l = model.num_layers() - 1; l >= 0; --l) {
    if (l + 1 < model.num_layers()) {
      const double slope = model.leaky_slope;
      upstream.array() *= cache.preactivations[l].array().unaryExpr(
          [slope](double a) { return a > 0.0 ? 1.0 : slope; });
    }
    grads.self_weights[l] = cache.inputs[l].transpose() * upstream;
    grads.neighbor_weights[l] = cache.propagated[l].transpose() * upstream;
    if (l > 0) {
      // The Laplacian is symmetric, so L^T (G W1^T) = L (G W1^T).
      Eigen::MatrixXd through_neighbors =
          upstream * model.neighbor_weights[l].transpose();
      upstream = upstream * model.self_weights[l].transpose() +
                 Eigen::MatrixXd(cache.laplacian * through_neighbors);
    }
  }
  return grads;
}

AdamOptimizer::AdamOptimizer(const GcnModel& model, AdamConfig config)
    : config_(config),
      first_(GcnGradients::ZerosLike(model)),
      second_(GcnGradients::ZerosLike(model)) {}

void AdamOptimizer::Reset() {
  steps_ = 0;
  first_ *= 0.0;
  second_ *= 0.0;
}

void AdamOptimizer::Step(GcnModel& model, const GcnGradients& grads, double lr) {
  ++steps_;
  const double b1 = config_.beta1;
  const double b2 = config_.beta2;
  const double c1 = 1.0 - std::pow(b1, static_cast<double>(steps_));
  const double c2 = 1.0 - std::pow(b2, static_cast<double>(steps_));
  auto update = [&](Eigen::MatrixXd& param, const Eigen::MatrixXd& g,
                    Eigen::MatrixXd& m, Eigen::MatrixXd& v) {
    m = b1 * m + (1.0 - b1) * g;
    v = b2 * v + (1.0 - b2) * g.cwiseProduct(g);
    param.array() -=
        lr * (m.array() / c1) / ((v.array() / c2).sqrt() + config_.epsilon);
  };
  for (std::size_t l = 0; l < model.self_weights.size(); ++l) {
    update(model.self_weights[l], grads.self_weights[l], first_.self_weights[l],
           second_.self_weights[l]);
    update(model.neighbor_weights[l], grads.neighbor_weights[l],
           first_.neighbor_weights[l], second_.neighbor_weights[l]);
  }
}

double EstimateZ1Calibration(const GcnModel& model,
                             std::span<const ConflictGraph> graphs) {
  double sum = 0.0;
  std::size_t count = 0;
  for (const auto& g : graphs) {
    if (g.num_vertices() == 0) continue;
    sum += Forward(model, g).output.col(1).mean();
    ++count;
  }
  if (count == 0) throw CalibrationError("z1 calibration needs a non-empty graph");
  const double estimate = sum / static_cast<double>(count);
  if (!(estimate > 0.0) || !std::isfinite(estimate)) {
    throw CalibrationError("expected mean z1 is " + FormatDouble(estimate) +
                           "; refusing a non-positive calibration");
  }
  return estimate;
}

double CalibrateZ1(GcnModel& model, std::span<const ConflictGraph> graphs) {
  model.z1_calibration = EstimateZ1Calibration(model, graphs);
  return model.z1_calibration;
}

using nlohmann::json;

namespace {

json MatrixToJson(const Eigen::MatrixXd& m) {
  json values = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) values.push_back(m(i, j));
  }
  return values;
}

Eigen::MatrixXd MatrixFromJson(const json& values, int rows, int cols) {
  if (!values.is_array() || values.size() != static_cast<std::size_t>(rows * cols)) {
    throw DataError("checkpoint: weight matrix has the wrong number of entries");
  }
  Eigen::MatrixXd m(rows, cols);
  std::size_t k = 0;
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) m(i, j) = values[k++].get<double>();
  }
  return m;
}

}  // namespace

std::string ModelToJson(const GcnModel& model, const CheckpointInfo& info) {
  json doc;
  doc["schema_version"] = kCheckpointSchemaVersion;
  doc["num_layers"] = model.num_layers();
  doc["dims"] = model.dims;
  doc["leaky_slope"] = model.leaky_slope;
  json layers = json::array();
  for (int l = 0; l < model.num_layers(); ++l) {
    layers.push_back({{"self", MatrixToJson(model.self_weights[l])},
                      {"neighbor", MatrixToJson(model.neighbor_weights[l])}});
  }
  doc["layers"] = std::move(layers);
  doc["z1_calibration"] = model.z1_calibration;
  doc["stage1_eta"] = info.stage1_eta;
  doc["ecdf_fingerprint"] = info.ecdf_fingerprint;
  return doc.dump(2) + "\n";
}

GcnModel ModelFromJson(std::string_view text, CheckpointInfo* info) {
  GcnModel model;
  try {
    const json doc = json::parse(text);
    if (doc.at("schema_version").get<int>() != kCheckpointSchemaVersion) {
      throw DataError("checkpoint: unsupported schema version");
    }
    model.dims = doc.at("dims").get<std::vector<int>>();
    if (doc.at("num_layers").get<int>() != model.num_layers()) {
      throw DataError("checkpoint: num_layers disagrees with dims");
    }
    model.leaky_slope = doc.at("leaky_slope").get<double>();
    const auto& layers = doc.at("layers");
    if (!layers.is_array() || layers.size() != static_cast<std::size_t>(model.num_layers())) {
      throw DataError("checkpoint: layer list does not match dims");
    }
    for (int l = 0; l < model.num_layers(); ++l) {
      model.self_weights.push_back(
          MatrixFromJson(layers[l].at("self"), model.dims[l], model.dims[l + 1]));
      model.neighbor_weights.push_back(
          MatrixFromJson(layers[l].at("neighbor"), model.dims[l], model.dims[l + 1]));
    }
    model.z1_calibration = doc.at("z1_calibration").get<double>();
    if (info) {
      info->stage1_eta = doc.value("stage1_eta", 0.95);
      info->ecdf_fingerprint = doc.value("ecdf_fingerprint", std::string());
    }
  } catch (const json::exception& e) {
    throw DataError(std::string("checkpoint: ") + e.what());
  }
  try {
    model.Validate();
  } catch (const ParameterError& e) {
    throw DataError(std::string("checkpoint: ") + e.what());
  }
  return model;
}

void SaveCheckpoint(const std::filesystem::path& path, const GcnModel& model,
                    const CheckpointInfo& info) {
  WriteTextFile(path, ModelToJson(model, info));
}

GcnModel LoadCheckpoint(const std::filesystem::path& path, CheckpointInfo* info) {
  return ModelFromJson(ReadTextFile(path), info);
}

}  // namespace linksparse
