#include "byzsgd/model.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "byzsgd/errors.hpp"

namespace byzsgd {

namespace {

using RowMajorMap = Eigen::Map<const FeatureMatrix>;
using MutableRowMajorMap = Eigen::Map<FeatureMatrix>;

// Row-wise class scores X * W^T + b for a row-major C x (d + 1) parameter.
FeatureMatrix class_scores(const ParamVector& w, const FeatureMatrix& x, std::size_t num_classes) {
  const auto d = x.cols();
  const RowMajorMap weights(w.data(), static_cast<Eigen::Index>(num_classes), d + 1);
  FeatureMatrix scores = x * weights.leftCols(d).transpose();
  scores.rowwise() += weights.col(d).transpose();
  return scores;
}

}  // namespace

Shard Shard::whole(const Dataset& data) {
  Shard shard{&data, std::vector<std::size_t>(data.size())};
  std::iota(shard.rows.begin(), shard.rows.end(), std::size_t{0});
  return shard;
}

LossModel LossModel::softmax(std::size_t feature_dim, std::size_t num_classes) {
  if (feature_dim == 0 || num_classes < 2) {
    throw ConfigError("softmax model needs feature_dim >= 1 and num_classes >= 2");
  }
  return LossModel(LossKind::kSoftmax, num_classes * (feature_dim + 1), feature_dim, num_classes);
}

LossModel LossModel::quadratic(std::size_t dim) {
  if (dim == 0) throw ConfigError("quadratic model needs dimension >= 1");
  return LossModel(LossKind::kQuadratic, dim, dim, 0);
}

std::optional<double> LossModel::strong_convexity() const {
  if (kind_ == LossKind::kQuadratic) return 1.0;
  return std::nullopt;
}

std::optional<double> LossModel::smoothness() const {
  if (kind_ == LossKind::kQuadratic) return 1.0;
  return std::nullopt;
}

void LossModel::check_param(const ParamVector& w) const {
  if (static_cast<std::size_t>(w.size()) != dimension_) {
    throw ConfigError("parameter dimension " + std::to_string(w.size()) +
                      " does not match model dimension " + std::to_string(dimension_));
  }
}

void LossModel::check_batch(const GatheredBatch& batch) const {
  if (batch.size() == 0) throw ConfigError("empty mini-batch");
  if (static_cast<std::size_t>(batch.features.cols()) != feature_dim_) {
    throw ConfigError("sample dimension " + std::to_string(batch.features.cols()) +
                      " does not match model feature dimension " + std::to_string(feature_dim_));
  }
}

GatheredBatch LossModel::gather(const MiniBatch& batch, const Shard& shard) const {
  if (shard.data == nullptr) throw ConfigError("shard has no dataset");
  const Dataset& data = *shard.data;
  GatheredBatch out;
  out.features.resize(static_cast<Eigen::Index>(batch.size()), data.features.cols());
  out.labels.resize(batch.size());
  for (std::size_t i = 0; i < batch.size(); ++i) {
    const std::size_t pos = batch.indices[i];
    if (pos >= shard.size()) throw ConfigError("mini-batch index out of shard range");
    const std::size_t row = shard.rows[pos];
    out.features.row(static_cast<Eigen::Index>(i)) = data.features.row(static_cast<Eigen::Index>(row));
    out.labels[i] = data.labels.empty() ? 0 : data.labels[row];
  }
  return out;
}

double LossModel::loss(const ParamVector& w, const MiniBatch& batch, const Shard& shard) const {
  return loss(w, gather(batch, shard));
}

double LossModel::loss(const ParamVector& w, const GatheredBatch& batch) const {
  check_param(w);
  check_batch(batch);
  const auto n = static_cast<double>(batch.size());

  if (kind_ == LossKind::kQuadratic) {
    const FeatureMatrix diff = (-batch.features).rowwise() + w.transpose();
    return 0.5 * diff.rowwise().squaredNorm().sum() / n;
  }

  const FeatureMatrix scores = class_scores(w, batch.features, num_classes_);
  double total = 0.0;
  for (Eigen::Index r = 0; r < scores.rows(); ++r) {
    const double peak = scores.row(r).maxCoeff();
    const double log_norm = peak + std::log((scores.row(r).array() - peak).exp().sum());
    total += log_norm - scores(r, batch.labels[static_cast<std::size_t>(r)]);
  }
  return total / n;
}

ParamVector LossModel::gradient(const ParamVector& w, const MiniBatch& batch, const Shard& shard) const {
  return gradient(w, gather(batch, shard));
}

ParamVector LossModel::gradient(const ParamVector& w, const GatheredBatch& batch) const {
  check_param(w);
  check_batch(batch);
  const auto n = static_cast<double>(batch.size());

  if (kind_ == LossKind::kQuadratic) {
    return w - batch.features.colwise().mean().transpose();
  }

  FeatureMatrix probs = class_scores(w, batch.features, num_classes_);
  for (Eigen::Index r = 0; r < probs.rows(); ++r) {
    const double peak = probs.row(r).maxCoeff();
    probs.row(r) = (probs.row(r).array() - peak).exp();
    probs.row(r) /= probs.row(r).sum();
    probs(r, batch.labels[static_cast<std::size_t>(r)]) -= 1.0;
  }

  ParamVector grad(static_cast<Eigen::Index>(dimension_));
  const auto d = batch.features.cols();
  MutableRowMajorMap out(grad.data(), static_cast<Eigen::Index>(num_classes_), d + 1);
  out.leftCols(d).noalias() = probs.transpose() * batch.features / n;
  out.col(d) = probs.colwise().sum().transpose() / n;
  return grad;
}

double LossModel::predict_accuracy(const ParamVector& w, const Dataset& test_set) const {
  if (kind_ != LossKind::kSoftmax) {
    throw UnsupportedOperation("accuracy is only defined for the softmax model");
  }
  check_param(w);
  if (test_set.size() == 0) return 0.0;
  if (test_set.feature_dim() != feature_dim_) throw ConfigError("test set feature dimension mismatch");

  const FeatureMatrix scores = class_scores(w, test_set.features, num_classes_);
  std::size_t correct = 0;
  for (Eigen::Index r = 0; r < scores.rows(); ++r) {
    Eigen::Index best = 0;
    for (Eigen::Index c = 1; c < scores.cols(); ++c) {
      if (scores(r, c) > scores(r, best)) best = c;
    }
    if (best == test_set.labels[static_cast<std::size_t>(r)]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(test_set.size());
}

MiniBatch sample_minibatch(std::size_t shard_size, std::size_t batch_size, Rng& rng) {
  if (batch_size == 0) throw ConfigError("batch size must be >= 1");
  if (shard_size == 0) throw ConfigError("cannot sample from an empty shard");
  std::uniform_int_distribution<std::size_t> pick(0, shard_size - 1);
  MiniBatch batch;
  batch.indices.resize(batch_size);
  for (auto& idx : batch.indices) idx = pick(rng);
  return batch;
}

}  // namespace byzsgd
