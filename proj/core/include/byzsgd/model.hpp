#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "byzsgd/rng.hpp"

namespace byzsgd {

// Flat model parameter. For softmax regression the layout is a row-major
// C x (d + 1) matrix: class c occupies [c * (d + 1), (c + 1) * (d + 1)) with
// its bias in the last slot.
using ParamVector = Eigen::VectorXd;

using FeatureMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// A set of samples. For MNIST, one row per image (784 features in [0, 1]);
// for the quadratic problem, one row per center with labels unused.
struct Dataset {
  FeatureMatrix features;
  std::vector<int> labels;
  int num_classes = 0;

  std::size_t size() const { return static_cast<std::size_t>(features.rows()); }
  std::size_t feature_dim() const { return static_cast<std::size_t>(features.cols()); }
};

// A worker's private view of the training set.
struct Shard {
  const Dataset* data = nullptr;
  std::vector<std::size_t> rows;

  std::size_t size() const { return rows.size(); }

  static Shard whole(const Dataset& data);
};

// Indices into a shard (not into the underlying dataset).
struct MiniBatch {
  std::vector<std::size_t> indices;

  std::size_t size() const { return indices.size(); }
};

// Mini-batch rows copied out of a shard. Lets several gradient evaluations on
// the same batch share one gather.
struct GatheredBatch {
  FeatureMatrix features;
  std::vector<int> labels;

  std::size_t size() const { return static_cast<std::size_t>(features.rows()); }
};

enum class LossKind { kSoftmax, kQuadratic };

class LossModel {
 public:
  // Multinomial logistic regression with a bias column, mean cross-entropy.
  static LossModel softmax(std::size_t feature_dim, std::size_t num_classes);
  // f_i(w) = 0.5 * ||w - c_i||^2 with c_i the i-th row of the dataset.
  static LossModel quadratic(std::size_t dim);

  LossKind kind() const { return kind_; }
  std::size_t dimension() const { return dimension_; }
  std::size_t feature_dim() const { return feature_dim_; }
  std::size_t num_classes() const { return num_classes_; }

  // Strong-convexity and gradient-Lipschitz constants, known only for the
  // quadratic model (both equal 1).
  std::optional<double> strong_convexity() const;
  std::optional<double> smoothness() const;

  GatheredBatch gather(const MiniBatch& batch, const Shard& shard) const;

  double loss(const ParamVector& w, const MiniBatch& batch, const Shard& shard) const;
  double loss(const ParamVector& w, const GatheredBatch& batch) const;

  ParamVector gradient(const ParamVector& w, const MiniBatch& batch, const Shard& shard) const;
  ParamVector gradient(const ParamVector& w, const GatheredBatch& batch) const;

  // Fraction of samples whose highest class score matches the label; ties go
  // to the lowest class index. Softmax only.
  double predict_accuracy(const ParamVector& w, const Dataset& test_set) const;

 private:
  LossModel(LossKind kind, std::size_t dimension, std::size_t feature_dim, std::size_t num_classes)
      : kind_(kind), dimension_(dimension), feature_dim_(feature_dim), num_classes_(num_classes) {}

  void check_param(const ParamVector& w) const;
  void check_batch(const GatheredBatch& batch) const;

  LossKind kind_;
  std::size_t dimension_;
  std::size_t feature_dim_;
  std::size_t num_classes_;
};

// b indices drawn i.i.d. uniformly (with replacement) from [0, shard_size).
MiniBatch sample_minibatch(std::size_t shard_size, std::size_t batch_size, Rng& rng);

}  // namespace byzsgd
