#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <vector>

#include "byzsgd/model.hpp"

namespace byzsgd {

inline constexpr std::uint32_t kIdxImagesMagic = 0x00000803;
inline constexpr std::uint32_t kIdxLabelsMagic = 0x00000801;

// Reads one IDX image file and its label file into a dataset with pixels
// scaled to [0, 1]. Files whose name ends in ".gz" are decompressed.
// Throws IngestionError naming the file and byte offset of the problem.
Dataset load_mnist(const std::filesystem::path& images_path, const std::filesystem::path& labels_path);

struct MnistSplit {
  Dataset train;
  Dataset test;
};

// Loads the four standard files from `dir`, preferring uncompressed names and
// falling back to their ".gz" variants.
MnistSplit load_mnist_dir(const std::filesystem::path& dir);

// Per-worker row indices into the training set.
using ShardAssignment = std::vector<std::vector<std::size_t>>;

// Each of `num_workers` shards holds `shard_size` distinct rows drawn uniformly
// without replacement; different shards may overlap.
ShardAssignment make_shards(std::size_t train_size, std::size_t num_workers, std::size_t shard_size,
                            std::uint64_t seed);

struct QuadraticProblem {
  Dataset centers;          // num_workers * shard_size rows
  ShardAssignment shards;   // worker i owns rows [i * M, (i + 1) * M)
  ParamVector optimum;      // mean of all centers
};

// Isotropic Gaussian centers with standard deviation `spread` around the
// origin.
QuadraticProblem gen_quadratic(std::size_t num_workers, std::size_t shard_size, std::size_t dim,
                               double spread, std::uint64_t seed);

}  // namespace byzsgd
