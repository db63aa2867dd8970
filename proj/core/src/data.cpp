#include "byzsgd/data.hpp"

#include <array>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include <zlib.h>

#include "byzsgd/errors.hpp"

namespace byzsgd {

namespace {

namespace fs = std::filesystem;

[[noreturn]] void fail(const fs::path& path, std::size_t offset, const std::string& what) {
  throw IngestionError(path.string() + " at offset " + std::to_string(offset) + ": " + what);
}

// gzread passes plain files through unchanged, so one reader serves both.
std::vector<std::uint8_t> read_all(const fs::path& path) {
  gzFile file = gzopen(path.c_str(), "rb");
  if (file == nullptr) fail(path, 0, "cannot open file");
  std::vector<std::uint8_t> bytes;
  std::array<std::uint8_t, 1 << 16> chunk{};
  for (;;) {
    const int n = gzread(file, chunk.data(), static_cast<unsigned>(chunk.size()));
    if (n < 0) {
      int code = 0;
      const std::string msg = gzerror(file, &code);
      gzclose(file);
      fail(path, bytes.size(), "read error: " + msg);
    }
    if (n == 0) break;
    bytes.insert(bytes.end(), chunk.begin(), chunk.begin() + n);
  }
  gzclose(file);
  return bytes;
}

std::uint32_t read_be32(const std::vector<std::uint8_t>& bytes, std::size_t offset, const fs::path& path) {
  if (offset + 4 > bytes.size()) fail(path, offset, "truncated header");
  return (std::uint32_t{bytes[offset]} << 24) | (std::uint32_t{bytes[offset + 1]} << 16) |
         (std::uint32_t{bytes[offset + 2]} << 8) | std::uint32_t{bytes[offset + 3]};
}

fs::path resolve(const fs::path& dir, const std::string& name) {
  const fs::path plain = dir / name;
  if (fs::exists(plain)) return plain;
  const fs::path gz = dir / (name + ".gz");
  if (fs::exists(gz)) return gz;
  throw IngestionError(plain.string() + " at offset 0: file not found (also tried .gz)");
}

}  // namespace

Dataset load_mnist(const fs::path& images_path, const fs::path& labels_path) {
  const auto images = read_all(images_path);
  const auto labels = read_all(labels_path);

  const std::uint32_t image_magic = read_be32(images, 0, images_path);
  if (image_magic != kIdxImagesMagic) fail(images_path, 0, "bad magic number for IDX images");
  const std::size_t count = read_be32(images, 4, images_path);
  const std::size_t rows = read_be32(images, 8, images_path);
  const std::size_t cols = read_be32(images, 12, images_path);
  constexpr std::size_t kImageHeader = 16;
  const std::size_t pixels = rows * cols;
  if (pixels == 0) fail(images_path, 8, "zero image size");
  if (images.size() < kImageHeader + count * pixels) {
    fail(images_path, images.size(), "truncated image data, header declares " + std::to_string(count) + " images");
  }

  const std::uint32_t label_magic = read_be32(labels, 0, labels_path);
  if (label_magic != kIdxLabelsMagic) fail(labels_path, 0, "bad magic number for IDX labels");
  const std::size_t label_count = read_be32(labels, 4, labels_path);
  constexpr std::size_t kLabelHeader = 8;
  if (label_count != count) {
    fail(labels_path, 4, "label count " + std::to_string(label_count) + " does not match image count " +
                             std::to_string(count) + " in " + images_path.string());
  }
  if (labels.size() < kLabelHeader + count) fail(labels_path, labels.size(), "truncated label data");

  Dataset data;
  data.num_classes = 10;
  data.features.resize(static_cast<Eigen::Index>(count), static_cast<Eigen::Index>(pixels));
  data.labels.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    const std::uint8_t* src = images.data() + kImageHeader + i * pixels;
    for (std::size_t k = 0; k < pixels; ++k) {
      data.features(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = src[k] / 255.0;
    }
    const int label = labels[kLabelHeader + i];
    if (label >= data.num_classes) fail(labels_path, kLabelHeader + i, "label out of range 0..9");
    data.labels[i] = label;
  }
  return data;
}

MnistSplit load_mnist_dir(const fs::path& dir) {
  return MnistSplit{
      load_mnist(resolve(dir, "train-images-idx3-ubyte"), resolve(dir, "train-labels-idx1-ubyte")),
      load_mnist(resolve(dir, "t10k-images-idx3-ubyte"), resolve(dir, "t10k-labels-idx1-ubyte")),
  };
}

ShardAssignment make_shards(std::size_t train_size, std::size_t num_workers, std::size_t shard_size,
                            std::uint64_t seed) {
  if (num_workers == 0) throw ConfigError("number of workers must be >= 1");
  if (shard_size == 0) throw ConfigError("shard size M must be >= 1");
  if (shard_size > train_size) {
    throw ConfigError("shard size M=" + std::to_string(shard_size) + " exceeds training set size " +
                      std::to_string(train_size));
  }

  Rng rng = make_stream(seed, stream::kSharding);
  std::vector<std::size_t> perm(train_size);
  std::iota(perm.begin(), perm.end(), std::size_t{0});

  // Partial Fisher-Yates per worker. The buffer stays a permutation between
  // workers, so each prefix is a uniform subset.
  ShardAssignment shards(num_workers);
  for (auto& shard : shards) {
    for (std::size_t k = 0; k < shard_size; ++k) {
      std::uniform_int_distribution<std::size_t> pick(k, train_size - 1);
      std::swap(perm[k], perm[pick(rng)]);
    }
    shard.assign(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(shard_size));
  }
  return shards;
}

QuadraticProblem gen_quadratic(std::size_t num_workers, std::size_t shard_size, std::size_t dim, double spread,
                               std::uint64_t seed) {
  if (num_workers == 0) throw ConfigError("number of workers must be >= 1");
  if (shard_size == 0) throw ConfigError("shard size M must be >= 1");
  if (dim == 0) throw ConfigError("dimension must be >= 1");
  if (!(spread >= 0.0) || !std::isfinite(spread)) throw ConfigError("spread must be finite and >= 0");

  const std::size_t total = num_workers * shard_size;
  QuadraticProblem problem;
  problem.centers.features = FeatureMatrix::Zero(static_cast<Eigen::Index>(total), static_cast<Eigen::Index>(dim));
  problem.centers.labels.assign(total, 0);

  if (spread > 0.0) {
    Rng rng = make_stream(seed, stream::kProblem);
    std::normal_distribution<double> gauss(0.0, spread);
    for (Eigen::Index r = 0; r < problem.centers.features.rows(); ++r) {
      for (Eigen::Index c = 0; c < problem.centers.features.cols(); ++c) {
        problem.centers.features(r, c) = gauss(rng);
      }
    }
  }

  problem.shards.resize(num_workers);
  for (std::size_t w = 0; w < num_workers; ++w) {
    problem.shards[w].resize(shard_size);
    std::iota(problem.shards[w].begin(), problem.shards[w].end(), w * shard_size);
  }
  problem.optimum = problem.centers.features.colwise().sum().transpose() / static_cast<double>(total);
  return problem;
}

}  // namespace byzsgd
