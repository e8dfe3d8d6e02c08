// coarse_graining.hpp - contiguous partitions of the J_z eigenbasis
#pragma once

#include <numeric>
#include <vector>

#include "qkt/errors.hpp"

namespace qkt {

// Ordered partition of {0,...,d-1} into contiguous blocks. Blocks are stored
// as a list of volumes; starts are prefix sums, so cover and disjointness
// hold by construction. Projectors are never materialized: block
// probabilities are contiguous partial sums.
class CoarseGraining {
 public:
  CoarseGraining(int dim, std::vector<int> volumes)
      : dim_(dim), volumes_(std::move(volumes)) {
    if (dim_ < 1) throw DomainError("coarse-graining dimension must be positive");
    if (volumes_.empty())
      throw IndivisibleBlock("coarse-graining needs at least one block");
    starts_.resize(volumes_.size());
    int acc = 0;
    for (std::size_t i = 0; i < volumes_.size(); ++i) {
      if (volumes_[i] < 1) throw IndivisibleBlock("block volumes must be >= 1");
      starts_[i] = acc;
      acc += volumes_[i];
    }
    if (acc != dim_)
      throw IndivisibleBlock("block volumes must sum to the dimension");
  }

  int dim() const { return dim_; }
  int block_count() const { return static_cast<int>(volumes_.size()); }
  int volume(int i) const { return volumes_[static_cast<std::size_t>(i)]; }
  int start(int i) const { return starts_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& volumes() const { return volumes_; }

  bool operator==(const CoarseGraining& other) const {
    return dim_ == other.dim_ && volumes_ == other.volumes_;
  }

 private:
  int dim_;
  std::vector<int> volumes_;
  std::vector<int> starts_;
};

// d/mu contiguous blocks of size mu.
inline CoarseGraining uniform_partition(int d, int mu) {
  if (mu < 1 || mu > d || d % mu != 0)
    throw IndivisibleBlock("uniform_partition: block size must divide the dimension");
  return CoarseGraining(d, std::vector<int>(static_cast<std::size_t>(d / mu), mu));
}

// Size-2 blocks on [0, d/2), size-4 blocks on [d/2, d). The layout needs
// d/2 divisible by 2 and by 4, i.e. d divisible by 8.
inline CoarseGraining half_half_partition(int d) {
  if (d < 8 || d % 8 != 0)
    throw IndivisibleBlock("half_half_partition: dimension must be a multiple of 8");
  std::vector<int> vols(static_cast<std::size_t>(d / 4), 2);
  vols.insert(vols.end(), static_cast<std::size_t>(d / 8), 4);
  return CoarseGraining(d, std::move(vols));
}

// Same layout with the two halves exchanged (size-4 blocks first); used to
// confirm results do not depend on which half carries the finer blocks.
inline CoarseGraining half_half_partition_swapped(int d) {
  if (d < 8 || d % 8 != 0)
    throw IndivisibleBlock("half_half_partition: dimension must be a multiple of 8");
  std::vector<int> vols(static_cast<std::size_t>(d / 8), 4);
  vols.insert(vols.end(), static_cast<std::size_t>(d / 4), 2);
  return CoarseGraining(d, std::move(vols));
}

// Splits every block into `factor` equal contiguous sub-blocks; the result is
// finer than the input.
inline CoarseGraining refine(const CoarseGraining& cg, int factor) {
  if (factor < 1) throw IndivisibleBlock("refine: factor must be >= 1");
  if (factor == 1) return cg;
  std::vector<int> vols;
  vols.reserve(cg.volumes().size() * static_cast<std::size_t>(factor));
  for (int v : cg.volumes()) {
    if (v % factor != 0)
      throw IndivisibleBlock("refine: factor must divide every block volume");
    vols.insert(vols.end(), static_cast<std::size_t>(factor), v / factor);
  }
  return CoarseGraining(cg.dim(), std::move(vols));
}

// mu=2 partition with an odd remainder merged into the last block; the
// fallback for dimensions where the half-half layout does not fit.
inline CoarseGraining mu2_partition_merged(int d) {
  if (d <= 2) return CoarseGraining(d, {d});
  std::vector<int> vols(static_cast<std::size_t>(d / 2), 2);
  if (d % 2 != 0) vols.back() += 1;
  return CoarseGraining(d, std::move(vols));
}

// Default partition for dynamics runs: half-half where it fits, otherwise the
// mu=2 fallback (small dimensions).
inline CoarseGraining dynamics_partition(int d) {
  if (d >= 8 && d % 8 == 0) return half_half_partition(d);
  return mu2_partition_merged(d);
}

}  // namespace qkt
