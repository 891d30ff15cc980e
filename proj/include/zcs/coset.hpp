#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "zcs/error.hpp"

namespace zcs {

/// A finite set of cosets of A(Q)/B*A(Q) written in coordinates
/// (Z/B)^rank x prod Z/t_i.
///
/// Tuples are stored as mixed-radix indices, free coordinates first; the
/// index vector is kept sorted and unique so equality is structural.
class CosetLattice {
 public:
  using Tuple = std::vector<std::uint32_t>;

  CosetLattice() = default;
  CosetLattice(int rank, std::uint32_t modulus, std::vector<std::uint32_t> torsion_shape)
      : rank_(rank), modulus_(modulus), torsion_(std::move(torsion_shape)) {
    if (rank < 0 || modulus < 1) fail(ErrorKind::ShapeMismatch, "rank must be >= 0 and modulus >= 1");
    for (auto t : torsion_)
      if (t < 1) fail(ErrorKind::ShapeMismatch, "torsion components must be >= 1");
    radices_.assign(static_cast<size_t>(rank_), modulus_);
    radices_.insert(radices_.end(), torsion_.begin(), torsion_.end());
    total_ = 1;
    for (auto r : radices_) {
      total_ *= r;
      if (total_ > kMaxCandidates) fail(ErrorKind::ConfigError, "coset lattice too large");
    }
  }

  static constexpr std::uint64_t kMaxCandidates = 50'000'000;

  static CosetLattice full(int rank, std::uint32_t modulus, std::vector<std::uint32_t> torsion_shape) {
    CosetLattice l(rank, modulus, std::move(torsion_shape));
    l.members_.resize(l.total_);
    for (std::uint64_t i = 0; i < l.total_; ++i) l.members_[i] = i;
    return l;
  }

  int rank() const noexcept { return rank_; }
  std::uint32_t modulus() const noexcept { return modulus_; }
  const std::vector<std::uint32_t>& torsion_shape() const noexcept { return torsion_; }
  const std::vector<std::uint32_t>& radices() const noexcept { return radices_; }
  std::uint64_t candidate_count() const noexcept { return total_; }
  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  const std::vector<std::uint64_t>& indices() const noexcept { return members_; }

  bool same_shape(const CosetLattice& o) const noexcept {
    return rank_ == o.rank_ && modulus_ == o.modulus_ && torsion_ == o.torsion_;
  }

  std::uint64_t encode(const Tuple& t) const {
    if (t.size() != radices_.size()) fail(ErrorKind::ShapeMismatch, "tuple length does not match lattice");
    std::uint64_t idx = 0;
    for (size_t i = 0; i < t.size(); ++i) {
      if (t[i] >= radices_[i]) fail(ErrorKind::ShapeMismatch, "tuple component out of range");
      idx = idx * radices_[i] + t[i];
    }
    return idx;
  }

  Tuple decode(std::uint64_t idx) const {
    Tuple t(radices_.size());
    for (size_t i = radices_.size(); i-- > 0;) {
      t[i] = static_cast<std::uint32_t>(idx % radices_[i]);
      idx /= radices_[i];
    }
    return t;
  }

  bool contains(const Tuple& t) const { return std::binary_search(members_.begin(), members_.end(), encode(t)); }

  void insert(const Tuple& t) { insert_index(encode(t)); }

  void insert_index(std::uint64_t idx) {
    if (idx >= total_) fail(ErrorKind::ShapeMismatch, "coset index out of range");
    auto it = std::lower_bound(members_.begin(), members_.end(), idx);
    if (it == members_.end() || *it != idx) members_.insert(it, idx);
  }

  /// Bulk assignment from arbitrary indices.
  void assign_indices(std::vector<std::uint64_t> idx) {
    for (auto i : idx)
      if (i >= total_) fail(ErrorKind::ShapeMismatch, "coset index out of range");
    std::sort(idx.begin(), idx.end());
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
    members_ = std::move(idx);
  }

  std::vector<Tuple> tuples() const {
    std::vector<Tuple> out;
    out.reserve(members_.size());
    for (auto i : members_) out.push_back(decode(i));
    return out;
  }

  friend bool operator==(const CosetLattice& a, const CosetLattice& b) {
    return a.same_shape(b) && a.members_ == b.members_;
  }

 private:
  int rank_ = 0;
  std::uint32_t modulus_ = 1;
  std::vector<std::uint32_t> torsion_;
  std::vector<std::uint32_t> radices_;
  std::uint64_t total_ = 1;
  std::vector<std::uint64_t> members_;
};

inline CosetLattice intersect_cosets(const std::vector<CosetLattice>& lattices) {
  if (lattices.empty()) fail(ErrorKind::ShapeMismatch, "intersection of an empty family");
  CosetLattice acc = lattices.front();
  for (size_t i = 1; i < lattices.size(); ++i) {
    const auto& l = lattices[i];
    if (!acc.same_shape(l)) fail(ErrorKind::ShapeMismatch, "lattices differ in rank, modulus or torsion shape");
    std::vector<std::uint64_t> out;
    std::set_intersection(acc.indices().begin(), acc.indices().end(), l.indices().begin(), l.indices().end(),
                          std::back_inserter(out));
    acc.assign_indices(std::move(out));
  }
  return acc;
}

}  // namespace zcs
