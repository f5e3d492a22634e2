#pragma once

#include <vector>

#include "siegelkit/matrix.hpp"

namespace siegelkit {

/// Position of the leftmost nonzero entry of a row. Indices are 0-based.
struct LeadingEntry {
  Index row;
  Index col;

  friend bool operator==(const LeadingEntry& a, const LeadingEntry& b) {
    return a.row == b.row && a.col == b.col;
  }
};

/// The finest partition of {0..n-1} into consecutive intervals making a
/// matrix block upper triangular.
class SegmentPartition {
 public:
  SegmentPartition(std::vector<Index> starts, Index n);

  Index n() const { return n_; }
  Index count() const { return static_cast<Index>(starts_.size()); }
  const std::vector<Index>& starts() const { return starts_; }

  /// Index of the segment containing k.
  Index segment_of(Index k) const;
  bool same_segment(Index i, Index j) const { return segment_of(i) == segment_of(j); }

  /// Half-open range [begin, end) of segment s.
  std::pair<Index, Index> segment(Index s) const;

  /// 1-based display form, e.g. "{1}, {2,3}".
  std::string to_string() const;

  friend bool operator==(const SegmentPartition& a, const SegmentPartition& b) {
    return a.n_ == b.n_ && a.starts_ == b.starts_;
  }

 private:
  std::vector<Index> starts_;  // sorted, starts_[0] == 0
  Index n_;
};

/// One leading entry per row. Throws SingularMatrix if some row is zero.
std::vector<LeadingEntry> leading_entries(const RationalMatrix& gamma);

/// The finest interval partition making gamma block upper triangular;
/// equivalently the smallest standard parabolic containing gamma.
/// Throws SingularMatrix if det gamma = 0.
SegmentPartition segment_partition(const RationalMatrix& gamma);

/// For i > j in the same segment, a sequence of leading entries
/// (i_1,j_1)..(i_s,j_s) with i <= i_1, j_p <= i_{p+1} and j_s <= j, the rows
/// i_p distinct and different from j. Throws NotSameSegment if the
/// precondition fails.
std::vector<LeadingEntry> witnessing_sequence(const RationalMatrix& gamma, Index i, Index j);

namespace detail {
template <typename Scalar, typename Tol>
bool within(const Scalar& x, const Tol& tol) {
  using std::abs;
  return abs(x) <= tol;
}
}  // namespace detail

/// True iff every entry strictly below the block diagonal is bounded by tol
/// (use tol = 0 for exact matrices).
template <typename Derived, typename Tol>
bool in_block_upper(const Eigen::MatrixBase<Derived>& m, const SegmentPartition& part,
                    const Tol& tol) {
  for (Index p = 0; p < m.rows(); ++p)
    for (Index q = 0; q < m.cols(); ++q)
      if (part.segment_of(p) > part.segment_of(q) && !detail::within(m(p, q), tol)) return false;
  return true;
}

/// True iff every entry off the block diagonal is bounded by tol.
template <typename Derived, typename Tol>
bool in_block_diagonal(const Eigen::MatrixBase<Derived>& m, const SegmentPartition& part,
                       const Tol& tol) {
  for (Index p = 0; p < m.rows(); ++p)
    for (Index q = 0; q < m.cols(); ++q)
      if (part.segment_of(p) != part.segment_of(q) && !detail::within(m(p, q), tol)) return false;
  return true;
}

}  // namespace siegelkit
