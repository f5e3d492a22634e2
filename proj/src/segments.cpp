#include "siegelkit/segments.hpp"

#include <algorithm>
#include <sstream>

#include "siegelkit/exactmat.hpp"

namespace siegelkit {

SegmentPartition::SegmentPartition(std::vector<Index> starts, Index n)
    : starts_(std::move(starts)), n_(n) {
  if (starts_.empty() || starts_[0] != 0 || !std::is_sorted(starts_.begin(), starts_.end()) ||
      starts_.back() >= n_)
    throw DomainError("segment starts must be sorted, begin at 0 and stay below n");
}

Index SegmentPartition::segment_of(Index k) const {
  auto it = std::upper_bound(starts_.begin(), starts_.end(), k);
  return static_cast<Index>(it - starts_.begin()) - 1;
}

std::pair<Index, Index> SegmentPartition::segment(Index s) const {
  Index begin = starts_[static_cast<std::size_t>(s)];
  Index end = (s + 1 < count()) ? starts_[static_cast<std::size_t>(s + 1)] : n_;
  return {begin, end};
}

std::string SegmentPartition::to_string() const {
  std::ostringstream os;
  for (Index s = 0; s < count(); ++s) {
    if (s) os << ", ";
    auto [b, e] = segment(s);
    os << '{';
    for (Index k = b; k < e; ++k) {
      if (k > b) os << ',';
      os << (k + 1);
    }
    os << '}';
  }
  return os.str();
}

std::vector<LeadingEntry> leading_entries(const RationalMatrix& gamma) {
  require_square(gamma, "leading_entries");
  std::vector<LeadingEntry> out;
  out.reserve(static_cast<std::size_t>(gamma.rows()));
  for (Index i = 0; i < gamma.rows(); ++i) {
    Index j = 0;
    while (j < gamma.cols() && gamma(i, j) == 0) ++j;
    if (j == gamma.cols())
      throw SingularMatrix("leading_entries requires an invertible matrix (row " +
                           std::to_string(i + 1) + " is zero)");
    out.push_back({i, j});
  }
  return out;
}

SegmentPartition segment_partition(const RationalMatrix& gamma) {
  require_square(gamma, "segment_partition");
  if (det(gamma) == 0)
    throw SingularMatrix("segment_partition requires an invertible matrix");
  const Index n = gamma.rows();
  // Cut after column k exactly when the lower-left block below it vanishes.
  std::vector<Index> starts{0};
  for (Index k = 0; k + 1 < n; ++k) {
    bool zero_block = true;
    for (Index i = k + 1; i < n && zero_block; ++i)
      for (Index j = 0; j <= k; ++j)
        if (gamma(i, j) != 0) {
          zero_block = false;
          break;
        }
    if (zero_block) starts.push_back(k + 1);
  }
  return SegmentPartition(std::move(starts), n);
}

std::vector<LeadingEntry> witnessing_sequence(const RationalMatrix& gamma, Index i, Index j) {
  require_square(gamma, "witnessing_sequence");
  if (i <= j)
    throw NotSameSegment("witnessing_sequence requires i > j");
  SegmentPartition part = segment_partition(gamma);
  if (!part.same_segment(i, j))
    throw NotSameSegment("witnessing_sequence requires i and j in the same segment");
  std::vector<LeadingEntry> leads = leading_entries(gamma);

  // For each k in (j, i], descending, take a leading entry crossing k
  // (column < k <= row). The bottommost crossing row is chosen; the finest
  // partition guarantees one exists.
  std::vector<LeadingEntry> seq;
  for (Index k = i; k > j; --k) {
    Index best = -1;
    for (Index r = k; r < gamma.rows(); ++r)
      if (leads[static_cast<std::size_t>(r)].col < k) best = r;
    if (best < 0)
      throw NotSameSegment("witnessing_sequence found no crossing leading entry; i and j are "
                           "not in the same segment");
    seq.push_back(leads[static_cast<std::size_t>(best)]);
  }

  // Delete the stretch between two visits to the same row; one visit keeps
  // the chain condition because a row has a single leading entry.
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t p = 0; p < seq.size() && !changed; ++p)
      for (std::size_t q = p + 1; q < seq.size() && !changed; ++q)
        if (seq[p].row == seq[q].row) {
          seq.erase(seq.begin() + static_cast<std::ptrdiff_t>(p) + 1,
                    seq.begin() + static_cast<std::ptrdiff_t>(q) + 1);
          changed = true;
        }
  }
  // The construction keeps every row index above j, so no visit equals j.
  return seq;
}

}  // namespace siegelkit
