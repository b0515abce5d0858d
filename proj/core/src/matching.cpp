#include "tamperlens/matching.hpp"

#include <bit>
#include <cstring>
#include <limits>

namespace tamperlens {

int hamming(const Descriptor256& a, const Descriptor256& b) {
  int distance = 0;
  for (int i = 0; i < 4; ++i) {
    std::uint64_t wa, wb;
    std::memcpy(&wa, a.bytes.data() + i * 8, 8);
    std::memcpy(&wb, b.bytes.data() + i * 8, 8);
    distance += std::popcount(wa ^ wb);
  }
  return distance;
}

std::vector<Match> nearest_matches(const FeatureSet& query, const FeatureSet& train) {
  std::vector<Match> matches;
  if (train.empty()) {
    return matches;
  }
  matches.reserve(query.size());
  for (std::size_t q = 0; q < query.size(); ++q) {
    int best = std::numeric_limits<int>::max();
    std::size_t best_t = 0;
    for (std::size_t t = 0; t < train.size(); ++t) {
      const int d = hamming(query.descriptors[q], train.descriptors[t]);
      if (d < best) {  // ties keep the smallest train index
        best = d;
        best_t = t;
      }
    }
    matches.push_back({q, best_t, best});
  }
  return matches;
}

std::vector<Match> cross_checked(const FeatureSet& query, const FeatureSet& train) {
  std::vector<Match> result;
  if (query.empty() || train.empty()) {
    return result;
  }

  // One pass over the distance table fills both directions.
  std::vector<int> fwd_dist(query.size(), std::numeric_limits<int>::max());
  std::vector<std::size_t> fwd_idx(query.size(), 0);
  std::vector<int> bwd_dist(train.size(), std::numeric_limits<int>::max());
  std::vector<std::size_t> bwd_idx(train.size(), 0);

  for (std::size_t q = 0; q < query.size(); ++q) {
    for (std::size_t t = 0; t < train.size(); ++t) {
      const int d = hamming(query.descriptors[q], train.descriptors[t]);
      if (d < fwd_dist[q]) {
        fwd_dist[q] = d;
        fwd_idx[q] = t;
      }
      if (d < bwd_dist[t]) {
        bwd_dist[t] = d;
        bwd_idx[t] = q;
      }
    }
  }

  for (std::size_t q = 0; q < query.size(); ++q) {
    const std::size_t t = fwd_idx[q];
    if (bwd_idx[t] == q) {
      result.push_back({q, t, fwd_dist[q]});
    }
  }
  return result;
}

std::vector<Match> good_matches(const FeatureSet& test, const FeatureSet& reference,
                                const MatchParams& params) {
  std::vector<Match> matches =
      params.cross_check ? cross_checked(test, reference) : nearest_matches(test, reference);
  std::erase_if(matches, [&](const Match& m) { return m.distance > params.good_distance_max; });
  return matches;
}

int good_match_count(const FeatureSet& test, const FeatureSet& reference,
                     const MatchParams& params) {
  return static_cast<int>(good_matches(test, reference, params).size());
}

}  // namespace tamperlens
