#pragma once

#include <vector>

#include "tamperlens/orb.hpp"

namespace tamperlens {

// query_idx-th test feature matched to train_idx-th reference feature.
struct Match {
  std::size_t query_idx;
  std::size_t train_idx;
  int distance;  // Hamming distance in bits, 0..256

  friend bool operator==(const Match&, const Match&) = default;
};

struct MatchParams {
  int good_distance_max = 64;  // bits, 0..256
  bool cross_check = true;

  friend bool operator==(const MatchParams&, const MatchParams&) = default;
};

// Number of differing bits, 0..256.
int hamming(const Descriptor256& a, const Descriptor256& b);

// Brute force: one match per query feature (when train is nonempty), the
// train feature at minimum Hamming distance, ties broken by the smallest
// train index. Output ordered by query index.
std::vector<Match> nearest_matches(const FeatureSet& query, const FeatureSet& train);

// Mutual-nearest filter: a match (q -> t) survives iff q is also the
// nearest query feature for t, with the same tie rule in both directions.
std::vector<Match> cross_checked(const FeatureSet& query, const FeatureSet& train);

// Cross-checked matches (or plain nearest matches when cross_check is off)
// with distance <= good_distance_max.
std::vector<Match> good_matches(const FeatureSet& test, const FeatureSet& reference,
                                const MatchParams& params);

int good_match_count(const FeatureSet& test, const FeatureSet& reference,
                     const MatchParams& params);

}  // namespace tamperlens
