#ifndef STALLWATCH_CURATION_HPP
#define STALLWATCH_CURATION_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace stallwatch {

// Frame indices {0, n, 2n, ...} below frame_count. Throws UsageError for n < 1.
std::vector<int> subsample_every_n(int frame_count, int n);

// Throws InputError on dimension mismatch or a zero-norm vector.
double cosine_similarity(std::span<const double> u, std::span<const double> v);

struct InformativeSelection {
  std::vector<std::size_t> positions;   // ascending, all >= 1
  std::vector<double> similarities;     // similarity to the previous frame, per position
  std::optional<std::string> warning;
};

// Keeps the frames least similar to their predecessor: the
// ceil(percentile * (L - 1)) lowest consecutive-frame cosine similarities
// (nearest rank; ties resolved by lower position).
InformativeSelection select_informative(std::span<const std::vector<double>> seq,
                                        double percentile = 0.25);

struct ClipMeta {
  std::string clip_id;
  std::string stall_id;
  std::string time_of_day;
  std::string season;
};

struct StratifiedSample {
  std::vector<std::string> clip_ids;
  std::vector<std::string> warnings;
};

// Uniformly samples min(k, |stratum|) clips from every (stall, time of day,
// season) stratum, deterministically for a given seed.
StratifiedSample stratified_sample(std::span<const ClipMeta> clips, int k_per_stratum,
                                   std::uint64_t seed);

}  // namespace stallwatch

#endif  // STALLWATCH_CURATION_HPP
