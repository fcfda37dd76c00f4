#include "stallwatch/curation.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <map>
#include <numeric>
#include <random>
#include <tuple>

#include "stallwatch/errors.hpp"

namespace stallwatch {

std::vector<int> subsample_every_n(int frame_count, int n) {
  if (n < 1) throw UsageError("subsampling step must be >= 1");
  std::vector<int> out;
  for (int f = 0; f < frame_count; f += n) out.push_back(f);
  return out;
}

double cosine_similarity(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) throw InputError("embedding dimensions differ");
  const double dot = std::inner_product(u.begin(), u.end(), v.begin(), 0.0);
  const double nu = std::sqrt(std::inner_product(u.begin(), u.end(), u.begin(), 0.0));
  const double nv = std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
  if (nu == 0.0 || nv == 0.0) throw InputError("zero-norm embedding");
  return std::clamp(dot / (nu * nv), -1.0, 1.0);
}

InformativeSelection select_informative(std::span<const std::vector<double>> seq,
                                        double percentile) {
  if (!(percentile > 0.0 && percentile <= 1.0))
    throw UsageError("percentile must lie in (0, 1]");
  InformativeSelection out;
  if (seq.size() < 2) {
    out.warning = "sequence shorter than 2 frames; nothing selected";
    return out;
  }
  const std::size_t n = seq.size() - 1;
  std::vector<double> sims(n);
  for (std::size_t t = 1; t < seq.size(); ++t) sims[t - 1] = cosine_similarity(seq[t], seq[t - 1]);

  // Nearest rank; the small tolerance keeps e.g. 0.25 * 4 from rounding up.
  const auto rank = static_cast<std::size_t>(std::ceil(percentile * static_cast<double>(n) - 1e-9));
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return sims[a] < sims[b]; });
  order.resize(std::min(rank, n));
  std::sort(order.begin(), order.end());
  for (std::size_t i : order) {
    out.positions.push_back(i + 1);
    out.similarities.push_back(sims[i]);
  }
  return out;
}

StratifiedSample stratified_sample(std::span<const ClipMeta> clips, int k_per_stratum,
                                   std::uint64_t seed) {
  if (k_per_stratum < 1) throw UsageError("k_per_stratum must be >= 1");
  std::map<std::tuple<std::string, std::string, std::string>, std::vector<std::string>> strata;
  for (const ClipMeta& c : clips) {
    strata[{c.stall_id, c.time_of_day, c.season}].push_back(c.clip_id);
  }
  StratifiedSample out;
  std::mt19937_64 rng(seed);
  const auto k = static_cast<std::size_t>(k_per_stratum);
  for (const auto& [key, ids] : strata) {
    if (ids.size() < k) {
      out.warnings.push_back("stratum (" + std::get<0>(key) + ", " + std::get<1>(key) + ", " +
                             std::get<2>(key) + ") has only " + std::to_string(ids.size()) +
                             " clips; taking all");
    }
    std::sample(ids.begin(), ids.end(), std::back_inserter(out.clip_ids), k, rng);
  }
  return out;
}

}  // namespace stallwatch
