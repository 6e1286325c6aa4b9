#include "aebench/emulation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "aebench/stats.hpp"

namespace aebench {

std::array<std::uint16_t, kLutSize> emulation_remap(const ResponseCurve& crf, double ratio) {
  std::array<std::uint16_t, kLutSize> remap{};
  const auto& lut = crf.inverse_lut();
  for (int d = 0; d < kLutSize; ++d) remap[d] = crf.exposure_to_dn(ratio * lut[d]);
  return remap;
}

RawImage emulate(const RawImage& source, double target_exposure_us, const ResponseCurve& crf) {
  if (!(target_exposure_us > 0.0)) throw DomainError("target exposure must be positive");
  if (!(source.exposure_us > 0.0)) throw DomainError("source exposure must be positive");
  const double ratio = target_exposure_us / source.exposure_us;
  const auto remap = emulation_remap(crf, ratio);

  RawImage out = source;
  out.exposure_us = target_exposure_us;
  const std::int64_t n = static_cast<std::int64_t>(source.data.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) out.data[i] = remap[source.data[i]];
  return out;
}

SaturationStats saturation_stats(const RawImage& img) {
  std::int64_t under = 0;
  std::int64_t over = 0;
  const std::int64_t n = static_cast<std::int64_t>(img.data.size());
#pragma omp parallel for schedule(static) reduction(+ : under, over)
  for (std::int64_t i = 0; i < n; ++i) {
    under += img.data[i] == 0;
    over += img.data[i] == kDnMax;
  }
  SaturationStats stats;
  stats.under_count = under;
  stats.over_count = over;
  stats.fraction = n > 0 ? static_cast<double>(under + over) / static_cast<double>(n) : 0.0;
  return stats;
}

int select_bracket_higher_no_sat(const BracketCycle& cycle, double target_exposure_us,
                                 double sat_threshold) {
  if (cycle.images.empty()) throw DomainError("bracket cycle is empty");
  if (!(target_exposure_us > 0.0)) throw DomainError("target exposure must be positive");
  const auto& ladder = cycle.ladder_us;
  const int n = static_cast<int>(ladder.size());

  for (int i = 0; i < n; ++i)
    if (ladder[i] == target_exposure_us) return i;

  if (target_exposure_us < ladder.front()) return 0;
  if (target_exposure_us > ladder.back()) return n - 1;

  int lower = 0;
  while (lower + 1 < n && ladder[lower + 1] < target_exposure_us) ++lower;
  const int higher = lower + 1;

  if (saturation_stats(cycle.images[higher]).fraction < sat_threshold) return higher;
  return lower;
}

EmulatedImage emulate_from_cycle(const BracketCycle& cycle, double target_exposure_us,
                                 const ResponseCurve& crf, double sat_threshold) {
  const int idx = select_bracket_higher_no_sat(cycle, target_exposure_us, sat_threshold);
  EmulatedImage out;
  out.source_index = idx;
  out.source_exposure_us = cycle.images[idx].exposure_us;
  out.image = emulate(cycle.images[idx], target_exposure_us, crf);
  return out;
}

double rmse_percent(const RawImage& a, const RawImage& b) {
  if (!a.same_size(b)) throw DomainError("rmse requires identical dimensions");
  const std::int64_t n = static_cast<std::int64_t>(a.data.size());
  if (n == 0) return 0.0;
  std::int64_t sum_sq = 0;
#pragma omp parallel for schedule(static) reduction(+ : sum_sq)
  for (std::int64_t i = 0; i < n; ++i) {
    const std::int64_t d = static_cast<std::int64_t>(a.data[i]) - b.data[i];
    sum_sq += d * d;
  }
  return std::sqrt(static_cast<double>(sum_sq) / static_cast<double>(n)) / kDnMax * 100.0;
}

double noise_floor(const std::vector<RawImage>& repeats) {
  if (repeats.size() < 2) throw DomainError("noise floor requires at least 2 repeats");
  for (const auto& img : repeats) {
    if (img.exposure_us != repeats.front().exposure_us)
      throw DomainError("noise floor repeats must share one exposure");
    if (!img.same_size(repeats.front()))
      throw DomainError("noise floor repeats must share dimensions");
  }
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < repeats.size(); ++i)
    acc += rmse_percent(repeats[i], repeats[i + 1]);
  return acc / static_cast<double>(repeats.size() - 1);
}

ValidationReport validate_emulation(const std::vector<RawImage>& sweep, const BracketCycle& cycle,
                                    const ResponseCurve& crf, double noise_floor_pct,
                                    double sat_threshold) {
  validate(cycle);
  ValidationReport report;
  report.noise_floor_pct = noise_floor_pct;
  report.points.reserve(sweep.size());

  std::vector<double> selector_curve;
  selector_curve.reserve(sweep.size());
  for (const RawImage& gt : sweep) {
    ValidationPoint point;
    point.gt_exposure_us = gt.exposure_us;
    const EmulatedImage em = emulate_from_cycle(cycle, gt.exposure_us, crf, sat_threshold);
    point.selected_index = em.source_index;
    point.rmse_highernosat_pct =
        std::max(0.0, rmse_percent(em.image, gt) - noise_floor_pct);
    point.rmse_per_bracket.reserve(cycle.images.size());
    for (const RawImage& bracket : cycle.images)
      point.rmse_per_bracket.push_back(rmse_percent(emulate(bracket, gt.exposure_us, crf), gt));
    selector_curve.push_back(point.rmse_highernosat_pct);
    report.points.push_back(std::move(point));
  }
  report.median_pct = median(selector_curve);
  report.max_pct = selector_curve.empty()
                       ? 0.0
                       : *std::max_element(selector_curve.begin(), selector_curve.end());
  return report;
}

}  // namespace aebench
