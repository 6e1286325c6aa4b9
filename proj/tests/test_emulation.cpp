#include <doctest.h>

#include <cmath>

#include "aebench/emulation.hpp"
#include "aebench/serial_ref.hpp"
#include "test_util.hpp"

using namespace aebench;

namespace {

RawImage all_dns_image(double exposure_us) {
  return testutil::make_image(64, 64, exposure_us, [](int x, int y) { return y * 64 + x; });
}

BracketCycle make_cycle(const std::vector<RawImage>& images) {
  BracketCycle cycle;
  cycle.images = images;
  for (const RawImage& img : images) cycle.ladder_us.push_back(img.exposure_us);
  return cycle;
}

// Cycle with a controllable count of saturated pixels per bracket.
BracketCycle synthetic_cycle(const std::vector<double>& ladder_us,
                             const std::vector<int>& saturated_pixels, int w = 40, int h = 25) {
  std::vector<RawImage> images;
  for (std::size_t b = 0; b < ladder_us.size(); ++b) {
    const int sat = saturated_pixels[b];
    images.push_back(testutil::make_image(w, h, ladder_us[b], [&](int x, int y) {
      return (y * w + x) < sat ? 4095 : 1500;
    }));
  }
  return make_cycle(images);
}

}  // namespace

TEST_CASE("emulate: identity ratio reproduces the source within 1 DN") {
  const RawImage src = all_dns_image(4000.0);
  for (const ResponseCurve& crf :
       {ResponseCurve::linear(), ResponseCurve::gamma(2.2), ResponseCurve::s_curve(6.0)}) {
    const RawImage out = emulate(src, 4000.0, crf);
    CHECK(out.exposure_us == 4000.0);
    for (std::size_t i = 0; i < src.data.size(); ++i)
      CHECK(std::abs(static_cast<int>(out.data[i]) - static_cast<int>(src.data[i])) <= 1);
  }
}

TEST_CASE("emulate: linear doubling and saturating clamp") {
  const ResponseCurve lin = ResponseCurve::linear();
  const RawImage src1 = testutil::make_image(8, 8, 4000.0, [](int, int) { return 1000; });
  const RawImage out1 = emulate(src1, 8000.0, lin);
  for (std::uint16_t dn : out1.data) CHECK(std::abs(dn - 2000) <= 1);

  const RawImage src2 = testutil::make_image(8, 8, 16000.0, [](int, int) { return 3000; });
  const RawImage out2 = emulate(src2, 32000.0, lin);
  for (std::uint16_t dn : out2.data) CHECK(dn == 4095);
}

TEST_CASE("emulate: non-positive target is a domain error") {
  const RawImage src = all_dns_image(4000.0);
  CHECK_THROWS_AS(emulate(src, 0.0, ResponseCurve::linear()), DomainError);
  CHECK_THROWS_AS(emulate(src, -5.0, ResponseCurve::linear()), DomainError);
}

TEST_CASE("emulate matches the serial per-pixel reference exactly") {
  const RawImage src = testutil::random_image(53, 37, 8000.0, 11);
  for (const ResponseCurve& crf :
       {ResponseCurve::linear(), ResponseCurve::gamma(2.2), ResponseCurve::s_curve(6.0)}) {
    for (double target : {250.0, 3000.0, 8000.0, 21000.0, 64000.0}) {
      const RawImage fast = emulate(src, target, crf);
      const RawImage ref = serial::emulate(src, target, crf);
      REQUIRE(fast.data == ref.data);
    }
  }
}

TEST_CASE("emulate: pixelwise monotonicity in target exposure") {
  const RawImage src = all_dns_image(8000.0);
  for (const ResponseCurve& crf :
       {ResponseCurve::linear(), ResponseCurve::gamma(2.2), ResponseCurve::s_curve(6.0)}) {
    RawImage prev = emulate(src, 500.0, crf);
    for (double target : {1000.0, 2000.0, 5000.0, 9000.0, 16000.0, 40000.0}) {
      const RawImage cur = emulate(src, target, crf);
      for (std::size_t i = 0; i < src.data.size(); ++i) REQUIRE(cur.data[i] >= prev.data[i]);
      prev = cur;
    }
  }
}

TEST_CASE("emulate: saturated pixels stay saturated for larger targets") {
  const RawImage src = testutil::make_image(8, 8, 8000.0, [](int, int) { return 4095; });
  for (double target : {8000.0, 9000.0, 16000.0, 50000.0})
    for (std::uint16_t dn : emulate(src, target, ResponseCurve::gamma(2.2)).data)
      CHECK(dn == 4095);
}

TEST_CASE("emulate: composition differs from the direct hop by at most 2 DN") {
  const RawImage src = testutil::random_image(48, 32, 8000.0, 3);
  for (const ResponseCurve& crf : {ResponseCurve::linear(), ResponseCurve::gamma(2.2)}) {
    const RawImage mid = emulate(src, 16000.0, crf);
    const RawImage two_hop = emulate(mid, 11000.0, crf);
    const RawImage direct = emulate(src, 11000.0, crf);
    for (std::size_t i = 0; i < src.data.size(); ++i) {
      if (src.data[i] == 0 || src.data[i] == 4095) continue;
      if (mid.data[i] == 0 || mid.data[i] == 4095) continue;
      CHECK(std::abs(static_cast<int>(two_hop.data[i]) - static_cast<int>(direct.data[i])) <= 2);
    }
  }
}

TEST_CASE("saturation stats") {
  const int w = 10, h = 10;
  const RawImage white = testutil::make_image(w, h, 1000.0, [](int, int) { return 4095; });
  SaturationStats stats = saturation_stats(white);
  CHECK(stats.fraction == 1.0);
  CHECK(stats.over_count == w * h);
  CHECK(stats.under_count == 0);

  const RawImage mid = testutil::make_image(w, h, 1000.0, [](int, int) { return 2000; });
  CHECK(saturation_stats(mid).fraction == 0.0);

  const RawImage half = testutil::make_image(w, h, 1000.0,
                                             [&](int x, int y) { return (y * w + x) < 50 ? 0 : 2000; });
  CHECK(saturation_stats(half).fraction == 0.5);

  const RawImage rnd = testutil::random_image(33, 21, 500.0, 5);
  const SaturationStats a = saturation_stats(rnd);
  const SaturationStats b = serial::saturation_stats(rnd);
  CHECK(a.under_count == b.under_count);
  CHECK(a.over_count == b.over_count);
  CHECK(a.fraction == b.fraction);
}

TEST_CASE("HigherNoSat selection honors the saturation threshold") {
  const std::vector<double> ladder = {1000, 2000, 4000, 8000, 16000, 32000};

  // 0.5 % of the 16 ms bracket saturated: the higher bracket wins for 9 ms.
  BracketCycle low_sat = synthetic_cycle(ladder, {0, 0, 0, 0, 5, 100});
  CHECK(select_bracket_higher_no_sat(low_sat, 9000.0) == 4);

  // 3 % saturated: fall back to the lower bracket.
  BracketCycle high_sat = synthetic_cycle(ladder, {0, 0, 0, 0, 30, 100});
  CHECK(select_bracket_higher_no_sat(high_sat, 9000.0) == 3);

  // Outside the ladder: closest bracket on both ends.
  CHECK(select_bracket_higher_no_sat(low_sat, 500.0) == 0);
  CHECK(select_bracket_higher_no_sat(low_sat, 48000.0) == 5);

  // Exact ladder value short-circuits.
  for (int b = 0; b < 6; ++b)
    CHECK(select_bracket_higher_no_sat(high_sat, ladder[b]) == b);

  BracketCycle empty;
  CHECK_THROWS_AS(select_bracket_higher_no_sat(empty, 9000.0), DomainError);
}

TEST_CASE("HigherNoSat soundness across a dense target grid") {
  const std::vector<double> ladder = {1000, 2000, 4000, 8000, 16000, 32000};
  const BracketCycle cycle = synthetic_cycle(ladder, {0, 0, 0, 10, 30, 200});
  const double threshold = 0.01;
  for (double target = 200.0; target < 60000.0; target *= 1.07) {
    const int idx = select_bracket_higher_no_sat(cycle, target, threshold);
    INFO("target ", target, " -> ", idx);
    bool exact = false;
    for (std::size_t b = 0; b < ladder.size(); ++b)
      if (ladder[b] == target) {
        CHECK(idx == static_cast<int>(b));
        exact = true;
      }
    if (exact) continue;
    if (target < ladder.front()) {
      CHECK(idx == 0);
    } else if (target > ladder.back()) {
      CHECK(idx == 5);
    } else {
      int lower = 0;
      while (ladder[lower + 1] < target) ++lower;
      const bool higher_ok =
          saturation_stats(cycle.images[lower + 1]).fraction < threshold;
      CHECK(idx == (higher_ok ? lower + 1 : lower));
    }
  }
}

TEST_CASE("emulate_from_cycle wires selection and emulation together") {
  const std::vector<double> ladder = {1000, 2000, 4000, 8000, 16000, 32000};
  const BracketCycle cycle = synthetic_cycle(ladder, {0, 0, 0, 0, 0, 0});
  const ResponseCurve crf = ResponseCurve::linear();

  const EmulatedImage at_ladder = emulate_from_cycle(cycle, 8000.0, crf);
  CHECK(at_ladder.source_index == 3);
  CHECK(at_ladder.source_exposure_us == 8000.0);
  for (std::size_t i = 0; i < at_ladder.image.data.size(); ++i)
    CHECK(std::abs(at_ladder.image.data[i] - cycle.images[3].data[i]) <= 1);

  CHECK(emulate_from_cycle(cycle, 9000.0, crf).source_exposure_us == 16000.0);
  const EmulatedImage extrapolated = emulate_from_cycle(cycle, 48000.0, crf);
  CHECK(extrapolated.source_exposure_us == 32000.0);
  CHECK(extrapolated.image.exposure_us == 48000.0);
}

TEST_CASE("rmse percent") {
  const RawImage a = testutil::make_image(16, 16, 1000.0, [](int, int) { return 1000; });
  CHECK(rmse_percent(a, a) == 0.0);

  const RawImage b = testutil::make_image(16, 16, 1000.0, [](int, int) { return 1041; });
  CHECK(rmse_percent(a, b) == doctest::Approx(41.0 / 4095.0 * 100.0).epsilon(1e-12));

  const RawImage r1 = testutil::random_image(31, 17, 1000.0, 21);
  const RawImage r2 = testutil::random_image(31, 17, 1000.0, 22);
  CHECK(rmse_percent(r1, r2) == doctest::Approx(serial::rmse_percent(r1, r2)).epsilon(1e-12));

  const RawImage small = testutil::make_image(4, 4, 1000.0, [](int, int) { return 0; });
  CHECK_THROWS_AS(rmse_percent(a, small), DomainError);
}

TEST_CASE("noise floor") {
  const RawImage base = testutil::make_image(16, 16, 2000.0, [](int, int) { return 700; });
  std::vector<RawImage> identical(25, base);
  CHECK(noise_floor(identical) == 0.0);

  RawImage shifted = testutil::make_image(16, 16, 2000.0, [](int, int) { return 741; });
  CHECK(noise_floor({base, shifted}) ==
        doctest::Approx(41.0 / 4095.0 * 100.0).epsilon(1e-12));

  std::vector<RawImage> noisy;
  for (unsigned s = 0; s < 6; ++s) noisy.push_back(testutil::random_image(24, 18, 2000.0, s));
  CHECK(noise_floor(noisy) == doctest::Approx(serial::noise_floor(noisy)).epsilon(1e-12));

  RawImage other_exposure = base;
  other_exposure.exposure_us = 3000.0;
  CHECK_THROWS_AS(noise_floor({base, other_exposure}), DomainError);
  CHECK_THROWS_AS(noise_floor({base}), DomainError);
}

TEST_CASE("validate_emulation on a noiseless static scene") {
  // Shared canvas, zero drift, zero noise: emulation should sit at the
  // quantization floor and per-ladder-point error should vanish.
  CaptureSpec capture;
  capture.crf = ResponseCurve::gamma(2.2);
  capture.frame_width = 64;
  capture.frame_height = 48;
  const RadianceImage canvas = testutil::log_ramp_canvas(64, 48, 2e-7, 3.5);

  BracketCycle cycle;
  cycle.ladder_us = default_ladder_us();
  for (double exp_us : cycle.ladder_us)
    cycle.images.push_back(render_frame(canvas, {0.0, 0.0}, exp_us, capture));

  std::vector<RawImage> sweep;
  for (double exp_us : {1000.0, 3000.0, 8000.0, 11000.0, 32000.0})
    sweep.push_back(render_frame(canvas, {0.0, 0.0}, exp_us, capture));

  const ValidationReport report = validate_emulation(sweep, cycle, capture.crf);
  REQUIRE(report.points.size() == 5);
  for (const ValidationPoint& p : report.points) {
    REQUIRE(p.rmse_per_bracket.size() == 6);
    CHECK(p.rmse_highernosat_pct < 0.1);
  }
  // Ladder-coincident sweep points are exact up to quantization.
  CHECK(report.points[0].rmse_highernosat_pct < 0.03);
  CHECK(report.points[2].rmse_highernosat_pct < 0.03);
  CHECK(report.points[4].rmse_highernosat_pct < 0.03);
  CHECK(report.max_pct >= report.median_pct);

  // Noise-floor subtraction clamps at zero.
  const ValidationReport subtracted = validate_emulation(sweep, cycle, capture.crf, 5.0);
  for (const ValidationPoint& p : subtracted.points) CHECK(p.rmse_highernosat_pct == 0.0);
}
