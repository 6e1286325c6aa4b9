#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "aebench/image.hpp"

namespace aebench {

// Monotone inverse camera response: one relative-exposure value per digital
// number. The table is normalized so that inverse_lut[4095] == 1.
class ResponseCurve {
public:
  // Validates all invariants: size 4096, monotone non-decreasing,
  // inverse_lut[0] >= 0 and inverse_lut[4095] == 1. Throws DomainError.
  static ResponseCurve from_lut(std::vector<double> lut);

  static ResponseCurve linear();
  static ResponseCurve gamma(double g);    // inverse_lut[d] = (d/4095)^g, g > 0
  static ResponseCurve s_curve(double a);  // logistic-shaped, sharpness a > 0

  // Relative exposure collected at a digital number. Throws DomainError for
  // dn > 4095.
  double dn_to_exposure(std::uint16_t dn) const;

  // Largest dn whose table entry does not exceed x; saturates to 4095 for
  // x >= 1. Throws DomainError for x < 0 or NaN.
  std::uint16_t exposure_to_dn(double x) const;

  const std::vector<double>& inverse_lut() const { return lut_; }

private:
  ResponseCurve() = default;
  std::vector<double> lut_;
};

enum class CrfKind { kLinear, kGamma, kSCurve };

ResponseCurve make_parametric_crf(CrfKind kind, double param = 0.0);

// CSV format: header "dn,inverse_exposure", 4096 rows with dn ascending.
// The loader re-validates every curve invariant and rejects non-monotone
// files with IoError.
ResponseCurve load_crf_csv(const std::filesystem::path& path);
void save_crf_csv(const std::filesystem::path& path, const ResponseCurve& crf);

}  // namespace aebench
