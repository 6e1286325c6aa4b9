#include "aebench/response_curve.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "aebench/fs_util.hpp"

namespace aebench {

ResponseCurve ResponseCurve::from_lut(std::vector<double> lut) {
  if (lut.size() != static_cast<std::size_t>(kLutSize))
    throw DomainError("inverse LUT must have 4096 entries");
  if (!(lut.front() >= 0.0)) throw DomainError("inverse_lut[0] must be >= 0");
  if (lut.back() != 1.0) throw DomainError("inverse_lut[4095] must equal 1.0");
  for (int i = 1; i < kLutSize; ++i)
    if (lut[i] < lut[i - 1])
      throw DomainError("inverse LUT must be monotone non-decreasing (violated at dn " +
                        std::to_string(i) + ")");
  ResponseCurve crf;
  crf.lut_ = std::move(lut);
  return crf;
}

ResponseCurve ResponseCurve::linear() {
  std::vector<double> lut(kLutSize);
  for (int d = 0; d < kLutSize; ++d) lut[d] = static_cast<double>(d) / kDnMax;
  return from_lut(std::move(lut));
}

ResponseCurve ResponseCurve::gamma(double g) {
  if (!(g > 0.0)) throw DomainError("gamma parameter must be positive");
  std::vector<double> lut(kLutSize);
  for (int d = 0; d < kLutSize; ++d) lut[d] = std::pow(static_cast<double>(d) / kDnMax, g);
  lut[kLutSize - 1] = 1.0;
  return from_lut(std::move(lut));
}

ResponseCurve ResponseCurve::s_curve(double a) {
  if (!(a > 0.0)) throw DomainError("s-curve parameter must be positive");
  auto logistic = [](double v) { return 1.0 / (1.0 + std::exp(-v)); };
  const double lo = logistic(-a / 2.0);
  const double hi = logistic(a / 2.0);
  std::vector<double> lut(kLutSize);
  for (int d = 0; d < kLutSize; ++d) {
    const double u = static_cast<double>(d) / kDnMax;
    lut[d] = (logistic(a * (u - 0.5)) - lo) / (hi - lo);
  }
  lut[0] = 0.0;
  lut[kLutSize - 1] = 1.0;
  return from_lut(std::move(lut));
}

double ResponseCurve::dn_to_exposure(std::uint16_t dn) const {
  if (dn > kDnMax) throw DomainError("digital number out of range: " + std::to_string(dn));
  return lut_[dn];
}

std::uint16_t ResponseCurve::exposure_to_dn(double x) const {
  if (!(x >= 0.0)) throw DomainError("relative exposure must be non-negative");
  if (x >= 1.0) return kDnMax;
  auto it = std::upper_bound(lut_.begin(), lut_.end(), x);
  if (it == lut_.begin()) return 0;
  return static_cast<std::uint16_t>((it - lut_.begin()) - 1);
}

ResponseCurve make_parametric_crf(CrfKind kind, double param) {
  switch (kind) {
    case CrfKind::kLinear: return ResponseCurve::linear();
    case CrfKind::kGamma: return ResponseCurve::gamma(param);
    case CrfKind::kSCurve: return ResponseCurve::s_curve(param);
  }
  throw DomainError("unknown CRF kind");
}

ResponseCurve load_crf_csv(const std::filesystem::path& path) {
  std::istringstream in(read_file(path));
  std::string line;
  if (!std::getline(in, line) || (line != "dn,inverse_exposure" && line != "dn,inverse_exposure\r"))
    throw IoError("bad CRF header in " + path.string());
  std::vector<double> lut;
  lut.reserve(kLutSize);
  int expected_dn = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    std::size_t comma = line.find(',');
    if (comma == std::string::npos) throw IoError("malformed CRF row in " + path.string());
    int dn = 0;
    double value = 0.0;
    try {
      dn = std::stoi(line.substr(0, comma));
      value = std::stod(line.substr(comma + 1));
    } catch (const std::exception&) {
      throw IoError("malformed CRF row in " + path.string());
    }
    if (dn != expected_dn)
      throw IoError("CRF rows must ascend from dn 0 in " + path.string());
    lut.push_back(value);
    ++expected_dn;
  }
  if (lut.size() != static_cast<std::size_t>(kLutSize))
    throw IoError("CRF file must contain 4096 rows: " + path.string());
  try {
    return ResponseCurve::from_lut(std::move(lut));
  } catch (const DomainError& e) {
    throw IoError("invalid CRF in " + path.string() + ": " + e.what());
  }
}

void save_crf_csv(const std::filesystem::path& path, const ResponseCurve& crf) {
  std::string out = "dn,inverse_exposure\n";
  const auto& lut = crf.inverse_lut();
  for (int d = 0; d < kLutSize; ++d) {
    out += std::to_string(d);
    out += ',';
    out += format_double(lut[d]);
    out += '\n';
  }
  atomic_write(path, out);
}

}  // namespace aebench
