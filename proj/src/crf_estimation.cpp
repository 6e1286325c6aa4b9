#include "aebench/crf_estimation.hpp"

#include <Eigen/Sparse>
#include <algorithm>
#include <cmath>
#include <vector>

namespace aebench {

std::vector<double> isotonic_regression(const std::vector<double>& values,
                                        const std::vector<double>& weights) {
  if (values.size() != weights.size()) throw DomainError("isotonic inputs must match in size");
  struct Block {
    double mean;
    double weight;
    std::size_t count;
  };
  std::vector<Block> blocks;
  blocks.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    blocks.push_back({values[i], std::max(weights[i], 1e-12), 1});
    while (blocks.size() >= 2 && blocks[blocks.size() - 2].mean > blocks.back().mean) {
      const Block b = blocks.back();
      blocks.pop_back();
      Block& a = blocks.back();
      const double w = a.weight + b.weight;
      a.mean = (a.mean * a.weight + b.mean * b.weight) / w;
      a.weight = w;
      a.count += b.count;
    }
  }
  std::vector<double> out;
  out.reserve(values.size());
  for (const Block& b : blocks) out.insert(out.end(), b.count, b.mean);
  return out;
}

namespace {

double hat_weight(int dn) {
  const int d = std::min(dn, static_cast<int>(kDnMax) - dn);
  return static_cast<double>(d) / (kDnMax / 2.0);
}

std::vector<std::size_t> sample_grid_indices(int width, int height, int sample_count) {
  const int cols = std::max(
      1, static_cast<int>(std::ceil(std::sqrt(static_cast<double>(sample_count) * width /
                                              std::max(height, 1)))));
  const int rows = std::max(1, (sample_count + cols - 1) / cols);
  std::vector<std::size_t> indices;
  indices.reserve(static_cast<std::size_t>(sample_count));
  for (int r = 0; r < rows && static_cast<int>(indices.size()) < sample_count; ++r) {
    for (int c = 0; c < cols && static_cast<int>(indices.size()) < sample_count; ++c) {
      const int x = std::min(width - 1, static_cast<int>((c + 0.5) * width / cols));
      const int y = std::min(height - 1, static_cast<int>((r + 0.5) * height / rows));
      indices.push_back(static_cast<std::size_t>(y) * width + x);
    }
  }
  return indices;
}

}  // namespace

ResponseCurve estimate_inverse_crf(const CalibrationStack& stack, double lambda_smooth,
                                   int sample_count) {
  validate(stack);
  if (!(lambda_smooth > 0.0)) throw DomainError("lambda_smooth must be positive");
  if (sample_count < 32) throw DomainError("sample_count must be at least 32");

  const int width = stack.images.front().width;
  const int height = stack.images.front().height;
  const std::vector<std::size_t> grid = sample_grid_indices(width, height, sample_count);

  // Keep pixels with at least one unsaturated observation.
  std::vector<std::size_t> pixels;
  for (std::size_t idx : grid) {
    bool usable = false;
    for (const RawImage& img : stack.images) {
      const std::uint16_t dn = img.data[idx];
      if (dn != 0 && dn != kDnMax) {
        usable = true;
        break;
      }
    }
    if (usable) pixels.push_back(idx);
  }
  if (pixels.empty()) throw CalibrationError("degenerate stack: all sampled pixels saturated");

  const int n_bins = kLutSize;
  const int n_pixels = static_cast<int>(pixels.size());
  const int n_unknowns = n_bins + n_pixels;

  // Rows: one per unsaturated (pixel, exposure) pair, one per interior bin
  // for smoothness, one gauge anchor.
  std::vector<Eigen::Triplet<double>> triplets;
  std::vector<double> rhs;
  int row = 0;
  std::vector<char> observed(n_bins, 0);

  for (int p = 0; p < n_pixels; ++p) {
    for (const RawImage& img : stack.images) {
      const std::uint16_t dn = img.data[pixels[p]];
      if (dn == 0 || dn == kDnMax) continue;
      const double w = hat_weight(dn);
      if (w <= 0.0) continue;
      triplets.emplace_back(row, dn, w);
      triplets.emplace_back(row, n_bins + p, -w);
      rhs.push_back(w * std::log(img.exposure_us));
      observed[dn] = 1;
      ++row;
    }
  }
  if (row == 0) throw CalibrationError("degenerate stack: all sampled pixels saturated");

  for (int k = 1; k < n_bins - 1; ++k) {
    const double w = lambda_smooth * hat_weight(k);
    if (w <= 0.0) continue;
    triplets.emplace_back(row, k - 1, w);
    triplets.emplace_back(row, k, -2.0 * w);
    triplets.emplace_back(row, k + 1, w);
    rhs.push_back(0.0);
    ++row;
  }

  // Gauge: the log curve is determined up to an additive constant.
  int anchor = kLutSize / 2;
  {
    std::vector<int> obs_bins;
    for (int k = 0; k < n_bins; ++k)
      if (observed[k]) obs_bins.push_back(k);
    anchor = obs_bins[obs_bins.size() / 2];
  }
  triplets.emplace_back(row, anchor, 1.0);
  rhs.push_back(0.0);
  ++row;

  Eigen::SparseMatrix<double> a(row, n_unknowns);
  a.setFromTriplets(triplets.begin(), triplets.end());
  Eigen::VectorXd b = Eigen::Map<Eigen::VectorXd>(rhs.data(), row);

  const Eigen::SparseMatrix<double> normal = Eigen::SparseMatrix<double>(a.transpose()) * a;
  const Eigen::VectorXd normal_rhs = a.transpose() * b;
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver;
  solver.compute(normal);
  if (solver.info() != Eigen::Success)
    throw CalibrationError("CRF normal equations are singular");
  const Eigen::VectorXd solution = solver.solve(normal_rhs);

  // Exponentiate the observed bins, project to monotone, interpolate gaps.
  std::vector<int> obs_bins;
  std::vector<double> obs_values;
  std::vector<double> obs_weights;
  for (int k = 0; k < n_bins; ++k) {
    if (!observed[k]) continue;
    obs_bins.push_back(k);
    obs_values.push_back(std::exp(solution[k]));
    obs_weights.push_back(hat_weight(k));
  }
  const std::vector<double> mono = isotonic_regression(obs_values, obs_weights);

  std::vector<double> lut(n_bins, 0.0);
  const int first = obs_bins.front();
  const int last = obs_bins.back();
  for (std::size_t i = 0; i < obs_bins.size(); ++i) lut[obs_bins[i]] = mono[i];
  for (std::size_t i = 0; i + 1 < obs_bins.size(); ++i) {
    const int k0 = obs_bins[i];
    const int k1 = obs_bins[i + 1];
    for (int k = k0 + 1; k < k1; ++k)
      lut[k] = lut[k0] + (lut[k1] - lut[k0]) * (k - k0) / static_cast<double>(k1 - k0);
  }
  // Low tail ramps through zero; high tail extrapolates the last segment.
  for (int k = 0; k < first; ++k) lut[k] = lut[first] * k / static_cast<double>(first);
  double slope = first < last
                     ? (lut[last] - lut[obs_bins[obs_bins.size() - 2]]) /
                           static_cast<double>(last - obs_bins[obs_bins.size() - 2])
                     : lut[last] / std::max(last, 1);
  slope = std::max(slope, 0.0);
  for (int k = last + 1; k < n_bins; ++k) lut[k] = lut[last] + slope * (k - last);

  const double norm = lut[n_bins - 1];
  if (!(norm > 0.0)) throw CalibrationError("degenerate stack: estimated curve is flat");
  for (double& v : lut) v /= norm;
  lut[n_bins - 1] = 1.0;
  return ResponseCurve::from_lut(std::move(lut));
}

}  // namespace aebench
