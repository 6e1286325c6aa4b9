#pragma once

#include <filesystem>

#include "aebench/response_curve.hpp"
#include "aebench/synth.hpp"

namespace aebench {

struct LoadedSequence {
  std::vector<BracketCycle> cycles;
  Trajectory ground_truth;
  ResponseCurve crf = ResponseCurve::linear();
  SequenceManifest manifest;
};

// Directory layout (also the ingestion contract for converted real data):
//   <dir>/frames.csv          frame_index,cycle_index,exposure_us,timestamp_ns,filename
//   <dir>/images/*.pgm        16-bit graymaps
//   <dir>/crf.csv             inverse response curve
//   <dir>/groundtruth.txt     reference trajectory
void save_sequence(const std::filesystem::path& dir, const RenderedSequence& sequence,
                   const ResponseCurve& crf);

// Round-trips save_sequence bit-exactly. Missing files, malformed rows,
// non-monotone CRFs and out-of-range samples raise typed IoErrors naming the
// offending path.
LoadedSequence load_sequence(const std::filesystem::path& dir);

}  // namespace aebench
