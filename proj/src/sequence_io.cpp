#include "aebench/sequence_io.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "aebench/fs_util.hpp"
#include "aebench/pgm_io.hpp"
#include "aebench/trajectory_io.hpp"

namespace aebench {

void save_sequence(const std::filesystem::path& dir, const RenderedSequence& sequence,
                   const ResponseCurve& crf) {
  namespace fs = std::filesystem;
  fs::create_directories(dir / "images");

  std::string frames = "frame_index,cycle_index,exposure_us,timestamp_ns,filename\n";
  std::size_t entry = 0;
  for (const BracketCycle& cycle : sequence.cycles) {
    for (const RawImage& img : cycle.images) {
      const FrameRecordEntry& rec = sequence.manifest.frames.at(entry++);
      save_pgm16(dir / rec.filename, img);
      frames += std::to_string(rec.frame_index);
      frames += ',';
      frames += std::to_string(rec.cycle_index);
      frames += ',';
      frames += format_double(rec.exposure_us);
      frames += ',';
      frames += std::to_string(rec.timestamp_ns);
      frames += ',';
      frames += rec.filename;
      frames += '\n';
    }
  }
  atomic_write(dir / "frames.csv", frames);
  save_crf_csv(dir / sequence.manifest.crf_file, crf);
  save_trajectory_tum(dir / sequence.manifest.trajectory_file, sequence.ground_truth);
}

LoadedSequence load_sequence(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  const fs::path manifest_path = dir / "frames.csv";
  if (!fs::exists(manifest_path)) throw IoError("missing manifest: " + manifest_path.string());

  std::istringstream in(read_file(manifest_path));
  std::string line;
  if (!std::getline(in, line) ||
      (line != "frame_index,cycle_index,exposure_us,timestamp_ns,filename" &&
       line != "frame_index,cycle_index,exposure_us,timestamp_ns,filename\r"))
    throw IoError("bad manifest header in " + manifest_path.string());

  LoadedSequence out;
  std::map<std::int64_t, BracketCycle> cycles;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    std::istringstream row(line);
    std::string field;
    FrameRecordEntry rec;
    try {
      std::getline(row, field, ',');
      rec.frame_index = std::stoll(field);
      std::getline(row, field, ',');
      rec.cycle_index = std::stoll(field);
      std::getline(row, field, ',');
      rec.exposure_us = std::stod(field);
      std::getline(row, field, ',');
      rec.timestamp_ns = std::stoll(field);
      if (!std::getline(row, rec.filename)) throw IoError("");
    } catch (const std::exception&) {
      throw IoError("malformed manifest row in " + manifest_path.string() + ": " + line);
    }
    if (!rec.filename.empty() && rec.filename.back() == '\r') rec.filename.pop_back();
    if (!out.manifest.frames.empty() &&
        rec.timestamp_ns <= out.manifest.frames.back().timestamp_ns)
      throw IoError("manifest records must be sorted by timestamp: " + manifest_path.string());

    const fs::path image_path = dir / rec.filename;
    if (!fs::exists(image_path)) throw IoError("missing image file: " + image_path.string());
    RawImage img = load_pgm16(image_path);
    img.exposure_us = rec.exposure_us;
    img.timestamp_ns = rec.timestamp_ns;
    img.frame_index = rec.frame_index;

    BracketCycle& cycle = cycles[rec.cycle_index];
    cycle.cycle_index = rec.cycle_index;
    cycle.images.push_back(std::move(img));
    cycle.ladder_us.push_back(rec.exposure_us);
    out.manifest.frames.push_back(std::move(rec));
  }
  if (cycles.empty()) throw IoError("manifest lists no frames: " + manifest_path.string());

  out.cycles.reserve(cycles.size());
  for (auto& [index, cycle] : cycles) {
    try {
      validate(cycle);
    } catch (const DomainError& e) {
      throw IoError("invalid cycle " + std::to_string(index) + " in " + dir.string() + ": " +
                    e.what());
    }
    out.cycles.push_back(std::move(cycle));
  }

  out.crf = load_crf_csv(dir / out.manifest.crf_file);
  out.ground_truth = load_trajectory_tum(dir / out.manifest.trajectory_file);
  return out;
}

}  // namespace aebench
