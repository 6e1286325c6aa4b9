#include "aebench/pgm_io.hpp"

#include <cctype>
#include <string>

#include "aebench/fs_util.hpp"

namespace aebench {

void save_pgm16(const std::filesystem::path& path, const RawImage& img) {
  std::string out = "P5\n" + std::to_string(img.width) + " " + std::to_string(img.height) +
                    "\n" + std::to_string(static_cast<int>(kDnMax)) + "\n";
  out.reserve(out.size() + img.data.size() * 2);
  for (std::uint16_t dn : img.data) {
    out.push_back(static_cast<char>(dn >> 8));
    out.push_back(static_cast<char>(dn & 0xff));
  }
  atomic_write(path, out);
}

namespace {

// Reads the next whitespace-separated integer token, skipping '#' comments.
long next_header_int(const std::string& buf, std::size_t& pos, const std::filesystem::path& path) {
  while (pos < buf.size()) {
    if (std::isspace(static_cast<unsigned char>(buf[pos]))) {
      ++pos;
    } else if (buf[pos] == '#') {
      while (pos < buf.size() && buf[pos] != '\n') ++pos;
    } else {
      break;
    }
  }
  std::size_t start = pos;
  while (pos < buf.size() && std::isdigit(static_cast<unsigned char>(buf[pos]))) ++pos;
  if (pos == start) throw IoError("malformed PGM header in " + path.string());
  return std::stol(buf.substr(start, pos - start));
}

}  // namespace

RawImage load_pgm16(const std::filesystem::path& path) {
  const std::string buf = read_file(path);
  if (buf.size() < 2 || buf[0] != 'P' || buf[1] != '5')
    throw IoError("not a binary PGM (P5): " + path.string());
  std::size_t pos = 2;
  const long width = next_header_int(buf, pos, path);
  const long height = next_header_int(buf, pos, path);
  const long maxval = next_header_int(buf, pos, path);
  if (width <= 0 || height <= 0) throw IoError("bad PGM dimensions in " + path.string());
  if (maxval < 256 || maxval > 65535)
    throw IoError("expected two-byte PGM samples in " + path.string());
  if (pos >= buf.size() || !std::isspace(static_cast<unsigned char>(buf[pos])))
    throw IoError("malformed PGM header in " + path.string());
  ++pos;  // single whitespace byte separates header and payload

  const std::size_t expected = static_cast<std::size_t>(width) * height * 2;
  if (buf.size() - pos != expected)
    throw IoError("PGM payload size mismatch in " + path.string());

  RawImage img;
  img.width = static_cast<int>(width);
  img.height = static_cast<int>(height);
  img.exposure_us = 1.0;  // placeholder; manifest metadata overwrites it
  img.data.resize(static_cast<std::size_t>(width) * height);
  for (std::size_t i = 0; i < img.data.size(); ++i) {
    const std::uint16_t hi = static_cast<std::uint8_t>(buf[pos + 2 * i]);
    const std::uint16_t lo = static_cast<std::uint8_t>(buf[pos + 2 * i + 1]);
    const std::uint16_t dn = static_cast<std::uint16_t>((hi << 8) | lo);
    if (dn > kDnMax)
      throw IoError("digital number exceeds 4095 in " + path.string());
    img.data[i] = dn;
  }
  return img;
}

}  // namespace aebench
