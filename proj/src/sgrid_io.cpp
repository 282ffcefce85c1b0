#include <bit>
#include <cstdint>
#include <fstream>
#include <iterator>
#include <sstream>
#include <stdexcept>
#include <string>

#include "seistex/grid.hpp"

namespace seistex {

namespace {

constexpr const char* kMagic = "SGRID";

}  // namespace

std::vector<unsigned char> encode_sgrid(const SectionGrid& grid) {
  const std::string header = std::string(kMagic) + " 1 " +
                             std::to_string(grid.rows()) + " " +
                             std::to_string(grid.cols()) + "\n";
  std::vector<unsigned char> out(header.begin(), header.end());
  out.reserve(header.size() + grid.size() * 4);
  for (double v : grid.values()) {
    const auto bits = std::bit_cast<std::uint32_t>(static_cast<float>(v));
    for (int shift = 0; shift < 32; shift += 8) {
      out.push_back(static_cast<unsigned char>((bits >> shift) & 0xFFu));
    }
  }
  return out;
}

SectionGrid decode_sgrid(std::span<const unsigned char> bytes) {
  std::size_t eol = 0;
  while (eol < bytes.size() && bytes[eol] != '\n') ++eol;
  if (eol == bytes.size()) {
    throw std::runtime_error("SGRID: missing header line");
  }
  std::istringstream header(std::string(bytes.begin(), bytes.begin() + eol));
  std::string magic;
  int version = 0;
  long long rows = 0;
  long long cols = 0;
  if (!(header >> magic >> version >> rows >> cols) || magic != kMagic) {
    throw std::runtime_error("SGRID: malformed header");
  }
  if (version != 1) {
    throw std::runtime_error("SGRID: unsupported version " +
                             std::to_string(version));
  }
  if (rows < 1 || cols < 1 || rows > (1 << 20) || cols > (1 << 20)) {
    throw std::runtime_error("SGRID: invalid dimensions");
  }
  const std::size_t count = static_cast<std::size_t>(rows * cols);
  const std::size_t payload = bytes.size() - eol - 1;
  if (payload != count * 4) {
    throw std::runtime_error("SGRID: payload has " + std::to_string(payload) +
                             " bytes, expected " + std::to_string(count * 4));
  }
  std::vector<double> values(count);
  const unsigned char* p = bytes.data() + eol + 1;
  for (std::size_t i = 0; i < count; ++i, p += 4) {
    const std::uint32_t bits = static_cast<std::uint32_t>(p[0]) |
                               (static_cast<std::uint32_t>(p[1]) << 8) |
                               (static_cast<std::uint32_t>(p[2]) << 16) |
                               (static_cast<std::uint32_t>(p[3]) << 24);
    values[i] = std::bit_cast<float>(bits);
  }
  return SectionGrid(static_cast<int>(rows), static_cast<int>(cols),
                     std::move(values));
}

SectionGrid read_sgrid(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  try {
    return decode_sgrid(bytes);
  } catch (const std::runtime_error& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
}

void write_sgrid(const std::filesystem::path& path, const SectionGrid& grid) {
  const auto bytes = encode_sgrid(grid);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace seistex
