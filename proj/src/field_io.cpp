#include "gnls/field_io.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "gnls/error.hpp"

namespace gnls {
namespace {

constexpr const char* kMagic = "GNF1";
constexpr const char* kLayout = "interleaved-complex-f64-le";

std::uint64_t to_little_endian(std::uint64_t v) {
  if constexpr (std::endian::native == std::endian::big) {
    std::uint64_t r = 0;
    for (int i = 0; i < 8; ++i) r |= ((v >> (8 * i)) & 0xffu) << (8 * (7 - i));
    return r;
  }
  return v;
}

void put_double(std::ostream& out, double d) {
  const std::uint64_t le = to_little_endian(std::bit_cast<std::uint64_t>(d));
  char buf[8];
  std::memcpy(buf, &le, 8);
  out.write(buf, 8);
}

// Reads one '\n'-terminated header line, tracking the byte offset.
std::string header_line(std::istream& in, std::size_t& offset) {
  std::string line;
  const std::size_t start = offset;
  for (;;) {
    const int c = in.get();
    if (c == std::char_traits<char>::eof()) {
      throw FormatError("unexpected end of file in header", offset);
    }
    ++offset;
    if (c == '\n') break;
    if (line.size() > 4096) throw FormatError("header line too long", start);
    line.push_back(static_cast<char>(c));
  }
  return line;
}

std::string expect_key(const std::string& line, const std::string& key, std::size_t line_start) {
  const std::string prefix = key + "=";
  if (line.compare(0, prefix.size(), prefix) != 0) {
    throw FormatError("expected '" + prefix + "' header line", line_start);
  }
  return line.substr(prefix.size());
}

template <class T>
std::vector<T> parse_list(const std::string& text, std::size_t value_start) {
  std::vector<T> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    const std::string item = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    std::istringstream is(item);
    T value{};
    if (item.empty() || !(is >> value) || !is.eof()) {
      throw FormatError("malformed list entry '" + item + "'", value_start + pos);
    }
    out.push_back(value);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

template <class T>
std::string join(const std::vector<T>& values) {
  std::string s;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) s += ',';
    if constexpr (std::is_floating_point_v<T>) {
      s += format_double(values[i]);
    } else {
      s += std::to_string(values[i]);
    }
  }
  return s;
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_gnf(std::ostream& out, const Field& field) {
  const Grid& g = field.grid();
  std::vector<int> sizes;
  std::vector<double> lengths;
  for (int a = 0; a < g.dim(); ++a) {
    sizes.push_back(g.size(a));
    lengths.push_back(g.half_length(a));
  }
  out << kMagic << '\n'
      << "n=" << g.dim() << '\n'
      << "sizes=" << join(sizes) << '\n'
      << "L=" << join(lengths) << '\n'
      << "layout=" << kLayout << '\n'
      << '\n';
  for (cplx z : field.physical()) {
    put_double(out, z.real());
    put_double(out, z.imag());
  }
  if (!out) throw Error("failed writing GNF1 data");
}

void write_gnf(const std::string& path, const Field& field) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  write_gnf(out, field);
}

Field read_gnf(std::istream& in) {
  std::size_t offset = 0;
  std::size_t line_start = offset;
  if (header_line(in, offset) != kMagic) throw FormatError("missing GNF1 magic", line_start);

  line_start = offset;
  const std::string dim_text = expect_key(header_line(in, offset), "n", line_start);
  const auto dims = parse_list<int>(dim_text, line_start + 2);
  if (dims.size() != 1 || dims[0] < 1 || dims[0] > Grid::kMaxDim) {
    throw FormatError("dimension must be 1, 2 or 3", line_start + 2);
  }
  const int dim = dims[0];

  line_start = offset;
  const auto sizes = parse_list<int>(expect_key(header_line(in, offset), "sizes", line_start),
                                     line_start + 6);
  if (static_cast<int>(sizes.size()) != dim) {
    throw FormatError("sizes must list one entry per axis", line_start + 6);
  }

  line_start = offset;
  const auto lengths = parse_list<double>(expect_key(header_line(in, offset), "L", line_start),
                                          line_start + 2);
  if (static_cast<int>(lengths.size()) != dim) {
    throw FormatError("L must list one entry per axis", line_start + 2);
  }

  line_start = offset;
  if (expect_key(header_line(in, offset), "layout", line_start) != kLayout) {
    throw FormatError("unsupported layout", line_start + 7);
  }
  line_start = offset;
  if (!header_line(in, offset).empty()) throw FormatError("expected blank line after header", line_start);

  Grid grid;
  try {
    grid = Grid(dim, sizes, lengths);
  } catch (const InvalidArgument& e) {
    throw FormatError(std::string("invalid grid: ") + e.what(), line_start);
  }

  std::vector<cplx> values(grid.total());
  char buf[16];
  for (auto& z : values) {
    in.read(buf, 16);
    if (in.gcount() != 16) throw FormatError("truncated data section", offset + static_cast<std::size_t>(in.gcount()));
    std::uint64_t re = 0, im = 0;
    std::memcpy(&re, buf, 8);
    std::memcpy(&im, buf + 8, 8);
    z = {std::bit_cast<double>(to_little_endian(re)), std::bit_cast<double>(to_little_endian(im))};
    offset += 16;
  }
  if (in.peek() != std::char_traits<char>::eof()) throw FormatError("trailing bytes after data", offset);
  return Field::from_physical(grid, std::move(values));
}

Field read_gnf(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  return read_gnf(in);
}

}  // namespace gnls
