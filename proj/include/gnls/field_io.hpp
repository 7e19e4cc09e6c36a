#pragma once

#include <iosfwd>
#include <string>

#include "gnls/field.hpp"

namespace gnls {

/// GNF1 field files. ASCII header
///
///   GNF1
///   n=<dim>
///   sizes=<N1,...>
///   L=<L1,...>
///   layout=interleaved-complex-f64-le
///   <blank line>
///
/// followed by the physical values, row-major, as little-endian IEEE doubles
/// with real and imaginary parts interleaved. Half-lengths are printed with 17
/// significant digits, so write followed by read is bit-exact.
void write_gnf(std::ostream& out, const Field& field);
void write_gnf(const std::string& path, const Field& field);

/// Throws FormatError with the byte offset of the first malformed byte.
Field read_gnf(std::istream& in);
Field read_gnf(const std::string& path);

/// Shortest-round-trip formatting used by every text output (17 significant digits).
std::string format_double(double v);

}  // namespace gnls
