/// @file field_io.hpp
/// @brief Field file formats.
///
/// Binary container "PQGF", little-endian, version 1:
///   bytes 0..3   magic "PQGF"
///   u32          version (= 1)
///   u32 x3       n1, n2, n3
///   f64 x3       L1, L2, L3
///   u8           mean_zero flag
///   f64 x n1*n2*n3   values, row-major with x3 fastest (grid.hpp order)
///
/// CSV interop: rows "x1,x2,x3,value" in storage order with a header line.
/// Writes are atomic (temp file + rename).

#pragma once

#include <string>

#include "pqg/field.hpp"

namespace pqg {

void write_field(const std::string& path, const ScalarField& f);
ScalarField read_field(const std::string& path);

void write_field_csv(const std::string& path, const ScalarField& f);
/// Reads a CSV produced by write_field_csv; the grid must be supplied (the
/// row format does not carry periods).
ScalarField read_field_csv(const std::string& path, const GridSpec& grid);

/// Two-column CSV (y, phi) used for tabulated mollifier profiles.
void write_profile_csv(const std::string& path,
                       const std::vector<double>& xs,
                       const std::vector<double>& ys,
                       const std::string& header = "y,phi");
void read_profile_csv(const std::string& path,
                      std::vector<double>& xs,
                      std::vector<double>& ys);

/// Writes `content` to `path` via a temp file + rename.
void write_text_atomic(const std::string& path, const std::string& content);

} // namespace pqg
