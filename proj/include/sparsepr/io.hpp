#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "sparsepr/types.hpp"

namespace sparsepr {

// All writers go through a temp file in the target directory and rename on
// success, so a failed run never leaves partial output behind.
void atomic_write(const std::filesystem::path& path, const std::string& content);

// Signal CSV: "# n=<length>" pragma, "index,re,im" header, one sparse entry
// per row.
void write_signal_csv(const std::filesystem::path& path, const SparseSignal& x);
SparseSignal read_signal_csv(const std::filesystem::path& path);

// Autocorrelation CSV: "# n=<length>" pragma, "lag,re,im" header, all lags
// 0..n-1.
void write_autocorr_csv(const std::filesystem::path& path, const Autocorrelation& a);
Autocorrelation read_autocorr_csv(const std::filesystem::path& path);

// Integer-set files: one value per line, sorted ascending.
void write_set_file(const std::filesystem::path& path, const std::vector<Index>& elems);
std::vector<Index> read_set_file(const std::filesystem::path& path);

} // namespace sparsepr
