#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "tec/tensor.hpp"

namespace tec {

/// Text record for one tensor:
///
///     tec-tensor 1
///     row_dims <I_1> ... <I_M>
///     col_dims <J_1> ... <J_N>
///     <re> <im>            (one line per entry, row-major over (i..., j...))
///
/// Numbers are written in shortest round-trip form, so read(write(X)) == X
/// bit for bit. Blank lines and lines starting with '#' are ignored.
void write_tensor(std::ostream& os, const Tensor& t);
Tensor read_tensor(std::istream& is, const std::string& source_name = "<stream>");

void save_tensor(const std::filesystem::path& path, const Tensor& t);
Tensor load_tensor(const std::filesystem::path& path);

/// Shortest decimal string that parses back to exactly `value`.
std::string format_double(double value);

}  // namespace tec
