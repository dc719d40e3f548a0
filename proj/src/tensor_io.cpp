#include "tec/tensor_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "tec/errors.hpp"

namespace tec {

namespace {

[[noreturn]] void fail(const std::string& source, std::size_t line, const std::string& what) {
  throw ConfigError(source + ":" + std::to_string(line) + ": " + what);
}

// Next non-blank, non-comment line.
bool next_line(std::istream& is, std::string& line, std::size_t& line_no) {
  while (std::getline(is, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    return true;
  }
  return false;
}

std::vector<std::size_t> parse_dims(const std::string& line, const std::string& key, const std::string& source,
                                    std::size_t line_no) {
  std::istringstream ls(line);
  std::string word;
  ls >> word;
  if (word != key) fail(source, line_no, "expected '" + key + "'");
  std::vector<std::size_t> dims;
  long long d = 0;
  while (ls >> d) {
    if (d < 1) fail(source, line_no, "dimension must be >= 1");
    dims.push_back(static_cast<std::size_t>(d));
  }
  if (!ls.eof()) fail(source, line_no, "malformed dimension list");
  if (dims.empty()) fail(source, line_no, "empty dimension list");
  return dims;
}

double parse_double(std::string_view token, const std::string& source, std::size_t line_no) {
  double value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    fail(source, line_no, "bad number '" + std::string(token) + "'");
  }
  return value;
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) throw Error("cannot format double");
  return {buf, ptr};
}

void write_tensor(std::ostream& os, const Tensor& t) {
  os << "tec-tensor 1\nrow_dims";
  for (auto d : t.shape().row_dims()) os << ' ' << d;
  os << "\ncol_dims";
  for (auto d : t.shape().col_dims()) os << ' ' << d;
  os << '\n';
  for (const Complex& z : t.entries()) os << format_double(z.real()) << ' ' << format_double(z.imag()) << '\n';
}

Tensor read_tensor(std::istream& is, const std::string& source_name) {
  std::string line;
  std::size_t line_no = 0;
  if (!next_line(is, line, line_no) || line.rfind("tec-tensor 1", 0) != 0) {
    fail(source_name, line_no, "missing 'tec-tensor 1' header");
  }
  if (!next_line(is, line, line_no)) fail(source_name, line_no, "missing row_dims");
  auto rows = parse_dims(line, "row_dims", source_name, line_no);
  if (!next_line(is, line, line_no)) fail(source_name, line_no, "missing col_dims");
  auto cols = parse_dims(line, "col_dims", source_name, line_no);
  TensorShape shape(std::move(rows), std::move(cols));

  std::vector<Complex> entries;
  entries.reserve(shape.size());
  while (entries.size() < shape.size()) {
    if (!next_line(is, line, line_no)) {
      fail(source_name, line_no,
           "expected " + std::to_string(shape.size()) + " entries, found " + std::to_string(entries.size()));
    }
    std::istringstream ls(line);
    std::string re, im, extra;
    if (!(ls >> re >> im) || (ls >> extra)) fail(source_name, line_no, "entry line must be '<re> <im>'");
    entries.emplace_back(parse_double(re, source_name, line_no), parse_double(im, source_name, line_no));
  }
  if (next_line(is, line, line_no)) fail(source_name, line_no, "trailing data after last entry");
  return Tensor::from_entries(std::move(shape), entries);
}

void save_tensor(const std::filesystem::path& path, const Tensor& t) {
  std::ofstream os(path);
  if (!os) throw Error("cannot open " + path.string() + " for writing");
  write_tensor(os, t);
  if (!os) throw Error("write failed: " + path.string());
}

Tensor load_tensor(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open tensor file " + path.string());
  return read_tensor(is, path.string());
}

}  // namespace tec
