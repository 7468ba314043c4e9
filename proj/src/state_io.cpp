#include "tripartite/state_io.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace tripartite {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double parse_real(std::string_view s, std::string_view whole) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    throw std::invalid_argument("malformed complex entry '" + std::string(whole) + "'");
  return v;
}

// Coefficient of an imaginary term such as "2.5", "-", "+" or "".
double parse_imaginary(std::string_view s, std::string_view whole) {
  if (s.empty() || s == "+") return 1.0;
  if (s == "-") return -1.0;
  return parse_real(s, whole);
}

}  // namespace

Complex parse_complex(std::string_view text) {
  const std::string_view s = trim(text);
  if (s.empty()) throw std::invalid_argument("empty matrix entry");
  if (s.back() != 'i' && s.back() != 'j') return {parse_real(s, text), 0.0};

  const std::string_view body = s.substr(0, s.size() - 1);
  // The split is the last sign that is neither leading nor an exponent sign.
  std::size_t split = std::string_view::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  if (split == std::string_view::npos) return {0.0, parse_imaginary(body, text)};
  return {parse_real(body.substr(0, split), text), parse_imaginary(body.substr(split), text)};
}

DenseOperator read_matrix(std::istream& is) {
  std::vector<std::vector<Complex>> rows;
  std::string line;
  while (std::getline(is, line)) {
    const std::string_view t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    std::vector<Complex> row;
    std::size_t start = 0;
    for (;;) {
      const auto pos = t.find(',', start);
      row.push_back(parse_complex(t.substr(start, pos == std::string_view::npos ? pos : pos - start)));
      if (pos == std::string_view::npos) break;
      start = pos + 1;
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::invalid_argument("matrix file is empty");
  const auto n = static_cast<Eigen::Index>(rows.size());
  DenseOperator m(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    if (static_cast<Eigen::Index>(rows[r].size()) != n)
      throw std::invalid_argument("matrix row " + std::to_string(r + 1) + " has " +
                                  std::to_string(rows[r].size()) + " entries, expected " + std::to_string(n));
    for (Eigen::Index c = 0; c < n; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

DensityMatrix read_density_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open matrix file '" + path + "'");
  DenseOperator m = read_matrix(in);
  if (m.rows() != 8) throw std::invalid_argument("expected an 8x8 matrix, got " + std::to_string(m.rows()) + " rows");
  return DensityMatrix(std::move(m));
}

void write_matrix(std::ostream& os, const DenseOperator& m) {
  char buf[96];
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      const Complex z = m(r, c);
      std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.real(), z.imag());
      os << (c ? "," : "") << buf;
    }
    os << '\n';
  }
}

}  // namespace tripartite
