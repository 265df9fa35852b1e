#include "fdw/trajectory_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "fdw/errors.hpp"

namespace fdw {

namespace {

std::vector<double> parse_row(const std::string& line, const std::string& where) {
  std::vector<double> out;
  const char* p = line.data();
  const char* end = p + line.size();
  while (p < end) {
    double v = 0.0;
    auto [next, ec] = std::from_chars(p, end, v);
    if (ec != std::errc{}) {
      const std::string token(p, std::find(p, end, ','));
      if (token == "nan" || token == "inf" || token == "-inf") {
        v = token == "nan" ? std::nan("") : (token[0] == '-' ? -INFINITY : INFINITY);
        next = p + token.size();
      } else {
        throw InvalidInput(where + ": cannot parse '" + token + "'");
      }
    }
    out.push_back(v);
    p = next;
    if (p < end) {
      if (*p != ',') throw InvalidInput(where + ": expected ','");
      ++p;
    }
  }
  return out;
}

void write_text(const std::string& text, const std::filesystem::path& path) {
  std::ofstream os(path);
  if (!os) throw InvalidInput("cannot open " + path.string() + " for writing");
  os << text;
  if (!os) throw InvalidInput("write to " + path.string() + " failed");
}

std::vector<std::string> read_lines(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw InvalidInput("cannot open " + path.string());
  std::vector<std::string> lines;
  for (std::string line; std::getline(is, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) return "nan";
  return std::string(buf, end);
}

std::string trajectory_csv(const std::vector<NormRow>& rows) {
  std::ostringstream os;
  os << kTrajectoryHeader << '\n';
  for (const auto& r : rows) {
    os << format_double(r.t) << ',' << format_double(r.l2) << ',' << format_double(r.linf) << ','
       << format_double(r.hs) << ',' << format_double(r.weighted_alpha) << ',' << format_double(r.energy) << '\n';
  }
  return os.str();
}

void write_trajectory_csv(const std::vector<NormRow>& rows, const std::filesystem::path& path) {
  write_text(trajectory_csv(rows), path);
}

std::vector<NormRow> read_trajectory_csv(const std::filesystem::path& path) {
  const auto lines = read_lines(path);
  if (lines.empty() || lines[0] != kTrajectoryHeader) {
    throw InvalidInput(path.string() + ":1: expected header '" + kTrajectoryHeader + "'");
  }
  std::vector<NormRow> rows;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const auto where = path.string() + ":" + std::to_string(i + 1);
    const auto v = parse_row(lines[i], where);
    if (v.size() != 6) throw InvalidInput(where + ": expected 6 columns");
    rows.push_back({v[0], v[1], v[2], v[3], v[4], v[5]});
  }
  return rows;
}

std::string field_csv(const RealField& f) {
  const Grid& g = f.grid();
  std::ostringstream os;
  for (int a = 0; a < g.dim(); ++a) os << 'x' << (a + 1) << ',';
  os << "value\n";
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto x = g.position(i);
    for (int a = 0; a < g.dim(); ++a) os << format_double(x[a]) << ',';
    os << format_double(f[i]) << '\n';
  }
  return os.str();
}

void write_field_csv(const RealField& f, const std::filesystem::path& path) { write_text(field_csv(f), path); }

RealField read_field_csv(const std::filesystem::path& path) {
  const auto lines = read_lines(path);
  if (lines.empty()) throw InvalidInput(path.string() + ": empty field file");
  int dim = 0;
  if (lines[0] == "x1,value") dim = 1;
  else if (lines[0] == "x1,x2,value") dim = 2;
  else if (lines[0] == "x1,x2,x3,value") dim = 3;
  else throw InvalidInput(path.string() + ":1: expected header 'x1[,x2[,x3]],value'");

  std::vector<std::vector<double>> rows;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const auto where = path.string() + ":" + std::to_string(i + 1);
    auto v = parse_row(lines[i], where);
    if (static_cast<int>(v.size()) != dim + 1) throw InvalidInput(where + ": expected " + std::to_string(dim + 1) + " columns");
    rows.push_back(std::move(v));
  }
  const double root = std::round(std::pow(static_cast<double>(rows.size()), 1.0 / dim));
  const int N = static_cast<int>(root);
  if (N < 2 || static_cast<std::size_t>(std::pow(N, dim)) != rows.size()) {
    throw InvalidInput(path.string() + ": sample count is not a perfect power of the dimension");
  }
  const double L = -rows.front()[0];
  const Grid grid(dim, N, L);
  RealField f(grid);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto x = grid.position(i);
    for (int a = 0; a < dim; ++a) {
      if (std::abs(rows[i][a] - x[a]) > 1e-9 * grid.spacing()) {
        throw InvalidInput(path.string() + ":" + std::to_string(i + 2) + ": coordinate does not match grid order");
      }
    }
    f[i] = rows[i][dim];
  }
  return f;
}

}  // namespace fdw
