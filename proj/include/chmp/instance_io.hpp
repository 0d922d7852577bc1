#ifndef CHMP_INSTANCE_IO_HPP
#define CHMP_INSTANCE_IO_HPP

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "chmp/instances.hpp"
#include "chmp/lp_feasibility.hpp"

namespace chmp {

namespace detail {

inline std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.16e", x);
  return buf;
}

inline void write_row(std::ostream& out, const auto& row) {
  for (Index i = 0; i < row.size(); ++i) {
    if (i > 0) out << ' ';
    out << format_double(row[i]);
  }
  out << '\n';
}

inline void read_row(std::istream& in, Index count, auto&& row, const char* what) {
  std::string line;
  if (!std::getline(in, line)) throw FormatError(std::string("missing ") + what + " line");
  std::istringstream ls(line);
  for (Index i = 0; i < count; ++i) {
    if (!(ls >> row[i])) throw FormatError(std::string("short ") + what + " line");
  }
  std::string extra;
  if (ls >> extra) throw FormatError(std::string("trailing data on ") + what + " line");
}

inline std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open '" + path + "'");
  return in;
}

inline std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write '" + path + "'");
  return out;
}

}  // namespace detail

/// "CHMP v1 m n", n lines of m coordinates, then "p" and the query.
inline void write_instance(std::ostream& out, const Instance& inst) {
  const Matrix& a = inst.points.matrix();
  out << "CHMP v1 " << a.rows() << ' ' << a.cols() << '\n';
  for (Index j = 0; j < a.cols(); ++j) detail::write_row(out, a.col(j));
  out << "p ";
  detail::write_row(out, inst.p);
}

inline Instance read_instance(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw FormatError("empty instance file");
  std::istringstream header(line);
  std::string magic, version;
  Index m = 0, n = 0;
  if (!(header >> magic >> version >> m >> n) || magic != "CHMP" || version != "v1") {
    throw FormatError("expected header 'CHMP v1 m n'");
  }
  if (m < 1 || n < 1) throw FormatError("instance dimensions must be positive");
  Matrix a(m, n);
  for (Index j = 0; j < n; ++j) detail::read_row(in, m, a.col(j), "column");
  if (!std::getline(in, line) || line.rfind("p ", 0) != 0) {
    throw FormatError("missing query line starting with 'p '");
  }
  std::istringstream rest(line.substr(2));
  Vector p(m);
  detail::read_row(rest, m, p, "query");
  return {PointSet(std::move(a)), std::move(p)};
}

inline void save_instance(const std::string& path, const Instance& inst) {
  auto out = detail::open_out(path);
  write_instance(out, inst);
}

inline Instance load_instance(const std::string& path) {
  auto in = detail::open_in(path);
  return read_instance(in);
}

/// "LPF v1 m n N", m rows of A, then b on one line.
inline void write_lp(std::ostream& out, const LpInstance& lp) {
  out << "LPF v1 " << lp.a.rows() << ' ' << lp.a.cols() << ' '
      << detail::format_double(lp.bound) << '\n';
  for (Index i = 0; i < lp.a.rows(); ++i) detail::write_row(out, lp.a.row(i));
  detail::write_row(out, lp.b);
}

inline LpInstance read_lp(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw FormatError("empty LP file");
  std::istringstream header(line);
  std::string magic, version;
  Index m = 0, n = 0;
  LpInstance lp;
  if (!(header >> magic >> version >> m >> n >> lp.bound) || magic != "LPF" ||
      version != "v1") {
    throw FormatError("expected header 'LPF v1 m n N'");
  }
  if (m < 1 || n < 1) throw FormatError("LP dimensions must be positive");
  lp.a.resize(m, n);
  for (Index i = 0; i < m; ++i) detail::read_row(in, n, lp.a.row(i), "matrix");
  lp.b.resize(m);
  detail::read_row(in, m, lp.b, "rhs");
  lp.validate();
  return lp;
}

inline void save_lp(const std::string& path, const LpInstance& lp) {
  auto out = detail::open_out(path);
  write_lp(out, lp);
}

inline LpInstance load_lp(const std::string& path) {
  auto in = detail::open_in(path);
  return read_lp(in);
}

}  // namespace chmp

#endif  // CHMP_INSTANCE_IO_HPP
