// Copyright 2026 The admm-forge Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "admm_forge/lp.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <unordered_map>

#include "log.hpp"

namespace admmforge {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Conventional MPS stand-in for infinity.
constexpr double kMpsInfinity = 1e30;

std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> out;
  for (std::string t; ss >> t;) out.push_back(t);
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string field(const std::string& line, size_t from, size_t to) {
  if (line.size() <= from) return "";
  return trim(line.substr(from, to - from));
}

// Classic fixed-column layout: type, name1, name2, number1, name3, number2.
std::vector<std::string> split_fixed(const std::string& line) {
  return {field(line, 1, 3),   field(line, 4, 12),  field(line, 14, 22),
          field(line, 24, 36), field(line, 39, 47), field(line, 49, 61)};
}

std::string upper(std::string s) {
  for (auto& ch : s) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  return s;
}

enum class Section { None, Name, ObjSense, Rows, Columns, Rhs, Ranges, Bounds, End };

std::optional<Section> section_of(const std::string& kw) {
  static const std::map<std::string, Section> table = {
      {"NAME", Section::Name},     {"OBJSENSE", Section::ObjSense}, {"ROWS", Section::Rows},
      {"COLUMNS", Section::Columns}, {"RHS", Section::Rhs},         {"RANGES", Section::Ranges},
      {"BOUNDS", Section::Bounds}, {"ENDATA", Section::End}};
  auto it = table.find(upper(kw));
  if (it == table.end()) return std::nullopt;
  return it->second;
}

struct Parser {
  std::string source;
  MpsFormat format = MpsFormat::Free;
  int line_no = 0;

  LpData lp;
  bool rows_seen = false;
  bool objective_found = false;
  std::vector<char> row_type;
  std::unordered_map<std::string, int> row_index;  // -1 = objective
  std::unordered_map<std::string, int> col_index;
  std::map<std::pair<int, int>, size_t> entry_pos;
  std::vector<double> rhs, range;
  std::vector<bool> has_range;
  std::vector<bool> lower_set;
  bool in_integer_block = false;
  bool warned_integer = false;

  [[noreturn]] void fail(const std::string& what) const { throw MpsError(source, line_no, what); }

  double number(const std::string& tok) const {
    if (tok.empty()) fail("missing numeric value");
    errno = 0;
    char* end = nullptr;
    double v = std::strtod(tok.c_str(), &end);
    if (end == tok.c_str() || *end != '\0' || std::isnan(v)) fail("invalid number '" + tok + "'");
    if (v >= kMpsInfinity) return kInf;
    if (v <= -kMpsInfinity) return -kInf;
    return v;
  }

  int row(const std::string& name) const {
    auto it = row_index.find(name);
    if (it == row_index.end()) fail("unknown row '" + name + "'");
    return it->second;
  }

  int col(const std::string& name) const {
    auto it = col_index.find(name);
    if (it == col_index.end()) fail("unknown column '" + name + "'");
    return it->second;
  }

  void need_rows(const char* section) const {
    if (!rows_seen) fail(std::string("missing ROWS section before ") + section);
  }

  void add_row(const std::string& type, const std::string& name) {
    if (type.size() != 1 || std::string("NELG").find(static_cast<char>(std::toupper(type[0]))) == std::string::npos) {
      fail("invalid row type '" + type + "'");
    }
    if (name.empty()) fail("row without a name");
    if (row_index.count(name)) fail("duplicate row '" + name + "'");
    const char t = static_cast<char>(std::toupper(type[0]));
    if (t == 'N' && !objective_found) {
      objective_found = true;
      lp.objective_name = name;
      row_index[name] = -1;
      return;
    }
    row_index[name] = lp.rows++;
    lp.row_names.push_back(name);
    row_type.push_back(t);
  }

  int column(const std::string& name) {
    auto it = col_index.find(name);
    if (it != col_index.end()) return it->second;
    const int j = lp.cols++;
    col_index[name] = j;
    lp.col_names.push_back(name);
    lp.is_integer.push_back(in_integer_block);
    if (in_integer_block && !warned_integer) {
      log::warn("{}: integrality markers ignored, solving the LP relaxation", source);
      warned_integer = true;
    }
    return j;
  }

  void coefficient(int j, const std::string& row_name, const std::string& value) {
    const int r = row(row_name);
    const double v = number(value);
    if (std::isinf(v)) fail("infinite coefficient");
    if (r < 0) {
      obj_coef.resize(lp.cols, 0.0);
      obj_coef[j] = v;
      return;
    }
    if (entry_pos.count({r, j})) fail("duplicate entry for row '" + row_name + "'");
    if (v == 0.0) return;
    entry_pos[{r, j}] = lp.triplets.size();
    lp.triplets.push_back({r, j, v});
  }
  std::vector<double> obj_coef;

  void columns_line(const std::string& line) {
    const auto toks = split_ws(line);
    const bool marker = std::any_of(toks.begin(), toks.end(), [](const std::string& t) {
      return upper(t) == "'MARKER'";
    });
    if (marker) {
      const std::string kind = upper(toks.back());
      if (kind == "'INTORG'") {
        in_integer_block = true;
      } else if (kind == "'INTEND'") {
        in_integer_block = false;
      } else {
        fail("unknown marker " + toks.back());
      }
      return;
    }
    std::string name;
    std::vector<std::pair<std::string, std::string>> pairs;
    if (format == MpsFormat::Fixed) {
      const auto f = split_fixed(line);
      name = f[1];
      pairs.emplace_back(f[2], f[3]);
      if (!f[4].empty()) pairs.emplace_back(f[4], f[5]);
    } else {
      if (toks.size() != 3 && toks.size() != 5) fail("COLUMNS line needs 3 or 5 fields");
      name = toks[0];
      pairs.emplace_back(toks[1], toks[2]);
      if (toks.size() == 5) pairs.emplace_back(toks[3], toks[4]);
    }
    if (name.empty()) fail("column without a name");
    const int j = column(name);
    for (const auto& [r, v] : pairs) coefficient(j, r, v);
  }

  // RHS and RANGES share the layout [set] row value [row value].
  std::vector<std::pair<std::string, std::string>> vector_pairs(const std::string& line) const {
    std::vector<std::pair<std::string, std::string>> pairs;
    if (format == MpsFormat::Fixed) {
      const auto f = split_fixed(line);
      pairs.emplace_back(f[2], f[3]);
      if (!f[4].empty()) pairs.emplace_back(f[4], f[5]);
      return pairs;
    }
    const auto toks = split_ws(line);
    size_t start = 0;
    if (toks.size() == 3 || toks.size() == 5) {
      start = 1;
    } else if (toks.size() != 2 && toks.size() != 4) {
      fail("expected [set] row value [row value]");
    }
    for (size_t i = start; i + 1 < toks.size(); i += 2) pairs.emplace_back(toks[i], toks[i + 1]);
    return pairs;
  }

  void rhs_line(const std::string& line) {
    for (const auto& [name, value] : vector_pairs(line)) {
      const int r = row(name);
      const double v = number(value);
      if (r < 0) {
        lp.obj_constant = -v;
      } else {
        rhs[r] = v;
      }
    }
  }

  void ranges_line(const std::string& line) {
    for (const auto& [name, value] : vector_pairs(line)) {
      const int r = row(name);
      if (r < 0) fail("RANGES on the objective row");
      if (row_type[r] == 'N') fail("RANGES on free row '" + name + "'");
      range[r] = number(value);
      has_range[r] = true;
    }
  }

  void bounds_line(const std::string& line) {
    std::string type, name, value;
    if (format == MpsFormat::Fixed) {
      const auto f = split_fixed(line);
      type = upper(f[0]);
      name = f[2];
      value = f[3];
    } else {
      const auto toks = split_ws(line);
      if (toks.empty()) return;
      type = upper(toks[0]);
      const bool valued = type == "UP" || type == "LO" || type == "FX" || type == "LI" || type == "UI";
      if (valued) {
        if (toks.size() == 4) {
          name = toks[2];
          value = toks[3];
        } else if (toks.size() == 3) {
          name = toks[1];
          value = toks[2];
        } else {
          fail("bound " + type + " needs [set] column value");
        }
      } else {
        if (toks.size() == 3 || toks.size() == 4) {
          name = toks[2];
        } else if (toks.size() == 2) {
          name = toks[1];
        } else {
          fail("bound " + type + " needs [set] column");
        }
      }
    }
    const int j = col(name);
    auto upper_bound = [&](double v) {
      if (v < 0 && !lower_set[j]) {
        lp.l[j] = -kInf;
        log::warn("{}:{}: negative upper bound on '{}' with default lower bound, lower set to -inf", source,
                  line_no, name);
      }
      lp.u[j] = v;
    };
    if (type == "UP") {
      upper_bound(number(value));
    } else if (type == "LO") {
      lp.l[j] = number(value);
      lower_set[j] = true;
    } else if (type == "FX") {
      lp.l[j] = lp.u[j] = number(value);
      lower_set[j] = true;
    } else if (type == "FR") {
      lp.l[j] = -kInf;
      lp.u[j] = kInf;
      lower_set[j] = true;
    } else if (type == "MI") {
      lp.l[j] = -kInf;
      lower_set[j] = true;
    } else if (type == "PL") {
      lp.u[j] = kInf;
    } else if (type == "BV") {
      lp.l[j] = 0.0;
      lp.u[j] = 1.0;
      lower_set[j] = true;
      lp.is_integer[j] = true;
    } else if (type == "LI") {
      lp.l[j] = number(value);
      lower_set[j] = true;
      lp.is_integer[j] = true;
    } else if (type == "UI") {
      upper_bound(number(value));
      lp.is_integer[j] = true;
    } else {
      fail("unknown bound type '" + type + "'");
    }
  }

  void start_vectors() {
    rhs.assign(lp.rows, 0.0);
    range.assign(lp.rows, 0.0);
    has_range.assign(lp.rows, false);
    lp.c = Vector::Zero(lp.cols);
    obj_coef.resize(lp.cols, 0.0);
    for (int j = 0; j < lp.cols; ++j) lp.c[j] = obj_coef[j];
    lp.l = Vector::Zero(lp.cols);
    lp.u = Vector::Constant(lp.cols, kInf);
    lower_set.assign(lp.cols, false);
  }

  void finish() {
    lp.b_lo.resize(lp.rows);
    lp.b_hi.resize(lp.rows);
    for (int r = 0; r < lp.rows; ++r) {
      const double b = rhs[r], R = range[r];
      double lo = -kInf, hi = kInf;
      switch (row_type[r]) {
        case 'E':
          lo = hi = b;
          if (has_range[r]) {
            if (R >= 0) {
              hi = b + R;
            } else {
              lo = b + R;
            }
          }
          break;
        case 'L':
          hi = b;
          if (has_range[r]) lo = b - std::abs(R);
          break;
        case 'G':
          lo = b;
          if (has_range[r]) hi = b + std::abs(R);
          break;
        default:
          break;
      }
      lp.b_lo[r] = lo;
      lp.b_hi[r] = hi;
    }
  }
};

std::string fmt_num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

MpsError::MpsError(const std::string& source, int line, const std::string& what)
    : std::runtime_error(source + ":" + std::to_string(line) + ": " + what), line_(line) {}

SparseMatrix LpData::matrix() const {
  std::vector<Eigen::Triplet<double>> t;
  t.reserve(triplets.size());
  for (const auto& e : triplets) t.emplace_back(e.row, e.col, e.value);
  SparseMatrix m(rows, cols);
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

bool LpData::operator==(const LpData& o) const {
  auto sorted = [](std::vector<Triplet> t) {
    std::sort(t.begin(), t.end(), [](const Triplet& a, const Triplet& b) {
      return std::tie(a.row, a.col) < std::tie(b.row, b.col);
    });
    return t;
  };
  const auto ta = sorted(triplets), tb = sorted(o.triplets);
  if (ta.size() != tb.size()) return false;
  for (size_t i = 0; i < ta.size(); ++i) {
    if (ta[i].row != tb[i].row || ta[i].col != tb[i].col || ta[i].value != tb[i].value) return false;
  }
  return name == o.name && objective_name == o.objective_name && row_names == o.row_names &&
         col_names == o.col_names && rows == o.rows && cols == o.cols && c == o.c &&
         obj_constant == o.obj_constant && l == o.l && u == o.u && b_lo == o.b_lo && b_hi == o.b_hi &&
         is_integer == o.is_integer && maximize == o.maximize;
}

LpData read_mps(std::istream& in, MpsFormat format, const std::string& source) {
  Parser p;
  p.source = source;
  p.format = format;
  Section section = Section::None;
  bool vectors_ready = false;
  auto ensure_vectors = [&]() {
    if (!vectors_ready) {
      p.start_vectors();
      vectors_ready = true;
    }
  };
  std::string line;
  while (std::getline(in, line)) {
    ++p.line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '*' || trim(line).empty()) continue;
    if (!std::isspace(static_cast<unsigned char>(line[0]))) {
      const auto toks = split_ws(line);
      const auto s = section_of(toks[0]);
      if (!s) p.fail("unknown section '" + toks[0] + "'");
      section = *s;
      switch (section) {
        case Section::Name:
          p.lp.name = trim(line.substr(toks[0].size()));
          break;
        case Section::ObjSense:
          if (toks.size() > 1) {
            const auto sense = upper(toks[1]);
            if (sense == "MAX" || sense == "MAXIMIZE") {
              p.lp.maximize = true;
            } else if (sense != "MIN" && sense != "MINIMIZE") {
              p.fail("unknown objective sense '" + toks[1] + "'");
            }
          }
          break;
        case Section::Rows:
          p.rows_seen = true;
          break;
        case Section::Columns:
          p.need_rows("COLUMNS");
          break;
        case Section::Rhs:
        case Section::Ranges:
        case Section::Bounds:
          p.need_rows(toks[0].c_str());
          ensure_vectors();
          break;
        case Section::End:
          break;
        case Section::None:
          break;
      }
      if (section == Section::End) break;
      continue;
    }
    switch (section) {
      case Section::None:
      case Section::Name:
        p.fail("data outside of a section");
      case Section::ObjSense: {
        const auto sense = upper(trim(line));
        if (sense == "MAX" || sense == "MAXIMIZE") {
          p.lp.maximize = true;
        } else if (sense != "MIN" && sense != "MINIMIZE") {
          p.fail("unknown objective sense '" + trim(line) + "'");
        }
        break;
      }
      case Section::Rows: {
        if (format == MpsFormat::Fixed) {
          const auto f = split_fixed(line);
          p.add_row(f[0], f[1]);
        } else {
          const auto toks = split_ws(line);
          if (toks.size() != 2) p.fail("ROWS line needs a type and a name");
          p.add_row(toks[0], toks[1]);
        }
        break;
      }
      case Section::Columns:
        if (vectors_ready) p.fail("COLUMNS data after RHS/RANGES/BOUNDS");
        p.columns_line(line);
        break;
      case Section::Rhs:
        p.rhs_line(line);
        break;
      case Section::Ranges:
        p.ranges_line(line);
        break;
      case Section::Bounds:
        p.bounds_line(line);
        break;
      case Section::End:
        break;
    }
  }
  if (!p.rows_seen) p.fail("missing ROWS section");
  ensure_vectors();
  p.finish();
  return std::move(p.lp);
}

LpData read_mps(const std::filesystem::path& path, MpsFormat format) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_mps(in, format, path.string());
}

void write_mps(const LpData& lp, std::ostream& out) {
  // free format cannot carry names with blanks
  auto check_name = [](const std::string& n) {
    if (n.empty() || n.find_first_of(" \t") != std::string::npos) {
      throw std::invalid_argument("write_mps: name '" + n + "' is empty or contains whitespace");
    }
  };
  check_name(lp.objective_name);
  for (const auto& n : lp.row_names) check_name(n);
  for (const auto& n : lp.col_names) check_name(n);
  out << "NAME " << lp.name << "\n";
  if (lp.maximize) out << "OBJSENSE\n    MAX\n";
  out << "ROWS\n N  " << lp.objective_name << "\n";
  struct RowOut {
    char type;
    double rhs;
    std::optional<double> range;
  };
  std::vector<RowOut> rows(lp.rows);
  for (int r = 0; r < lp.rows; ++r) {
    const double lo = lp.b_lo[r], hi = lp.b_hi[r];
    if (std::isinf(lo) && std::isinf(hi)) {
      rows[r] = {'N', 0.0, std::nullopt};
    } else if (lo == hi) {
      rows[r] = {'E', lo, std::nullopt};
    } else if (std::isinf(lo)) {
      rows[r] = {'L', hi, std::nullopt};
    } else if (std::isinf(hi)) {
      rows[r] = {'G', lo, std::nullopt};
    } else {
      // Pick a representation the reader maps back to exactly [lo, hi].
      std::optional<RowOut> found;
      double R = hi - lo;
      for (int k = 0; k < 8 && !found; ++k) {
        if (hi - R == lo) found = RowOut{'L', hi, R};
        else if (lo + R == hi) found = RowOut{'G', lo, R};
        else R = (hi - R > lo) ? std::nextafter(R, kInf) : std::nextafter(R, 0.0);
      }
      if (!found) throw std::runtime_error("write_mps: row '" + lp.row_names[r] + "' range not representable");
      rows[r] = *found;
    }
    out << " " << rows[r].type << "  " << lp.row_names[r] << "\n";
  }
  out << "COLUMNS\n";
  std::vector<std::vector<const Triplet*>> by_col(lp.cols);
  for (const auto& t : lp.triplets) by_col[t.col].push_back(&t);
  bool integer_block = false;
  int marker = 0;
  for (int j = 0; j < lp.cols; ++j) {
    if (lp.is_integer[j] != integer_block) {
      out << "    M" << marker++ << "  'MARKER'  " << (lp.is_integer[j] ? "'INTORG'" : "'INTEND'") << "\n";
      integer_block = lp.is_integer[j];
    }
    const auto& name = lp.col_names[j];
    // A column with no entries still needs one line to exist.
    if (lp.c[j] != 0.0 || by_col[j].empty()) {
      out << "    " << name << "  " << lp.objective_name << "  " << fmt_num(lp.c[j]) << "\n";
    }
    for (const auto* t : by_col[j]) {
      out << "    " << name << "  " << lp.row_names[t->row] << "  " << fmt_num(t->value) << "\n";
    }
  }
  if (integer_block) out << "    M" << marker++ << "  'MARKER'  'INTEND'\n";
  out << "RHS\n";
  if (lp.obj_constant != 0.0) out << "    RHS  " << lp.objective_name << "  " << fmt_num(-lp.obj_constant) << "\n";
  for (int r = 0; r < lp.rows; ++r) {
    if (rows[r].type != 'N' && rows[r].rhs != 0.0) {
      out << "    RHS  " << lp.row_names[r] << "  " << fmt_num(rows[r].rhs) << "\n";
    }
  }
  bool any_range = false;
  for (int r = 0; r < lp.rows; ++r) {
    if (!rows[r].range) continue;
    if (!any_range) out << "RANGES\n";
    any_range = true;
    out << "    RNG  " << lp.row_names[r] << "  " << fmt_num(*rows[r].range) << "\n";
  }
  out << "BOUNDS\n";
  for (int j = 0; j < lp.cols; ++j) {
    const double l = lp.l[j], u = lp.u[j];
    const auto& name = lp.col_names[j];
    if (l == -kInf && u == kInf) {
      out << " FR BND  " << name << "\n";
      continue;
    }
    if (l == u) {
      out << " FX BND  " << name << "  " << fmt_num(l) << "\n";
      continue;
    }
    if (l == -kInf) {
      out << " MI BND  " << name << "\n";
    } else if (l != 0.0 || u < 0) {
      out << " LO BND  " << name << "  " << fmt_num(l) << "\n";
    }
    if (u != kInf) out << " UP BND  " << name << "  " << fmt_num(u) << "\n";
  }
  out << "ENDATA\n";
}

void write_mps(const LpData& lp, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_mps(lp, out);
}

Cocluster cocluster(const SparseMatrix& A, int k, int passes) {
  if (A.rows() == 0 || A.cols() == 0) throw std::invalid_argument("cocluster: empty matrix");
  if (k < 1) throw std::invalid_argument("cocluster: k must be >= 1");
  if (passes < 1) throw std::invalid_argument("cocluster: passes must be >= 1");
  const int m = static_cast<int>(A.rows()), n = static_cast<int>(A.cols());
  Cocluster cc;
  cc.row_cluster.assign(m, 0);
  cc.col_cluster.resize(n);
  for (int j = 0; j < n; ++j) cc.col_cluster[j] = j % k;
  const Eigen::SparseMatrix<double, Eigen::ColMajor> Ac = A;

  std::vector<int> count(k, 0);
  auto vote = [&](const std::vector<int>& neighbor_labels, int current) {
    if (neighbor_labels.empty()) return current;
    for (int c : neighbor_labels) ++count[c];
    int best = 0;
    for (int c = 1; c < k; ++c) {
      if (count[c] > count[best]) best = c;
    }
    for (int c : neighbor_labels) count[c] = 0;
    return best;
  };
  std::vector<int> labels;
  for (int pass = 0; pass < passes; ++pass) {
    for (int i = 0; i < m; ++i) {
      labels.clear();
      for (SparseMatrix::InnerIterator it(A, i); it; ++it) labels.push_back(cc.col_cluster[it.col()]);
      cc.row_cluster[i] = vote(labels, cc.row_cluster[i]);
    }
    for (int j = 0; j < n; ++j) {
      labels.clear();
      for (Eigen::SparseMatrix<double, Eigen::ColMajor>::InnerIterator it(Ac, j); it; ++it) {
        labels.push_back(cc.row_cluster[it.row()]);
      }
      cc.col_cluster[j] = vote(labels, cc.col_cluster[j]);
    }
  }
  return cc;
}

MultiblockProblem lp_cocluster(const SparseMatrix& A, const Vector& c, const Vector& l, const Vector& u,
                               const Vector& b_lo, const Vector& b_hi, int k, int passes) {
  if (c.size() != A.cols() || l.size() != A.cols() || u.size() != A.cols() || b_lo.size() != A.rows() ||
      b_hi.size() != A.rows()) {
    throw std::invalid_argument("lp_cocluster: data sizes do not match the matrix");
  }
  const auto cc = cocluster(A, k, passes);
  const int m = static_cast<int>(A.rows()), n = static_cast<int>(A.cols());

  std::map<int, std::vector<int>> col_groups, row_groups;
  for (int j = 0; j < n; ++j) col_groups[cc.col_cluster[j]].push_back(j);
  for (int i = 0; i < m; ++i) row_groups[cc.row_cluster[i]].push_back(i);

  MultiblockProblem p;
  std::vector<int> block_of(n), local_col(n);
  std::vector<std::string> block_ids;
  for (const auto& [label, cols] : col_groups) {
    const int dim = static_cast<int>(cols.size());
    Vector cb(dim), lb(dim), ub(dim);
    for (int t = 0; t < dim; ++t) {
      cb[t] = c[cols[t]];
      lb[t] = l[cols[t]];
      ub[t] = u[cols[t]];
      block_of[cols[t]] = static_cast<int>(block_ids.size());
      local_col[cols[t]] = t;
    }
    block_ids.push_back("b" + std::to_string(label));
    p.blocks.push_back({block_ids.back(), dim, SmoothFn::linear(cb), ProxFn::box(lb, ub)});
  }

  std::vector<Block> slacks;
  for (const auto& [label, rows] : row_groups) {
    const int nr = static_cast<int>(rows.size());
    std::map<int, std::vector<Triplet>> per_block;
    bool inequality = false;
    Vector lo(nr), hi(nr);
    for (int t = 0; t < nr; ++t) {
      const int i = rows[t];
      lo[t] = b_lo[i];
      hi[t] = b_hi[i];
      if (lo[t] != hi[t]) inequality = true;
      for (SparseMatrix::InnerIterator it(A, i); it; ++it) {
        const int j = static_cast<int>(it.col());
        per_block[block_of[j]].push_back({t, local_col[j], it.value()});
      }
    }
    BlockConstraint con{"r" + std::to_string(label), {}, Vector::Zero(nr)};
    for (const auto& [b, trips] : per_block) {
      con.terms.push_back({block_ids[b], LinearMap::sparse(nr, p.blocks[b].dim, trips)});
    }
    if (inequality || con.terms.size() < 2) {
      const std::string sid = "s" + std::to_string(label);
      slacks.push_back({sid, nr, SmoothFn::zero(nr), ProxFn::box(lo, hi)});
      con.terms.push_back({sid, LinearMap::scaled_identity(nr, -1.0)});
    } else {
      con.rhs = lo;
    }
    p.constraints.push_back(std::move(con));
  }
  for (auto& s : slacks) p.blocks.push_back(std::move(s));
  return p;
}

MultiblockProblem lp_cocluster(const LpData& lp, int k, int passes) {
  const Vector c = lp.maximize ? Vector(-lp.c) : lp.c;
  return lp_cocluster(lp.matrix(), c, lp.l, lp.u, lp.b_lo, lp.b_hi, k, passes);
}

}  // namespace admmforge
