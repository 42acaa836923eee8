#pragma once
// Dimension and braid-exponent tables, CSV layout rows N / columns j, and fixture diffs.

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "copers.hpp"
#include "paths.hpp"
#include "tldiag.hpp"

namespace qxxz {


// header plus rows of text cells
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

inline std::string to_csv(const CsvTable& t) {
  std::ostringstream o;
  auto line = [&](const std::vector<std::string>& r) {
    for (size_t i = 0; i < r.size(); ++i) o << (i ? "," : "") << r[i];
    o << "\n";
  };
  line(t.header);
  for (const auto& r : t.rows) line(r);
  return o.str();
}

inline CsvTable read_csv(std::istream& in) {
  CsvTable t;
  std::string s;
  bool first = true;
  while (std::getline(in, s)) {
    if (!s.empty() && s.back() == '\r') s.pop_back();
    if (s.empty()) continue;
    std::vector<std::string> cells;
    std::string c;
    std::istringstream ls(s);
    while (std::getline(ls, c, ',')) cells.push_back(c);
    if (s.back() == ',') cells.emplace_back();
    (first ? t.header : t.rows.emplace_back()) = cells;
    first = false;
  }
  return t;
}

inline CsvTable read_csv_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot read " + path);
  return read_csv(f);
}

struct DimCell {
  int N, two_j;
  std::int64_t enumerated, formula;
};

struct DimTables {
  std::vector<DimCell> all, restricted;
  int r = 5;
  bool consistent() const {
    for (const auto* v : {&all, &restricted})
      for (const auto& c : *v)
        if (c.enumerated != c.formula) return false;
    return true;
  }
};

inline DimTables dimension_tables(int n_min, int n_max, int r) {
  check_restriction(r);
  DimTables t;
  t.r = r;
  for (int N = n_min; N <= n_max; ++N)
    for (int tj = N % 2; tj <= N; tj += 2) {
      t.all.push_back({N, tj, static_cast<std::int64_t>(enumerate_paths(N, std::nullopt, tj).paths.size()), dim_gamma(N, tj)});
      if (tj + 1 < r)
        t.restricted.push_back({N, tj, static_cast<std::int64_t>(enumerate_paths(N, r, tj).paths.size()),
                                dim_gamma_restricted(N, tj, r)});
    }
  return t;
}

struct ExponentCell {
  int N, two_j;
  int formula;
  std::optional<int> diagram;  // -(exponent of the diagrammatic scalar)
};

inline std::vector<ExponentCell> exponent_table(int n_min, int n_max, bool with_diagrams = true) {
  std::vector<ExponentCell> out;
  for (int N = std::max(n_min, 1); N <= n_max; ++N)
    for (int tj = N % 2; tj <= N; tj += 2) {
      ExponentCell c{N, tj, beta2_exponent(N, tj), std::nullopt};
      if (with_diagrams) {
        auto b = beta_squared_diagrammatic(N, (N - tj) / 2 - 1);
        if (b.diagonal && b.exponent) c.diagram = -*b.exponent;
      }
      out.push_back(c);
    }
  return out;
}

inline int max_two_j(int n_max) { return std::max(n_max, 10); }

inline std::string row_status(int N) { return N > 10 ? "extrapolated" : "reference"; }

inline CsvTable table2_csv(const DimTables& t, int n_min, int n_max) {
  CsvTable c;
  c.header = {"panel", "N"};
  const int tjmax = max_two_j(n_max);
  for (int tj = 0; tj <= tjmax; ++tj) c.header.push_back(spin_label(tj));
  c.header.push_back("status");
  auto panel = [&](const std::vector<DimCell>& cells, const std::string& name) {
    for (int N = n_min; N <= n_max; ++N) {
      std::vector<std::string> row{name, std::to_string(N)};
      for (int tj = 0; tj <= tjmax; ++tj) {
        std::string v;
        for (const auto& x : cells)
          if (x.N == N && x.two_j == tj) v = std::to_string(x.formula);
        row.push_back(v);
      }
      row.push_back(row_status(N));
      c.rows.push_back(row);
    }
  };
  panel(t.all, "all");
  panel(t.restricted, "r" + std::to_string(t.r));
  return c;
}

inline CsvTable table3_csv(const std::vector<ExponentCell>& cells, int n_min, int n_max) {
  CsvTable c;
  c.header = {"N"};
  const int tjmax = max_two_j(n_max);
  for (int tj = 0; tj <= tjmax; ++tj) c.header.push_back(spin_label(tj));
  c.header.push_back("status");
  for (int N = std::max(n_min, 1); N <= n_max; ++N) {
    std::vector<std::string> row{std::to_string(N)};
    for (int tj = 0; tj <= tjmax; ++tj) {
      std::string v;
      for (const auto& x : cells)
        if (x.N == N && x.two_j == tj) v = std::to_string(x.formula);
      row.push_back(v);
    }
    row.push_back(row_status(N));
    c.rows.push_back(row);
  }
  return c;
}

struct CellMismatch {
  std::string row, column, expected, got;
};

// Every cell of a fixture row must match the computed row with the same key; rows not computed are skipped.
// key_cols: how many leading columns identify a row.
inline std::vector<CellMismatch> diff_against_fixture(const CsvTable& got, const CsvTable& fixture, int key_cols) {
  std::vector<CellMismatch> out;
  auto key_of = [&](const std::vector<std::string>& r) {
    std::string k;
    for (int i = 0; i < key_cols && i < static_cast<int>(r.size()); ++i) k += (i ? "," : "") + r[i];
    return k;
  };
  std::map<std::string, std::map<std::string, std::string>> g;
  for (const auto& r : got.rows)
    for (size_t i = key_cols; i < r.size() && i < got.header.size(); ++i) g[key_of(r)][got.header[i]] = r[i];
  std::map<std::string, bool> seen_panel;
  for (const auto& r : got.rows) seen_panel[key_cols > 1 ? r[0] : ""] = true;
  for (const auto& r : fixture.rows) {
    const std::string k = key_of(r);
    if (key_cols > 1 && !seen_panel.count(r[0])) continue;  // panel not requested
    auto it = g.find(k);
    for (size_t i = key_cols; i < fixture.header.size(); ++i) {
      const std::string want = i < r.size() ? r[i] : "";
      if (it == g.end()) break;  // row outside the computed range
      auto c = it->second.find(fixture.header[i]);
      const std::string have = c == it->second.end() ? "" : c->second;
      if (have != want) out.push_back({k, fixture.header[i], want, have});
    }
  }
  return out;
}

}  // namespace qxxz
