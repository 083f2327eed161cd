#include <charconv>
#include <cstdio>
#include <cmath>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include "ibp/milp_model.hpp"

namespace ibp {

namespace {

std::string number(double v) {
  if (v == 0.0) return "0";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

// Fixed-format field layout: type in columns 2-3, names at 5 and 15,
// value at 25. Values longer than 12 characters are written in full.
void entry(std::ostream& out, const char* type, const std::string& a, const std::string& b,
           double value) {
  std::string line = " ";
  line += type;
  line.resize(4, ' ');
  line += a;
  line.resize(14, ' ');
  line += b;
  line.resize(24, ' ');
  line += number(value);
  out << line << '\n';
}

char row_type(Sense s) {
  switch (s) {
    case Sense::Le: return 'L';
    case Sense::Ge: return 'G';
    case Sense::Eq: return 'E';
  }
  return 'E';
}

}  // namespace

void export_mps(const MilpModel& model, std::ostream& out) {
  const int n = model.num_columns();
  // Column-major copy of the row data.
  std::vector<std::vector<std::pair<int, double>>> columns(n);
  for (int i = 0; i < model.num_rows(); ++i) {
    const auto& r = model.rows[i];
    for (std::size_t k = 0; k < r.cols.size(); ++k) columns[r.cols[k]].push_back({i, r.coefs[k]});
  }

  out << "NAME          IBPMILP\n";
  out << "ROWS\n";
  out << " N  OBJ\n";
  for (const auto& r : model.rows) out << ' ' << row_type(r.sense) << "  " << r.name << '\n';

  out << "COLUMNS\n";
  bool in_integer = false;
  int marker = 0;
  auto toggle = [&](bool want) {
    if (want == in_integer) return;
    char name[40];
    std::snprintf(name, sizeof name, "MARKER%02d", marker++ % 100);
    std::string line = "    ";
    line += name;
    line.resize(14, ' ');
    line += "'MARKER'";
    line.resize(39, ' ');
    line += want ? "'INTORG'" : "'INTEND'";
    out << line << '\n';
    in_integer = want;
  };
  for (int j = 0; j < n; ++j) {
    const auto& v = model.variables[j];
    toggle(v.binary);
    if (model.objective[j] != 0.0) entry(out, "", v.name, "OBJ", model.objective[j]);
    for (const auto& [i, a] : columns[j]) entry(out, "", v.name, model.rows[i].name, a);
    if (columns[j].empty() && model.objective[j] == 0.0) {
      // Keep empty columns visible to readers.
      entry(out, "", v.name, "OBJ", 0.0);
    }
  }
  toggle(false);

  out << "RHS\n";
  for (const auto& r : model.rows) {
    if (r.rhs != 0.0) entry(out, "", "RHS", r.name, r.rhs);
  }

  out << "BOUNDS\n";
  for (const auto& v : model.variables) {
    if (v.binary) {
      entry(out, "UP", "BND", v.name, 1.0);
      continue;
    }
    if (v.lower == v.upper) {
      entry(out, "FX", "BND", v.name, v.lower);
      continue;
    }
    if (std::isinf(v.lower)) {
      out << " MI BND       " << v.name << '\n';
    } else if (v.lower != 0.0) {
      entry(out, "LO", "BND", v.name, v.lower);
    }
    if (!std::isinf(v.upper)) entry(out, "UP", "BND", v.name, v.upper);
  }
  out << "ENDATA\n";
}

void export_mps_file(const MilpModel& model, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  export_mps(model, out);
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

}  // namespace ibp
