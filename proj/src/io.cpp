// Copyright 2026 The permcipher Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "permcipher/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace permcipher {

namespace {

using nlohmann::json;

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(field);
      field.clear();
    } else if (c != '\r') {
      field += c;
    }
  }
  fields.push_back(field);
  return fields;
}

double parse_number(const std::string& s, std::size_t row, std::size_t col) {
  std::string t = s;
  t.erase(0, t.find_first_not_of(" \t"));
  const auto end = t.find_last_not_of(" \t");
  t.erase(end == std::string::npos ? 0 : end + 1);
  try {
    std::size_t used = 0;
    const double v = std::stod(t, &used);
    if (used != t.size()) throw std::invalid_argument(t);
    return v;
  } catch (const std::exception&) {
    throw ParseError("non-numeric cell at row " + std::to_string(row) + ", column " +
                     std::to_string(col) + ": '" + s + "'");
  }
}

std::string format_number(double v) {
  std::ostringstream os;
  os << std::setprecision(std::numeric_limits<double>::max_digits10) << v;
  return os.str();
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw ParseError("malformed JSON in " + path + ": " + e.what());
  }
  return doc;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write file: " + path);
  out << text;
}

Comparator comparator_from_string(const std::string& s) {
  if (s == ">=" || s == "ge" || s == "min") return Comparator::kAtLeast;
  if (s == "<=" || s == "le" || s == "max") return Comparator::kAtMost;
  if (s == "~=" || s == "=" || s == "approx" || s == "eq") return Comparator::kApprox;
  throw ValidationError("unknown comparator '" + s + "' (expected >=, <= or ~=)");
}

std::string comparator_to_string(Comparator c) {
  switch (c) {
    case Comparator::kAtLeast: return ">=";
    case Comparator::kAtMost: return "<=";
    default: return "~=";
  }
}

std::vector<MenuConstraint> parse_constraints(const json& arr, const std::string& where) {
  std::vector<MenuConstraint> out;
  if (!arr.is_array()) throw ValidationError(where + ".constraints must be an array");
  for (const auto& c : arr) {
    MenuConstraint mc;
    if (!c.contains("alpha") || !c["alpha"].is_number())
      throw ValidationError(where + ": constraint needs a numeric 'alpha'");
    if (!c.contains("target") || !c["target"].is_number())
      throw ValidationError(where + ": constraint needs a numeric 'target'");
    mc.alpha = c["alpha"].get<double>();
    mc.target = c["target"].get<double>();
    mc.cmp = comparator_from_string(c.value("cmp", std::string("~=")));
    mc.weight = c.value("weight", 1.0);
    if (!(mc.weight > 0.0)) throw ValidationError(where + ": constraint weight must be > 0");
    if (!(mc.target > 0.0)) throw ValidationError(where + ": constraint target must be > 0");
    out.push_back(mc);
  }
  return out;
}

}  // namespace

Dataset load_dataset(const std::string& path, bool has_header) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path);

  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    rows.push_back(split_csv_line(line));
  }
  if (rows.empty()) throw ParseError("empty dataset file: " + path);

  std::vector<std::string> header;
  if (has_header) {
    header = rows.front();
    rows.erase(rows.begin());
  }
  if (rows.empty()) throw ParseError("dataset has a header but no records: " + path);

  const std::size_t width = has_header ? header.size() : rows.front().size();
  for (std::size_t r = 0; r < rows.size(); ++r)
    if (rows[r].size() != width)
      throw ParseError("ragged row " + std::to_string(r + 1) + ": expected " + std::to_string(width) +
                       " fields, got " + std::to_string(rows[r].size()));

  std::size_t id_col = width;  // sentinel: no id column
  if (has_header) {
    for (std::size_t c = 0; c < header.size(); ++c)
      if (header[c] == "id") id_col = c;
  }

  Dataset d;
  for (std::size_t c = 0; c < width; ++c) {
    if (c == id_col) continue;
    d.column_names.push_back(has_header ? header[c] : "a" + std::to_string(d.column_names.size() + 1));
    std::vector<double> col;
    col.reserve(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) col.push_back(parse_number(rows[r][c], r + 1, c + 1));
    d.columns.push_back(std::move(col));
  }
  for (std::size_t r = 0; r < rows.size(); ++r)
    d.record_ids.push_back(id_col < width ? rows[r][id_col] : std::to_string(r + 1));
  if (d.record_ids.size() < 2)
    throw InvalidSizeError("dataset needs n >= 2 records, got " + std::to_string(d.record_ids.size()));
  d.validate();
  return d;
}

void save_dataset(const Dataset& d, const std::string& path) {
  d.validate();
  std::ostringstream os;
  os << "id";
  for (const auto& name : d.column_names) os << "," << name;
  os << "\n";
  for (std::size_t r = 0; r < d.n(); ++r) {
    os << d.record_ids[r];
    for (std::size_t c = 0; c < d.p(); ++c) os << "," << format_number(d.columns[c][r]);
    os << "\n";
  }
  write_text_file(path, os.str());
}

void save_keys(const KeyGroup& keys, const std::string& path, const std::vector<std::string>& names,
               bool as_matrix) {
  json doc;
  doc["n"] = keys.n();
  doc["keys"] = json::array();
  for (const auto& k : keys.keys) doc["keys"].push_back(k.one_line());
  if (!names.empty()) {
    if (names.size() != keys.p()) throw DimensionError("key name count does not match key count");
    doc["names"] = names;
  }
  if (as_matrix) {
    doc["matrices"] = json::array();
    for (const auto& k : keys.keys) {
      json m = json::array();
      for (std::size_t i = 0; i < k.size(); ++i) {
        std::vector<int> row(k.size(), 0);
        row[k.source_of(i)] = 1;
        m.push_back(row);
      }
      doc["matrices"].push_back(std::move(m));
    }
  }
  write_text_file(path, doc.dump(2) + "\n");
}

KeyGroup load_keys(const std::string& path, std::vector<std::string>* names) {
  const json doc = read_json_file(path);
  if (!doc.contains("keys") || !doc["keys"].is_array() || doc["keys"].empty())
    throw ValidationError("key file needs a non-empty 'keys' array");
  std::vector<PermutationKey> keys;
  for (const auto& entry : doc["keys"]) {
    if (!entry.is_array()) throw ValidationError("each key must be a one-line notation array");
    std::vector<std::size_t> one_based;
    for (const auto& v : entry) {
      if (!v.is_number_unsigned()) throw ValidationError("key entries must be positive integers");
      one_based.push_back(v.get<std::size_t>());
    }
    keys.push_back(PermutationKey::from_one_line(one_based));
  }
  KeyGroup group(std::move(keys));
  if (doc.contains("n") && doc["n"].get<std::size_t>() != group.n())
    throw ValidationError("declared n does not match key length");
  if (names) {
    names->clear();
    if (doc.contains("names")) *names = doc["names"].get<std::vector<std::string>>();
  }
  return group;
}

MenuSpec load_menu(const std::string& path) {
  const json doc = read_json_file(path);
  MenuSpec menu;
  if (!doc.contains("n") || !doc["n"].is_number_unsigned())
    throw ValidationError("menu needs a positive integer 'n'");
  menu.n = doc["n"].get<std::size_t>();
  menu.tolerance = doc.value("tolerance", 0.05);
  menu.normalized = doc.value("normalized", false);
  if (!(menu.tolerance > 0.0)) throw ValidationError("menu tolerance must be > 0");

  if (!doc.contains("attributes") || !doc["attributes"].is_array())
    throw ValidationError("menu needs an 'attributes' array");
  for (const auto& a : doc["attributes"]) {
    AttributeMenu attr;
    if (!a.contains("name") || !a["name"].is_string())
      throw ValidationError("each menu attribute needs a string 'name'");
    attr.name = a["name"].get<std::string>();
    if (a.contains("floor")) {
      if (!a["floor"].is_number_integer())
        throw ValidationError("attribute '" + attr.name + "': floor must be an integer");
      attr.min_displacement = a["floor"].get<long long>();
    }
    if (a.contains("constraints"))
      attr.constraints = parse_constraints(a["constraints"], "attribute '" + attr.name + "'");
    menu.attributes.push_back(std::move(attr));
  }
  if (doc.contains("pairs")) {
    if (!doc["pairs"].is_array()) throw ValidationError("menu 'pairs' must be an array");
    for (const auto& pj : doc["pairs"]) {
      PairMenu pair;
      if (!pj.contains("a") || !pj.contains("b"))
        throw ValidationError("each menu pair needs attribute names 'a' and 'b'");
      pair.first = pj["a"].get<std::string>();
      pair.second = pj["b"].get<std::string>();
      if (pj.contains("constraints"))
        pair.constraints =
            parse_constraints(pj["constraints"], "pair ('" + pair.first + "', '" + pair.second + "')");
      menu.attribute_index(pair.first);  // must exist
      menu.attribute_index(pair.second);
      menu.pairs.push_back(std::move(pair));
    }
  }
  return menu;
}

void save_menu(const MenuSpec& menu, const std::string& path) {
  json doc;
  doc["n"] = menu.n;
  doc["tolerance"] = menu.tolerance;
  doc["normalized"] = menu.normalized;
  doc["attributes"] = json::array();
  auto constraints_json = [](const std::vector<MenuConstraint>& cs) {
    json arr = json::array();
    for (const auto& c : cs)
      arr.push_back({{"alpha", c.alpha},
                     {"cmp", comparator_to_string(c.cmp)},
                     {"target", c.target},
                     {"weight", c.weight}});
    return arr;
  };
  for (const auto& a : menu.attributes) {
    json aj;
    aj["name"] = a.name;
    if (a.min_displacement) aj["floor"] = *a.min_displacement;
    aj["constraints"] = constraints_json(a.constraints);
    doc["attributes"].push_back(std::move(aj));
  }
  doc["pairs"] = json::array();
  for (const auto& pr : menu.pairs)
    doc["pairs"].push_back({{"a", pr.first}, {"b", pr.second}, {"constraints", constraints_json(pr.constraints)}});
  write_text_file(path, doc.dump(2) + "\n");
}

void save_curves(const std::vector<LabeledCurve>& curves, const std::string& path) {
  std::ostringstream os;
  os << "alpha,value,kind,attribute_or_pair\n";
  for (const auto& lc : curves) {
    const char* kind = lc.curve.kind == CurveKind::kRisk ? "risk" : "information-loss";
    for (std::size_t i = 0; i < lc.curve.alphas.size(); ++i)
      os << format_number(lc.curve.alphas[i]) << "," << format_number(lc.curve.values[i]) << ","
         << kind << "," << lc.label << "\n";
  }
  write_text_file(path, os.str());
}

std::vector<LabeledCurve> load_curves(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path);
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty curve file: " + path);
  std::vector<LabeledCurve> out;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty() || line == "\r") continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != 4) throw ParseError("curve row " + std::to_string(row) + " needs 4 fields");
    const double alpha = parse_number(fields[0], row, 1);
    const double value = parse_number(fields[1], row, 2);
    const CurveKind kind =
        fields[2] == "risk" ? CurveKind::kRisk : CurveKind::kInformationLoss;
    const std::string& label = fields[3];
    if (out.empty() || out.back().label != label || out.back().curve.kind != kind) {
      out.push_back({label, AversionCurve{{}, {}, kind}});
    }
    out.back().curve.alphas.push_back(alpha);
    out.back().curve.values.push_back(value);
  }
  return out;
}

std::string report_to_json(const CalibrationReport& report) {
  json doc;
  doc["residual"] = report.residual;
  doc["iterations"] = report.iterations;
  doc["seed"] = report.seed;
  doc["all_satisfied"] = report.all_satisfied;
  doc["constraints"] = json::array();
  for (const auto& c : report.constraints)
    doc["constraints"].push_back({{"label", c.label},
                                  {"alpha", c.alpha},
                                  {"cmp", comparator_to_string(c.cmp)},
                                  {"target", c.target},
                                  {"achieved", c.achieved},
                                  {"weight", c.weight},
                                  {"satisfied", c.satisfied}});
  return doc.dump(2) + "\n";
}

}  // namespace permcipher
