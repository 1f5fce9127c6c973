// SPDX-License-Identifier: Apache-2.0

#include "psat/io.hpp"

#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <map>
#include <sstream>
#include <stdexcept>

namespace psat {

std::string csv_quote(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::vector<std::string> csv_split(const std::string& line) {
  std::vector<std::string> out(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c != '"') {
        out.back() += c;
      } else if (i + 1 < line.size() && line[i + 1] == '"') {
        out.back() += '"';
        ++i;
      } else {
        quoted = false;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.emplace_back();
    } else if (c != '\r') {
      out.back() += c;
    }
  }
  if (quoted) throw std::invalid_argument("unterminated quote in CSV line");
  return out;
}

std::string records_csv_header() {
  return "mask,arity,mode,status,families,theorems,flags,certificate,provenance";
}

std::string record_csv_line(const ClassificationRecord& r) {
  std::string flags;
  if (r.theorems_complete) flags += 'c';
  if (r.inconclusive) flags += 'i';
  if (r.split_reading_differs) flags += 's';
  std::ostringstream os;
  os << r.predicate.id_hex() << ',' << r.predicate.arity() << ',' << mode_name(r.mode) << ','
     << status_name(r.status) << ',' << r.family_bits << ',' << r.theorem_bits << ',' << flags
     << ',' << csv_quote(r.certificate_json()) << ','
     << (r.from ? "from:" + r.from->id_hex() : std::string("direct"));
  return os.str();
}

namespace {

Predicate from_id(int k, const std::string& hex) {
  return parse_predicate(std::to_string(k) + ":0x" + hex);
}

}  // namespace

ClassificationRecord parse_record_line(const std::string& line) {
  const auto f = csv_split(line);
  if (f.size() != 9) throw std::invalid_argument("record line needs 9 fields: " + line);
  ClassificationRecord r;
  const int k = std::stoi(f[1]);
  r.predicate = from_id(k, f[0]);
  const auto mode = parse_mode(f[2]);
  const auto status = parse_status(f[3]);
  if (!mode || !status) throw std::invalid_argument("bad mode or status: " + line);
  r.mode = *mode;
  r.status = *status;
  r.family_bits = static_cast<unsigned>(std::stoul(f[4]));
  r.theorem_bits = static_cast<unsigned>(std::stoul(f[5]));
  r.theorems_complete = f[6].find('c') != std::string::npos;
  r.inconclusive = f[6].find('i') != std::string::npos;
  r.split_reading_differs = f[6].find('s') != std::string::npos;
  const auto j = nlohmann::json::parse(f[7]);
  if (j.contains("witnesses"))
    for (const auto& w : j["witnesses"]) r.witnesses.push_back(FamilyWitness::from_json(w.dump()));
  if (j.contains("certificate")) r.certificate = HardnessCertificate::from_json(j["certificate"].dump());
  if (j.contains("shift")) r.shift = parse_point(j["shift"].get<std::string>());
  if (j.contains("note")) r.note = j["note"].get<std::string>();
  if (f[8].rfind("from:", 0) == 0)
    r.from = from_id(k, f[8].substr(5));
  else if (f[8] != "direct")
    throw std::invalid_argument("bad provenance: " + f[8]);
  return r;
}

std::string records_csv(const Sweep& s) {
  std::ostringstream os;
  os << "# k=" << s.k << " mode=" << mode_name(s.mode) << " complete=" << (s.complete ? 1 : 0)
     << '\n'
     << records_csv_header() << '\n';
  for (const auto& r : s.records) os << record_csv_line(r) << '\n';
  return os.str();
}

Sweep parse_records_csv(const std::string& text) {
  Sweep s;
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line.rfind("# k=", 0) != 0)
    throw std::invalid_argument("records CSV lacks the sweep line");
  {
    std::istringstream h(line.substr(2));
    std::string kv;
    while (h >> kv) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) continue;
      const auto key = kv.substr(0, eq), val = kv.substr(eq + 1);
      if (key == "k") s.k = std::stoi(val);
      if (key == "mode") {
        const auto m = parse_mode(val);
        if (!m) throw std::invalid_argument("bad mode " + val);
        s.mode = *m;
      }
      if (key == "complete") s.complete = val == "1";
    }
  }
  if (!std::getline(in, line) || line != records_csv_header())
    throw std::invalid_argument("records CSV header mismatch");
  while (std::getline(in, line))
    if (!line.empty()) s.records.push_back(parse_record_line(line));
  s.reindex();
  return s;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_records(const std::string& path, const Sweep& s) { write_text(path, records_csv(s)); }
Sweep read_records(const std::string& path) { return parse_records_csv(read_text(path)); }

namespace {

std::vector<std::string> positive_columns(Mode m) {
  if (m == Mode::Usefulness) return {"Maj", "Par"};
  std::vector<std::string> v;
  for (Family f : kScreenFamilies) v.push_back(family_name(f));
  return v;
}

std::vector<std::string> negative_columns(Mode m) {
  if (m == Mode::Usefulness) return {};
  std::vector<std::string> v;
  for (Theorem t : kTheorems) v.push_back(theorem_name(t));
  return v;
}

std::string table_csv(const std::vector<ExtremalRow>& rows, const std::vector<std::string>& cols) {
  std::ostringstream os;
  os << "predicate";
  for (const auto& c : cols) os << ',' << c;
  os << ",dep\n";
  for (const auto& r : rows) {
    os << csv_quote(r.predicate.to_string());
    for (std::size_t i = 0; i < cols.size(); ++i) os << ',' << ((r.marks >> i) & 1u ? "x" : "");
    os << ',' << r.exclusive << '/' << r.total << '\n';
  }
  return os.str();
}

nlohmann::json table_json(const std::vector<ExtremalRow>& rows, const std::vector<std::string>& cols) {
  auto arr = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json e;
    e["predicate"] = r.predicate.to_string();
    e["id"] = r.predicate.id_hex();
    auto& marks = e["marks"] = nlohmann::json::array();
    for (std::size_t i = 0; i < cols.size(); ++i)
      if ((r.marks >> i) & 1u) marks.push_back(cols[i]);
    e["exclusive"] = r.exclusive;
    e["total"] = r.total;
    arr.push_back(e);
  }
  return arr;
}

}  // namespace

std::string maximal_csv(const Extremal& e, Mode m) { return table_csv(e.maximal_positive, positive_columns(m)); }
std::string minimal_csv(const Extremal& e, Mode m) { return table_csv(e.minimal_negative, negative_columns(m)); }

std::string extremal_json(const Extremal& e, Mode m) {
  nlohmann::json j;
  j["mode"] = mode_name(m);
  j["maximal"] = table_json(e.maximal_positive, positive_columns(m));
  j["minimal"] = table_json(e.minimal_negative, negative_columns(m));
  return j.dump(1);
}

std::string histogram_csv(const Sweep& s) {
  std::map<int, std::array<int, 3>> h;
  for (const auto& r : s.records) {
    auto& row = h[r.predicate.size()];
    if (r.status == Status::Tractable || r.status == Status::Useful)
      ++row[0];
    else if (r.status == Status::NPHard || r.status == Status::Useless)
      ++row[1];
    else
      ++row[2];
  }
  std::ostringstream os;
  os << "size,positive,negative,unknown\n";
  for (const auto& [size, row] : h) os << size << ',' << row[0] << ',' << row[1] << ',' << row[2] << '\n';
  return os.str();
}

std::string cache_dir_from_env() {
  const char* v = std::getenv("PSAT_CACHE_DIR");
  return v ? std::string(v) : std::string();
}

}  // namespace psat
