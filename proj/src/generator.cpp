#include "rdfalign/generator.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>

#include "rdfalign/util.hpp"

namespace rdfalign {

namespace {

const char* kPrefixV1 = "http://example.org/v1/";
const char* kPrefixV2 = "http://example.org/v2/";

std::string make_word(SplitMix64& rng) {
  static const char* consonants = "bcdfghklmnprstvz";
  static const char* vowels = "aeiou";
  std::size_t syllables = 2 + rng.below(3);
  std::string w;
  for (std::size_t i = 0; i < syllables; ++i) {
    w.push_back(consonants[rng.below(16)]);
    w.push_back(vowels[rng.below(5)]);
  }
  return w;
}

std::string typo(const std::string& s, SplitMix64& rng) {
  if (s.empty()) return "x";
  std::string out = s;
  std::size_t pos = rng.below(out.size());
  switch (rng.below(3)) {
    case 0: // replace
      out[pos] = static_cast<char>('a' + rng.below(26));
      break;
    case 1: // delete
      out.erase(pos, 1);
      break;
    default: // insert
      out.insert(pos, 1, static_cast<char>('a' + rng.below(26)));
      break;
  }
  return out;
}

struct RowData {
  std::uint64_t key;
  std::vector<std::string> values; // one per attribute
  std::int64_t fk_table = -1;      // referenced table, -1 for none
  std::size_t fk_row = 0;          // index into the referenced table's v1 rows
  bool has_blank = false;
  std::string blank_city, blank_zip;
};

} // namespace

GeneratorSpec GeneratorSpec::parse(std::istream& in) {
  GeneratorSpec spec;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t h = line.find('#');
    if (h != std::string::npos) line.erase(h);
    std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      if (line.find_first_not_of(" \t\r") != std::string::npos)
        throw std::invalid_argument("spec line " + std::to_string(lineno) + ": expected key = value");
      continue;
    }
    auto trim = [](std::string s) {
      std::size_t b = s.find_first_not_of(" \t\r");
      std::size_t e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    auto as_count = [&](std::size_t& out) {
      try {
        out = std::stoul(value);
      } catch (...) {
        throw std::invalid_argument("spec line " + std::to_string(lineno) + ": bad value for " + key);
      }
    };
    auto as_rate = [&](double& out) {
      try {
        out = std::stod(value);
      } catch (...) {
        throw std::invalid_argument("spec line " + std::to_string(lineno) + ": bad value for " + key);
      }
    };
    if (key == "tables") as_count(spec.tables);
    else if (key == "rows") as_count(spec.rows);
    else if (key == "attrs") as_count(spec.attrs);
    else if (key == "fk_density") as_rate(spec.fk_density);
    else if (key == "edit_rate") as_rate(spec.edit_rate);
    else if (key == "insert_rate") as_rate(spec.insert_rate);
    else if (key == "delete_rate") as_rate(spec.delete_rate);
    else if (key == "rename_prefix") spec.rename_prefix = (value == "true" || value == "1");
    else if (key == "blank_prob") as_rate(spec.blank_prob);
    else if (key == "seed") {
      try {
        spec.seed = std::stoull(value);
      } catch (...) {
        throw std::invalid_argument("spec line " + std::to_string(lineno) + ": bad value for seed");
      }
    } else {
      throw std::invalid_argument("spec line " + std::to_string(lineno) + ": unknown key " + key);
    }
  }
  spec.check();
  return spec;
}

GeneratorSpec GeneratorSpec::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parse(in);
}

void GeneratorSpec::check() const {
  auto rate = [](double v, const char* name) {
    if (v < 0.0 || v > 1.0)
      throw std::invalid_argument(std::string(name) + " must lie in [0,1]");
  };
  rate(fk_density, "fk_density");
  rate(edit_rate, "edit_rate");
  rate(insert_rate, "insert_rate");
  rate(delete_rate, "delete_rate");
  rate(blank_prob, "blank_prob");
  if (tables == 0) throw std::invalid_argument("tables must be positive");
}

GeneratedVersions generate_versions(const GeneratorSpec& spec) {
  spec.check();
  SplitMix64 rng(spec.seed ^ 0x5851f42d4c957f2dULL);

  // Shared vocabulary so multi-word values overlap across rows.
  std::vector<std::string> vocab;
  vocab.reserve(64);
  for (int i = 0; i < 64; ++i) vocab.push_back(make_word(rng));

  auto make_value = [&](SplitMix64& r) {
    std::size_t words = 3 + r.below(3);
    std::string v;
    for (std::size_t i = 0; i < words; ++i) {
      if (i) v.push_back(' ');
      v += vocab[r.below(vocab.size())];
    }
    return v;
  };

  // Row contents for version 1. A fraction of rows are near-duplicates of
  // earlier rows (one typo apart), as curated data tends to contain.
  std::vector<std::vector<RowData>> table_rows(spec.tables);
  std::uint64_t next_key = 0;
  for (std::size_t t = 0; t < spec.tables; ++t) {
    table_rows[t].resize(spec.rows);
    for (std::size_t r = 0; r < spec.rows; ++r) {
      RowData& row = table_rows[t][r];
      row.key = next_key++;
      row.values.resize(spec.attrs);
      if (r > 0 && spec.attrs > 0 && rng.chance(0.15)) {
        row.values = table_rows[t][rng.below(r)].values;
        std::size_t a = rng.below(spec.attrs);
        row.values[a] = typo(row.values[a], rng);
      } else {
        for (std::size_t a = 0; a < spec.attrs; ++a) row.values[a] = make_value(rng);
      }
      if (spec.tables > 1 && rng.chance(spec.fk_density)) {
        row.fk_table = static_cast<std::int64_t>((t + 1) % spec.tables);
        row.fk_row = spec.rows ? rng.below(spec.rows) : 0;
      }
      if (rng.chance(spec.blank_prob)) {
        row.has_blank = true;
        row.blank_city = make_value(rng);
        row.blank_zip = vocab[rng.below(vocab.size())] + std::to_string(rng.below(100));
      }
    }
  }

  // Version 2 derivation: survivors, edits, inserts.
  std::vector<std::vector<char>> survives(spec.tables);
  for (std::size_t t = 0; t < spec.tables; ++t) {
    survives[t].resize(spec.rows);
    for (std::size_t r = 0; r < spec.rows; ++r) survives[t][r] = !rng.chance(spec.delete_rate);
  }
  std::vector<std::vector<RowData>> v2_rows(spec.tables);
  for (std::size_t t = 0; t < spec.tables; ++t) {
    for (std::size_t r = 0; r < spec.rows; ++r) {
      if (!survives[t][r]) continue;
      RowData row = table_rows[t][r];
      for (std::size_t a = 0; a < spec.attrs; ++a)
        if (rng.chance(spec.edit_rate)) row.values[a] = typo(row.values[a], rng);
      if (row.has_blank && rng.chance(spec.edit_rate)) row.blank_city = typo(row.blank_city, rng);
      // Foreign keys pointing at deleted rows are dropped.
      if (row.fk_table >= 0 && !survives[static_cast<std::size_t>(row.fk_table)][row.fk_row])
        row.fk_table = -1;
      v2_rows[t].push_back(std::move(row));
    }
    std::size_t inserts =
        static_cast<std::size_t>(static_cast<double>(spec.rows) * spec.insert_rate + 0.5);
    std::vector<std::size_t> alive_here;
    for (std::size_t r = 0; r < spec.rows; ++r)
      if (survives[t][r]) alive_here.push_back(r);
    for (std::size_t i = 0; i < inserts; ++i) {
      RowData row;
      row.key = next_key++;
      row.values.resize(spec.attrs);
      if (!alive_here.empty() && rng.chance(0.5)) {
        // Near-duplicate insertion: a copy of an existing record with a
        // couple of typos, the classic source of false alignments.
        const RowData& donor = table_rows[t][alive_here[rng.below(alive_here.size())]];
        row.values = donor.values;
        std::size_t typos = 1 + rng.below(2);
        for (std::size_t k = 0; k < typos; ++k) {
          std::size_t a = rng.below(spec.attrs);
          row.values[a] = typo(row.values[a], rng);
        }
      } else {
        for (std::size_t a = 0; a < spec.attrs; ++a) row.values[a] = make_value(rng);
      }
      if (spec.tables > 1 && rng.chance(spec.fk_density)) {
        std::size_t ft = (t + 1) % spec.tables;
        // Point at a surviving row when one exists.
        std::vector<std::size_t> alive;
        for (std::size_t r = 0; r < spec.rows; ++r)
          if (survives[ft][r]) alive.push_back(r);
        if (!alive.empty()) {
          row.fk_table = static_cast<std::int64_t>(ft);
          row.fk_row = alive[rng.below(alive.size())];
        }
      }
      if (rng.chance(spec.blank_prob)) {
        row.has_blank = true;
        row.blank_city = make_value(rng);
        row.blank_zip = vocab[rng.below(vocab.size())] + std::to_string(rng.below(100));
      }
      v2_rows[t].push_back(std::move(row));
    }
  }

  const std::string p1 = kPrefixV1;
  const std::string p2 = spec.rename_prefix ? kPrefixV2 : kPrefixV1;

  auto row_uri = [](const std::string& prefix, std::size_t t, std::uint64_t key) {
    return prefix + "t" + std::to_string(t) + "/row" + std::to_string(key);
  };
  auto attr_uri = [](const std::string& prefix, std::size_t t, std::size_t a) {
    return prefix + "t" + std::to_string(t) + "/attr" + std::to_string(a);
  };
  auto fk_uri = [](const std::string& prefix, std::size_t t) {
    return prefix + "t" + std::to_string(t) + "/ref";
  };
  auto rec_uri = [](const std::string& prefix) { return prefix + "record"; };
  auto city_uri = [](const std::string& prefix) { return prefix + "city"; };
  auto zip_uri = [](const std::string& prefix) { return prefix + "zip"; };

  auto build = [&](const std::string& prefix, const std::vector<std::vector<RowData>>& tables) {
    GraphBuilder b;
    for (std::size_t t = 0; t < tables.size(); ++t) {
      for (const RowData& row : tables[t]) {
        NodeId subject = b.add_uri(row_uri(prefix, t, row.key));
        for (std::size_t a = 0; a < row.values.size(); ++a) {
          NodeId pred = b.add_uri(attr_uri(prefix, t, a));
          NodeId obj = b.add_literal(row.values[a]);
          b.add_triple(subject, pred, obj);
        }
        if (row.fk_table >= 0) {
          std::size_t ft = static_cast<std::size_t>(row.fk_table);
          NodeId pred = b.add_uri(fk_uri(prefix, t));
          NodeId obj = b.add_uri(row_uri(prefix, ft, table_rows[ft][row.fk_row].key));
          b.add_triple(subject, pred, obj);
        }
        if (row.has_blank) {
          NodeId rec = b.add_blank();
          b.add_triple(subject, b.add_uri(rec_uri(prefix)), rec);
          b.add_triple(rec, b.add_uri(city_uri(prefix)), b.add_literal(row.blank_city));
          b.add_triple(rec, b.add_uri(zip_uri(prefix)), b.add_literal(row.blank_zip));
        }
      }
    }
    return b.build();
  };

  GeneratedVersions out;
  out.v1 = build(p1, table_rows);
  out.v2 = build(p2, v2_rows);

  // Ground truth: URIs present in both versions under the same local name.
  std::vector<std::string> suffixes;
  for (std::size_t t = 0; t < spec.tables; ++t) {
    for (std::size_t r = 0; r < spec.rows; ++r)
      if (survives[t][r])
        suffixes.push_back("t" + std::to_string(t) + "/row" +
                           std::to_string(table_rows[t][r].key));
  }
  auto add_shared_uri = [&](const std::string& u1, const std::string& u2) {
    if (out.v1.find_uri(u1) != kNoNode && out.v2.find_uri(u2) != kNoNode)
      out.truth.emplace_back("U:" + u1, "U:" + u2);
  };
  for (const std::string& sfx : suffixes) add_shared_uri(p1 + sfx, p2 + sfx);
  for (std::size_t t = 0; t < spec.tables; ++t) {
    for (std::size_t a = 0; a < spec.attrs; ++a)
      add_shared_uri(attr_uri(p1, t, a), attr_uri(p2, t, a));
    add_shared_uri(fk_uri(p1, t), fk_uri(p2, t));
  }
  add_shared_uri(rec_uri(p1), rec_uri(p2));
  add_shared_uri(city_uri(p1), city_uri(p2));
  add_shared_uri(zip_uri(p1), zip_uri(p2));
  std::sort(out.truth.begin(), out.truth.end());
  return out;
}

} // namespace rdfalign
