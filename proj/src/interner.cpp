#include "rdfalign/interner.hpp"

#include <algorithm>
#include <cassert>
#include <cstring>
#include <stdexcept>

namespace rdfalign {

namespace {

void put_u32(std::string& s, std::uint32_t v) {
  char b[4];
  std::memcpy(b, &v, 4);
  s.append(b, 4);
}

void put_u64(std::string& s, std::uint64_t v) {
  char b[8];
  std::memcpy(b, &v, 8);
  s.append(b, 8);
}

std::uint32_t get_u32(const char*& p) {
  std::uint32_t v;
  std::memcpy(&v, p, 4);
  p += 4;
  return v;
}

std::uint64_t get_u64(const char*& p) {
  std::uint64_t v;
  std::memcpy(&v, p, 8);
  p += 8;
  return v;
}

std::string encode_label(const Label& l) {
  std::string key;
  key.push_back('L');
  key.push_back(static_cast<char>(l.kind));
  put_u32(key, static_cast<std::uint32_t>(l.text.size()));
  key.append(l.text);
  put_u32(key, static_cast<std::uint32_t>(l.suffix.size()));
  key.append(l.suffix);
  return key;
}

std::string encode_pairs(Color prev, std::span<const ColorPair> pairs) {
  std::string key;
  key.reserve(1 + 8 + pairs.size() * 8);
  key.push_back('P');
  put_u32(key, prev);
  put_u32(key, static_cast<std::uint32_t>(pairs.size()));
  for (const auto& [a, b] : pairs) {
    put_u32(key, a);
    put_u32(key, b);
  }
  return key;
}

} // namespace

bool ColorDescription::operator==(const ColorDescription& o) const {
  if (kind != o.kind) return false;
  switch (kind) {
    case LabelDesc: return label == o.label;
    case RawNode: return node == o.node;
    case Pairs: return prev == o.prev && pairs == o.pairs;
    case Cluster: return seq == o.seq;
  }
  return false;
}

ColorInterner::ColorInterner() {
  blank_ = label_color(Label::blank());
}

Color ColorInterner::intern_key(std::string&& key) {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = by_key_.find(std::string_view(key));
  if (it != by_key_.end()) return it->second;
  keys_.push_back(std::move(key));
  Color id = static_cast<Color>(keys_.size() - 1);
  by_key_.emplace(std::string_view(keys_.back()), id);
  return id;
}

Color ColorInterner::label_color(const Label& l) {
  return intern_key(encode_label(l));
}

Color ColorInterner::node_color(NodeId n) {
  std::string key;
  key.push_back('N');
  put_u32(key, n);
  return intern_key(std::move(key));
}

Color ColorInterner::pair_color(Color prev, std::vector<ColorPair> pairs) {
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  return intern_key(encode_pairs(prev, pairs));
}

Color ColorInterner::pair_color_sorted(Color prev, std::span<const ColorPair> pairs) {
  assert(std::is_sorted(pairs.begin(), pairs.end()));
  return intern_key(encode_pairs(prev, pairs));
}

bool ColorInterner::signature_matches(Color c, std::span<const ColorPair> pairs) const {
  std::lock_guard<std::mutex> lock(mu_);
  if (c >= keys_.size()) return false;
  const std::string& key = keys_[c];
  if (key.empty() || key[0] != 'P') return false;
  if (key.size() != 1 + 8 + pairs.size() * 8) return false;
  const char* p = key.data() + 5;
  if (get_u32(p) != pairs.size()) return false;
  for (const auto& [a, b] : pairs)
    if (get_u32(p) != a || get_u32(p) != b) return false;
  return true;
}

Color ColorInterner::fresh_cluster_color() {
  std::string key;
  key.push_back('C');
  {
    std::lock_guard<std::mutex> lock(mu_);
    put_u64(key, cluster_seq_++);
  }
  return intern_key(std::move(key));
}

Color ColorInterner::intern(const ColorDescription& d) {
  switch (d.kind) {
    case ColorDescription::LabelDesc: return label_color(d.label);
    case ColorDescription::RawNode: return node_color(d.node);
    case ColorDescription::Pairs: {
      std::vector<ColorPair> pairs = d.pairs;
      return pair_color(d.prev, std::move(pairs));
    }
    case ColorDescription::Cluster: {
      std::string key;
      key.push_back('C');
      put_u64(key, d.seq);
      return intern_key(std::move(key));
    }
  }
  throw std::logic_error("bad description kind");
}

ColorDescription ColorInterner::describe(Color c) const {
  std::lock_guard<std::mutex> lock(mu_);
  if (c >= keys_.size()) throw std::out_of_range("unknown color");
  const std::string& key = keys_[c];
  const char* p = key.data();
  ColorDescription d;
  switch (*p++) {
    case 'L': {
      d.kind = ColorDescription::LabelDesc;
      d.label.kind = static_cast<LabelKind>(*p++);
      std::uint32_t tn = get_u32(p);
      d.label.text.assign(p, tn);
      p += tn;
      std::uint32_t sn = get_u32(p);
      d.label.suffix.assign(p, sn);
      break;
    }
    case 'N':
      d.kind = ColorDescription::RawNode;
      d.node = get_u32(p);
      break;
    case 'P': {
      d.kind = ColorDescription::Pairs;
      d.prev = get_u32(p);
      std::uint32_t n = get_u32(p);
      d.pairs.reserve(n);
      for (std::uint32_t i = 0; i < n; ++i) {
        Color a = get_u32(p);
        Color b = get_u32(p);
        d.pairs.emplace_back(a, b);
      }
      break;
    }
    case 'C':
      d.kind = ColorDescription::Cluster;
      d.seq = get_u64(p);
      break;
    default:
      throw std::logic_error("corrupt interner key");
  }
  return d;
}

ColorDescription::Kind ColorInterner::kind_of(Color c) const {
  std::lock_guard<std::mutex> lock(mu_);
  if (c >= keys_.size()) throw std::out_of_range("unknown color");
  switch (keys_[c][0]) {
    case 'L': return ColorDescription::LabelDesc;
    case 'N': return ColorDescription::RawNode;
    case 'P': return ColorDescription::Pairs;
    case 'C': return ColorDescription::Cluster;
  }
  throw std::logic_error("corrupt interner key");
}

std::size_t ColorInterner::size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return keys_.size();
}

} // namespace rdfalign
