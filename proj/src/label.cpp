#include "rdfalign/label.hpp"

#include <functional>
#include <tuple>

namespace rdfalign {

Label Label::uri(std::string t) {
  Label l;
  l.kind = LabelKind::Uri;
  l.text = std::move(t);
  return l;
}

Label Label::literal(std::string t, std::string sfx) {
  Label l;
  l.kind = LabelKind::Literal;
  l.text = std::move(t);
  l.suffix = std::move(sfx);
  return l;
}

Label Label::blank() { return Label{}; }

std::string Label::full_text() const {
  if (suffix.empty()) return text;
  return text + suffix;
}

bool Label::operator<(const Label& o) const {
  return std::tie(kind, text, suffix) < std::tie(o.kind, o.text, o.suffix);
}

std::size_t LabelHash::operator()(const Label& l) const {
  std::size_t h = std::hash<std::string>{}(l.text);
  h ^= std::hash<std::string>{}(l.suffix) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  h ^= static_cast<std::size_t>(l.kind) * 0x100000001b3ULL;
  return h;
}

} // namespace rdfalign
