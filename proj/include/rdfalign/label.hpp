#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace rdfalign {

enum class LabelKind : std::uint8_t { Uri = 0, Literal = 1, Blank = 2 };

// Node label: a URI string, a literal lexical form (plus optional
// datatype/language suffix kept verbatim, e.g. "@en" or "^^<...>"),
// or the single anonymous blank value. Blank document labels are not
// retained after parsing.
struct Label {
  LabelKind kind = LabelKind::Blank;
  std::string text;   // URI string or literal lexical form (unescaped)
  std::string suffix; // literal datatype/langtag suffix, verbatim; empty otherwise

  static Label uri(std::string t);
  static Label literal(std::string t, std::string sfx = {});
  static Label blank();

  bool is_uri() const { return kind == LabelKind::Uri; }
  bool is_literal() const { return kind == LabelKind::Literal; }
  bool is_blank() const { return kind == LabelKind::Blank; }

  // Full lexical identity of the label; for literals this includes the suffix.
  std::string full_text() const;

  bool operator==(const Label& o) const {
    return kind == o.kind && text == o.text && suffix == o.suffix;
  }
  bool operator<(const Label& o) const;
};

struct LabelHash {
  std::size_t operator()(const Label& l) const;
};

} // namespace rdfalign
