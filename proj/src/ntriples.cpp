#include "rdfalign/ntriples.hpp"

#include <zlib.h>

#include <array>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

namespace rdfalign {

namespace {

bool is_ws(char c) { return c == ' ' || c == '\t' || c == '\r'; }

void append_utf8(std::string& out, std::uint32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

struct LineParser {
  std::string_view s;
  std::size_t pos = 0;
  std::size_t line;

  explicit LineParser(std::string_view text, std::size_t lineno) : s(text), line(lineno) {}

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(line, what); }

  void skip_ws() {
    while (pos < s.size() && is_ws(s[pos])) ++pos;
  }

  bool at_end() {
    skip_ws();
    return pos >= s.size();
  }

  char peek() const { return pos < s.size() ? s[pos] : '\0'; }

  std::string_view parse_iri() {
    if (peek() != '<') fail("expected '<'");
    std::size_t close = s.find('>', pos + 1);
    if (close == std::string_view::npos) fail("unterminated IRI");
    std::string_view iri = s.substr(pos + 1, close - pos - 1);
    if (iri.empty()) fail("empty IRI");
    pos = close + 1;
    return iri;
  }

  std::string_view parse_blank_label() {
    if (pos + 1 >= s.size() || s[pos] != '_' || s[pos + 1] != ':') fail("expected '_:'");
    std::size_t start = pos + 2;
    std::size_t end = start;
    while (end < s.size() && !is_ws(s[end]) && s[end] != '.') ++end;
    if (end == start) fail("empty blank node label");
    std::string_view name = s.substr(start, end - start);
    pos = end;
    return name;
  }

  std::uint32_t parse_hex(std::size_t count) {
    std::uint32_t v = 0;
    for (std::size_t i = 0; i < count; ++i) {
      if (pos >= s.size()) fail("truncated \\u escape");
      char c = s[pos++];
      v <<= 4;
      if (c >= '0' && c <= '9') v |= static_cast<std::uint32_t>(c - '0');
      else if (c >= 'a' && c <= 'f') v |= static_cast<std::uint32_t>(c - 'a' + 10);
      else if (c >= 'A' && c <= 'F') v |= static_cast<std::uint32_t>(c - 'A' + 10);
      else fail("invalid hex digit in escape");
    }
    return v;
  }

  // Lexical form (unescaped) plus verbatim suffix ("@lang" or "^^<iri>").
  std::pair<std::string, std::string> parse_literal() {
    if (peek() != '"') fail("expected '\"'");
    ++pos;
    std::string text;
    for (;;) {
      if (pos >= s.size()) fail("unterminated literal");
      char c = s[pos];
      if (c == '"') {
        ++pos;
        break;
      }
      if (c == '\\') {
        ++pos;
        if (pos >= s.size()) fail("truncated escape");
        char e = s[pos++];
        switch (e) {
          case '\\': text.push_back('\\'); break;
          case '"': text.push_back('"'); break;
          case 'n': text.push_back('\n'); break;
          case 't': text.push_back('\t'); break;
          case 'r': text.push_back('\r'); break;
          case 'u': append_utf8(text, parse_hex(4)); break;
          default: fail(std::string("unsupported escape \\") + e);
        }
      } else {
        text.push_back(c);
        ++pos;
      }
    }
    std::string suffix;
    if (peek() == '@') {
      std::size_t start = pos;
      ++pos;
      while (pos < s.size() && !is_ws(s[pos]) && s[pos] != '.') ++pos;
      if (pos == start + 1) fail("empty language tag");
      suffix = std::string(s.substr(start, pos - start));
    } else if (pos + 1 < s.size() && s[pos] == '^' && s[pos + 1] == '^') {
      pos += 2;
      if (peek() != '<') fail("expected '<' after '^^'");
      std::string_view dtype = parse_iri();
      suffix = "^^<" + std::string(dtype) + ">";
    }
    return {std::move(text), std::move(suffix)};
  }
};

TripleGraph parse_lines(std::istream& in) {
  GraphBuilder b;
  std::unordered_map<std::string, NodeId> blank_by_label;
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string_view line(raw);
    std::size_t i = 0;
    while (i < line.size() && is_ws(line[i])) ++i;
    if (i >= line.size() || line[i] == '#') continue;
    LineParser p(line, lineno);
    p.pos = i;

    NodeId subj;
    if (p.peek() == '<') {
      subj = b.add_uri(p.parse_iri());
    } else if (p.peek() == '_') {
      std::string key(p.parse_blank_label());
      auto it = blank_by_label.find(key);
      if (it == blank_by_label.end())
        it = blank_by_label.emplace(key, b.add_blank()).first;
      subj = it->second;
    } else if (p.peek() == '"') {
      p.fail("literal in subject position");
    } else {
      p.fail("expected IRI or blank node in subject position");
    }

    p.skip_ws();
    if (p.peek() == '"') p.fail("literal in predicate position");
    if (p.peek() == '_') p.fail("blank node in predicate position");
    NodeId pred = b.add_uri(p.parse_iri());

    p.skip_ws();
    NodeId obj;
    if (p.peek() == '<') {
      obj = b.add_uri(p.parse_iri());
    } else if (p.peek() == '_') {
      std::string key(p.parse_blank_label());
      auto it = blank_by_label.find(key);
      if (it == blank_by_label.end())
        it = blank_by_label.emplace(key, b.add_blank()).first;
      obj = it->second;
    } else if (p.peek() == '"') {
      auto [text, suffix] = p.parse_literal();
      obj = b.add_literal(text, suffix);
    } else {
      p.fail("expected IRI, blank node, or literal in object position");
    }

    p.skip_ws();
    if (p.peek() != '.') p.fail("expected '.'");
    ++p.pos;
    if (!p.at_end()) p.fail("trailing content after '.'");

    b.add_triple(subj, pred, obj);
  }
  return b.build();
}

std::string gunzip(std::string_view data) {
  z_stream zs;
  std::memset(&zs, 0, sizeof(zs));
  if (inflateInit2(&zs, 15 + 32) != Z_OK)
    throw std::runtime_error("zlib init failed");
  std::string out;
  std::array<char, 1 << 16> buf;
  zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(data.data()));
  zs.avail_in = static_cast<uInt>(data.size());
  int rc = Z_OK;
  while (rc != Z_STREAM_END) {
    zs.next_out = reinterpret_cast<Bytef*>(buf.data());
    zs.avail_out = static_cast<uInt>(buf.size());
    rc = inflate(&zs, Z_NO_FLUSH);
    if (rc != Z_OK && rc != Z_STREAM_END) {
      inflateEnd(&zs);
      throw std::runtime_error("corrupt gzip stream");
    }
    out.append(buf.data(), buf.size() - zs.avail_out);
  }
  inflateEnd(&zs);
  return out;
}

void escape_literal(std::string_view text, std::ostream& out) {
  for (char c : text) {
    switch (c) {
      case '\\': out << "\\\\"; break;
      case '"': out << "\\\""; break;
      case '\n': out << "\\n"; break;
      case '\t': out << "\\t"; break;
      case '\r': out << "\\r"; break;
      default: out << c;
    }
  }
}

} // namespace

TripleGraph parse_ntriples(std::istream& in) {
  // Peek for the gzip magic; if present, slurp and inflate.
  int c0 = in.peek();
  if (c0 == 0x1f) {
    std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (data.size() >= 2 && static_cast<unsigned char>(data[0]) == 0x1f &&
        static_cast<unsigned char>(data[1]) == 0x8b) {
      std::istringstream plain(gunzip(data));
      return parse_lines(plain);
    }
    std::istringstream plain(std::move(data));
    return parse_lines(plain);
  }
  return parse_lines(in);
}

TripleGraph parse_ntriples(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_ntriples(in);
}

TripleGraph parse_ntriples_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parse_ntriples(in);
}

void serialize_ntriples(const TripleGraph& g, std::ostream& out) {
  auto emit = [&](NodeId n, bool object_position) {
    const Label& l = g.label(n);
    switch (l.kind) {
      case LabelKind::Uri:
        out << '<' << l.text << '>';
        break;
      case LabelKind::Blank:
        out << "_:b" << n;
        break;
      case LabelKind::Literal:
        (void)object_position;
        out << '"';
        escape_literal(l.text, out);
        out << '"' << l.suffix;
        break;
    }
  };
  for (const Triple& t : g.triples()) {
    emit(t.s, false);
    out << ' ';
    emit(t.p, false);
    out << ' ';
    emit(t.o, true);
    out << " .\n";
  }
}

std::string serialize_ntriples(const TripleGraph& g) {
  std::ostringstream out;
  serialize_ntriples(g, out);
  return out.str();
}

} // namespace rdfalign
