#include "rdfalign/node_key.hpp"

#include <algorithm>
#include <array>
#include <cstring>
#include <deque>

namespace rdfalign {

namespace {

std::uint32_t rotl(std::uint32_t v, int s) { return (v << s) | (v >> (32 - s)); }

} // namespace

std::string sha1_hex(std::string_view data) {
  std::uint32_t h[5] = {0x67452301u, 0xEFCDAB89u, 0x98BADCFEu, 0x10325476u, 0xC3D2E1F0u};

  std::string msg(data);
  const std::uint64_t bits = static_cast<std::uint64_t>(msg.size()) * 8;
  msg.push_back(static_cast<char>(0x80));
  while (msg.size() % 64 != 56) msg.push_back('\0');
  for (int i = 7; i >= 0; --i) msg.push_back(static_cast<char>((bits >> (i * 8)) & 0xFF));

  std::uint32_t w[80];
  for (std::size_t off = 0; off < msg.size(); off += 64) {
    for (int i = 0; i < 16; ++i) {
      w[i] = (static_cast<std::uint32_t>(static_cast<unsigned char>(msg[off + i * 4])) << 24) |
             (static_cast<std::uint32_t>(static_cast<unsigned char>(msg[off + i * 4 + 1])) << 16) |
             (static_cast<std::uint32_t>(static_cast<unsigned char>(msg[off + i * 4 + 2])) << 8) |
             static_cast<std::uint32_t>(static_cast<unsigned char>(msg[off + i * 4 + 3]));
    }
    for (int i = 16; i < 80; ++i) w[i] = rotl(w[i - 3] ^ w[i - 8] ^ w[i - 14] ^ w[i - 16], 1);
    std::uint32_t a = h[0], b = h[1], c = h[2], d = h[3], e = h[4];
    for (int i = 0; i < 80; ++i) {
      std::uint32_t f, k;
      if (i < 20) {
        f = (b & c) | (~b & d);
        k = 0x5A827999u;
      } else if (i < 40) {
        f = b ^ c ^ d;
        k = 0x6ED9EBA1u;
      } else if (i < 60) {
        f = (b & c) | (b & d) | (c & d);
        k = 0x8F1BBCDCu;
      } else {
        f = b ^ c ^ d;
        k = 0xCA62C1D6u;
      }
      std::uint32_t tmp = rotl(a, 5) + f + e + k + w[i];
      e = d;
      d = c;
      c = rotl(b, 30);
      b = a;
      a = tmp;
    }
    h[0] += a;
    h[1] += b;
    h[2] += c;
    h[3] += d;
    h[4] += e;
  }

  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(40);
  for (std::uint32_t v : h)
    for (int i = 7; i >= 0; --i) out.push_back(hex[(v >> (i * 4)) & 0xF]);
  return out;
}

std::vector<std::string> node_keys(const TripleGraph& g) {
  std::vector<std::string> keys(g.node_count());
  std::vector<std::uint32_t> blank_index(g.node_count(), 0);

  for (int side = 0; side < 2; ++side) {
    Origin origin = static_cast<Origin>(side);
    // Seeds: non-blank nodes of the side in label order.
    std::vector<NodeId> seeds;
    for (NodeId n = 0; n < g.node_count(); ++n)
      if (g.origin(n) == origin && !g.label(n).is_blank()) seeds.push_back(n);
    std::sort(seeds.begin(), seeds.end(),
              [&](NodeId a, NodeId b) { return g.label(a) < g.label(b); });

    std::vector<char> visited(g.node_count(), 0);
    std::uint32_t next_index = 0;
    std::deque<NodeId> queue;
    auto visit = [&](NodeId n) {
      if (visited[n]) return;
      visited[n] = 1;
      if (g.label(n).is_blank()) blank_index[n] = next_index++;
      queue.push_back(n);
    };
    for (NodeId s : seeds) visit(s);
    auto drain = [&]() {
      while (!queue.empty()) {
        NodeId n = queue.front();
        queue.pop_front();
        for (const auto& [p, o] : g.out_file_order(n)) {
          visit(p);
          visit(o);
        }
      }
    };
    drain();
    // Blank-rooted components unreachable from any non-blank node: seed them
    // in triple file order.
    for (const Triple& t : g.triples()) {
      if (g.origin(t.s) != origin) continue;
      if (!visited[t.s]) {
        visit(t.s);
        drain();
      }
      if (!visited[t.o]) {
        visit(t.o);
        drain();
      }
    }
    // Isolated blanks, in node order.
    for (NodeId n = 0; n < g.node_count(); ++n)
      if (g.origin(n) == origin && !visited[n] && g.label(n).is_blank())
        blank_index[n] = next_index++;
  }

  for (NodeId n = 0; n < g.node_count(); ++n) {
    const Label& l = g.label(n);
    switch (l.kind) {
      case LabelKind::Uri:
        keys[n] = "U:" + l.text;
        break;
      case LabelKind::Literal:
        keys[n] = "L:" + sha1_hex(l.full_text());
        break;
      case LabelKind::Blank:
        keys[n] = "B:" + std::to_string(g.origin(n) == Origin::Source ? 1 : 2) + ":" +
                  std::to_string(blank_index[n]);
        break;
    }
  }
  return keys;
}

} // namespace rdfalign
