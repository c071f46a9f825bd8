#pragma once

#include <string>
#include <string_view>

#include "pea/groups.hpp"

namespace pea {

namespace detail {

inline bool consume_word(std::string_view& s, std::string_view w) {
  skip_ws(s);
  if (s.substr(0, w.size()) != w) return false;
  s.remove_prefix(w.size());
  return true;
}

inline std::uint64_t parse_count(std::string_view& s) {
  std::size_t i = 0;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
  if (i == 0 || i > 6) throw parse_error("expected a small positive count at '" + std::string(s) + "'");
  auto v = std::stoull(std::string(s.substr(0, i)));
  s.remove_prefix(i);
  return v;
}

inline GroupPtr parse_group_prefix(std::string_view& s) {
  skip_ws(s);
  if (consume_word(s, "lex(")) {
    auto a = parse_group_prefix(s);
    expect(s, ',');
    auto b = parse_group_prefix(s);
    expect(s, ')');
    return lex(std::move(a), std::move(b));
  }
  if (consume_word(s, "heis")) return heisenberg();
  if (consume_word(s, "finite:")) {
    if (consume_word(s, "S3")) return FiniteGroup::s3();
    if (consume_word(s, "C")) return FiniteGroup::cyclic(static_cast<std::uint32_t>(parse_count(s)));
    throw parse_error("unknown finite group at '" + std::string(s) + "'");
  }
  if (consume_word(s, "Z")) {
    if (!consume_word(s, "^")) return integers();
    auto k = parse_count(s);
    if (k == 0) throw parse_error("Z^0 is not a group descriptor");
    if (!consume_word(s, ":")) return product(k);
    if (consume_word(s, "product")) return product(k);
    if (!consume_word(s, "cone=")) throw parse_error("expected 'product' or 'cone=' at '" + std::string(s) + "'");
    if (k == 2 && consume_word(s, "ex2.9")) return ConeGroup::ex29();
    if (k == 2 && consume_word(s, "ex2.10")) return ConeGroup::ex210();
    std::size_t end = 0;
    while (end < s.size() && s[end] != ',' && s[end] != ')') ++end;
    auto text = s.substr(0, end);
    s.remove_prefix(end);
    return std::make_shared<const ConeGroup>(ConeSpec::parse(text, static_cast<int>(k)));
  }
  throw parse_error("unknown group descriptor at '" + std::string(s) + "'");
}

}  // namespace detail

/// Parses a group descriptor: `Z`, `Z^k:product`, `Z^k:cone=<formula>`
/// (with the named cones `ex2.9`, `ex2.10` on Z^2), `heis`, `finite:S3`,
/// `finite:C<k>` and `lex(<desc>,<desc>)`.
inline GroupPtr parse_group(std::string_view s) {
  auto g = detail::parse_group_prefix(s);
  detail::skip_ws(s);
  if (!s.empty()) throw parse_error("trailing characters after group descriptor: '" + std::string(s) + "'");
  return g;
}

}  // namespace pea
