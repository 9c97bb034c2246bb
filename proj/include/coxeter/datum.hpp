#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "coxeter/errors.hpp"

namespace coxeter {

enum class Family { A, B, D, E, F, H, I2 };

/// One irreducible factor. For I2 the `rank` is 2 and `m` is the dihedral
/// parameter; otherwise `m` is unused.
struct Factor {
  Family family;
  int rank;
  int m = 0;

  bool is_dihedral() const { return family == Family::I2; }

  std::string name() const {
    switch (family) {
      case Family::A: return "A" + std::to_string(rank);
      case Family::B: return "B" + std::to_string(rank);
      case Family::D: return "D" + std::to_string(rank);
      case Family::E: return "E" + std::to_string(rank);
      case Family::F: return "F" + std::to_string(rank);
      case Family::H: return "H" + std::to_string(rank);
      case Family::I2: return "I2(" + std::to_string(m) + ")";
    }
    return "?";
  }

  friend bool operator==(const Factor&, const Factor&) = default;
};

struct CoxeterDatum {
  std::vector<Factor> factors;

  int rank() const {
    int r = 0;
    for (const auto& f : factors) r += f.rank;
    return r;
  }

  /// E7 and E8 root systems can be built but their groups are never
  /// materialized.
  bool whole_group_supported() const {
    for (const auto& f : factors)
      if (f.family == Family::E && f.rank > 6) return false;
    return true;
  }

  std::string name() const {
    std::string s;
    for (std::size_t i = 0; i < factors.size(); ++i) {
      if (i) s += "x";
      s += factors[i].name();
    }
    return s;
  }

  friend bool operator==(const CoxeterDatum&, const CoxeterDatum&) = default;
};

/// Parses "A3", "B4", "D4", "I2(30)", "H3", "F4", "E6", and products joined
/// by 'x' such as "A2xI2(5)".
inline CoxeterDatum parse_group(std::string_view spec) {
  CoxeterDatum d;
  std::size_t pos = 0;
  auto fail = [&](const std::string& what, std::size_t at) -> ParseError {
    if (at >= spec.size()) return ParseError(what, at, std::string(spec));
    std::size_t end = at;
    while (end < spec.size() && spec[end] != 'x') ++end;
    return ParseError(what, at, std::string(spec.substr(at, std::max<std::size_t>(end - at, 1))));
  };
  auto read_int = [&](std::size_t& p) -> int {
    std::size_t start = p;
    long v = 0;
    while (p < spec.size() && std::isdigit(static_cast<unsigned char>(spec[p]))) {
      v = v * 10 + (spec[p] - '0');
      if (v > 1'000'000) throw fail("integer too large", start);
      ++p;
    }
    if (p == start) throw fail("expected integer", start);
    return static_cast<int>(v);
  };
  if (spec.empty()) throw ParseError("empty group spec", 0, "");
  while (true) {
    std::size_t start = pos;
    if (pos >= spec.size()) throw fail("expected factor", pos);
    char c = spec[pos++];
    Factor f{Family::A, 0};
    switch (c) {
      case 'A': f.family = Family::A; break;
      case 'B': f.family = Family::B; break;
      case 'D': f.family = Family::D; break;
      case 'E': f.family = Family::E; break;
      case 'F': f.family = Family::F; break;
      case 'H': f.family = Family::H; break;
      case 'I': f.family = Family::I2; break;
      default: throw fail("unknown type letter", start);
    }
    if (f.family == Family::I2) {
      if (pos + 1 >= spec.size() || spec[pos] != '2' || spec[pos + 1] != '(')
        throw fail("expected I2(m)", start);
      pos += 2;
      f.m = read_int(pos);
      if (pos >= spec.size() || spec[pos] != ')') throw fail("expected ')'", pos);
      ++pos;
      f.rank = 2;
      if (f.m < 3) throw fail("I2(m) requires m >= 3", start);
    } else {
      f.rank = read_int(pos);
      bool ok = false;
      switch (f.family) {
        case Family::A: ok = f.rank >= 1; break;
        case Family::B: ok = f.rank >= 2; break;
        case Family::D: ok = f.rank >= 4; break;
        case Family::E: ok = f.rank >= 6 && f.rank <= 8; break;
        case Family::F: ok = f.rank == 4; break;
        case Family::H: ok = f.rank == 3 || f.rank == 4; break;
        case Family::I2: break;
      }
      if (!ok) throw fail("no such Coxeter type", start);
    }
    d.factors.push_back(f);
    if (pos == spec.size()) break;
    if (spec[pos] != 'x') throw fail("expected 'x' between factors", pos);
    ++pos;
  }
  return d;
}

}  // namespace coxeter
