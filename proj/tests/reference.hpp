#pragma once

// Reference numbers and hand-written counters shared by the test binaries.

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>

namespace tricount::reference {

struct Structure {
  const char* name;
  int b, w, m;
  std::size_t aut, min_sets, ordered, orbits;
  std::size_t algorithms;  // distinct algorithms reported for the original generator
};

inline constexpr Structure kStructure[] = {
    {"pasch", 4, 6, 3, 24, 16, 96, 4, 296},
    {"mitre", 5, 7, 3, 12, 30, 180, 15, 1272},
    {"fano-line", 6, 7, 3, 24, 28, 168, 7, 2020},
    {"crown", 6, 8, 3, 2, 46, 276, 138, 7348},
    {"hexagon", 6, 8, 3, 12, 48, 288, 24, 2912},
    {"prism", 6, 9, 4, 12, 75, 1800, 150, 60872},
    {"grid", 6, 9, 4, 72, 81, 1944, 27, 34752},
    {"fano", 7, 7, 3, 168, 28, 168, 1, 828},
    {"moebius-kantor", 8, 8, 3, 48, 48, 288, 6, 9216},
};

// Enumeration statistics as stats_csv_row prints them: n = 4..8, w = 7..12.
inline const char* const kFullRows[] = {
    "4,1,24^1,1,0,0,0,0,0,0",
    "5,1,12^1,1,0,0,0,0,0,0",
    "6,5,2^1 12^2 24^1 72^1,3,2,0,0,0,0,0",
    "7,19,1^3 2^5 4^3 6^5 12^2 168^1,13,6,0,0,0,0,0",
    "8,153,1^58 2^50 3^1 4^22 6^2 8^6 12^3 16^5 24^1 32^1 48^2 64^1 1152^1,98,48,6,1,0,0,0",
};

inline const char* const kW3Rows[] = {
    "7,1,168^1,1,0,0,0,0,0,0",
    "8,1,48^1,1,0,0,0,0,0,0",
    "9,3,9^1 12^1 108^1,3,0,0,0,0,0,0",
    "10,10,2^1 3^2 4^2 6^1 10^1 12^1 24^1 120^1,9,1,0,0,0,0,0",
    "11,31,1^10 2^13 3^1 4^2 6^3 8^1 11^1,31,0,0,0,0,0,0",
    "12,229,1^146 2^60 3^3 4^3 6^8 8^1 12^3 18^1 24^1 32^1 36^1 72^1,224,5,0,0,0,0,0",
};

inline const std::string kFanoWorkedExample =
    "r ← 0\n"
    "for a ← 2 to v-4\n"
    "  for b ← 1 to a-1\n"
    "    e ← B2(b,a)\n"
    "    if e ≤ a continue\n"
    "    for c ← 0 to b-1\n"
    "      g ← B2(c,a)\n"
    "      if g ≤ a continue\n"
    "      d ← B2(e,c)\n"
    "      if d ≤ a continue\n"
    "      if B3(b,d,g) = 0 continue\n"
    "      f ← B2(g,e)\n"
    "      if f ≤ b continue\n"
    "      if B3(a,d,f) = 0 continue\n"
    "      if B3(b,c,f) = 0 continue\n"
    "      r ← r + 1\n"
    "return r\n";

// Pseudocode of the other hand-written counters (the count_builtin sources).
inline const std::map<std::string, std::string> kListings = {
{"pasch", R"(r ← 0
for a ← 0 to v-6
  for b ← a+1 to v-2
    e ← B2(b,a)
    if e ≤ a continue
    for f ← max{b,e}+1 to v-1
      c ← B2(f,a)
      if f ≤ c ∨ c ≤ a continue
      d ← B2(f,e)
      if d ≤ a continue
      if B3(b,c,d) = 0 continue
      r ← r + 1
return r
)"},
{"mitre", R"(r ← 0
for a ← 0 to v-3
  for c ← a+1 to v-2
    f ← B2(c,a)
    for e ← max{c,f}+1 to v-1
      g ← B2(f,e)
      b ← B2(g,a)
      if e ≤ b continue
      d ← B2(g,c)
      if e ≤ d continue
      if B3(b,d,e) = 0 continue
      r ← r + 1
return r
)"},
{"fano-line", R"(r ← 0
for c ← 2 to v-2
  for e ← 0 to c-2
    b ← B2(c,e)
    for f ← e+1 to c-1
      if f = b continue
      g ← B2(f,b)
      if g ≤ c continue
      d ← B2(e,g)
      if B3(c,d,f) = 0 continue
      a ← B2(f,e)
      if B3(a,c,g) = 0 continue
      r ← r + 1
return r
)"},
{"crown", R"(r ← 0
for f ← 0 to v-2
  for e ← 0 to v-1
    if e = f continue
    h ← B2(f,e)
    for g ← f+1 to v-1
      if g ∈ {e,h} continue
      d ← B2(e,g)
      b ← B2(f,d)
      c ← B2(h,g)
      if c = b continue
      a ← B2(f,g)
      if B3(a,b,c) = 0 continue
      r ← r + 1
return r
)"},
{"hexagon", R"(r ← 0
for b ← 0 to v-6
  for c ← b+2 to v-1
    a ← B2(c,b)
    for d ← b+1 to c-1
      if d = a continue
      e ← B2(d,a)
      if e ≤ b continue
      h ← B2(d,b)
      g ← B2(h,c)
      if g ≤ b ∨ g = e continue
      f ← B2(h,e)
      if f ≤ b continue
      if B3(a,f,g) = 0 continue
      r ← r + 1
return r
)"},
{"prism", R"(r ← 0
for a ← 1 to v-2
  for f ← 0 to a-1
    for b ← 0 to v-1
      if b ∈ {a,f} continue
      e ← B2(b,a)
      if e = f continue
      c ← B2(f,b)
      h ← B2(e,c)
      if h ≤ a continue
      for d ← e+1 to v-1
        if d ∈ {a,b,c,f,h} continue
        g ← B2(d,a)
        if g ∈ {c,f,h} continue
        i ← B2(h,d)
        if i ∈ {b,f} continue
        if B3(f,g,i) = 0 continue
        r ← r + 1
return r
)"},
{"grid", R"(r ← 0
for a ← 0 to v-9
  for b ← a+1 to v-3
    d ← B2(b,a)
    if d ≤ b continue
    for e ← d+1 to v-1
      g ← B2(e,a)
      if e ≤ g ∨ g ≤ a continue
      for c ← a+1 to v-1
        if c ∈ {b,d,e,g} continue
        f ← B2(c,b)
        if f ≤ a ∨ f ∈ {e,g} continue
        h ← B2(e,c)
        if h ≤ a ∨ h = d continue
        i ← B2(g,f)
        if i ≤ a ∨ i ∈ {d,h} continue
        if B3(d,h,i) = 0 continue
        r ← r + 1
return r
)"},
{"moebius-kantor", R"(r ← 0
for a ← 1 to v-6
  for b ← a+1 to v-1
    g ← B2(b,a)
    if g ≤ a continue
    for c ← 0 to a-1
      d ← B2(c,a)
      if d ≤ a continue
      h ← B2(c,b)
      if h ≤ a continue
      e ← B2(d,b)
      if e ≤ c continue
      if B3(e,g,h) = 0 continue
      f ← B2(e,a)
      if f ≤ a continue
      if B3(c,f,g) = 0 continue
      if B3(d,f,h) = 0 continue
      r ← r + 1
return r
)"}};

}  // namespace tricount::reference
