#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "tricount/config.hpp"

namespace tricount {

inline constexpr int kMaxFullLines = 9;
inline constexpr int kMaxW3Points = 13;

/// One representative per isomorphism class of full n-line configurations
/// (every point on at least two lines), sorted by canonical form.
/// Throws LimitError outside 1..kMaxFullLines.
std::vector<Configuration> enumerate_full(int n);

/// One representative per isomorphism class of w_3 configurations.
/// Throws LimitError outside 7..kMaxW3Points (smaller w have no classes).
std::vector<Configuration> enumerate_w3(int w);

struct EnumStats {
  int parameter = 0;
  std::size_t classes = 0;
  std::map<std::size_t, std::size_t> aut_distribution;  // |Aut| -> frequency
  std::map<int, std::size_t> gen_size_distribution;     // m -> frequency
};

EnumStats tabulate(int parameter, const std::vector<Configuration>& configs);

/// "n,N,aut,N3,...,N9" rows; the aut column reads like "1^3 2^5".
std::string stats_csv_header(const std::string& parameter_name);
std::string stats_csv_row(const EnumStats& stats);
std::string format_aut_distribution(const EnumStats& stats);

}  // namespace tricount
