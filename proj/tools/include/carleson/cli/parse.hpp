#pragma once

#include <string>
#include <utility>
#include <vector>

#include "carleson/measure.hpp"
#include "carleson/transforms.hpp"

namespace carleson::cli {

double parse_number(const std::string& s, const std::string& what);
int parse_int(const std::string& s, const std::string& what);
// comma separated numbers
std::vector<double> parse_list(const std::string& s, const std::string& what);

// "lo..hi" or "lo:hi", inclusive
std::pair<int, int> parse_index_window(const std::string& s);

struct TGrid {
  double lo = -8, hi = 8;
  int count = 512;
};
// "lo:hi:count"
TGrid parse_t_grid(const std::string& s);

// exp:RE[:IM]  monexp:N:RE[:IM]  kernel:LAMBDA:P  phi:U
// expsum:C:L[,C:L...] (real coefficients and exponents)
// lacunary:N_LO:P:A0[,A1...]
TestFunction parse_test_function(const std::string& s);

// "lin" or "pow:S"
Gauge parse_gauge(const std::string& s);

}  // namespace carleson::cli
