#pragma once

#include <string>
#include <variant>
#include <vector>

#include "carleson/embed.hpp"

namespace carleson {

struct LpInput {
  double p = 2;
};

// L^2(0, inf; w dt) with w generated by nu-tilde.
struct WeightedL2Input {
  RadialMeasure nu;
  std::string name;
};

using InputSpace = std::variant<LpInput, WeightedL2Input>;

// "l2", "lp:P", "l2w:lebesgue", "l2w:hardy", "l2w:power:ALPHA" (nu-tilde = r^ALPHA dr).
InputSpace parse_input_space(const std::string& text);
std::string describe(const InputSpace& z);

struct DiagonalSystem {
  std::vector<cplx> lambda;  // eigenvalues, Re < 0
  std::vector<cplx> b;       // control scalars
  double q = 2;
  void validate() const;
};

// sum_k |b_k|^q delta_{-lambda_k}; coinciding atoms are merged.
HalfPlaneMeasure system_measure(const DiagonalSystem& sys);

enum class AdmissRoute { WeightedL2, PprimeLeQ, SectorialQgeP, SectorialPgtQ, Strip, NecessaryOnly };
const char* route_name(AdmissRoute r);

struct AdmissReport {
  AdmissRoute route = AdmissRoute::NecessaryOnly;
  bool admissible = false;
  EmbeddingVerdict verdict;                    // the deciding constant
  std::vector<EmbeddingVerdict> supporting;  // other constants of the same route
  std::string notes;
};

AdmissReport admissibility_verdict(const DiagonalSystem& sys, const InputSpace& z, const GridOptions& opt = {});

}  // namespace carleson
