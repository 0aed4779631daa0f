#ifndef QG_NUMERIC_HPP
#define QG_NUMERIC_HPP

#include <random>

#include "qg/calculus.hpp"

namespace qg {

// Every registered variable on the unit circle, uniform phase.
std::vector<Complex> random_unit_point(std::mt19937_64& rng);

struct NumericOptions {
  int trials = 100;
  unsigned seed = 1;
  double tol = 1e-10;
  int lambda_trials = -1;       // -1: same as trials
  std::size_t spectral_rows = 8;  // rows of the seven-factor product per trial
};

// Complex-double backend against the exact one at random unit-modulus points:
// R, projectors and Lambda entrywise (relative error), plus the Yang-Baxter,
// projector and spectral identities evaluated numerically. cd may be null.
Report numeric_crosscheck(const RMatrixData& d, const CalculusData* cd, const NumericOptions& opt = {});

}  // namespace qg

#endif
