#pragma once

#include <span>
#include <vector>

#include "unicorn/types.hpp"

namespace unicorn {

/// Time-delay embedding. Row i holds samples i, i+tau, ..., i+(E-1)tau, so a
/// row represents the state at its first sample and N_e = N - (E-1) tau.
/// Throws ParameterError when the series is too short for (E, tau).
EmbeddedSeries embed(const Series& series, EmbeddingParams params);

/// Normalized autocorrelation of the mean-removed series, direct summation.
/// acf[0] == 1. Throws DegenerateInputError for a constant series and
/// ParameterError when max_lag >= N.
std::vector<double> autocorrelation(const Series& series, int max_lag);

/// Suggested embedding delay: the smallest lag where the acf either crosses
/// zero (the later lag of the sign-changing pair) or attains its first local
/// minimum, whichever comes first. Throws DataError when the acf is monotone
/// and positive throughout.
int first_zero_or_min_delay(std::span<const double> acf);

/// Two-scale kNN intrinsic dimension estimate:
///   d = ln 2 / ln(R_2k / R_k)
/// averaged over points, where R_k is the distance to a point's k-th
/// neighbor. Points with R_k == 0 or R_2k == R_k are excluded; if every point
/// is excluded throws DegenerateInputError. Requires k >= 2 and N_e > 2k.
double intrinsic_dimension(const EmbeddedSeries& embedded, int k);

}  // namespace unicorn
