#pragma once

#include <optional>
#include <string>

#include "unicorn/types.hpp"

namespace unicorn {

/// y_t = log(x_t) - log(x_{t-1}); length N-1, dt preserved, t0 shifted by
/// one sample. Throws DataError naming the first nonpositive value.
Series log_difference(const Series& series);

/// y_t = x_t - x_{t-1}; length N-1, dt preserved, t0 shifted by one sample.
Series first_difference(const Series& series);

/// Zero-phase frequency-domain bandpass: forward FFT, zero every bin outside
/// [lo_hz, hi_hz] with a raised-cosine taper of width 5% of each edge
/// frequency, inverse FFT. Length and dt preserved.
Series bandpass(const Series& series, double lo_hz, double hi_hz);

enum class CsvFormat {
  csv_single_column,  ///< one value per line
  csv_t_value,        ///< "t,value" rows, optional header; dt from timestamps
};

/// Loads a plain numeric series. For csv_t_value the sampling period is
/// detected from the timestamps and must be uniform within 1e-9 * dt;
/// dt_override takes precedence for csv_single_column (default 1.0).
/// Parse failures raise DataError with the offending line number.
Series load_series(const std::string& path, CsvFormat format,
                   std::optional<double> dt_override = std::nullopt);

}  // namespace unicorn
