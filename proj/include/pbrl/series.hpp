#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <random>
#include <string>
#include <vector>

namespace pbrl {

// Integer signal levels live in [-127, 128] (offset-binary byte range).
inline constexpr int kMinSample = -127;
inline constexpr int kMaxSample = 128;

/// A finite sequence of integer signal levels with provenance metadata.
struct SampleSeries {
  std::vector<std::int16_t> samples;
  double base_period_ps = 10.0;  // duration represented by one raw sample
  std::string label;

  std::size_t size() const { return samples.size(); }
};

/// Reads the sample under the cursor, then advances by `stride`,
/// wrapping modulo the series length.
class StridedCursor {
 public:
  StridedCursor(const SampleSeries& series, std::size_t stride, std::size_t start = 0);

  int next();

  std::size_t stride() const { return stride_; }
  std::size_t position() const { return pos_; }

 private:
  const SampleSeries* series_;
  std::size_t stride_;
  std::size_t pos_;
};

struct AutocorrelationProfile {
  std::vector<int> lags;     // 1..max_lag
  std::vector<double> rho;   // sample autocorrelation at each lag
};

// --- ingestion -------------------------------------------------------------

/// Offset-binary decoding: each byte u becomes the sample u - 127.
SampleSeries series_from_bytes(const std::vector<unsigned char>& bytes,
                               double base_period_ps = 10.0);

/// One integer per line; values must already be in [-127, 128].
SampleSeries series_from_text(std::istream& in, double base_period_ps = 10.0);

/// Dispatches on extension: ".bin" offset-binary bytes, ".txt" one integer per line.
SampleSeries load_series(const std::string& path, double base_period_ps = 10.0);

/// Inverse of load_series; ".bin" re-encodes samples as sample + 127.
void save_series(const SampleSeries& series, const std::string& path);

// --- generation ------------------------------------------------------------

/// Lag-differenced white Gaussian noise, quantized and clamped to the signal
/// range. The resulting sample autocorrelation is -0.5 at `lag` and ~0 at
/// other lags below it; the clamped standard deviation is ~40.
SampleSeries gen_synthetic_chaos(std::size_t length, int lag, std::uint64_t seed);

/// Integers drawn uniformly from {-127, ..., 128}.
SampleSeries gen_uniform(std::size_t length, std::uint64_t seed);

/// round(N(0, sigma)) clamped to [-127, 128].
SampleSeries gen_normal(std::size_t length, double sigma, std::uint64_t seed);

/// Uniform random permutation of the input samples; destroys autocorrelation
/// while preserving the value histogram exactly.
SampleSeries shuffle_surrogate(const SampleSeries& series, std::uint64_t seed);

// --- characterization ------------------------------------------------------

/// rho(k) = sum_t (x_t - mean)(x_{t+k} - mean) / sum_t (x_t - mean)^2,
/// for k = 1..max_lag. Throws on a zero-variance series.
AutocorrelationProfile autocorrelation(const SampleSeries& series, int max_lag);

// --- per-round decision streams ---------------------------------------------

/// One signal level per decision. Implementations are single-owner mutable
/// state; one stream per learning round.
class SampleStream {
 public:
  virtual ~SampleStream() = default;
  virtual int next() = 0;
};

/// Strided walk over a shared immutable series.
class CursorStream final : public SampleStream {
 public:
  CursorStream(const SampleSeries& series, std::size_t stride, std::size_t start)
      : cursor_(series, stride, start) {}
  int next() override { return cursor_.next(); }

 private:
  StridedCursor cursor_;
};

/// Fresh uniform draws from {-127, ..., 128}.
class UniformStream final : public SampleStream {
 public:
  explicit UniformStream(std::uint64_t seed) : rng_(seed) {}
  int next() override;

 private:
  std::mt19937_64 rng_;
};

/// Fresh draws of round(N(0, sigma)) clamped to the signal range.
class NormalStream final : public SampleStream {
 public:
  NormalStream(double sigma, std::uint64_t seed);
  int next() override;

 private:
  std::mt19937_64 rng_;
  std::normal_distribution<double> dist_;
};

}  // namespace pbrl
