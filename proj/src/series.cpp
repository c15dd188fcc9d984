#include "pbrl/series.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace pbrl {

namespace {

std::int16_t clamp_sample(long v) {
  if (v < kMinSample) return static_cast<std::int16_t>(kMinSample);
  if (v > kMaxSample) return static_cast<std::int16_t>(kMaxSample);
  return static_cast<std::int16_t>(v);
}

}  // namespace

StridedCursor::StridedCursor(const SampleSeries& series, std::size_t stride, std::size_t start)
    : series_(&series), stride_(stride), pos_(0) {
  if (series.samples.empty()) throw std::invalid_argument("empty series");
  if (stride == 0) throw std::invalid_argument("stride must be >= 1");
  pos_ = start % series.samples.size();
}

int StridedCursor::next() {
  const int value = series_->samples[pos_];
  pos_ = (pos_ + stride_) % series_->samples.size();
  return value;
}

SampleSeries series_from_bytes(const std::vector<unsigned char>& bytes, double base_period_ps) {
  if (bytes.empty()) throw std::invalid_argument("empty series");
  SampleSeries out;
  out.base_period_ps = base_period_ps;
  out.samples.reserve(bytes.size());
  for (unsigned char u : bytes) {
    out.samples.push_back(static_cast<std::int16_t>(static_cast<int>(u) - 127));
  }
  return out;
}

SampleSeries series_from_text(std::istream& in, double base_period_ps) {
  SampleSeries out;
  out.base_period_ps = base_period_ps;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    // allow blank lines and trailing whitespace
    std::size_t begin = line.find_first_not_of(" \t\r");
    if (begin == std::string::npos) continue;
    long v = 0;
    try {
      v = std::stol(line.substr(begin));
    } catch (const std::exception&) {
      throw std::invalid_argument("line " + std::to_string(line_no) + ": not an integer");
    }
    if (v < kMinSample || v > kMaxSample) {
      throw std::invalid_argument("line " + std::to_string(line_no) + ": sample " +
                                  std::to_string(v) + " outside [-127, 128]");
    }
    out.samples.push_back(static_cast<std::int16_t>(v));
  }
  if (out.samples.empty()) throw std::invalid_argument("empty series");
  return out;
}

namespace {

bool has_suffix(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace

SampleSeries load_series(const std::string& path, double base_period_ps) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open series file '" + path + "'");
  SampleSeries out;
  if (has_suffix(path, ".txt")) {
    out = series_from_text(in, base_period_ps);
  } else {
    std::vector<unsigned char> bytes{std::istreambuf_iterator<char>(in),
                                     std::istreambuf_iterator<char>()};
    out = series_from_bytes(bytes, base_period_ps);
  }
  out.label = path;
  return out;
}

void save_series(const SampleSeries& series, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write series file '" + path + "'");
  if (has_suffix(path, ".txt")) {
    for (int v : series.samples) out << v << '\n';
  } else {
    for (int v : series.samples) out.put(static_cast<char>(static_cast<unsigned char>(v + 127)));
  }
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

SampleSeries gen_synthetic_chaos(std::size_t length, int lag, std::uint64_t seed) {
  if (lag < 1) throw std::invalid_argument("lag must be >= 1");
  if (length <= static_cast<std::size_t>(lag)) {
    throw std::invalid_argument("length must exceed lag");
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> white(0.0, 1.0);
  // x_t = s * (w_t - w_{t-lag}); the difference has variance 2, so s = 40/sqrt(2)
  // puts the clamped standard deviation near 40.
  const double scale = 40.0 / std::sqrt(2.0);
  std::vector<double> w(length + static_cast<std::size_t>(lag));
  for (double& v : w) v = white(rng);
  SampleSeries out;
  out.label = "synthetic-chaos(lag=" + std::to_string(lag) + ")";
  out.samples.resize(length);
  for (std::size_t i = 0; i < length; ++i) {
    out.samples[i] = clamp_sample(std::lround(scale * (w[i + lag] - w[i])));
  }
  return out;
}

SampleSeries gen_uniform(std::size_t length, std::uint64_t seed) {
  if (length < 1) throw std::invalid_argument("length must be >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dist(kMinSample, kMaxSample);
  SampleSeries out;
  out.label = "uniform";
  out.samples.resize(length);
  for (auto& s : out.samples) s = static_cast<std::int16_t>(dist(rng));
  return out;
}

SampleSeries gen_normal(std::size_t length, double sigma, std::uint64_t seed) {
  if (length < 1) throw std::invalid_argument("length must be >= 1");
  if (!(sigma > 0)) throw std::invalid_argument("sigma must be > 0");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist(0.0, sigma);
  SampleSeries out;
  out.label = "normal(sigma=" + std::to_string(sigma) + ")";
  out.samples.resize(length);
  for (auto& s : out.samples) s = clamp_sample(std::lround(dist(rng)));
  return out;
}

SampleSeries shuffle_surrogate(const SampleSeries& series, std::uint64_t seed) {
  if (series.samples.empty()) throw std::invalid_argument("empty series");
  SampleSeries out = series;
  out.label = "surrogate(" + series.label + ")";
  std::mt19937_64 rng(seed);
  std::shuffle(out.samples.begin(), out.samples.end(), rng);
  return out;
}

AutocorrelationProfile autocorrelation(const SampleSeries& series, int max_lag) {
  const std::size_t n = series.samples.size();
  if (max_lag < 1) throw std::invalid_argument("max_lag must be >= 1");
  if (n <= static_cast<std::size_t>(max_lag) + 1) {
    throw std::invalid_argument("series too short for requested max_lag");
  }
  double mean = 0.0;
  for (int v : series.samples) mean += v;
  mean /= static_cast<double>(n);
  double denom = 0.0;
  for (int v : series.samples) {
    const double d = v - mean;
    denom += d * d;
  }
  if (denom == 0.0) throw std::runtime_error("degenerate series");
  AutocorrelationProfile profile;
  profile.lags.reserve(max_lag);
  profile.rho.reserve(max_lag);
  for (int k = 1; k <= max_lag; ++k) {
    double num = 0.0;
    for (std::size_t t = 0; t + k < n; ++t) {
      num += (series.samples[t] - mean) * (series.samples[t + k] - mean);
    }
    profile.lags.push_back(k);
    profile.rho.push_back(num / denom);
  }
  return profile;
}

int UniformStream::next() {
  return std::uniform_int_distribution<int>(kMinSample, kMaxSample)(rng_);
}

NormalStream::NormalStream(double sigma, std::uint64_t seed) : rng_(seed), dist_(0.0, sigma) {
  if (!(sigma > 0)) throw std::invalid_argument("sigma must be > 0");
}

int NormalStream::next() {
  return clamp_sample(std::lround(dist_(rng_)));
}

}  // namespace pbrl
