#pragma once

// Batch scans of scl([a,b][c,v]) over random reduced words v.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "scl/rational.hpp"
#include "scl/solver.hpp"
#include "scl/word.hpp"

namespace scl {

struct ScanConfig {
  std::vector<std::size_t> lengths;
  std::size_t samples_per_length = 1;
  std::uint64_t seed = 0;
  int rank = 3;
  Mode mode = Mode::Fast;
  double timeout_seconds = 120.0;  // per sample
  unsigned workers = 0;            // 0: hardware concurrency
  bool record_wall_time = false;   // off keeps the CSV byte-identical across runs

  // Throws Errc::InvalidArgument.
  void validate() const;
};

enum class SampleStatus { Ok, Timeout };

const char* status_name(SampleStatus s);

struct ScanRecord {
  std::size_t n = 0;
  std::size_t sample_index = 0;
  Word v;
  Rational scl;  // 0 unless status is Ok
  std::optional<double> wall_ms;
  SampleStatus status = SampleStatus::Ok;
};

// splitmix64 finalizer folded over (seed, n, index).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t n, std::uint64_t index);

// [a,b][c,v]
Word family_word(const Word& v);

// Solves one sample; a timeout is recorded, other errors propagate.
ScanRecord evaluate_sample(const Word& v, std::size_t n, std::size_t sample_index, const ScanConfig& cfg);

// Records sorted by (n, sample_index); independent of the worker count.
std::vector<ScanRecord> run_scan(const ScanConfig& cfg);

struct LengthSummary {
  std::size_t n = 0;
  std::size_t samples = 0;
  std::size_t timeouts = 0;
  // Over Ok records; absent when every sample timed out.
  std::optional<Rational> min, max, mean, median;
};

// One entry per length in increasing order. Throws Errc::EmptyInput.
std::vector<LengthSummary> summarize(std::span<const ScanRecord> records);

// Decreases of the mean between consecutive lengths, and means outside
// [1/2, 3/2]. Reported, never fatal.
std::vector<std::string> trend_warnings(std::span<const LengthSummary> summary);

inline constexpr const char* kCsvHeader = "n,sample_index,v,scl_num,scl_den,wall_ms,status";

std::string to_csv(std::span<const ScanRecord> records);

}  // namespace scl
