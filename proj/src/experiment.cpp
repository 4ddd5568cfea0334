#include "scl/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "scl/error.hpp"

namespace scl {

void ScanConfig::validate() const {
  if (lengths.empty()) throw Error(Errc::InvalidArgument, "no lengths given");
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    if (lengths[i] == 0) throw Error(Errc::InvalidArgument, "lengths must be positive");
    if (i > 0 && lengths[i] <= lengths[i - 1])
      throw Error(Errc::InvalidArgument, "lengths must be strictly increasing");
  }
  if (samples_per_length < 1) throw Error(Errc::InvalidArgument, "samples per length must be at least 1");
  if (rank < 1 || rank > kMaxRank) throw Error(Errc::InvalidArgument, "rank must be in 1..26");
  if (!(timeout_seconds > 0)) throw Error(Errc::InvalidArgument, "timeout must be positive");
}

const char* status_name(SampleStatus s) { return s == SampleStatus::Ok ? "ok" : "timeout"; }

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t n, std::uint64_t index) {
  return splitmix64(splitmix64(splitmix64(seed) ^ n) ^ index);
}

Word family_word(const Word& v) {
  const Word a(std::vector<Letter>{Letter(0, false)});
  const Word b(std::vector<Letter>{Letter(1, false)});
  const Word c(std::vector<Letter>{Letter(2, false)});
  return commutator(a, b) * commutator(c, v);
}

ScanRecord evaluate_sample(const Word& v, std::size_t n, std::size_t sample_index, const ScanConfig& cfg) {
  ScanRecord rec;
  rec.n = n;
  rec.sample_index = sample_index;
  rec.v = v;
  const auto start = std::chrono::steady_clock::now();
  SclOptions opts;
  opts.mode = cfg.mode;
  opts.deadline = start + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                              std::chrono::duration<double>(cfg.timeout_seconds));
  try {
    rec.scl = scl(Chain::from_word(family_word(v)), opts).value;
    rec.status = SampleStatus::Ok;
  } catch (const Error& e) {
    if (e.code() != Errc::Timeout) throw;
    rec.scl = 0;
    rec.status = SampleStatus::Timeout;
  }
  if (cfg.record_wall_time)
    rec.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

std::vector<ScanRecord> run_scan(const ScanConfig& cfg) {
  cfg.validate();
  struct Job {
    std::size_t n, index;
  };
  std::vector<Job> jobs;
  for (std::size_t n : cfg.lengths)
    for (std::size_t i = 0; i < cfg.samples_per_length; ++i) jobs.push_back({n, i});
  // Longest first so the pool drains evenly.
  std::stable_sort(jobs.begin(), jobs.end(), [](const Job& x, const Job& y) { return x.n > y.n; });

  std::vector<ScanRecord> records(jobs.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::size_t k = next++; k < jobs.size(); k = next++) {
      try {
        const Job& j = jobs[k];
        const Word v = random_reduced_word(j.n, cfg.rank, derive_seed(cfg.seed, j.n, j.index));
        records[k] = evaluate_sample(v, j.n, j.index, cfg);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = jobs.size();
      }
    }
  };
  unsigned workers = cfg.workers ? cfg.workers : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, jobs.size()));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < workers; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  std::sort(records.begin(), records.end(), [](const ScanRecord& x, const ScanRecord& y) {
    return std::pair(x.n, x.sample_index) < std::pair(y.n, y.sample_index);
  });
  return records;
}

std::vector<LengthSummary> summarize(std::span<const ScanRecord> records) {
  if (records.empty()) throw Error(Errc::EmptyInput, "no records to summarize");
  std::map<std::size_t, std::vector<const ScanRecord*>> by_length;
  for (const ScanRecord& r : records) by_length[r.n].push_back(&r);

  std::vector<LengthSummary> out;
  for (const auto& [n, recs] : by_length) {
    LengthSummary s;
    s.n = n;
    s.samples = recs.size();
    std::vector<Rational> values;
    for (const ScanRecord* r : recs) {
      if (r->status == SampleStatus::Timeout)
        ++s.timeouts;
      else
        values.push_back(r->scl);
    }
    if (!values.empty()) {
      std::sort(values.begin(), values.end());
      s.min = values.front();
      s.max = values.back();
      Rational total = 0;
      for (const Rational& v : values) total += v;
      Rational mean = total / static_cast<long>(values.size());
      mean.canonicalize();
      s.mean = mean;
      const std::size_t k = values.size();
      Rational median = k % 2 ? values[k / 2] : (values[k / 2 - 1] + values[k / 2]) / 2;
      median.canonicalize();
      s.median = median;
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<std::string> trend_warnings(std::span<const LengthSummary> summary) {
  std::vector<std::string> warnings;
  const Rational lo = make_rational(1, 2), hi = make_rational(3, 2);
  const LengthSummary* prev = nullptr;
  for (const LengthSummary& s : summary) {
    if (!s.mean) continue;
    if (*s.mean < lo || *s.mean > hi)
      warnings.push_back("mean at n=" + std::to_string(s.n) + " is outside [1/2, 3/2]");
    if (prev && *s.mean < *prev->mean)
      warnings.push_back("mean decreases from n=" + std::to_string(prev->n) + " (" + to_string(*prev->mean) +
                         ") to n=" + std::to_string(s.n) + " (" + to_string(*s.mean) + ")");
    prev = &s;
  }
  return warnings;
}

std::string to_csv(std::span<const ScanRecord> records) {
  std::ostringstream out;
  out << kCsvHeader << '\n';
  for (const ScanRecord& r : records) {
    out << r.n << ',' << r.sample_index << ',' << r.v.str() << ',';
    if (r.status == SampleStatus::Ok) out << r.scl.get_num() << ',' << r.scl.get_den();
    else out << ',';
    out << ',';
    if (r.wall_ms) {
      std::ostringstream ms;
      ms.setf(std::ios::fixed);
      ms.precision(3);
      ms << *r.wall_ms;
      out << ms.str();
    }
    out << ',' << status_name(r.status) << '\n';
  }
  return out.str();
}

}  // namespace scl
