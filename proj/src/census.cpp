#include "inscribed/census.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <thread>

#include "inscribed/genericity.hpp"
#include "inscribed/triangle_loops.hpp"

namespace inscribed {

Polygon census_polygon(int sides, std::uint64_t seed, double radial, double epsilon) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> jitter(-radial, radial);
  std::vector<Point> v;
  for (int i = 0; i < sides; ++i) {
    const double r = 1.0 + jitter(rng);
    const double a = 2 * std::numbers::pi * i / sides;
    v.push_back({r * std::cos(a), r * std::sin(a)});
  }
  return slide_perturb(Polygon(std::move(v)), epsilon, seed);
}

std::vector<int> census_side_counts(int lo, int hi) {
  std::vector<int> odd, all;
  for (int n = std::max(lo, 3); n <= hi; ++n) {
    all.push_back(n);
    if (n % 2) odd.push_back(n);
  }
  if (all.empty()) throw Error(ErrorKind::PreconditionFailed, "empty side range");
  return odd.empty() ? all : odd;
}

bool CensusEntry::theorems_hold() const {
  return !error && parity.parity_ok && parity.omega % 2 == 1 && parity.graceful_square_count % 2 == 1 &&
         ungood_components == 0 && triangles_verified;
}

namespace {

std::uint64_t entry_seed(std::uint64_t base, int index, int attempt) {
  std::seed_seq seq{static_cast<std::uint32_t>(base), static_cast<std::uint32_t>(base >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(attempt)};
  std::array<std::uint32_t, 2> out{};
  seq.generate(out.begin(), out.end());
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

bool resample_on(ErrorKind kind) {
  return kind == ErrorKind::NotGeneric || kind == ErrorKind::EventCollision || kind == ErrorKind::PerturbationFailed ||
         kind == ErrorKind::DegenerateConfiguration;
}

CensusEntry run_one(const CensusOptions& options, const std::vector<int>& sides, int index) {
  CensusEntry entry;
  entry.index = index;
  entry.sides = sides[index % sides.size()];
  const auto start = std::chrono::steady_clock::now();
  for (int attempt = 0; attempt < options.max_attempts; ++attempt) {
    entry.attempts = attempt + 1;
    entry.seed = entry_seed(options.seed, index, attempt);
    entry.error.reset();
    entry.message.clear();
    try {
      Polygon polygon = census_polygon(entry.sides, entry.seed, options.radial, options.epsilon);
      entry.polygon = polygon;
      Analysis analysis = analyze(polygon, options.trace);
      entry.parity = analysis.parity;
      entry.labeled_square_count = analysis.labeled_square_count;
      entry.ungood_components = 0;
      for (const Component& c : analysis.components)
        if (c.is_global() && c.gracefulness != CyclicOrder::Graceful) ++entry.ungood_components;
      entry.triangles_verified = verify_no_ungraceful_elliptic(analysis).verified;
      if (options.keep_analyses) entry.analysis = std::move(analysis);
      break;
    } catch (const Error& e) {
      entry.error = e.kind();
      entry.message = e.what();
      if (!resample_on(e.kind())) break;
    }
  }
  entry.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return entry;
}

}  // namespace

std::vector<CensusEntry> run_census(const CensusOptions& options) {
  const std::vector<int> sides = census_side_counts(options.min_sides, options.max_sides);
  std::vector<CensusEntry> entries(std::max(options.count, 0));
  std::atomic<int> next{0};
  const auto worker = [&] {
    for (int i = next++; i < options.count; i = next++) entries[i] = run_one(options, sides, i);
  };
  int threads = options.threads > 0 ? options.threads : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::clamp(threads, 1, std::max(options.count, 1));
  {
    std::vector<std::jthread> pool;
    for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
  }
  return entries;
}

std::string census_csv(const std::vector<CensusEntry>& entries) {
  std::string out = "index,sides,seed,attempts,omega,omega_h,omega_e,parity_ok,graceful_squares,labeled_squares,ungood,"
                    "triangles_verified,seconds,error\n";
  char buf[256];
  for (const CensusEntry& e : entries) {
    std::snprintf(buf, sizeof buf, "%d,%d,%llu,%d,%d,%d,%d,%d,%d,%d,%d,%d,%.4f,", e.index, e.sides,
                  static_cast<unsigned long long>(e.seed), e.attempts, e.parity.omega, e.parity.omega_h,
                  e.parity.omega_e, e.parity.parity_ok ? 1 : 0, e.parity.graceful_square_count, e.labeled_square_count,
                  e.ungood_components, e.triangles_verified ? 1 : 0, e.seconds);
    out += buf;
    if (e.error) out += to_string(*e.error);
    out += '\n';
  }
  return out;
}

}  // namespace inscribed
