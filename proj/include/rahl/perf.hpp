// SPDX-License-Identifier: Apache-2.0
//
// Primitive-operation accounting. Every kernel in the library bumps the
// calling thread's counters; scoped measurements snapshot them to attribute
// work to a labelled high-level operation.

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

namespace rahl::perf {

struct OpCounters {
  std::uint64_t modmul = 0;
  std::uint64_t modadd = 0;
  std::uint64_t shift = 0;
  std::uint64_t select = 0;
  std::uint64_t bigmul = 0;
  std::uint64_t bigadd = 0;

  OpCounters& operator+=(const OpCounters& o) {
    modmul += o.modmul;
    modadd += o.modadd;
    shift += o.shift;
    select += o.select;
    bigmul += o.bigmul;
    bigadd += o.bigadd;
    return *this;
  }
  friend OpCounters operator+(OpCounters a, const OpCounters& b) { return a += b; }
  friend OpCounters operator-(const OpCounters& a, const OpCounters& b) {
    return {a.modmul - b.modmul, a.modadd - b.modadd, a.shift - b.shift,
            a.select - b.select, a.bigmul - b.bigmul, a.bigadd - b.bigadd};
  }
  friend bool operator==(const OpCounters&, const OpCounters&) = default;

  bool IsZero() const { return *this == OpCounters{}; }
};

// Counters of the calling thread. Worker threads merge their deltas back
// into the spawning thread explicitly (see MergeFromWorker).
OpCounters& Local();

inline void CountModMul(std::uint64_t n = 1) { Local().modmul += n; }
inline void CountModAdd(std::uint64_t n = 1) { Local().modadd += n; }
inline void CountShift(std::uint64_t n = 1) { Local().shift += n; }
inline void CountSelect(std::uint64_t n = 1) { Local().select += n; }
inline void CountBigMul(std::uint64_t n = 1) { Local().bigmul += n; }
inline void CountBigAdd(std::uint64_t n = 1) { Local().bigadd += n; }

inline void MergeFromWorker(const OpCounters& delta) { Local() += delta; }

struct Measurement {
  OpCounters inclusive;
  OpCounters exclusive;  // inclusive minus nested measured scopes
  std::uint64_t wall_ns = 0;
  std::uint64_t calls = 0;
};

// Per-thread registry of labelled measurements.
class Registry {
 public:
  static Registry& Local();

  void Record(const std::string& label, const OpCounters& inclusive,
              const OpCounters& exclusive, std::uint64_t wall_ns);
  bool Contains(const std::string& label) const { return entries_.contains(label); }
  const Measurement& Get(const std::string& label) const;
  const std::map<std::string, Measurement>& entries() const { return entries_; }
  void Clear() { entries_.clear(); }

  // Scope stack bookkeeping used by ScopedMeasure.
  void PushScope() { child_totals_.emplace_back(); }
  OpCounters PopScope();
  void AddToParent(const OpCounters& inclusive);

 private:
  std::map<std::string, Measurement> entries_;
  std::vector<OpCounters> child_totals_;
};

// RAII scope: on destruction records the counter delta under `label`.
class ScopedMeasure {
 public:
  explicit ScopedMeasure(std::string label);
  ~ScopedMeasure();
  ScopedMeasure(const ScopedMeasure&) = delete;
  ScopedMeasure& operator=(const ScopedMeasure&) = delete;

  // Delta so far.
  OpCounters Delta() const { return perf::Local() - start_; }

 private:
  std::string label_;
  OpCounters start_;
  std::int64_t start_ns_;
};

template <typename R>
struct Measured {
  R result;
  OpCounters delta;
};

template <>
struct Measured<void> {
  OpCounters delta;
};

// Runs `thunk` and returns its result together with the counter delta it
// produced. The delta is also recorded in the thread's Registry.
template <typename F>
auto MeasureScope(const std::string& label, F&& thunk) {
  using R = std::invoke_result_t<F>;
  if constexpr (std::is_void_v<R>) {
    ScopedMeasure scope(label);
    std::forward<F>(thunk)();
    return Measured<void>{scope.Delta()};
  } else {
    OpCounters delta;
    std::optional<R> out;
    {
      ScopedMeasure scope(label);
      out.emplace(std::forward<F>(thunk)());
      delta = scope.Delta();
    }
    return Measured<R>{std::move(*out), delta};
  }
}

struct Weights {
  double modmul = 1.0;
  double modadd = 0.1;
  double shift = 0.02;
  double select = 0.02;
  double bigmul = 0.0;
  double bigadd = 0.0;
};

double WeightedTotal(const OpCounters& c, const Weights& w = {});

struct RatioRow {
  std::string counter;
  std::uint64_t baseline = 0;
  std::uint64_t candidate = 0;
  double ratio = 0.0;  // candidate / baseline; 1.0 when both are zero
};

struct Report {
  std::string baseline;
  std::string candidate;
  Weights weights;
  std::vector<RatioRow> rows;  // per counter, then "weighted"
  double weighted_ratio = 0.0;

  std::string Text() const;
  std::string Csv() const;
};

// Ratios of candidate over baseline for every counter plus the weighted
// total. Throws UnknownLabel if either label was never measured.
Report CompareReport(const std::string& baseline, const std::string& candidate,
                     const Registry& registry = Registry::Local(),
                     const Weights& weights = {});

// label, modmul, modadd, shift, select, bigmul, bigadd, wall_ns
std::string CsvHeader();
std::string CsvRow(const std::string& label, const Measurement& m);

}  // namespace rahl::perf
