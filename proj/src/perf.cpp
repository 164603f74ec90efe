// SPDX-License-Identifier: Apache-2.0

#include "rahl/perf.hpp"

#include <chrono>
#include <limits>
#include <sstream>

#include "rahl/error.hpp"

namespace rahl::perf {
namespace {

std::int64_t NowNs() {
  return std::chrono::duration_cast<std::chrono::nanoseconds>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

double Ratio(double base, double cand) {
  if (base == 0.0) return cand == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
  return cand / base;
}

}  // namespace

OpCounters& Local() {
  thread_local OpCounters counters;
  return counters;
}

Registry& Registry::Local() {
  thread_local Registry registry;
  return registry;
}

void Registry::Record(const std::string& label, const OpCounters& inclusive,
                      const OpCounters& exclusive, std::uint64_t wall_ns) {
  auto& m = entries_[label];
  m.inclusive += inclusive;
  m.exclusive += exclusive;
  m.wall_ns += wall_ns;
  ++m.calls;
}

const Measurement& Registry::Get(const std::string& label) const {
  auto it = entries_.find(label);
  RAHL_CHECK(it != entries_.end(), ErrorCode::kUnknownLabel, "no measurement '" + label + "'");
  return it->second;
}

OpCounters Registry::PopScope() {
  OpCounters children = child_totals_.back();
  child_totals_.pop_back();
  return children;
}

void Registry::AddToParent(const OpCounters& inclusive) {
  if (!child_totals_.empty()) child_totals_.back() += inclusive;
}

ScopedMeasure::ScopedMeasure(std::string label)
    : label_(std::move(label)), start_(perf::Local()), start_ns_(NowNs()) {
  Registry::Local().PushScope();
}

ScopedMeasure::~ScopedMeasure() {
  auto& reg = Registry::Local();
  OpCounters inclusive = perf::Local() - start_;
  OpCounters children = reg.PopScope();
  reg.AddToParent(inclusive);
  reg.Record(label_, inclusive, inclusive - children,
             static_cast<std::uint64_t>(NowNs() - start_ns_));
}

double WeightedTotal(const OpCounters& c, const Weights& w) {
  return w.modmul * static_cast<double>(c.modmul) + w.modadd * static_cast<double>(c.modadd) +
         w.shift * static_cast<double>(c.shift) + w.select * static_cast<double>(c.select) +
         w.bigmul * static_cast<double>(c.bigmul) + w.bigadd * static_cast<double>(c.bigadd);
}

Report CompareReport(const std::string& baseline, const std::string& candidate,
                     const Registry& registry, const Weights& weights) {
  const auto& b = registry.Get(baseline);
  const auto& c = registry.Get(candidate);
  Report r{baseline, candidate, weights, {}, 0.0};
  auto add = [&](const char* name, std::uint64_t bv, std::uint64_t cv) {
    r.rows.push_back({name, bv, cv, Ratio(static_cast<double>(bv), static_cast<double>(cv))});
  };
  const auto& bi = b.inclusive;
  const auto& ci = c.inclusive;
  add("modmul", bi.modmul, ci.modmul);
  add("modadd", bi.modadd, ci.modadd);
  add("shift", bi.shift, ci.shift);
  add("select", bi.select, ci.select);
  add("bigmul", bi.bigmul, ci.bigmul);
  add("bigadd", bi.bigadd, ci.bigadd);
  r.weighted_ratio = Ratio(WeightedTotal(bi, weights), WeightedTotal(ci, weights));
  return r;
}

std::string Report::Text() const {
  std::ostringstream os;
  os << "# weights: modmul=" << weights.modmul << " modadd=" << weights.modadd
     << " shift=" << weights.shift << " select=" << weights.select
     << " bigmul=" << weights.bigmul << " bigadd=" << weights.bigadd << "\n";
  os << "# ratio = " << candidate << " / " << baseline << "\n";
  for (const auto& row : rows) {
    os << row.counter << "\t" << row.baseline << "\t" << row.candidate << "\t" << row.ratio
       << "\n";
  }
  os << "weighted\t\t\t" << weighted_ratio << "\n";
  return os.str();
}

std::string Report::Csv() const {
  std::ostringstream os;
  os << "counter,baseline,candidate,ratio\n";
  for (const auto& row : rows) {
    os << row.counter << "," << row.baseline << "," << row.candidate << "," << row.ratio << "\n";
  }
  os << "weighted,,," << weighted_ratio << "\n";
  return os.str();
}

std::string CsvHeader() { return "label,modmul,modadd,shift,select,bigmul,bigadd,wall_ns"; }

std::string CsvRow(const std::string& label, const Measurement& m) {
  const auto& c = m.inclusive;
  std::ostringstream os;
  os << label << "," << c.modmul << "," << c.modadd << "," << c.shift << "," << c.select << ","
     << c.bigmul << "," << c.bigadd << "," << m.wall_ns;
  return os.str();
}

}  // namespace rahl::perf
