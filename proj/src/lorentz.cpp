#include "weissbench/lorentz.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "weissbench/error.hpp"
#include "weissbench/report.hpp"

namespace weissbench::lorentz {

namespace {

[[noreturn]] void invalid(const std::string& what) {
  throw Error(ErrorCode::InvalidArgument, what);
}

struct Segment {
  double value;
  double length;
};

// Segments of f* in order: values strictly decreasing, lengths merged over ties.
std::vector<Segment> sorted_segments(const StepFunction& f) {
  std::vector<Segment> segs;
  segs.reserve(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) segs.push_back({f.values()[i], f.length(i)});
  std::sort(segs.begin(), segs.end(), [](const Segment& a, const Segment& b) {
    return a.value > b.value;
  });
  std::vector<Segment> merged;
  merged.reserve(segs.size());
  for (const auto& s : segs) {
    if (!merged.empty() && merged.back().value == s.value)
      merged.back().length += s.length;
    else
      merged.push_back(s);
  }
  return merged;
}

// (p/q) * (end^{q/p} - start^{q/p}) without cancellation for thin cells far
// from the origin.
double lorentz_weight(double start, double end, double r) {
  if (start == 0.0) return std::pow(end, r) / r;
  return std::pow(start, r) * std::expm1(r * std::log1p((end - start) / start)) / r;
}

}  // namespace

StepFunction::StepFunction(std::vector<double> breakpoints, std::vector<double> values)
    : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
  if (breakpoints_.size() < 2) invalid("step function needs at least two breakpoints");
  if (values_.size() + 1 != breakpoints_.size())
    invalid("step function needs exactly one value per segment");
  for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
    double b = breakpoints_[i];
    if (!std::isfinite(b) || b < 0.0) invalid("breakpoints must be finite and nonnegative");
    if (i > 0 && !(b > breakpoints_[i - 1]))
      invalid("breakpoints must be strictly increasing (zero-length segment at index " +
              std::to_string(i - 1) + ")");
  }
  for (double v : values_)
    if (!std::isfinite(v) || v < 0.0) invalid("step values must be finite and nonnegative");
}

StepFunction StepFunction::sample(const std::function<double(double)>& f,
                                  std::vector<double> breakpoints, SamplePoint where) {
  std::vector<double> values;
  if (breakpoints.size() >= 2) values.reserve(breakpoints.size() - 1);
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    double t = where == SamplePoint::Left ? breakpoints[i]
                                          : 0.5 * (breakpoints[i] + breakpoints[i + 1]);
    values.push_back(std::abs(f(t)));
  }
  return StepFunction(std::move(breakpoints), std::move(values));
}

double StepFunction::operator()(double t) const noexcept {
  if (t < start() || t >= end()) return 0.0;
  auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t);
  return values_[static_cast<std::size_t>(it - breakpoints_.begin()) - 1];
}

StepFunction StepFunction::scaled(double c) const {
  if (!(c >= 0.0)) invalid("scale factor must be nonnegative");
  std::vector<double> v(values_);
  for (double& x : v) x *= c;
  return StepFunction(breakpoints_, std::move(v));
}

LorentzIndex::LorentzIndex(double p_, double q_) : p(p_), q(q_) {
  if (!(p > 1.0) || !std::isfinite(p)) invalid("Lorentz index needs p > 1");
  if (!(q >= 1.0)) invalid("Lorentz index needs q >= 1 or q = inf");
}

double distribution_function(const StepFunction& f, double alpha) {
  if (!(alpha >= 0.0)) invalid("distribution function needs alpha >= 0");
  double measure = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i)
    if (f.values()[i] > alpha) measure += f.length(i);
  return measure;
}

StepFunction decreasing_rearrangement(const StepFunction& f) {
  auto segs = sorted_segments(f);
  std::vector<double> breaks{0.0};
  std::vector<double> values;
  breaks.reserve(segs.size() + 1);
  values.reserve(segs.size());
  for (const auto& s : segs) {
    breaks.push_back(breaks.back() + s.length);
    values.push_back(s.value);
  }
  return StepFunction(std::move(breaks), std::move(values));
}

double lorentz_norm(const StepFunction& f, LorentzIndex idx) {
  auto segs = sorted_segments(f);
  double vmax = segs.front().value;
  if (vmax == 0.0) return 0.0;

  double start = 0.0;
  if (idx.is_weak()) {
    double sup = 0.0;
    for (const auto& s : segs) {
      double end = start + s.length;
      sup = std::max(sup, s.value * std::pow(end, 1.0 / idx.p));
      start = end;
    }
    return sup;
  }

  // Factor out the largest value so that huge q cannot overflow v^q.
  const double r = idx.q / idx.p;
  double acc = 0.0;
  for (const auto& s : segs) {
    double end = start + s.length;
    if (s.value > 0.0) acc += std::pow(s.value / vmax, idx.q) * lorentz_weight(start, end, r);
    start = end;
  }
  return vmax * std::pow(acc, 1.0 / idx.q);
}

double holder_pairing(const StepFunction& f, const StepFunction& g) {
  double lo = std::max(f.start(), g.start());
  double hi = std::min(f.end(), g.end());
  if (!(hi > lo)) return 0.0;

  auto fb = f.breakpoints();
  auto gb = g.breakpoints();
  std::size_t i = static_cast<std::size_t>(std::upper_bound(fb.begin(), fb.end(), lo) - fb.begin()) - 1;
  std::size_t j = static_cast<std::size_t>(std::upper_bound(gb.begin(), gb.end(), lo) - gb.begin()) - 1;

  double acc = 0.0;
  double t = lo;
  while (t < hi) {
    double next = std::min({fb[i + 1], gb[j + 1], hi});
    acc += f.values()[i] * g.values()[j] * (next - t);
    t = next;
    if (t == fb[i + 1]) ++i;
    if (t == gb[j + 1]) ++j;
  }
  return acc;
}

double inclusion_constant(double p, double q1, double q2) {
  if (q1 > q2) invalid("inclusion constant needs q1 <= q2");
  double inv_q2 = std::isinf(q2) ? 0.0 : 1.0 / q2;
  return std::pow(q1 / p, 1.0 / q1 - inv_q2);
}

std::string to_csv(const StepFunction& f) {
  std::string out = "breakpoint,value\n";
  for (std::size_t i = 0; i < f.size(); ++i) {
    out += report::format_double(f.breakpoints()[i]);
    out += ',';
    out += report::format_double(f.values()[i]);
    out += '\n';
  }
  out += report::format_double(f.end());
  out += ",\n";
  return out;
}

StepFunction from_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line)) invalid("step CSV is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "breakpoint,value") invalid("step CSV header must be 'breakpoint,value'");

  std::vector<double> breaks, values;
  bool closed = false;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (closed) invalid("step CSV has rows after the final breakpoint (line " + std::to_string(lineno) + ")");
    auto comma = line.find(',');
    if (comma == std::string::npos) invalid("step CSV line " + std::to_string(lineno) + " has no comma");
    breaks.push_back(report::parse_double(std::string_view(line).substr(0, comma)));
    auto rest = std::string_view(line).substr(comma + 1);
    if (rest.empty())
      closed = true;
    else
      values.push_back(report::parse_double(rest));
  }
  if (!closed) invalid("step CSV must end with a breakpoint row whose value cell is empty");
  return StepFunction(std::move(breaks), std::move(values));
}

void write_csv(const StepFunction& f, const std::string& path) {
  report::write_text(path, to_csv(f));
}

StepFunction read_csv(const std::string& path) { return from_csv(report::read_text(path)); }

}  // namespace weissbench::lorentz
