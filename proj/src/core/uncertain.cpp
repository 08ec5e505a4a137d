#include "uncertain.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <optional>

#include "special.hpp"
#include "text.hpp"

namespace umo {

DistributionSpec DistributionSpec::uniform(double lower, double upper) {
  DistributionSpec s{Family::Uniform, lower, upper, 1.0, 0.0};
  s.validate();
  return s;
}

DistributionSpec DistributionSpec::gaussian(double mean, double variance) {
  DistributionSpec s{Family::Gaussian, mean, variance, 1.0, 0.0};
  s.validate();
  return s;
}

DistributionSpec DistributionSpec::beta(double alpha, double beta) {
  DistributionSpec s{Family::Beta, alpha, beta, 1.0, 0.0};
  s.validate();
  return s;
}

DistributionSpec DistributionSpec::transformed(double scale, double offset) const {
  DistributionSpec s = *this;
  // Compose with the existing map: new_y = scale * (old map) + offset.
  s.scale = scale * this->scale;
  s.offset = scale * this->offset + offset;
  s.validate();
  return s;
}

void DistributionSpec::validate() const {
  if (!std::isfinite(p1) || !std::isfinite(p2) || !std::isfinite(scale) ||
      !std::isfinite(offset))
    fail(ErrorCode::Config, "distribution parameters must be finite");
  if (scale == 0.0) fail(ErrorCode::Config, "affine scale must be nonzero");
  switch (family) {
    case Family::Uniform:
      if (!(p1 < p2)) fail(ErrorCode::Config, "uniform needs lower < upper");
      break;
    case Family::Gaussian:
      if (!(p2 > 0.0)) fail(ErrorCode::Config, "gaussian needs variance > 0");
      break;
    case Family::Beta:
      if (!(p1 > 0.0) || !(p2 > 0.0))
        fail(ErrorCode::Config, "beta needs alpha > 0 and beta > 0");
      break;
  }
}

namespace {

double base_mean(const DistributionSpec& s) {
  switch (s.family) {
    case Family::Uniform: return 0.5 * (s.p1 + s.p2);
    case Family::Gaussian: return s.p1;
    case Family::Beta: return s.p1 / (s.p1 + s.p2);
  }
  return 0.0;
}

double base_variance(const DistributionSpec& s) {
  switch (s.family) {
    case Family::Uniform: {
      const double w = s.p2 - s.p1;
      return w * w / 12.0;
    }
    case Family::Gaussian:
      return s.p2;
    case Family::Beta: {
      const double sum = s.p1 + s.p2;
      return s.p1 * s.p2 / (sum * sum * (sum + 1.0));
    }
  }
  return 0.0;
}

double base_cdf(const DistributionSpec& s, double z) {
  switch (s.family) {
    case Family::Uniform:
      if (z <= s.p1) return 0.0;
      if (z >= s.p2) return 1.0;
      return (z - s.p1) / (s.p2 - s.p1);
    case Family::Gaussian:
      return normal_cdf((z - s.p1) / std::sqrt(s.p2));
    case Family::Beta:
      return beta_cdf(s.p1, s.p2, z);
  }
  return 0.0;
}

double base_pdf(const DistributionSpec& s, double z) {
  switch (s.family) {
    case Family::Uniform:
      return (z < s.p1 || z > s.p2) ? 0.0 : 1.0 / (s.p2 - s.p1);
    case Family::Gaussian: {
      const double d = z - s.p1;
      return std::exp(-0.5 * d * d / s.p2) / std::sqrt(2.0 * M_PI * s.p2);
    }
    case Family::Beta:
      return beta_pdf(s.p1, s.p2, z);
  }
  return 0.0;
}

double base_quantile(const DistributionSpec& s, double p) {
  switch (s.family) {
    case Family::Uniform:
      return s.p1 + (s.p2 - s.p1) * p;
    case Family::Gaussian:
      return s.p1 + std::sqrt(s.p2) * normal_quantile(p);
    case Family::Beta:
      return beta_quantile(s.p1, s.p2, p);
  }
  return 0.0;
}

std::pair<double, double> base_support(const DistributionSpec& s) {
  switch (s.family) {
    case Family::Uniform: return {s.p1, s.p2};
    case Family::Beta: return {0.0, 1.0};
    case Family::Gaussian: break;
  }
  fail(ErrorCode::UnboundedSupport, "gaussian support is unbounded");
}

}  // namespace

double DistributionSpec::mean() const { return scale * base_mean(*this) + offset; }

double DistributionSpec::variance() const {
  return scale * scale * base_variance(*this);
}

std::pair<double, double> DistributionSpec::support() const {
  auto [lo, hi] = base_support(*this);
  const double a = scale * lo + offset;
  const double b = scale * hi + offset;
  return scale > 0 ? std::make_pair(a, b) : std::make_pair(b, a);
}

std::pair<double, double> DistributionSpec::integration_range() const {
  if (family != Family::Gaussian) return support();
  const double sigma = std::sqrt(variance());
  return {mean() - 10.0 * sigma, mean() + 10.0 * sigma};
}

double DistributionSpec::cdf(double y) const {
  const double z = (y - offset) / scale;
  if (scale > 0) return base_cdf(*this, z);
  // Inverted map: P(scale*Z + offset <= y) = P(Z >= z) = 1 - F(z) for the
  // continuous families handled here.
  return 1.0 - base_cdf(*this, z);
}

double DistributionSpec::pdf(double y) const {
  const double z = (y - offset) / scale;
  return base_pdf(*this, z) / std::fabs(scale);
}

double DistributionSpec::quantile(double p) const {
  if (!(p >= 0.0 && p <= 1.0))
    fail(ErrorCode::InvalidProbability, "quantile needs p in [0,1]");
  // Gaussian endpoints are infinite; reject instead of returning inf.
  if (family == Family::Gaussian && (p == 0.0 || p == 1.0))
    fail(ErrorCode::UnboundedSupport, "gaussian quantile at p=0 or p=1");
  const double q = scale > 0 ? base_quantile(*this, p) : base_quantile(*this, 1.0 - p);
  return scale * q + offset;
}

double DistributionSpec::sample(RandomStream& rs) const {
  double z = 0.0;
  switch (family) {
    case Family::Uniform: z = rs.uniform(p1, p2); break;
    case Family::Gaussian: z = rs.gaussian(p1, p2); break;
    case Family::Beta: z = rs.beta(p1, p2); break;
  }
  return scale * z + offset;
}

namespace {

struct Cursor {
  std::string_view text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  }
  bool eat(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  bool done() {
    skip_ws();
    return pos >= text.size();
  }
};

double parse_number(Cursor& cur, const std::string& context) {
  cur.skip_ws();
  const char* begin = cur.text.data() + cur.pos;
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin)
    fail(ErrorCode::Parse, "expected a number in " + context);
  cur.pos += static_cast<std::size_t>(end - begin);
  return v;
}

}  // namespace

DistributionSpec parse_spec(const std::string& text) {
  Cursor cur{text};
  cur.skip_ws();
  std::size_t start = cur.pos;
  while (cur.pos < text.size() &&
         std::isalpha(static_cast<unsigned char>(text[cur.pos])))
    ++cur.pos;
  const std::string name(text.substr(start, cur.pos - start));
  Family family;
  if (name == "uniform")
    family = Family::Uniform;
  else if (name == "gaussian")
    family = Family::Gaussian;
  else if (name == "beta")
    family = Family::Beta;
  else
    fail(ErrorCode::Parse, "unknown distribution family '" + name + "'");

  if (!cur.eat('(')) fail(ErrorCode::Parse, "expected '(' in '" + text + "'");
  const double p1 = parse_number(cur, text);
  if (!cur.eat(',')) fail(ErrorCode::Parse, "expected ',' in '" + text + "'");
  const double p2 = parse_number(cur, text);
  if (!cur.eat(')')) fail(ErrorCode::Parse, "expected ')' in '" + text + "'");

  double scale = 1.0;
  double offset = 0.0;
  if (cur.eat('*')) {
    scale = parse_number(cur, text);
    cur.skip_ws();
    if (cur.pos < text.size() &&
        (text[cur.pos] == '+' || text[cur.pos] == '-')) {
      offset = parse_number(cur, text);  // strtod consumes the sign
    }
  }
  if (!cur.done())
    fail(ErrorCode::Parse, "trailing characters in '" + text + "'");

  DistributionSpec spec{family, p1, p2, scale, offset};
  spec.validate();
  return spec;
}

std::string format_spec(const DistributionSpec& spec) {
  std::string out;
  switch (spec.family) {
    case Family::Uniform: out = "uniform("; break;
    case Family::Gaussian: out = "gaussian("; break;
    case Family::Beta: out = "beta("; break;
  }
  out += format_double(spec.p1);
  out += ',';
  out += format_double(spec.p2);
  out += ')';
  if (spec.scale != 1.0 || spec.offset != 0.0) {
    out += '*';
    out += format_double(spec.scale);
    if (spec.offset != 0.0) {
      if (spec.offset > 0) out += '+';
      out += format_double(spec.offset);
    }
  }
  return out;
}

SamplePopulation SamplePopulation::from_raw(std::span<const double> raw) {
  if (raw.empty())
    fail(ErrorCode::InvalidPopulation, "empty sample population");
  for (double v : raw)
    if (!std::isfinite(v))
      fail(ErrorCode::InvalidPopulation, "non-finite sample value");
  SamplePopulation pop;
  pop.values.assign(raw.begin(), raw.end());
  std::sort(pop.values.begin(), pop.values.end());
  return pop;
}

SamplePopulation SamplePopulation::from_sorted(std::vector<double> sorted) {
  if (sorted.empty())
    fail(ErrorCode::InvalidPopulation, "empty sample population");
  SamplePopulation pop;
  pop.values = std::move(sorted);
  return pop;
}

UncertainValue UncertainValue::closed_form(DistributionSpec spec) {
  spec.validate();
  UncertainValue v;
  v.mean_ = spec.mean();
  v.variance_ = spec.variance();
  v.has_variance_ = true;
  v.body_ = std::move(spec);
  return v;
}

UncertainValue UncertainValue::from_samples(std::span<const double> raw) {
  return from_population(SamplePopulation::from_raw(raw));
}

UncertainValue UncertainValue::from_population(SamplePopulation pop) {
  if (pop.values.empty())
    fail(ErrorCode::InvalidPopulation, "empty sample population");
  UncertainValue v;
  const auto& s = pop.values;
  const std::size_t n = s.size();
  double sum = 0.0;
  for (double x : s) sum += x;
  v.mean_ = sum / static_cast<double>(n);
  if (n >= 2) {
    // Unbiased two-pass estimator (divide by N - 1).
    double acc = 0.0;
    for (double x : s) {
      const double d = x - v.mean_;
      acc += d * d;
    }
    v.variance_ = acc / static_cast<double>(n - 1);
    v.has_variance_ = true;
  }
  v.body_ = std::move(pop);
  return v;
}

const DistributionSpec& UncertainValue::spec() const {
  if (is_empirical())
    fail(ErrorCode::WrongRepresentation, "value is an empirical population");
  return std::get<DistributionSpec>(body_);
}

const SamplePopulation& UncertainValue::population() const {
  if (!is_empirical())
    fail(ErrorCode::WrongRepresentation, "value is a closed-form distribution");
  return std::get<SamplePopulation>(body_);
}

double UncertainValue::variance() const {
  if (!has_variance_)
    fail(ErrorCode::DegenerateVariance,
         "variance undefined for a single-sample population");
  return variance_;
}

double UncertainValue::stddev() const { return std::sqrt(variance()); }

std::pair<double, double> UncertainValue::bounds() const {
  if (is_empirical()) {
    const auto& s = samples();
    return {s.front(), s.back()};
  }
  return spec().support();
}

SummaryStats summary(const UncertainValue& value) {
  SummaryStats st;
  st.mean = value.mean();
  st.variance = value.variance();
  st.stddev = std::sqrt(st.variance);
  return st;
}

double empirical_cdf(const SamplePopulation& pop, double y) {
  const auto& s = pop.values;
  const auto it = std::upper_bound(s.begin(), s.end(), y);
  return static_cast<double>(it - s.begin()) / static_cast<double>(s.size());
}

double empirical_cdf(const UncertainValue& value, double y) {
  return empirical_cdf(value.population(), y);
}

double empirical_quantile(const SamplePopulation& pop, double p) {
  if (!(p >= 0.0 && p < 1.0))
    fail(ErrorCode::InvalidProbability, "empirical quantile needs p in [0,1)");
  const auto& s = pop.values;
  const std::size_t n = s.size();
  std::size_t idx = static_cast<std::size_t>(std::floor(p * static_cast<double>(n)));
  if (idx >= n) idx = n - 1;
  return s[idx];
}

double empirical_quantile(const UncertainValue& value, double p) {
  return empirical_quantile(value.population(), p);
}

SamplePopulation equiprobable_points(const DistributionSpec& spec, std::size_t n) {
  if (n == 0)
    fail(ErrorCode::InvalidArgument, "equiprobable_points needs n >= 1");
  std::vector<double> pts;
  pts.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) {
    const double p = (2.0 * static_cast<double>(i) - 1.0) / (2.0 * static_cast<double>(n));
    pts.push_back(spec.quantile(p));
  }
  std::sort(pts.begin(), pts.end());  // a negative affine scale reverses order
  return SamplePopulation::from_sorted(std::move(pts));
}

SamplePopulation reduce(const SamplePopulation& pop) {
  const std::size_t n = pop.size();
  const auto np = static_cast<std::size_t>(
      std::ceil(std::sqrt(static_cast<double>(n))));
  std::vector<double> out;
  out.reserve(np);
  for (std::size_t i = 1; i <= np; ++i) {
    // ceil((i - 1/2) * n / np) in exact integer arithmetic
    const std::size_t idx = ((2 * i - 1) * n + 2 * np - 1) / (2 * np);
    out.push_back(pop.values[idx - 1]);
  }
  return SamplePopulation::from_sorted(std::move(out));
}

std::vector<double> load_samples(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::Io, "cannot open '" + path + "'");
  std::vector<double> values;
  std::optional<std::size_t> declared;
  std::string line;
  while (std::getline(in, line)) {
    std::string_view sv = trim(line);
    if (sv.empty()) continue;
    if (sv.front() == '#') {
      const auto eq = sv.find("n=");
      if (eq != std::string_view::npos)
        declared = static_cast<std::size_t>(parse_int(trim(sv.substr(eq + 2))));
      continue;
    }
    values.push_back(parse_double(sv));
  }
  if (declared && *declared != values.size())
    fail(ErrorCode::Parse, "sample file '" + path + "' declares n=" +
                               format_int(static_cast<std::int64_t>(*declared)) +
                               " but contains " +
                               format_int(static_cast<std::int64_t>(values.size())));
  return values;
}

void save_samples(const std::string& path, std::span<const double> values) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::Io, "cannot write '" + path + "'");
  out << "# n=" << values.size() << '\n';
  for (double v : values) out << format_double(v) << '\n';
}

}  // namespace umo
