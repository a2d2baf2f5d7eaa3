#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "tdtsw/errors.hpp"
#include "tdtsw/numeric_text.hpp"

namespace tdtsw {

/// Weights of one governance equation. Welfare and effectiveness use
/// alpha/beta/gamma; trust uses delta.
struct Coefficients {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double delta = 0.0;

  void validate() const {
    if (!std::isfinite(alpha) || !std::isfinite(beta) || !std::isfinite(gamma) || !std::isfinite(delta)) {
      throw ConfigError("coefficients must be finite");
    }
  }

  friend bool operator==(const Coefficients&, const Coefficients&) = default;
};

// W = alpha*D + beta*T + gamma*D*T
inline double welfare(double d, double t, const Coefficients& coef) {
  return coef.alpha * d + coef.beta * t + coef.gamma * d * t;
}

// C = delta*T
inline double trust_credibility(double t, const Coefficients& coef) { return coef.delta * t; }

// E = alpha*T + beta*C + gamma*T*C
inline double effectiveness(double t, double c, const Coefficients& coef) {
  return coef.alpha * t + coef.beta * c + coef.gamma * t * c;
}

/// One coefficient set per equation.
struct EquationCoefficients {
  Coefficients welfare;
  Coefficients trust;
  Coefficients effectiveness;

  // Same values for every equation.
  static EquationCoefficients shared(const Coefficients& coef) { return {coef, coef, coef}; }
};

struct GovernanceState {
  double d = 0.0;
  double t = 0.0;
  double w = 0.0;
  double c = 0.0;
  double e = 0.0;

  friend bool operator==(const GovernanceState&, const GovernanceState&) = default;
};

struct StateEvaluation {
  GovernanceState state;
  std::vector<std::string> warnings;
};

inline StateEvaluation evaluate_state(double d, double t, const EquationCoefficients& coef) {
  if (!std::isfinite(d) || !std::isfinite(t)) throw DomainError("D and T must be finite");
  coef.welfare.validate();
  coef.trust.validate();
  coef.effectiveness.validate();

  StateEvaluation out;
  auto& s = out.state;
  s.d = d;
  s.t = t;
  s.w = welfare(d, t, coef.welfare);
  s.c = trust_credibility(t, coef.trust);
  s.e = effectiveness(t, s.c, coef.effectiveness);

  auto check = [&](std::string_view name, double value, std::string_view advice) {
    if (value < 0.0 || value > 1.0) {
      out.warnings.push_back(std::string(name) + " = " + format_shortest(value) + " lies outside [0, 1]" +
                             std::string(advice));
    }
  };
  check("D", s.d, "");
  check("T", s.t, "");
  check("W", s.w, "; consider rescaling the coefficients");
  check("C", s.c, "; consider rescaling the coefficients");
  check("E", s.e, "; consider rescaling the coefficients");
  return out;
}

/// point(v) | uniform(lo, hi) | triangular(a, b, c)
class Distribution {
 public:
  enum class Kind { point, uniform, triangular };

  static Distribution point(double v) { return Distribution(Kind::point, v, v, v); }

  static Distribution uniform(double lo, double hi) {
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
      throw ConfigError("uniform distribution needs finite lo < hi");
    }
    return Distribution(Kind::uniform, lo, hi, hi);
  }

  static Distribution triangular(double a, double b, double c) {
    if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c) || !(a <= b && b <= c && a < c)) {
      throw ConfigError("triangular distribution needs finite a <= b <= c with a < c");
    }
    return Distribution(Kind::triangular, a, b, c);
  }

  // `point:v`, `uniform:lo,hi`, `tri:a,b,c`
  static Distribution parse(std::string_view text) {
    const auto colon = text.find(':');
    if (colon == std::string_view::npos) {
      throw ConfigError("distribution '" + std::string(text) + "' must look like point:v, uniform:lo,hi or tri:a,b,c");
    }
    const std::string_view kind = text.substr(0, colon);
    std::vector<double> params;
    std::string_view rest = text.substr(colon + 1);
    while (true) {
      const auto comma = rest.find(',');
      auto value = parse_real(rest.substr(0, comma));
      if (!value) throw ConfigError("invalid number in distribution '" + std::string(text) + "'");
      params.push_back(*value);
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
    auto arity = [&](std::size_t n) {
      if (params.size() != n) {
        throw ConfigError("distribution '" + std::string(text) + "' takes " + std::to_string(n) + " parameter(s)");
      }
    };
    if (kind == "point") {
      arity(1);
      if (!std::isfinite(params[0])) throw ConfigError("point distribution needs a finite value");
      return point(params[0]);
    }
    if (kind == "uniform") {
      arity(2);
      return uniform(params[0], params[1]);
    }
    if (kind == "tri") {
      arity(3);
      return triangular(params[0], params[1], params[2]);
    }
    throw ConfigError("unknown distribution kind '" + std::string(kind) + "'");
  }

  Kind kind() const { return kind_; }

  // Inverse CDF at u in [0, 1).
  double quantile(double u) const {
    switch (kind_) {
      case Kind::point:
        return a_;
      case Kind::uniform:
        return a_ + (b_ - a_) * u;
      case Kind::triangular: {
        const double span = c_ - a_;
        const double split = (b_ - a_) / span;
        if (u < split) return a_ + std::sqrt(u * span * (b_ - a_));
        return c_ - std::sqrt((1.0 - u) * span * (c_ - b_));
      }
    }
    return a_;
  }

  double mean() const {
    switch (kind_) {
      case Kind::point:
        return a_;
      case Kind::uniform:
        return 0.5 * (a_ + b_);
      case Kind::triangular:
        return (a_ + b_ + c_) / 3.0;
    }
    return a_;
  }

  std::string to_string() const {
    switch (kind_) {
      case Kind::point:
        return "point:" + format_shortest(a_);
      case Kind::uniform:
        return "uniform:" + format_shortest(a_) + "," + format_shortest(b_);
      case Kind::triangular:
        return "tri:" + format_shortest(a_) + "," + format_shortest(b_) + "," + format_shortest(c_);
    }
    return {};
  }

  friend bool operator==(const Distribution&, const Distribution&) = default;

 private:
  Distribution(Kind kind, double a, double b, double c) : kind_(kind), a_(a), b_(b), c_(c) {}

  Kind kind_;
  double a_;
  double b_;
  double c_;
};

struct DistributionSpec {
  Distribution d = Distribution::point(0.0);
  Distribution t = Distribution::point(0.0);
};

/// Stateless sample stream: every draw is a pure function of (seed, index, stream).
namespace sampling {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Uniform in [0, 1) with 53 random bits.
inline double uniform_at(std::uint64_t seed, std::uint64_t index, std::uint64_t stream) {
  const std::uint64_t key = splitmix64(seed);
  const std::uint64_t bits = splitmix64(key ^ splitmix64(index * 2 + stream));
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

}  // namespace sampling

struct Estimate {
  double mean = 0.0;
  double standard_error = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;

  bool covers(double value) const { return value >= ci_low && value <= ci_high; }

  friend bool operator==(const Estimate&, const Estimate&) = default;
};

struct MonteCarloReport {
  std::uint64_t n = 0;
  std::uint64_t seed = 0;
  Estimate w;
  Estimate c;
  Estimate e;

  friend bool operator==(const MonteCarloReport&, const MonteCarloReport&) = default;
};

namespace mc_detail {

inline constexpr std::uint64_t kChunk = 4096;

// Welford accumulator; merge() uses the pairwise update of Chan et al.
struct Moments {
  std::uint64_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    ++count;
    const double delta = x - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (x - mean);
  }

  void merge(const Moments& other) {
    if (other.count == 0) return;
    if (count == 0) {
      *this = other;
      return;
    }
    const double na = static_cast<double>(count);
    const double nb = static_cast<double>(other.count);
    const double total = na + nb;
    const double delta = other.mean - mean;
    mean += delta * (nb / total);
    m2 += other.m2 + delta * delta * (na * nb / total);
    count += other.count;
  }

  Estimate estimate() const {
    Estimate out;
    out.mean = mean;
    if (count > 1) {
      const double variance = std::max(0.0, m2 / static_cast<double>(count - 1));
      out.standard_error = std::sqrt(variance) / std::sqrt(static_cast<double>(count));
    }
    out.ci_low = out.mean - 1.96 * out.standard_error;
    out.ci_high = out.mean + 1.96 * out.standard_error;
    return out;
  }
};

struct ChunkMoments {
  Moments w;
  Moments c;
  Moments e;
};

}  // namespace mc_detail

/// Forward Monte Carlo estimate of E[W], E[C], E[E] with D and T drawn
/// independently from `dists`.
///
/// Samples are split into fixed-size chunks that are reduced in index order,
/// so the report is bit-identical for any worker count. `workers == 0` uses
/// the hardware concurrency.
inline MonteCarloReport expectations_mc(const DistributionSpec& dists, const Coefficients& welfare_coef,
                                        const Coefficients& trust_coef, const Coefficients& eff_coef,
                                        std::uint64_t n, std::uint64_t seed, unsigned workers = 0) {
  if (n == 0) throw DomainError("Monte Carlo sample count must be at least 1");
  welfare_coef.validate();
  trust_coef.validate();
  eff_coef.validate();

  const std::uint64_t chunks = (n + mc_detail::kChunk - 1) / mc_detail::kChunk;
  std::vector<mc_detail::ChunkMoments> partial(chunks);

  auto run_chunk = [&](std::uint64_t chunk) {
    auto& m = partial[chunk];
    const std::uint64_t begin = chunk * mc_detail::kChunk;
    const std::uint64_t end = std::min(n, begin + mc_detail::kChunk);
    for (std::uint64_t i = begin; i < end; ++i) {
      const double d = dists.d.quantile(sampling::uniform_at(seed, i, 0));
      const double t = dists.t.quantile(sampling::uniform_at(seed, i, 1));
      const double w = welfare(d, t, welfare_coef);
      const double c = trust_credibility(t, trust_coef);
      const double e = effectiveness(t, c, eff_coef);
      m.w.add(w);
      m.c.add(c);
      m.e.add(e);
    }
  };

  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, chunks));
  if (workers <= 1) {
    for (std::uint64_t k = 0; k < chunks; ++k) run_chunk(k);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned id = 0; id < workers; ++id) {
      pool.emplace_back([&, id] {
        for (std::uint64_t k = id; k < chunks; k += workers) run_chunk(k);
      });
    }
  }

  mc_detail::ChunkMoments total;
  for (const auto& m : partial) {
    total.w.merge(m.w);
    total.c.merge(m.c);
    total.e.merge(m.e);
  }
  return {n, seed, total.w.estimate(), total.c.estimate(), total.e.estimate()};
}

}  // namespace tdtsw
