// SPDX-License-Identifier: Apache-2.0
#include "icecav/oracle_1d.hpp"

#include <array>
#include <cmath>
#include <memory>
#include <numbers>
#include <random>
#include <vector>

#include "icecav/errors.hpp"
#include "icecav/special_functions.hpp"

namespace icecav {
namespace {

constexpr double kPi = std::numbers::pi;

void validate(const OneDProblem& p) {
  if (!p.b0 || !p.bpi) throw ConfigError("1-D problem: boundary data missing");
  if (p.modes < 1) throw ConfigError("1-D problem: need at least one mode");
  if (!(p.t_end > 0.0)) throw ConfigError("1-D problem: t_end must be positive");
  if (p.time_samples < 2 || p.space_samples < 2) {
    throw ConfigError("1-D problem: need at least two time and space samples");
  }
  if (!(p.x_margin >= 0.0 && 2.0 * p.x_margin < kPi)) {
    throw ConfigError("1-D problem: x_margin out of range");
  }
}

// Projects f(t, .) onto cos(n x), n = 0..modes: returns int_0^pi f(t, x) cos(n x) dx.
class CosineProjector {
 public:
  explicit CosineProjector(int modes) : rule_(gauss_legendre<double>(128)) {
    nodes_ = rule_.nodes_on(0.0, kPi);
    const Eigen::VectorXd w = rule_.weights_on(0.0, kPi);
    table_.resize(modes + 1, nodes_.size());
    for (int n = 0; n <= modes; ++n) {
      for (Eigen::Index i = 0; i < nodes_.size(); ++i) {
        table_(n, i) = w[i] * std::cos(n * nodes_[i]);
      }
    }
  }

  Eigen::VectorXd operator()(const std::function<double(double, double)>& f, double t) const {
    if (!f) return Eigen::VectorXd::Zero(table_.rows());
    Eigen::VectorXd values(nodes_.size());
    for (Eigen::Index i = 0; i < nodes_.size(); ++i) values[i] = f(t, nodes_[i]);
    return table_ * values;
  }

 private:
  QuadratureRule<double> rule_;
  Eigen::VectorXd nodes_;
  Eigen::MatrixXd table_;
};

OneDSolution make_grids(const OneDProblem& p) {
  OneDSolution s;
  s.time = Eigen::VectorXd::LinSpaced(p.time_samples, 0.0, p.t_end);
  s.x = Eigen::VectorXd::LinSpaced(p.space_samples, p.x_margin, kPi - p.x_margin);
  s.coefficients.resize(p.modes + 1, p.time_samples);
  return s;
}

double basis(int n, double x) {
  return n == 0 ? 1.0 / std::sqrt(kPi) : std::sqrt(2.0 / kPi) * std::cos(n * x);
}

void synthesize(OneDSolution& s) {
  const Eigen::Index modes = s.coefficients.rows();
  Eigen::MatrixXd shapes(modes, s.x.size());
  for (Eigen::Index n = 0; n < modes; ++n) {
    for (Eigen::Index i = 0; i < s.x.size(); ++i) shapes(n, i) = basis(static_cast<int>(n), s.x[i]);
  }
  s.field = s.coefficients.transpose() * shapes;
}

}  // namespace

OneDSolution solve_modal(const OneDProblem& p) {
  validate(p);
  const int modes = p.modes;
  const double dt = p.rk_step > 0.0 ? p.rk_step : std::min(0.01, 0.1 / modes);
  if (dt * modes > 2.8) {
    throw GridResolutionError("solve_modal: RK4 step too large for the highest mode");
  }
  OneDSolution s = make_grids(p);
  const CosineProjector project(modes);

  Eigen::ArrayXd n2(modes + 1);
  Eigen::ArrayXd weight(modes + 1);
  Eigen::ArrayXd parity(modes + 1);
  for (int n = 0; n <= modes; ++n) {
    n2[n] = static_cast<double>(n) * n;
    weight[n] = n == 0 ? 1.0 / kPi : 2.0 / kPi;
    parity[n] = n % 2 == 0 ? 1.0 : -1.0;
  }
  auto forcing = [&](double t) -> Eigen::ArrayXd {
    const Eigen::ArrayXd fn = project(p.source, t).array();
    return weight * (parity * p.bpi(t) - p.b0(t) + fn);
  };

  Eigen::ArrayXd a = Eigen::ArrayXd::Zero(modes + 1);
  Eigen::ArrayXd v = Eigen::ArrayXd::Zero(modes + 1);
  const double interval = p.t_end / (p.time_samples - 1);
  const int substeps = static_cast<int>(std::ceil(interval / dt - 1e-12));
  const double h = interval / substeps;
  Eigen::ArrayXd f_next = forcing(0.0);
  auto store = [&](int j) {
    // Orthonormal coefficient = cosine coefficient / basis amplitude.
    s.coefficients(0, j) = a[0] * std::sqrt(kPi);
    s.coefficients.col(j).tail(modes) = (a.tail(modes) * std::sqrt(kPi / 2.0)).matrix();
  };
  store(0);
  for (int j = 1; j < p.time_samples; ++j) {
    for (int m = 0; m < substeps; ++m) {
      const double t = (j - 1) * interval + m * h;
      const Eigen::ArrayXd f0 = f_next;
      const Eigen::ArrayXd fh = forcing(t + 0.5 * h);
      f_next = forcing(t + h);
      const Eigen::ArrayXd k1a = v;
      const Eigen::ArrayXd k1v = -n2 * a + f0;
      const Eigen::ArrayXd k2a = v + 0.5 * h * k1v;
      const Eigen::ArrayXd k2v = -n2 * (a + 0.5 * h * k1a) + fh;
      const Eigen::ArrayXd k3a = v + 0.5 * h * k2v;
      const Eigen::ArrayXd k3v = -n2 * (a + 0.5 * h * k2a) + fh;
      const Eigen::ArrayXd k4a = v + h * k3v;
      const Eigen::ArrayXd k4v = -n2 * (a + h * k3a) + f_next;
      a += h / 6.0 * (k1a + 2.0 * k2a + 2.0 * k3a + k4a);
      v += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    }
    store(j);
  }
  synthesize(s);
  return s;
}

OneDSolution solve_delta_source(const OneDProblem& p) {
  validate(p);
  const int modes = p.modes;
  OneDSolution s = make_grids(p);
  const CosineProjector project(modes);

  Eigen::ArrayXd at_zero(modes + 1);
  Eigen::ArrayXd at_pi(modes + 1);
  Eigen::ArrayXd norm(modes + 1);
  for (int n = 0; n <= modes; ++n) {
    at_zero[n] = basis(n, 0.0);
    at_pi[n] = basis(n, kPi);
    norm[n] = n == 0 ? 1.0 / std::sqrt(kPi) : std::sqrt(2.0 / kPi);
  }
  // Orthonormal modal load including the two surface sources.
  auto load = [&](double t) -> Eigen::ArrayXd {
    return norm * project(p.source, t).array() - at_zero * p.b0(t) + at_pi * p.bpi(t);
  };

  const auto rule = gauss_legendre<double>(8);
  Eigen::ArrayXd cos_int = Eigen::ArrayXd::Zero(modes + 1);  // int cos(n tau) F_n, n >= 1
  Eigen::ArrayXd sin_int = Eigen::ArrayXd::Zero(modes + 1);  // int sin(n tau) F_n, n >= 1
  double zero_int = 0.0;                                     // int F_0
  double zero_moment = 0.0;                                  // int tau F_0
  Eigen::ArrayXd nn(modes + 1);
  for (int n = 0; n <= modes; ++n) nn[n] = n;

  s.coefficients.col(0).setZero();
  for (int j = 1; j < p.time_samples; ++j) {
    const double ta = s.time[j - 1];
    const double tb = s.time[j];
    const Eigen::VectorXd nodes = rule.nodes_on(ta, tb);
    const Eigen::VectorXd weights = rule.weights_on(ta, tb);
    for (Eigen::Index q = 0; q < nodes.size(); ++q) {
      const double tau = nodes[q];
      const Eigen::ArrayXd f = load(tau);
      cos_int += weights[q] * (nn * tau).cos() * f;
      sin_int += weights[q] * (nn * tau).sin() * f;
      zero_int += weights[q] * f[0];
      zero_moment += weights[q] * tau * f[0];
    }
    const double t = tb;
    s.coefficients(0, j) = t * zero_int - zero_moment;
    for (int n = 1; n <= modes; ++n) {
      s.coefficients(n, j) = (std::sin(n * t) * cos_int[n] - std::cos(n * t) * sin_int[n]) / n;
    }
  }
  synthesize(s);
  return s;
}

double relative_l2(const OneDSolution& reference, const OneDSolution& other) {
  if (reference.field.rows() != other.field.rows() || reference.field.cols() != other.field.cols()) {
    throw DomainError("relative_l2: solutions live on different grids");
  }
  const double denom = reference.field.norm();
  const double diff = (reference.field - other.field).norm();
  return denom == 0.0 ? diff : diff / denom;
}

OneDProblem random_problem(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> amp(-1.0, 1.0);
  std::uniform_real_distribution<double> freq(0.3, 3.0);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * kPi);

  struct Tone {
    double a, w, phi;
    double operator()(double t) const { return a * std::sin(w * t + phi); }
  };
  auto tones = [&](int count) {
    std::vector<Tone> out;
    for (int i = 0; i < count; ++i) out.push_back({amp(rng), freq(rng), phase(rng)});
    return out;
  };
  auto sum = [](const std::vector<Tone>& ts, double t) {
    double s = 0.0;
    for (const auto& tone : ts) s += tone(t);
    return s;
  };

  const auto b0 = tones(3);
  const auto bpi = tones(3);
  // Source: sum_m cos(m x) T_m(t) + e^{-x} T_e(t).
  auto cos_terms = std::make_shared<std::vector<Tone>>(tones(4));
  auto exp_term = std::make_shared<Tone>(tones(1).front());

  OneDProblem p;
  p.b0 = [b0, sum](double t) { return sum(b0, t); };
  p.bpi = [bpi, sum](double t) { return sum(bpi, t); };
  p.source = [cos_terms, exp_term](double t, double x) {
    double s = 0.0;
    for (std::size_t m = 0; m < cos_terms->size(); ++m) {
      s += std::cos(static_cast<double>(m) * x) * (*cos_terms)[m](t);
    }
    return s + std::exp(-x) * (*exp_term)(t);
  };
  return p;
}

}  // namespace icecav
