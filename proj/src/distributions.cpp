#include "rspa/distributions.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace rspa {

namespace {

void check_unit_interval(double x, const char* what) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::domain_error(std::string(what) + ": argument outside [0,1]");
  }
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace

double h_cdf(const HighestValueDist& d, double v) {
  check_unit_interval(v, "h_cdf");
  if (v <= d.alpha) return 0.0;
  if (v >= 1.0) return 1.0;
  return (v - d.alpha) / v;
}

double h_cdf_left(const HighestValueDist& d, double v) {
  check_unit_interval(v, "h_cdf_left");
  if (v <= d.alpha) return 0.0;
  return (v - d.alpha) / v;  // at v = 1 this is the pre-atom level 1 - alpha
}

double h_sample(const HighestValueDist& d, double u) {
  if (u < 1.0 - d.alpha) return d.alpha / (1.0 - u);
  return 1.0;
}

double h_mean(const HighestValueDist& d) {
  return d.alpha * (1.0 - std::log(d.alpha));
}

double g_atom(const ReserveDist& d) {
  return (d.k - 1) / (d.k - 1 - std::log(d.alpha));
}

double g_cdf(const ReserveDist& d, double p) {
  check_unit_interval(p, "g_cdf");
  const double atom = g_atom(d);
  if (p <= d.alpha) return atom;
  return atom + std::log(p / d.alpha) / (d.k - 1 - std::log(d.alpha));
}

double g_cdf_left(const ReserveDist& d, double p) {
  check_unit_interval(p, "g_cdf_left");
  if (p <= 0.0) return 0.0;
  return g_cdf(d, p);  // the only atom sits at p = 0
}

double g_density(const ReserveDist& d, double p) {
  if (p <= d.alpha || p > 1.0) return 0.0;
  return 1.0 / (p * (d.k - 1 - std::log(d.alpha)));
}

double g_sample(const ReserveDist& d, double u) {
  const double atom = g_atom(d);
  if (u < atom) return 0.0;
  const double p = d.alpha * std::exp((u - atom) * (d.k - 1 - std::log(d.alpha)));
  return p < 1.0 ? p : 1.0;
}

ValueProfile ValueProfile::from_values(std::vector<double> values) {
  if (values.empty()) {
    throw std::invalid_argument("ValueProfile: empty profile");
  }
  ValueProfile p;
  p.values = std::move(values);
  double best = p.values[0];
  double second = 0.0;
  for (std::size_t i = 1; i < p.values.size(); ++i) {
    const double v = p.values[i];
    if (v > best) {
      second = best;
      best = v;
    } else if (v > second) {
      second = v;
    }
  }
  p.v1 = best;
  p.v2 = second;
  return p;
}

WorstCaseDist::WorstCaseDist(Equilibrium eq) : eq_(std::move(eq)) {
  theta_cum_.reserve(eq_.thetas.size());
  double cum = 0.0;
  for (double t : eq_.thetas) {
    cum += t;
    theta_cum_.push_back(cum);
  }
}

ValueProfile WorstCaseDist::sample(double u_select, double u_value) const {
  const int k = eq_.k();
  int high = k - 1;
  for (int i = 0; i < k; ++i) {
    if (u_select < theta_cum_[i]) {
      high = i;
      break;
    }
  }
  const double x = h_sample(HighestValueDist{eq_.alpha()}, u_value);

  std::vector<double> values(eq_.instance.n());
  for (int i = 0; i < eq_.instance.n(); ++i) {
    const double v = i < k ? (i == high ? x : eq_.alpha()) : eq_.instance.sorted_mean(i);
    values[eq_.instance.original_index(i)] = v;
  }
  return ValueProfile::from_values(std::move(values));
}

ValueProfile f_sample(const WorstCaseDist& d, double u_select, double u_value) {
  return d.sample(u_select, u_value);
}

bool fosd_compare(const HighestValueDist& h_small, const HighestValueDist& h_large) {
  const int grid = 10000;
  for (int i = 0; i <= grid; ++i) {
    const double v = static_cast<double>(i) / grid;
    if (h_cdf(h_large, v) > h_cdf(h_small, v) + 1e-12) return false;
  }
  return true;
}

std::string to_record(const Equilibrium& eq) {
  std::string out;
  out += "alpha=" + format_double(eq.alpha()) + "\n";
  out += "k=" + std::to_string(eq.k()) + "\n";
  out += "thetas=";
  for (std::size_t i = 0; i < eq.thetas.size(); ++i) {
    if (i > 0) out += ",";
    out += format_double(eq.thetas[i]);
  }
  out += "\ninactive_means=";
  const auto inactive = eq.inactive_means();
  for (std::size_t i = 0; i < inactive.size(); ++i) {
    if (i > 0) out += ",";
    out += format_double(inactive[i]);
  }
  out += "\n";
  return out;
}

}  // namespace rspa
