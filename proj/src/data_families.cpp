#include "rwave/data_families.hpp"

#include <cmath>
#include <sstream>

namespace rwave {

std::string to_string(FamilyKind k) {
  switch (k) {
    case FamilyKind::GaussianBump: return "gaussian";
    case FamilyKind::CompactBump: return "compact_bump";
    case FamilyKind::PowerTail: return "power_tail";
    case FamilyKind::OutgoingWave: return "outgoing_wave";
  }
  return "?";
}

FamilyKind family_from_string(const std::string& name) {
  if (name == "gaussian") return FamilyKind::GaussianBump;
  if (name == "compact_bump") return FamilyKind::CompactBump;
  if (name == "power_tail") return FamilyKind::PowerTail;
  if (name == "outgoing_wave") return FamilyKind::OutgoingWave;
  fail_config("unknown data family '" + name + "'");
}

namespace {

// OutgoingWave profile: bump on [a, a+1], phi = A (1-xi^2)^4, xi = 2(r-a)-1.
double phi_of(const DataFamily& f, double r) {
  const double xi = 2.0 * (r - f.scale) - 1.0;
  if (xi <= -1.0 || xi >= 1.0) return 0.0;
  const double q = 1.0 - xi * xi;
  return f.amplitude * q * q * q * q;
}

double dphi_of(const DataFamily& f, double r) {
  const double xi = 2.0 * (r - f.scale) - 1.0;
  if (xi <= -1.0 || xi >= 1.0) return 0.0;
  const double q = 1.0 - xi * xi;
  return -16.0 * f.amplitude * xi * q * q * q;
}

}  // namespace

double u0_of(const DataFamily& f, double r) {
  const double A = f.amplitude, a = f.scale;
  switch (f.kind) {
    case FamilyKind::GaussianBump:
      return A * std::exp(-(r / a) * (r / a));
    case FamilyKind::CompactBump: {
      if (r >= a) return 0.0;
      const double q = 1.0 - (r / a) * (r / a);
      return A * q * q * q * q;
    }
    case FamilyKind::PowerTail:
      return A * std::pow(1.0 + r * r, -0.5 * f.gamma);
    case FamilyKind::OutgoingWave:
      return r > 0.0 ? phi_of(f, r) / r : 0.0;
  }
  return 0.0;
}

double du0_of(const DataFamily& f, double r) {
  const double A = f.amplitude, a = f.scale;
  switch (f.kind) {
    case FamilyKind::GaussianBump:
      return -2.0 * r / (a * a) * u0_of(f, r);
    case FamilyKind::CompactBump: {
      if (r >= a) return 0.0;
      const double q = 1.0 - (r / a) * (r / a);
      return -8.0 * A * (r / (a * a)) * q * q * q;
    }
    case FamilyKind::PowerTail:
      return -A * f.gamma * r * std::pow(1.0 + r * r, -0.5 * f.gamma - 1.0);
    case FamilyKind::OutgoingWave:
      return r > 0.0 ? (dphi_of(f, r) * r - phi_of(f, r)) / (r * r) : 0.0;
  }
  return 0.0;
}

double u1_of(const DataFamily& f, double r) {
  if (f.kind == FamilyKind::OutgoingWave) return r > 0.0 ? -dphi_of(f, r) / r : 0.0;
  return 0.0;
}

void check_admissible(const DataFamily& f, const ModelParams& mp) {
  if (!std::isfinite(f.amplitude)) fail_config("data family: non-finite amplitude");
  if (!(f.scale > 0.0) || !std::isfinite(f.scale)) fail_config("data family: need scale > 0");
  if (f.kind == FamilyKind::PowerTail) {
    if (!(2.0 * f.gamma - 2.0 > mp.kappa + 1.0)) {
      std::ostringstream os;
      os << "power_tail: divergent kappa-weighted gradient energy; need "
            "2*gamma - 2 > kappa + 1 but gamma = "
         << f.gamma << ", kappa = " << mp.kappa;
      fail_config(os.str());
    }
  }
}

RadialState sample_data(const DataFamily& f, const Grid& g, const ModelParams& mp) {
  check_admissible(f, mp);
  RadialState s = zero_state(g);
  if (f.kind == FamilyKind::OutgoingWave) {
    for (Index j = 0; j < g.n; ++j) {
      s.w[j] = phi_of(f, g.r[j]);
      s.v[j] = -dphi_of(f, g.r[j]);
    }
  } else {
    for (Index j = 1; j < g.n; ++j) {
      s.w[j] = g.r[j] * u0_of(f, g.r[j]);
      s.v[j] = g.r[j] * u1_of(f, g.r[j]);
    }
  }
  s.w[0] = 0.0;
  s.v[0] = 0.0;
  // Hard truncation at the outer boundary node (HardZero policy).
  s.w[g.n - 1] = 0.0;
  s.v[g.n - 1] = 0.0;
  s.t = 0.0;
  return s;
}

namespace {

// int_{r_max}^inf weight(r) e0(r) 4 pi r^2 dr via the substitution r = r_max/s.
double tail_integral(const DataFamily& f, const ModelParams& mp, double r_max, bool weighted) {
  const Index m = 20000;
  const double ds = 1.0 / static_cast<double>(m);
  double total = 0.0;
  double prev = 0.0;  // integrand -> 0 as s -> 0 for admissible data
  for (Index i = 1; i <= m; ++i) {
    const double s = ds * static_cast<double>(i);
    const double r = r_max / s;
    const double du = du0_of(f, r);
    const double u0 = u0_of(f, r);
    const double u1 = u1_of(f, r);
    double e = 0.5 * du * du + 0.5 * u1 * u1 +
               std::pow(std::abs(u0), mp.p + 1.0) / (mp.p + 1.0);
    if (weighted) e *= std::pow(r + mp.weight_offset(), mp.kappa);
    const double cur = kFourPi * r * r * e * (r_max / (s * s));
    total += 0.5 * (prev + cur) * ds;
    prev = cur;
  }
  return total;
}

}  // namespace

double discarded_tail_weighted(const DataFamily& f, const ModelParams& mp, double r_max) {
  return tail_integral(f, mp, r_max, true);
}

double discarded_tail_energy(const DataFamily& f, const ModelParams& mp, double r_max) {
  return tail_integral(f, mp, r_max, false);
}

}  // namespace rwave
