// Initial-data families.  All are C^2 in r (actually C^3), radial, and
// sampled onto the grid in the w = r*u reduction.
//
//   GaussianBump  u0(r) = A exp(-(r/a)^2),                u1 = 0
//   CompactBump   u0(r) = A (1-(r/a)^2)^4 for r < a,      u1 = 0
//   PowerTail     u0(r) = A (1+r^2)^(-gamma/2),           u1 = 0
//   OutgoingWave  w0(r) = phi(r), v0 = -phi', with phi a bump on [a, a+1];
//                 the free evolution is the right-moving wave phi(r - t).
#pragma once

#include <string>

#include "rwave/grid.hpp"
#include "rwave/params.hpp"
#include "rwave/state.hpp"
#include "rwave/types.hpp"

namespace rwave {

enum class FamilyKind { GaussianBump, CompactBump, PowerTail, OutgoingWave };

std::string to_string(FamilyKind k);
FamilyKind family_from_string(const std::string& name);

struct DataFamily {
  FamilyKind kind = FamilyKind::GaussianBump;
  double amplitude = 1.0;
  double scale = 1.0;
  double gamma = 0.0;  // PowerTail only
};

// Analytic profiles (used by sampling and by the discarded-tail report).
double u0_of(const DataFamily& f, double r);
double du0_of(const DataFamily& f, double r);
double u1_of(const DataFamily& f, double r);

// PowerTail admissibility: the kappa-weighted gradient energy is finite when
// 2*gamma - 2 > kappa + 1.  Throws naming the violated inequality.
void check_admissible(const DataFamily& f, const ModelParams& mp);

RadialState sample_data(const DataFamily& f, const Grid& g, const ModelParams& mp);

// kappa-weighted energy (and plain energy) of the analytic data beyond r_max,
// i.e. what grid truncation discards.  Reported in the run manifest.
double discarded_tail_weighted(const DataFamily& f, const ModelParams& mp, double r_max);
double discarded_tail_energy(const DataFamily& f, const ModelParams& mp, double r_max);

}  // namespace rwave
