// Model parameters: nonlinearity exponent p in (3,5), decay-weight exponent
// kappa, and the choice between the weights r^kappa and (1+r)^kappa.
#pragma once

#include <cmath>
#include <string>

#include "rwave/types.hpp"

namespace rwave {

enum class WeightKind { PowR, PowOnePlusR };

inline std::string to_string(WeightKind k) {
  return k == WeightKind::PowR ? "pow_r" : "pow_one_plus_r";
}

// kappa(p) = 3(5-p)/(p+3), the threshold decay rate.
inline double kappa_critical(double p) { return 3.0 * (5.0 - p) / (p + 3.0); }

struct ModelParams {
  double p = 4.0;
  double kappa = 3.0 / 7.0;
  WeightKind weight_kind = WeightKind::PowR;

  // s_p = 3/2 - 2/(p-1), the scaling-critical regularity.
  double s_critical() const { return 1.5 - 2.0 / (p - 1.0); }
  // Diagnostic: whether kappa clears the threshold kappa(p).
  bool kappa_above_critical() const { return kappa > kappa_critical(p); }

  // Weight offset: the cut weight is (r + offset - |t|)^kappa.
  double weight_offset() const { return weight_kind == WeightKind::PowR ? 0.0 : 1.0; }
};

inline void validate(const ModelParams& mp) {
  if (!std::isfinite(mp.p) || !(mp.p > 3.0) || !(mp.p < 5.0))
    fail_config("params: need 3 < p < 5, got p = " + std::to_string(mp.p));
  if (!std::isfinite(mp.kappa) || !(mp.kappa > 0.0))
    fail_config("params: need kappa > 0, got kappa = " + std::to_string(mp.kappa));
}

inline ModelParams make_params(double p, double kappa, WeightKind kind = WeightKind::PowR) {
  ModelParams mp{p, kappa, kind};
  validate(mp);
  return mp;
}

}  // namespace rwave
