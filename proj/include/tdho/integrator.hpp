#pragma once

// Adaptive explicit Runge-Kutta 8(5,3) of Dormand and Prince with Hairer's
// combined error estimator. The state is any fixed or dynamic Eigen dense
// object; the scalar type is taken from it.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>

#include "tdho/error.hpp"

namespace tdho {

struct IntegratorConfig {
  double rtol = 1e-10;
  double atol = 1e-12;
  std::int64_t max_steps = 10'000'000;
  /// 0 selects the step from the local frequency.
  double initial_step = 0.0;

  void validate() const {
    if (!(rtol > 0.0) || !(atol > 0.0)) throw DomainError("IntegratorConfig: tolerances must be positive");
    if (max_steps < 1) throw DomainError("IntegratorConfig: max_steps must be >= 1");
    if (initial_step < 0.0) throw DomainError("IntegratorConfig: initial_step must be >= 0");
  }
};

struct IntegrationStats {
  std::int64_t accepted = 0;
  std::int64_t rejected = 0;
};

namespace dop853 {
// clang-format off
inline constexpr double c2 = 0.526001519587677318785587544488e-01, c3 = 0.789002279381515978178381316732e-01,
    c4 = 0.118350341907227396726757197510e+00, c5 = 0.281649658092772603273242802490e+00,
    c6 = 0.333333333333333333333333333333e+00, c7 = 0.25e+00, c8 = 0.307692307692307692307692307692e+00,
    c9 = 0.651282051282051282051282051282e+00, c10 = 0.6e+00, c11 = 0.857142857142857142857142857142e+00;
inline constexpr double b1 = 5.42937341165687622380535766363e-2, b6 = 4.45031289275240888144113950566e0,
    b7 = 1.89151789931450038304281599044e0, b8 = -5.8012039600105847814672114227e0,
    b9 = 3.1116436695781989440891606237e-1, b10 = -1.52160949662516078556178806805e-1,
    b11 = 2.01365400804030348374776537501e-1, b12 = 4.47106157277725905176885569043e-2;
inline constexpr double bhh1 = 0.244094488188976377952755905512e+00, bhh2 = 0.733846688281611857341361741547e+00,
    bhh3 = 0.220588235294117647058823529412e-01;
inline constexpr double er1 = 0.1312004499419488073250102996e-01, er6 = -0.1225156446376204440720569753e+01,
    er7 = -0.4957589496572501915214079952e+00, er8 = 0.1664377182454986536961530415e+01,
    er9 = -0.3503288487499736816886487290e+00, er10 = 0.3341791187130174790297318841e+00,
    er11 = 0.8192320648511571246570742613e-01, er12 = -0.2235530786388629525884427845e-01;
inline constexpr double a21 = 5.26001519587677318785587544488e-2, a31 = 1.97250569845378994544595329183e-2,
    a32 = 5.91751709536136983633785987549e-2, a41 = 2.95875854768068491816892993775e-2,
    a43 = 8.87627564304205475450678981324e-2, a51 = 2.41365134159266685502369798665e-1,
    a53 = -8.84549479328286085344864962717e-1, a54 = 9.24834003261792003115737966543e-1,
    a61 = 3.7037037037037037037037037037e-2, a64 = 1.70828608729473871279604482173e-1,
    a65 = 1.25467687566822425016691814123e-1, a71 = 3.7109375e-2, a74 = 1.70252211019544039314978060272e-1,
    a75 = 6.02165389804559606850219397283e-2, a76 = -1.7578125e-2, a81 = 3.70920001185047927108779319836e-2,
    a84 = 1.70383925712239993810214054705e-1, a85 = 1.07262030446373284651809199168e-1,
    a86 = -1.53194377486244017527936158236e-2, a87 = 8.27378916381402288758473766002e-3,
    a91 = 6.24110958716075717114429577812e-1, a94 = -3.36089262944694129406857109825e0,
    a95 = -8.68219346841726006818189891453e-1, a96 = 2.75920996994467083049415600797e1,
    a97 = 2.01540675504778934086186788979e1, a98 = -4.34898841810699588477366255144e1,
    a101 = 4.77662536438264365890433908527e-1, a104 = -2.48811461997166764192642586468e0,
    a105 = -5.90290826836842996371446475743e-1, a106 = 2.12300514481811942347288949897e1,
    a107 = 1.52792336328824235832596922938e1, a108 = -3.32882109689848629194453265587e1,
    a109 = -2.03312017085086261358222928593e-2, a111 = -9.3714243008598732571704021658e-1,
    a114 = 5.18637242884406370830023853209e0, a115 = 1.09143734899672957818500254654e0,
    a116 = -8.14978701074692612513997267357e0, a117 = -1.85200656599969598641566180701e1,
    a118 = 2.27394870993505042818970056734e1, a119 = 2.49360555267965238987089396762e0,
    a1110 = -3.0467644718982195003823669022e0, a121 = 2.27331014751653820792359768449e0,
    a124 = -1.05344954667372501984066689879e1, a125 = -2.00087205822486249909675718444e0,
    a126 = -1.79589318631187989172765950534e1, a127 = 2.79488845294199600508499808837e1,
    a128 = -2.85899827713502369474065508674e0, a129 = -8.87285693353062954433549289258e0,
    a1210 = 1.23605671757943030647266201528e1, a1211 = 6.43392746015763530355970484046e-1;
// clang-format on
}  // namespace dop853

/// Integrates y' = f(t, y) from t0 to t1 (t1 >= t0) and returns y(t1).
/// `f` has signature State(double, const State&).
template <typename State, typename Rhs>
State integrate(Rhs&& f, double t0, double t1, State y, const IntegratorConfig& cfg,
                IntegrationStats* stats = nullptr) {
  using namespace dop853;
  using Scalar = typename State::Scalar;
  cfg.validate();
  if (!(t1 >= t0)) throw DomainError("integrate: t1 must be >= t0");
  const double span = t1 - t0;
  if (span == 0.0) return y;

  double h = cfg.initial_step > 0.0 ? cfg.initial_step : span * 1e-3;
  h = std::min(h, span);
  double t = t0;
  std::int64_t steps = 0;
  bool last_rejected = false;

  State k1, k2, k3, k4, k5, k6, k7, k8, k9, k10, w;
  while (t < t1) {
    if (steps >= cfg.max_steps) {
      std::ostringstream msg;
      msg << "integrate: step budget of " << cfg.max_steps << " exhausted at t = " << t << " of " << t1;
      throw NumericError(msg.str());
    }
    ++steps;
    const bool final_step = t + h >= t1 - 1e-14 * std::abs(t1);
    if (final_step) h = t1 - t;

    k1 = f(t, y);
    w = y + h * a21 * k1;
    k2 = f(t + c2 * h, w);
    w = y + h * (a31 * k1 + a32 * k2);
    k3 = f(t + c3 * h, w);
    w = y + h * (a41 * k1 + a43 * k3);
    k4 = f(t + c4 * h, w);
    w = y + h * (a51 * k1 + a53 * k3 + a54 * k4);
    k5 = f(t + c5 * h, w);
    w = y + h * (a61 * k1 + a64 * k4 + a65 * k5);
    k6 = f(t + c6 * h, w);
    w = y + h * (a71 * k1 + a74 * k4 + a75 * k5 + a76 * k6);
    k7 = f(t + c7 * h, w);
    w = y + h * (a81 * k1 + a84 * k4 + a85 * k5 + a86 * k6 + a87 * k7);
    k8 = f(t + c8 * h, w);
    w = y + h * (a91 * k1 + a94 * k4 + a95 * k5 + a96 * k6 + a97 * k7 + a98 * k8);
    k9 = f(t + c9 * h, w);
    w = y + h * (a101 * k1 + a104 * k4 + a105 * k5 + a106 * k6 + a107 * k7 + a108 * k8 + a109 * k9);
    k10 = f(t + c10 * h, w);
    w = y + h * (a111 * k1 + a114 * k4 + a115 * k5 + a116 * k6 + a117 * k7 + a118 * k8 + a119 * k9 +
                 a1110 * k10);
    k2 = f(t + c11 * h, w);  // stage 11
    w = y + h * (a121 * k1 + a124 * k4 + a125 * k5 + a126 * k6 + a127 * k7 + a128 * k8 + a129 * k9 +
                 a1210 * k10 + a1211 * k2);
    k3 = f(t + h, w);  // stage 12
    k4 = b1 * k1 + b6 * k6 + b7 * k7 + b8 * k8 + b9 * k9 + b10 * k10 + b11 * k2 + b12 * k3;
    State y_new = y + h * k4;

    const auto scale = (Scalar(cfg.atol) + Scalar(cfg.rtol) * y.cwiseAbs().cwiseMax(y_new.cwiseAbs()).array()).eval();
    const auto e3 = ((k4 - bhh1 * k1 - bhh2 * k9 - bhh3 * k3).array() / scale).matrix().squaredNorm();
    const auto e5 = ((er1 * k1 + er6 * k6 + er7 * k7 + er8 * k8 + er9 * k9 + er10 * k10 + er11 * k2 + er12 * k3)
                         .array() /
                     scale)
                        .matrix()
                        .squaredNorm();
    double deno = double(e5) + 0.01 * double(e3);
    if (deno <= 0.0) deno = 1.0;
    const double err = std::abs(h) * double(e5) * std::sqrt(1.0 / (deno * double(y.size())));
    if (!std::isfinite(err)) throw NumericError("integrate: non-finite error estimate");

    const double fac = std::pow(std::max(err, 1e-300), 1.0 / 8.0);
    if (err <= 1.0) {
      t = final_step ? t1 : t + h;
      y = std::move(y_new);
      if (stats) ++stats->accepted;
      double grow = std::clamp(0.9 / fac, 1.0 / 3.0, 6.0);
      if (last_rejected) grow = std::min(grow, 1.0);
      h *= grow;
      last_rejected = false;
    } else {
      if (stats) ++stats->rejected;
      h *= std::max(1.0 / 3.0, 0.9 / fac);
      last_rejected = true;
      if (h < 1e-15 * std::max(1.0, std::abs(t))) throw NumericError("integrate: step size underflow");
    }
  }
  return y;
}

}  // namespace tdho
