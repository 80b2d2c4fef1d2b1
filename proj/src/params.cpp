#include "tridot/params.hpp"

#include <cmath>
#include <stdexcept>

namespace tridot {

void SystemParams::validate() const {
  const double fields[] = {eps_a, eps_b,   eps_c,   u,       v,        g,
                           gamma_a, gamma_b, gamma_c, gamma_phi,
                           coupling_ca(), coupling_cb()};
  for (double x : fields) {
    if (!std::isfinite(x)) {
      throw std::invalid_argument("SystemParams: non-finite parameter");
    }
  }
  if (gamma_a < 0 || gamma_b < 0 || gamma_c < 0 || gamma_phi < 0) {
    throw std::invalid_argument("SystemParams: negative rate");
  }
}

bool SystemParams::on_resonance(double rel_tol) const {
  const auto [d_ca, d_cb] = resonance_detunings(u, v);
  const double scale =
      std::max({1.0, std::abs(eps_a), std::abs(eps_b), std::abs(eps_c),
                std::abs(u), std::abs(v)});
  return std::abs((eps_c - eps_a) - d_ca) <= rel_tol * scale &&
         std::abs((eps_c - eps_b) - d_cb) <= rel_tol * scale;
}

std::pair<double, double> resonance_detunings(double u, double v) {
  return {v - u, -v};
}

OperatingPoint make_operating_point(double u, double v, double g, double eps_c,
                                    double gamma_a, double gamma_b,
                                    double gamma_c) {
  if (!std::isfinite(u) || !std::isfinite(v)) {
    throw std::invalid_argument("make_operating_point: u, v must be finite");
  }
  OperatingPoint op;
  op.params.u = u;
  op.params.v = v;
  op.params.g = g;
  op.params.eps_c = eps_c;
  op.params.eps_a = eps_c - (v - u);
  op.params.eps_b = eps_c + v;
  op.params.gamma_a = gamma_a;
  op.params.gamma_b = gamma_b;
  op.params.gamma_c = gamma_c;
  op.params.validate();
  if (g != 0.0) {
    op.margins = suppression_margins(op.params);
    op.suppressed = op.margins.suppressed();
  } else {
    op.margins = SuppressionMargins{0.0, 0.0};
    op.suppressed = false;
  }
  return op;
}

SuppressionMargins suppression_margins(const SystemParams& p) {
  if (p.g == 0.0) {
    throw std::domain_error(
        "suppression_margins: undefined for g = 0 (no coherent transport)");
  }
  SuppressionMargins m;
  m.m1 = std::abs((p.eps_c - p.eps_b) + (p.u - p.v)) / std::abs(p.g);
  m.m2 = std::abs((p.eps_c - p.eps_a) + p.v) / std::abs(p.g);
  return m;
}

}  // namespace tridot
