#pragma once

#include <cmath>
#include <utility>

namespace tridot {

// Default reading of the ">>" in the suppression condition: margins of at
// least 10 coupling units keep the leaked population below ~2/margin^2 = 2%.
inline constexpr double kDefaultMarginThreshold = 10.0;

// hbar in ueV*ns, used only for display-unit conversion at the CLI layer.
inline constexpr double kHbarUevNs = 0.6582119569;

// Device parameters in natural units (hbar = 1, one free energy/time scale;
// the CLI conventionally uses gamma_a as the unit rate).
struct SystemParams {
  double eps_a = 0.0;  // on-site energy, dot A
  double eps_b = 0.0;  // on-site energy, dot B
  double eps_c = 0.0;  // on-site energy, dot C
  double u = 0.0;      // on-site repulsion on dot C (doubly occupied)
  double v = 0.0;      // inter-dot repulsion C-A and C-B
  double g = 0.0;      // coherent tunneling amplitude
  double gamma_a = 0.0;    // incoherent drain rate, lead A
  double gamma_b = 0.0;    // incoherent drain rate, lead B
  double gamma_c = 0.0;    // incoherent fill rate, lead C
  double gamma_phi = 0.0;  // optional charge dephasing rate

  // Per-arm coupling overrides; NaN means "use g". Only needed when the two
  // tunneling arms are deliberately mismatched.
  double g_ca = std::nan("");
  double g_cb = std::nan("");

  double coupling_ca() const { return std::isnan(g_ca) ? g : g_ca; }
  double coupling_cb() const { return std::isnan(g_cb) ? g : g_cb; }

  // Throws std::invalid_argument on negative rates or non-finite entries.
  void validate() const;

  // Resonance conditions eps_c - eps_a = v - u and eps_c - eps_b = -v,
  // checked to a relative tolerance against the energy scale.
  bool on_resonance(double rel_tol = 1e-12) const;
};

// The two left-hand magnitudes of the suppression condition, in units of |g|.
struct SuppressionMargins {
  double m1 = 0.0;
  double m2 = 0.0;

  double min() const { return m1 < m2 ? m1 : m2; }
  bool suppressed(double threshold = kDefaultMarginThreshold) const {
    return min() >= threshold;
  }
};

// Required detunings (eps_c - eps_a, eps_c - eps_b) for the resonant triple.
std::pair<double, double> resonance_detunings(double u, double v);

struct OperatingPoint {
  SystemParams params;
  SuppressionMargins margins;
  // false when (u - 2v) < 10*|g|: the device runs but transfer through the
  // unwanted state is not strongly suppressed. Warning-level, not an error.
  bool suppressed = true;
};

OperatingPoint make_operating_point(double u, double v, double g, double eps_c,
                                    double gamma_a, double gamma_b,
                                    double gamma_c);

// Throws std::domain_error when g == 0 (margins undefined; a g = 0 system is
// trivially non-transporting).
SuppressionMargins suppression_margins(const SystemParams& p);

}  // namespace tridot
