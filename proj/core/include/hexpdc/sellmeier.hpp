#pragma once

#include <string>
#include <vector>

namespace hexpdc {

enum class WaveRole { signal, idler, pump };

const char* to_string(WaveRole role);
WaveRole conjugate(WaveRole role);

/// Empirical refractive-index model for one wave. Two forms are supported:
///
///   kind = pole:      n^2(l) = c0 + c1/(l^2 - c2) + c3*l^2      (l in um)
///   kind = constant:  n(l)   = c0
///
/// The pole form is the usual single-UV-pole Sellmeier with an infrared
/// correction term. All evaluations are restricted to
/// [valid_min_um, valid_max_um]; outside, a DomainError is thrown.
class SellmeierModel {
  public:
    enum class Kind { pole, constant };

    SellmeierModel() : SellmeierModel(Kind::constant, {1.0}, 1e-3, 1e3, 293.15) {}
    SellmeierModel(Kind kind, std::vector<double> coefficients, double valid_min_um,
                   double valid_max_um, double temperature_K);

    static SellmeierModel constant_index(double n);

    /// n(lambda), lambda in micrometres. Throws DomainError out of range.
    double refractive_index(double wavelength_um) const;

    Kind kind() const { return kind_; }
    const std::vector<double>& coefficients() const { return coefficients_; }
    double valid_min_um() const { return valid_min_um_; }
    double valid_max_um() const { return valid_max_um_; }
    double temperature_K() const { return temperature_K_; }

  private:
    Kind kind_;
    std::vector<double> coefficients_;
    double valid_min_um_;
    double valid_max_um_;
    double temperature_K_;
};

/// Per-role index models loaded from a sellmeier data file (JSON; see
/// core/data/sellmeier_litao3_e.json for the schema and the shipped
/// Mg-doped LiTaO3 extraordinary-ray data).
struct SellmeierSet {
    SellmeierModel pump;
    SellmeierModel signal;
    SellmeierModel idler;

    const SellmeierModel& for_role(WaveRole role) const;
};

SellmeierSet load_sellmeier_file(const std::string& path);
SellmeierSet parse_sellmeier_json(const std::string& json_text);

/// The shipped extraordinary-ray Mg-doped LiTaO3 model (same model for all
/// three waves), embedded so the library works without data-file lookup.
SellmeierSet builtin_litao3_e();

/// Dispersion-free toy set: constant indices per wave, exact-oracle friendly.
SellmeierSet builtin_toy(double n_pump, double n_signal, double n_idler);

}  // namespace hexpdc
