#include "hexpdc/sellmeier.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "hexpdc/errors.hpp"

namespace hexpdc {

const char* to_string(WaveRole role) {
    switch (role) {
        case WaveRole::signal: return "signal";
        case WaveRole::idler: return "idler";
        case WaveRole::pump: return "pump";
    }
    return "?";
}

WaveRole conjugate(WaveRole role) {
    if (role == WaveRole::signal) return WaveRole::idler;
    if (role == WaveRole::idler) return WaveRole::signal;
    throw std::invalid_argument("pump has no conjugate role");
}

SellmeierModel::SellmeierModel(Kind kind, std::vector<double> coefficients, double valid_min_um,
                               double valid_max_um, double temperature_K)
    : kind_(kind),
      coefficients_(std::move(coefficients)),
      valid_min_um_(valid_min_um),
      valid_max_um_(valid_max_um),
      temperature_K_(temperature_K) {
    const std::size_t expected = (kind_ == Kind::pole) ? 4 : 1;
    if (coefficients_.size() != expected)
        throw std::invalid_argument("SellmeierModel: wrong coefficient count");
    if (!(valid_min_um_ > 0.0) || !(valid_max_um_ > valid_min_um_))
        throw std::invalid_argument("SellmeierModel: invalid wavelength range");
}

SellmeierModel SellmeierModel::constant_index(double n) {
    return SellmeierModel(Kind::constant, {n}, 1e-3, 1e3, 293.15);
}

double SellmeierModel::refractive_index(double wavelength_um) const {
    if (wavelength_um < valid_min_um_ || wavelength_um > valid_max_um_) {
        std::ostringstream msg;
        msg << "wavelength " << wavelength_um << " um outside validity range [" << valid_min_um_
            << ", " << valid_max_um_ << "] um";
        throw DomainError(msg.str(), wavelength_um, valid_min_um_, valid_max_um_);
    }
    if (kind_ == Kind::constant) return coefficients_[0];
    const double l2 = wavelength_um * wavelength_um;
    const double n2 =
        coefficients_[0] + coefficients_[1] / (l2 - coefficients_[2]) + coefficients_[3] * l2;
    if (!(n2 > 1.0)) {
        std::ostringstream msg;
        msg << "n^2(" << wavelength_um << " um) = " << n2 << " is not > 1";
        throw DomainError(msg.str(), wavelength_um, valid_min_um_, valid_max_um_);
    }
    return std::sqrt(n2);
}

const SellmeierModel& SellmeierSet::for_role(WaveRole role) const {
    switch (role) {
        case WaveRole::pump: return pump;
        case WaveRole::signal: return signal;
        case WaveRole::idler: return idler;
    }
    return pump;
}

namespace {

SellmeierModel parse_model(const nlohmann::json& j) {
    const std::string kind_str = j.at("model").get<std::string>();
    SellmeierModel::Kind kind;
    if (kind_str == "pole")
        kind = SellmeierModel::Kind::pole;
    else if (kind_str == "constant")
        kind = SellmeierModel::Kind::constant;
    else
        throw std::invalid_argument("unknown sellmeier model kind: " + kind_str);
    auto coeffs = j.at("coefficients").get<std::vector<double>>();
    auto range = j.at("valid_range_um").get<std::vector<double>>();
    if (range.size() != 2) throw std::invalid_argument("valid_range_um must have 2 entries");
    const double T = j.value("temperature_K", 293.15);
    return SellmeierModel(kind, std::move(coeffs), range[0], range[1], T);
}

}  // namespace

SellmeierSet parse_sellmeier_json(const std::string& json_text) {
    const auto j = nlohmann::json::parse(json_text);
    const auto& waves = j.at("waves");
    return SellmeierSet{parse_model(waves.at("pump")), parse_model(waves.at("signal")),
                        parse_model(waves.at("idler"))};
}

SellmeierSet load_sellmeier_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open sellmeier file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_sellmeier_json(ss.str());
}

SellmeierSet builtin_litao3_e() {
    // Extraordinary ray, Mg-doped congruent LiTaO3 near room temperature.
    // Same model serves pump/signal/idler (type-0, all waves e-polarized).
    const std::vector<double> c = {4.5122, 0.0847522, 0.0480917, -0.0465};
    SellmeierModel m(SellmeierModel::Kind::pole, c, 0.40, 4.5, 298.15);
    return SellmeierSet{m, m, m};
}

SellmeierSet builtin_toy(double n_pump, double n_signal, double n_idler) {
    return SellmeierSet{SellmeierModel::constant_index(n_pump),
                        SellmeierModel::constant_index(n_signal),
                        SellmeierModel::constant_index(n_idler)};
}

}  // namespace hexpdc
